//! Wreath products `G ≀ Sₙ` and their conjugacy classes.
//!
//! An element is a pair `(g; σ)` of a component vector `g ∈ Gⁿ` and a
//! permutation `σ ∈ Sₙ`. `σ` acts on component vectors by moving positions,
//! `(σ·h)ᵢ = h_{σ⁻¹(i)}`, and the product is
//!
//! ```text
//! (g; σ)(h; τ) = (g · σ·h ; στ),   (στ)(i) = σ(τ(i)).
//! ```
//!
//! Worked example in `C₂ ≀ S₂` with `t` the generator and `s = (0 1)`:
//! `((t, e); s) · ((t, e); id) = ((t·e, e·t); s) = ((t, t); s)`.
//!
//! With this law the `r`-th power of `(g; σ)` restricted to a cycle of `σ`
//! starting at `i` has component `gᵢ g_{σ⁻¹(i)} ⋯ g_{σ^{-(r-1)}(i)}`, so the
//! conjugacy class of that cycle product (read in this order) together with the
//! cycle length classifies the element.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupEmbedding};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WreathElement {
    pub components: Vec<usize>,
    pub perm: Vec<usize>,
}

impl WreathElement {
    pub fn identity(n: usize) -> Self {
        WreathElement {
            components: vec![0; n],
            perm: (0..n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    pub fn mul(&self, other: &Self, base: &FiniteGroup) -> Self {
        let n = self.degree();
        let mut inv = vec![0; n];
        for (i, &j) in self.perm.iter().enumerate() {
            inv[j] = i;
        }
        let components = (0..n)
            .map(|i| base.mul(self.components[i], other.components[inv[i]]))
            .collect();
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        WreathElement { components, perm }
    }
}

/// A materialized `G ≀ Sₙ` together with its element coding.
#[derive(Debug, Clone)]
pub struct WreathGroup {
    base: Arc<FiniteGroup>,
    n: usize,
    perms: Vec<Vec<usize>>,
    perm_index: HashMap<Vec<usize>, usize>,
    group: Arc<FiniteGroup>,
}

/// `|G|ⁿ · n!`, saturating on overflow.
pub fn wreath_order(base_order: usize, n: usize) -> u128 {
    let mut order: u128 = 1;
    for k in 1..=n {
        order = order
            .saturating_mul(base_order as u128)
            .saturating_mul(k as u128);
    }
    order
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn lex_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

/// Materializes `G ≀ Sₙ`. Elements are indexed lexicographically by
/// (components, permutation), which puts the identity at index 0.
pub fn wreath_group(base: &Arc<FiniteGroup>, n: usize, cap: usize) -> Result<WreathGroup> {
    let order = wreath_order(base.order(), n);
    if order > cap as u128 {
        return Err(Error::cap(order, cap));
    }
    let order = order as usize;
    let perms = lex_permutations(n);
    let perm_index: HashMap<_, _> = perms
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let mut w = WreathGroup {
        base: base.clone(),
        n,
        perms,
        perm_index,
        group: Arc::new(FiniteGroup::trivial()),
    };
    let elements: Vec<WreathElement> = (0..order).map(|i| w.element(i)).collect();
    let mut table = Vec::with_capacity(order * order);
    for a in &elements {
        for b in &elements {
            table.push(w.index(&a.mul(b, base)) as u32);
        }
    }
    let names = elements
        .iter()
        .map(|e| {
            let comps: Vec<_> = e.components.iter().map(|&c| base.element_name(c)).collect();
            format!("({};{:?})", comps.join(","), e.perm)
        })
        .collect();
    w.group = Arc::new(FiniteGroup::from_table(
        format!("{}wr S{n}", base.name()),
        order,
        table,
        Some(names),
        cap,
    )?);
    Ok(w)
}

impl WreathGroup {
    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.perms.len() * self.base.order().pow(self.n as u32)
    }

    pub fn element(&self, index: usize) -> WreathElement {
        let nperm = self.perms.len();
        let (mut code, p) = (index / nperm, index % nperm);
        let q = self.base.order();
        let mut components = vec![0; self.n];
        for slot in components.iter_mut().rev() {
            *slot = code % q;
            code /= q;
        }
        WreathElement {
            components,
            perm: self.perms[p].clone(),
        }
    }

    pub fn index(&self, e: &WreathElement) -> usize {
        let q = self.base.order();
        let code = e.components.iter().fold(0, |acc, &c| acc * q + c);
        code * self.perms.len() + self.perm_index[&e.perm]
    }

    pub fn label_of(&self, index: usize) -> WreathClassLabel {
        class_label(&self.base, &self.element(index))
    }
}

/// Conjugacy class of `G ≀ Sₙ`: for each class of `G` (in class-table order),
/// the partition of cycle lengths whose cycle products fall in that class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathClassLabel {
    pub partitions: Vec<Vec<usize>>,
}

impl WreathClassLabel {
    pub fn degree(&self) -> usize {
        self.partitions.iter().flatten().sum()
    }
}

impl std::fmt::Display for WreathClassLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .partitions
            .iter()
            .enumerate()
            .map(|(c, p)| {
                let p: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                format!("[{c}]:({})", p.join(","))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn class_label(base: &FiniteGroup, w: &WreathElement) -> WreathClassLabel {
    let n = w.degree();
    let classes = base.class_table();
    let mut inv = vec![0; n];
    for (i, &j) in w.perm.iter().enumerate() {
        inv[j] = i;
    }
    let mut partitions = vec![Vec::new(); classes.len()];
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut product = w.components[start];
        let mut len = 1;
        seen[start] = true;
        let mut j = inv[start];
        while j != start {
            seen[j] = true;
            product = base.mul(product, w.components[j]);
            len += 1;
            j = inv[j];
        }
        partitions[classes.class_of(product)].push(len);
    }
    for p in &mut partitions {
        p.sort_unstable_by(|a, b| b.cmp(a));
    }
    WreathClassLabel { partitions }
}

/// Partitions of `n` with parts at most `max`, in reverse lexicographic order.
pub fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All partition-valued labels of total size `n` over `class_count` classes,
/// sorted.
pub fn enumerate_class_labels(class_count: usize, n: usize) -> Vec<WreathClassLabel> {
    fn go(k: usize, remaining: usize, acc: &mut Vec<Vec<usize>>, out: &mut Vec<WreathClassLabel>) {
        if acc.len() == k {
            if remaining == 0 {
                out.push(WreathClassLabel {
                    partitions: acc.clone(),
                });
            }
            return;
        }
        let sizes: Vec<usize> = if acc.len() + 1 == k {
            vec![remaining]
        } else {
            (0..=remaining).rev().collect()
        };
        for s in sizes {
            for p in partitions(s, s) {
                acc.push(p);
                go(k, remaining - s, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    if class_count == 0 {
        return out;
    }
    go(class_count, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Embeds `Gₙ × Gₘ` into `G_{n+m}` by concatenating components and placing
/// the permutations block-diagonally. Returns the product group and the
/// embedding.
pub fn embed_pair(
    left: &WreathGroup,
    right: &WreathGroup,
    target: &WreathGroup,
    cap: usize,
) -> Result<(Arc<FiniteGroup>, GroupEmbedding)> {
    let (n, m) = (left.degree(), right.degree());
    if target.degree() != n + m || !Arc::ptr_eq(left.base(), right.base()) {
        return Err(Error::InvalidInput(
            "wreath degrees or bases do not match".into(),
        ));
    }
    let (product, _, _) = crate::group::direct_product(left.group(), right.group(), cap)?;
    let rorder = right.order();
    let map = (0..product.order())
        .map(|x| {
            let a = left.element(x / rorder);
            let b = right.element(x % rorder);
            let mut components = a.components;
            components.extend(b.components);
            let mut perm = a.perm;
            perm.extend(b.perm.iter().map(|&j| j + n));
            target.index(&WreathElement { components, perm })
        })
        .collect();
    let emb = GroupEmbedding::new(product.clone(), target.group().clone(), map)?;
    Ok((product, emb))
}

/// Convenience form of [`embed_pair`] that materializes all three wreath groups.
pub fn embed_wreath_product(
    base: &Arc<FiniteGroup>,
    n: usize,
    m: usize,
    cap: usize,
) -> Result<GroupEmbedding> {
    let left = wreath_group(base, n, cap)?;
    let right = wreath_group(base, m, cap)?;
    let target = wreath_group(base, n + m, cap)?;
    Ok(embed_pair(&left, &right, &target, cap)?.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ORDER_CAP as CAP;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2).unwrap())
    }

    #[test]
    fn orders() {
        let e = Arc::new(FiniteGroup::trivial());
        assert_eq!(wreath_group(&c2(), 0, CAP).unwrap().group().order(), 1);
        assert_eq!(wreath_group(&c2(), 2, CAP).unwrap().group().order(), 8);
        let s3 = Arc::new(FiniteGroup::symmetric(3, CAP).unwrap());
        assert_eq!(wreath_group(&s3, 2, CAP).unwrap().group().order(), 72);
        assert_eq!(wreath_group(&e, 4, CAP).unwrap().group().order(), 24);
        assert!(matches!(
            wreath_group(&s3, 4, CAP),
            Err(Error::OrderCapExceeded { .. })
        ));
    }

    #[test]
    fn index_roundtrip_and_identity() {
        let w = wreath_group(&c2(), 3, CAP).unwrap();
        assert_eq!(w.element(0), WreathElement::identity(3));
        for i in 0..w.order() {
            assert_eq!(w.index(&w.element(i)), i);
        }
    }

    #[test]
    fn worked_product_example() {
        let base = c2();
        let a = WreathElement {
            components: vec![1, 0],
            perm: vec![1, 0],
        };
        let b = WreathElement {
            components: vec![1, 0],
            perm: vec![0, 1],
        };
        assert_eq!(
            a.mul(&b, &base),
            WreathElement {
                components: vec![1, 1],
                perm: vec![1, 0]
            }
        );
    }

    #[test]
    fn labels_in_c2_wr_s2() {
        let base = c2();
        // class 0 = [e], class 1 = [t]
        let lab = |c: Vec<usize>, p: Vec<usize>| {
            class_label(
                &base,
                &WreathElement {
                    components: c,
                    perm: p,
                },
            )
            .partitions
        };
        assert_eq!(lab(vec![0, 0], vec![0, 1]), vec![vec![1, 1], vec![]]);
        assert_eq!(lab(vec![0, 0], vec![1, 0]), vec![vec![2], vec![]]);
        assert_eq!(lab(vec![1, 0], vec![1, 0]), vec![vec![], vec![2]]);
    }

    #[test]
    fn label_counts() {
        assert_eq!(enumerate_class_labels(1, 4).len(), 5);
        assert_eq!(enumerate_class_labels(2, 2).len(), 5);
        assert_eq!(enumerate_class_labels(3, 2).len(), 9);
        assert_eq!(enumerate_class_labels(5, 0).len(), 1);
        assert!(enumerate_class_labels(2, 3).iter().all(|l| l.degree() == 3));
    }

    #[test]
    fn embeddings() {
        let e = Arc::new(FiniteGroup::trivial());
        let emb = embed_wreath_product(&e, 1, 1, CAP).unwrap();
        assert_eq!(emb.image(), vec![0]);
        let emb = embed_wreath_product(&c2(), 1, 1, CAP).unwrap();
        assert_eq!(emb.image().len(), 4);
        let emb = embed_wreath_product(&c2(), 0, 2, CAP).unwrap();
        assert_eq!(emb.image(), (0..8).collect::<Vec<_>>());
        assert_eq!(
            (0..8).map(|i| emb.map(i)).collect::<Vec<_>>(),
            (0..8).collect::<Vec<_>>()
        );
    }
}
