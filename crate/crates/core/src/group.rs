//! Finite groups given by an explicit multiplication table.
//!
//! Every group keeps its identity at index 0. Tables supplied with the
//! identity elsewhere are relabelled on load by swapping it into place.
//! Conjugacy classes are computed by brute-force orbit enumeration and cached
//! on first use.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Default upper bound on the order of any materialized group.
pub const DEFAULT_ORDER_CAP: usize = 20_000;

pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    element_names: Option<Vec<String>>,
    classes: OnceLock<ClassTable>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validates a row-major multiplication table on `0..order`.
    ///
    /// The identity is moved to index 0 if necessary, every element must have a
    /// two-sided inverse, and associativity is verified with Light's test over
    /// a greedily chosen generating set (equivalent to checking all triples).
    pub fn from_table(
        name: impl Into<String>,
        order: usize,
        table: Vec<u32>,
        element_names: Option<Vec<String>>,
        cap: usize,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidTable(
                "a group needs at least one element".into(),
            ));
        }
        if order > cap {
            return Err(Error::cap(order as u128, cap));
        }
        if table.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, found {}",
                order * order,
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|&&x| x as usize >= order) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range")));
        }
        if let Some(names) = &element_names {
            if names.len() != order {
                return Err(Error::InvalidTable(
                    "element name count differs from order".into(),
                ));
            }
        }

        let mut table = table;
        let mut element_names = element_names;
        let identity = (0..order)
            .find(|&e| {
                (0..order).all(|x| {
                    table[e * order + x] as usize == x && table[x * order + e] as usize == x
                })
            })
            .ok_or(Error::NoIdentity)?;
        if identity != 0 {
            let swap = |x: usize| {
                if x == 0 {
                    identity
                } else if x == identity {
                    0
                } else {
                    x
                }
            };
            let mut relabelled = vec![0u32; order * order];
            for a in 0..order {
                for b in 0..order {
                    relabelled[swap(a) * order + swap(b)] =
                        swap(table[a * order + b] as usize) as u32;
                }
            }
            table = relabelled;
            if let Some(names) = element_names.as_mut() {
                names.swap(0, identity);
            }
        }

        let mut inverses = vec![0u32; order];
        for x in 0..order {
            let y = (0..order)
                .find(|&y| table[x * order + y] == 0 && table[y * order + x] == 0)
                .ok_or(Error::NoInverse(x))?;
            inverses[x] = y as u32;
        }

        let group = FiniteGroup {
            name: name.into(),
            order,
            table,
            inverses,
            element_names,
            classes: OnceLock::new(),
        };
        group.check_associative()?;
        Ok(group)
    }

    /// Builds a group from a nested Cayley table.
    pub fn from_cayley(name: impl Into<String>, rows: &[Vec<usize>], cap: usize) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::InvalidTable("Cayley table is not square".into()));
        }
        let table = rows.iter().flatten().map(|&x| x as u32).collect();
        Self::from_table(name, order, table, None, cap)
    }

    /// Enumerates the closure of permutation generators on `degree` points.
    ///
    /// Permutations are image lists and compose right to left:
    /// `(p * q)[i] = p[q[i]]`. The closure is built breadth-first from the
    /// identity, each new layer sorted lexicographically by image list.
    pub fn from_permutations(
        name: impl Into<String>,
        degree: usize,
        generators: &[Vec<usize>],
        cap: usize,
    ) -> Result<Self> {
        for g in generators {
            check_permutation(g, degree)?;
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut layer = BTreeSet::new();
            for &x in &frontier {
                for s in generators {
                    let y = compose(s, &elements[x]);
                    if !index.contains_key(&y) {
                        layer.insert(y);
                    }
                }
            }
            frontier.clear();
            for y in layer {
                if elements.len() >= cap {
                    return Err(Error::cap(elements.len() as u128 + 1, cap));
                }
                index.insert(y.clone(), elements.len());
                frontier.push(elements.len());
                elements.push(y);
            }
        }
        let order = elements.len();
        let mut table = Vec::with_capacity(order * order);
        for a in &elements {
            for b in &elements {
                table.push(index[&compose(a, b)] as u32);
            }
        }
        let names = elements.iter().map(|p| format!("{p:?}")).collect();
        Self::from_table(name, order, table, Some(names), cap)
    }

    pub fn trivial() -> Self {
        Self::from_table("trivial", 1, vec![0], None, 1).expect("trivial group")
    }

    /// Cyclic group of order `n` with `i * j = (i + j) mod n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTable("cyclic group of order 0".into()));
        }
        let table = (0..n)
            .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32))
            .collect();
        Self::from_table(format!("C{n}"), n, table, None, usize::MAX)
    }

    /// Symmetric group on `n` points, generated by a transposition and an n-cycle.
    pub fn symmetric(n: usize, cap: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        Self::from_permutations(format!("S{n}"), n, &gens, cap)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `x⁻¹ g x`
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), g), x)
    }

    pub fn element_name(&self, i: usize) -> String {
        match &self.element_names {
            Some(names) => names[i].clone(),
            None => i.to_string(),
        }
    }

    /// Cached conjugacy class table.
    pub fn class_table(&self) -> &ClassTable {
        self.classes.get_or_init(|| conjugacy_classes(self))
    }

    pub fn class_count(&self) -> usize {
        self.class_table().len()
    }

    /// Elements commuting with `g`, in increasing order.
    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        (0..self.order)
            .filter(|&x| self.mul(x, g) == self.mul(g, x))
            .collect()
    }

    /// A small generating set: repeatedly adjoin the least element outside the
    /// span of the generators chosen so far.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut reached = vec![false; self.order];
        reached[0] = true;
        let mut members = vec![0usize];
        while let Some(next) = (0..self.order).find(|&x| !reached[x]) {
            gens.push(next);
            // right-multiplication closure of everything reached so far
            let mut stack = members.clone();
            while let Some(x) = stack.pop() {
                for &s in &gens {
                    let y = self.mul(x, s);
                    if !reached[y] {
                        reached[y] = true;
                        members.push(y);
                        stack.push(y);
                    }
                }
            }
        }
        gens
    }

    fn check_associative(&self) -> Result<()> {
        for s in self.generating_set() {
            for x in 0..self.order {
                let xs = self.mul(x, s);
                for y in 0..self.order {
                    if self.mul(xs, y) != self.mul(x, self.mul(s, y)) {
                        return Err(Error::NonAssociative(x, s, y));
                    }
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn check_permutation(p: &[usize], degree: usize) -> Result<()> {
    if p.len() != degree {
        return Err(Error::InvalidPermutation(format!(
            "{p:?} has length {} but degree is {degree}",
            p.len()
        )));
    }
    let mut seen = vec![false; degree];
    for &x in p {
        if x >= degree || std::mem::replace(&mut seen[x], true) {
            return Err(Error::InvalidPermutation(format!(
                "{p:?} is not a bijection"
            )));
        }
    }
    Ok(())
}

/// `(p * q)[i] = p[q[i]]`
pub(crate) fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

/// Conjugacy classes with their representatives and centralizer orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassTable {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    group_order: usize,
}

impl ClassTable {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    /// Smallest element index in class `c`.
    pub fn rep(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn reps(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn centralizer_order(&self, c: usize) -> usize {
        self.group_order / self.classes[c].len()
    }

    pub fn centralizer_orders(&self) -> Vec<usize> {
        (0..self.len()).map(|c| self.centralizer_order(c)).collect()
    }

    /// Index of the class containing element `g`.
    #[inline]
    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }
}

/// Conjugation orbits, sorted by (size, smallest element).
pub fn conjugacy_classes(group: &FiniteGroup) -> ClassTable {
    let n = group.order();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for g in 0..n {
        if seen[g] {
            continue;
        }
        let mut class = Vec::new();
        for x in 0..n {
            let y = group.conjugate(g, x);
            if !seen[y] {
                seen[y] = true;
                class.push(y);
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes.sort_by_key(|c| (c.len(), c[0]));
    let mut class_of = vec![0; n];
    for (i, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = i;
        }
    }
    ClassTable {
        classes,
        class_of,
        group_order: n,
    }
}

/// Elements commuting with `g`.
pub fn centralizer(group: &FiniteGroup, g: usize) -> Vec<usize> {
    group.centralizer(g)
}

/// An injective homomorphism `source -> target` on element indices.
#[derive(Debug, Clone)]
pub struct GroupEmbedding {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<usize>,
    preimage: Vec<Option<usize>>,
}

impl GroupEmbedding {
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        map: Vec<usize>,
    ) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::NotAnEmbedding(
                "map length differs from source order".into(),
            ));
        }
        let mut preimage = vec![None; target.order()];
        for (x, &y) in map.iter().enumerate() {
            if y >= target.order() {
                return Err(Error::NotAnEmbedding(format!("image {y} out of range")));
            }
            if preimage[y].replace(x).is_some() {
                return Err(Error::NotAnEmbedding(format!("image {y} hit twice")));
            }
        }
        if map[0] != 0 {
            return Err(Error::NotAnEmbedding("identity not preserved".into()));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::NotAnEmbedding(format!("fails on ({a}, {b})")));
                }
            }
        }
        Ok(GroupEmbedding {
            source,
            target,
            map,
            preimage,
        })
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        GroupEmbedding {
            source: group.clone(),
            target: group,
            map: (0..n).collect(),
            preimage: (0..n).map(Some).collect(),
        }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn map(&self, h: usize) -> usize {
        self.map[h]
    }

    #[inline]
    pub fn preimage(&self, g: usize) -> Option<usize> {
        self.preimage[g]
    }

    /// Image of the source as a sorted element list.
    pub fn image(&self) -> Vec<usize> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v
    }
}

/// `G × H` with `(g, h)` stored at index `g·|H| + h`, plus both factor embeddings.
pub fn direct_product(
    g: &Arc<FiniteGroup>,
    h: &Arc<FiniteGroup>,
    cap: usize,
) -> Result<(Arc<FiniteGroup>, GroupEmbedding, GroupEmbedding)> {
    let (m, n) = (g.order(), h.order());
    let order = m as u128 * n as u128;
    if order > cap as u128 {
        return Err(Error::cap(order, cap));
    }
    let order = m * n;
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        let (a1, a2) = (a / n, a % n);
        for b in 0..order {
            let (b1, b2) = (b / n, b % n);
            table.push((g.mul(a1, b1) * n + h.mul(a2, b2)) as u32);
        }
    }
    let names = match (&g.element_names, &h.element_names) {
        (None, None) => None,
        _ => Some(
            (0..order)
                .map(|a| format!("({},{})", g.element_name(a / n), h.element_name(a % n)))
                .collect(),
        ),
    };
    let product = Arc::new(FiniteGroup::from_table(
        format!("{}x{}", g.name(), h.name()),
        order,
        table,
        names,
        cap,
    )?);
    let left = GroupEmbedding::new(g.clone(), product.clone(), (0..m).map(|x| x * n).collect())?;
    let right = GroupEmbedding::new(h.clone(), product.clone(), (0..n).collect())?;
    Ok((product, left, right))
}
