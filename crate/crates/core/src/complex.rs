//! Finite simplicial complexes with a simplicial action of a finite group, and
//! the rational invariants built from their fixed-point data.
//!
//! Simplices are sorted vertex lists. A group element acts through a vertex
//! permutation `perm` (vertex `v ↦ perm[v]`), with `perm(gh) = perm(g) ∘ perm(h)`.
//! Fixed sets are full subcomplexes on fixed vertices, which is only correct
//! for regular actions (a simplex fixed setwise is fixed pointwise); loading a
//! complex subdivides until that holds.
//!
//! Quotient homology is never built as a complex. Over ℚ, `H_p(Y/Γ)` is the
//! homology of the image of the averaging projector `Σ_{g∈Γ} g_#` on chains.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{check_permutation, compose, FiniteGroup};
use crate::linalg::{rank, sparse_row, SparseRow};
use crate::Rational;

#[derive(Clone)]
pub struct GSimplicialComplex {
    group: Arc<FiniteGroup>,
    vertex_count: usize,
    /// `by_dim[p]` holds the p-simplices in lexicographic order.
    by_dim: Vec<Vec<Vec<usize>>>,
    index: HashMap<Vec<usize>, usize>,
    /// Acting group elements (sorted) and their vertex permutations.
    acting: Vec<usize>,
    perms: Vec<Vec<usize>>,
    basepoint: Option<usize>,
}

impl fmt::Debug for GSimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GSimplicialComplex")
            .field("group", &self.group.name())
            .field("vertices", &self.vertex_count)
            .field("f_vector", &self.f_vector())
            .field("basepoint", &self.basepoint)
            .finish()
    }
}

impl GSimplicialComplex {
    /// Validates a complex with a (possibly partial) action.
    ///
    /// Every vertex `0..vertex_count` is a 0-simplex even if not listed. An
    /// empty action means `G` acts trivially; otherwise the action may be
    /// given on a generating subset of `G` and is extended
    /// multiplicatively and must define a homomorphism on all of `G`. The
    /// action must be simplicial; regularity is not required here.
    pub fn new(
        group: Arc<FiniteGroup>,
        vertex_count: usize,
        simplices: impl IntoIterator<Item = Vec<usize>>,
        action: &BTreeMap<usize, Vec<usize>>,
        basepoint: Option<usize>,
    ) -> Result<Self> {
        let mut set: BTreeSet<Vec<usize>> = (0..vertex_count).map(|v| vec![v]).collect();
        for mut s in simplices {
            if s.is_empty() {
                return Err(Error::InvalidInput("empty simplex".into()));
            }
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInput(format!("repeated vertex in {s:?}")));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::InvalidInput(format!(
                    "vertex {v} out of range in {s:?}"
                )));
            }
            set.insert(s);
        }
        for s in &set {
            if s.len() < 2 {
                continue;
            }
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                if !set.contains(&face) {
                    return Err(Error::NotFaceClosed(face));
                }
            }
        }

        let perms = close_action(&group, vertex_count, action)?;
        let x = Self::assemble(
            group,
            vertex_count,
            set,
            (0..perms.len()).collect(),
            perms,
            basepoint,
        );
        if let Some(b) = basepoint {
            if b >= vertex_count {
                return Err(Error::InvalidInput(format!("basepoint {b} out of range")));
            }
            if x.perms.iter().any(|p| p[b] != b) {
                return Err(Error::InvalidAction(format!(
                    "basepoint {b} is not fixed by G"
                )));
            }
        }
        x.check_simplicial()?;
        Ok(x)
    }

    fn assemble(
        group: Arc<FiniteGroup>,
        vertex_count: usize,
        set: BTreeSet<Vec<usize>>,
        acting: Vec<usize>,
        perms: Vec<Vec<usize>>,
        basepoint: Option<usize>,
    ) -> Self {
        let top = set.iter().map(Vec::len).max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); top];
        for s in set {
            by_dim[s.len() - 1].push(s);
        }
        let index = by_dim
            .iter()
            .flat_map(|layer| layer.iter().enumerate().map(|(i, s)| (s.clone(), i)))
            .collect();
        GSimplicialComplex {
            group,
            vertex_count,
            by_dim,
            index,
            acting,
            perms,
            basepoint,
        }
    }

    /// `G` acting on its own elements by left translation, as a 0-complex.
    pub fn regular_action(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let perms: Vec<Vec<usize>> = (0..n)
            .map(|g| (0..n).map(|v| group.mul(g, v)).collect())
            .collect();
        let set = (0..n).map(|v| vec![v]).collect();
        Self::assemble(group, n, set, (0..n).collect(), perms, None)
    }

    /// A single point with the trivial action.
    pub fn point(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        Self::assemble(
            group,
            1,
            BTreeSet::from([vec![0]]),
            (0..n).collect(),
            vec![vec![0]; n],
            Some(0),
        )
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn simplices(&self, p: usize) -> &[Vec<usize>] {
        self.by_dim.get(p).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn acting_elements(&self) -> &[usize] {
        &self.acting
    }

    /// Vertex permutation of an acting element.
    pub fn perm(&self, g: usize) -> Option<&[usize]> {
        self.acting
            .binary_search(&g)
            .ok()
            .map(|i| self.perms[i].as_slice())
    }

    fn image(perm: &[usize], s: &[usize]) -> Vec<usize> {
        let mut t: Vec<usize> = s.iter().map(|&v| perm[v]).collect();
        t.sort_unstable();
        t
    }

    fn check_simplicial(&self) -> Result<()> {
        for (&g, perm) in self.acting.iter().zip(&self.perms) {
            for s in self.by_dim.iter().flatten() {
                if !self.index.contains_key(&Self::image(perm, s)) {
                    return Err(Error::ActionNotSimplicial {
                        element: g,
                        simplex: s.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Fails on the first simplex fixed setwise but not pointwise by an element
    /// of `elements`.
    pub fn check_regular_for(&self, elements: &[usize]) -> Result<()> {
        for &g in elements {
            let perm = self
                .perm(g)
                .ok_or_else(|| Error::InvalidAction(format!("element {g} does not act")))?;
            for s in self.by_dim.iter().flatten() {
                if s.len() > 1 && Self::image(perm, s) == *s && s.iter().any(|&v| perm[v] != v) {
                    return Err(Error::IrregularAction {
                        element: g,
                        simplex: s.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn check_regular(&self) -> Result<()> {
        self.check_regular_for(&self.acting)
    }

    pub fn is_regular(&self) -> bool {
        self.check_regular().is_ok()
    }

    /// True when no non-identity element fixes a vertex (for regular actions
    /// this means no simplex is fixed).
    pub fn is_free(&self) -> bool {
        self.acting
            .iter()
            .zip(&self.perms)
            .filter(|(&g, _)| g != 0)
            .all(|(_, p)| p.iter().enumerate().all(|(v, &w)| v != w))
    }

    /// `g_#` on an oriented p-simplex: the image simplex index and the sign of
    /// the vertex reordering.
    fn act_oriented(&self, perm: &[usize], s: &[usize]) -> (usize, i64) {
        let img: Vec<usize> = s.iter().map(|&v| perm[v]).collect();
        let mut inversions = 0;
        for i in 0..img.len() {
            for j in i + 1..img.len() {
                if img[i] > img[j] {
                    inversions += 1;
                }
            }
        }
        let mut sorted = img;
        sorted.sort_unstable();
        (
            self.index[&sorted],
            if inversions % 2 == 0 { 1 } else { -1 },
        )
    }

    /// `∂σ = Σᵢ (-1)^i σ \ {vᵢ}` in the (p-1)-simplex basis.
    fn boundary_row(&self, s: &[usize]) -> SparseRow {
        if s.len() < 2 {
            return Vec::new();
        }
        sparse_row((0..s.len()).map(|i| {
            let mut face = s.to_vec();
            face.remove(i);
            let sign = if i % 2 == 0 { 1 } else { -1 };
            (self.index[&face], Rational::from_integer(sign.into()))
        }))
    }

    fn boundary_of_chain(&self, p: usize, chain: &SparseRow) -> SparseRow {
        if p == 0 {
            return Vec::new();
        }
        sparse_row(chain.iter().flat_map(|(i, c)| {
            self.boundary_row(&self.by_dim[p][*i])
                .into_iter()
                .map(move |(j, v)| (j, v * c))
        }))
    }
}

fn close_action(
    group: &FiniteGroup,
    vertex_count: usize,
    given: &BTreeMap<usize, Vec<usize>>,
) -> Result<Vec<Vec<usize>>> {
    let n = group.order();
    let identity: Vec<usize> = (0..vertex_count).collect();
    if given.is_empty() {
        return Ok(vec![identity; n]);
    }
    let mut perms: Vec<Option<Vec<usize>>> = vec![None; n];
    for (&g, p) in given {
        if g >= n {
            return Err(Error::InvalidAction(format!(
                "element {g} not in a group of order {n}"
            )));
        }
        check_permutation(p, vertex_count).map_err(|e| Error::InvalidAction(e.to_string()))?;
        perms[g] = Some(p.clone());
    }
    match &perms[0] {
        Some(p) if *p != identity => {
            return Err(Error::InvalidAction(
                "identity element acts nontrivially".into(),
            ));
        }
        _ => perms[0] = Some(identity),
    }
    loop {
        let mut changed = false;
        let known: Vec<usize> = (0..n).filter(|&g| perms[g].is_some()).collect();
        for &a in &known {
            for &b in &known {
                let ab = group.mul(a, b);
                let p = compose(perms[a].as_ref().unwrap(), perms[b].as_ref().unwrap());
                match &perms[ab] {
                    Some(q) if *q != p => {
                        return Err(Error::InvalidAction(format!(
                            "action is not a homomorphism at ({a}, {b})"
                        )));
                    }
                    Some(_) => {}
                    None => {
                        perms[ab] = Some(p);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    perms
        .into_iter()
        .enumerate()
        .map(|(g, p)| {
            p.ok_or_else(|| {
                Error::InvalidAction(format!("no permutation determined for element {g}"))
            })
        })
        .collect()
}

/// JSON form of a complex:
/// `{"vertices": n, "simplices": [[..]], "action": {"<element>": [perm]}, "basepoint": v}`.
#[derive(Debug, Clone, serde::Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub vertices: usize,
    pub simplices: Vec<Vec<usize>>,
    #[serde(default)]
    pub action: BTreeMap<String, Vec<usize>>,
    #[serde(default)]
    pub basepoint: Option<usize>,
}

impl ComplexDocument {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    fn action_map(&self) -> Result<BTreeMap<usize, Vec<usize>>> {
        self.action
            .iter()
            .map(|(k, p)| {
                let g = k.trim().parse::<usize>().map_err(|_| {
                    Error::InvalidInput(format!("action key '{k}' is not an element index"))
                })?;
                Ok((g, p.clone()))
            })
            .collect()
    }
}

/// Validates a complex document against `G`, subdividing (at most twice) if
/// the action is not regular.
pub fn load_complex(doc: &ComplexDocument, group: Arc<FiniteGroup>) -> Result<GSimplicialComplex> {
    let mut x = GSimplicialComplex::new(
        group,
        doc.vertices,
        doc.simplices.iter().cloned(),
        &doc.action_map()?,
        doc.basepoint,
    )?;
    for _ in 0..2 {
        if x.is_regular() {
            return Ok(x);
        }
        x = barycentric_subdivision(&x);
    }
    x.check_regular()?;
    Ok(x)
}

/// Vertices are the simplices of `X` (ordered by dimension, then
/// lexicographically); simplices are chains `σ₀ ⊂ σ₁ ⊂ ⋯`.
pub fn barycentric_subdivision(x: &GSimplicialComplex) -> GSimplicialComplex {
    let old: Vec<&Vec<usize>> = x.by_dim.iter().flatten().collect();
    let vid: HashMap<&Vec<usize>, usize> = old.iter().enumerate().map(|(i, s)| (*s, i)).collect();

    // chains ending at each simplex, built up by dimension
    let mut ending: Vec<Vec<Vec<usize>>> = vec![Vec::new(); old.len()];
    for (i, s) in old.iter().enumerate() {
        let mut chains = vec![vec![i]];
        // proper nonempty faces
        let k = s.len();
        for mask in 1..(1u64 << k) - 1 {
            let face: Vec<usize> = (0..k)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| s[b])
                .collect();
            for c in &ending[vid[&face]] {
                let mut c = c.clone();
                c.push(i);
                chains.push(c);
            }
        }
        ending[i] = chains;
    }
    let set: BTreeSet<Vec<usize>> = ending
        .into_iter()
        .flatten()
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();

    let perms = x
        .perms
        .iter()
        .map(|p| {
            old.iter()
                .map(|s| vid[&GSimplicialComplex::image(p, s)])
                .collect()
        })
        .collect();
    let basepoint = x.basepoint.map(|b| vid[&vec![b]]);
    GSimplicialComplex::assemble(
        x.group.clone(),
        old.len(),
        set,
        x.acting.clone(),
        perms,
        basepoint,
    )
}

/// Ranks of rational homology, one entry per dimension `0..=dim X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn get(&self, p: usize) -> usize {
        self.0.get(p).copied().unwrap_or(0)
    }

    pub fn even_total(&self) -> usize {
        self.0.iter().step_by(2).sum()
    }

    pub fn odd_total(&self) -> usize {
        self.0.iter().skip(1).step_by(2).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(p, &b)| if p % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// `dim H_p(X; ℚ) = n_p - rank ∂_p - rank ∂_{p+1}`
pub fn betti(x: &GSimplicialComplex) -> BettiVector {
    let ranks: Vec<usize> = (0..x.by_dim.len())
        .map(|p| {
            if p == 0 {
                0
            } else {
                rank(x.by_dim[p].iter().map(|s| x.boundary_row(s)))
            }
        })
        .collect();
    BettiVector(
        (0..x.by_dim.len())
            .map(|p| x.by_dim[p].len() - ranks[p] - ranks.get(p + 1).copied().unwrap_or(0))
            .collect(),
    )
}

/// Full subcomplex on the vertices fixed by `g`, relabelled in increasing
/// order, acted on by the centralizer of `g`.
pub fn fixed_subcomplex(x: &GSimplicialComplex, g: usize) -> Result<GSimplicialComplex> {
    x.check_regular_for(&[g])?;
    let perm = x.perm(g).unwrap();
    let fixed: Vec<usize> = (0..x.vertex_count).filter(|&v| perm[v] == v).collect();
    let relabel: HashMap<usize, usize> = fixed.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let set: BTreeSet<Vec<usize>> = x
        .by_dim
        .iter()
        .flatten()
        .filter(|s| s.iter().all(|v| relabel.contains_key(v)))
        .map(|s| s.iter().map(|v| relabel[v]).collect())
        .collect();
    let mut acting = Vec::new();
    let mut perms = Vec::new();
    for (&h, p) in x.acting.iter().zip(&x.perms) {
        if x.group.mul(h, g) == x.group.mul(g, h) {
            acting.push(h);
            perms.push(fixed.iter().map(|v| relabel[&p[*v]]).collect());
        }
    }
    let basepoint = x.basepoint.and_then(|b| relabel.get(&b).copied());
    Ok(GSimplicialComplex::assemble(
        x.group.clone(),
        fixed.len(),
        set,
        acting,
        perms,
        basepoint,
    ))
}

/// `dim H_p(Y/Γ; ℚ)` as the homology of the image of the averaging projector
/// `P = Σ_{γ∈Γ} γ_#` on chains:
/// `rank P_p - rank ∂_p P_p - rank ∂_{p+1} P_{p+1}`.
pub fn quotient_betti(y: &GSimplicialComplex, subgroup: &[usize]) -> Result<BettiVector> {
    let mut gamma: Vec<usize> = subgroup.to_vec();
    gamma.sort_unstable();
    gamma.dedup();
    let group = &y.group;
    if gamma.first() != Some(&0) {
        return Err(Error::InvalidInput(
            "acting subgroup must contain the identity".into(),
        ));
    }
    for &a in &gamma {
        for &b in &gamma {
            if gamma.binary_search(&group.mul(a, b)).is_err() {
                return Err(Error::InvalidInput(
                    "acting elements do not form a subgroup".into(),
                ));
            }
        }
    }
    y.check_regular_for(&gamma)?;
    let perms: Vec<&[usize]> = gamma.iter().map(|&g| y.perm(g).unwrap()).collect();

    let top = y.by_dim.len();
    let mut image_rank = vec![0; top];
    let mut boundary_rank = vec![0; top + 1];
    for p in 0..top {
        let projected: Vec<SparseRow> = y.by_dim[p]
            .iter()
            .map(|s| {
                sparse_row(perms.iter().map(|perm| {
                    let (j, sign) = y.act_oriented(perm, s);
                    (j, Rational::from_integer(sign.into()))
                }))
            })
            .collect();
        image_rank[p] = rank(projected.iter().cloned());
        boundary_rank[p] = rank(projected.iter().map(|c| y.boundary_of_chain(p, c)));
    }
    Ok(BettiVector(
        (0..top)
            .map(|p| image_rank[p] - boundary_rank[p] - boundary_rank[p + 1])
            .collect(),
    ))
}

/// Dimensions of `K⁰_G(X) ⊗ ℂ` and `K¹_G(X) ⊗ ℂ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EquivariantKDims {
    pub even: usize,
    pub odd: usize,
}

/// One summand `H_*(Xᵍ / Z_G(g))` per conjugacy class representative `g`.
fn fixed_point_summands(x: &GSimplicialComplex) -> Result<Vec<BettiVector>> {
    let group = x.group.clone();
    if x.acting.len() != group.order() {
        return Err(Error::InvalidAction("the whole group must act".into()));
    }
    x.check_regular()?;
    group
        .class_table()
        .reps()
        .into_iter()
        .map(|g| {
            let y = fixed_subcomplex(x, g)?;
            quotient_betti(&y, &group.centralizer(g))
        })
        .collect()
}

/// `Σ_{[g]} Σ_{p even/odd} dim H_p(Xᵍ / Z_G(g); ℚ)`
pub fn equivariant_k_dims(x: &GSimplicialComplex) -> Result<EquivariantKDims> {
    let parts = fixed_point_summands(x)?;
    Ok(EquivariantKDims {
        even: parts.iter().map(BettiVector::even_total).sum(),
        odd: parts.iter().map(BettiVector::odd_total).sum(),
    })
}

/// Rational Bredon homology with class-function coefficients:
/// `Σ_{[g]} dim H_p(Xᵍ / Z_G(g); ℚ)` in each degree `p`.
pub fn bredon_dims(x: &GSimplicialComplex) -> Result<BettiVector> {
    let parts = fixed_point_summands(x)?;
    let len = x.by_dim.len();
    Ok(BettiVector(
        (0..len)
            .map(|p| parts.iter().map(|b| b.get(p)).sum())
            .collect(),
    ))
}

/// `kₙ = Σ_{i≥0, n-2i≥0} bredon[n - 2i]` for `n = 0..=N`.
pub fn connective_from_bredon(bredon: &BettiVector, truncation: usize) -> Vec<usize> {
    let mut k = vec![0; truncation + 1];
    for n in 0..=truncation {
        k[n] = bredon.get(n) + if n >= 2 { k[n - 2] } else { 0 };
    }
    k
}

pub fn connective_k_dims(x: &GSimplicialComplex, truncation: usize) -> Result<Vec<usize>> {
    Ok(connective_from_bredon(&bredon_dims(x)?, truncation))
}

fn require_basepoint(x: &GSimplicialComplex) -> Result<()> {
    match x.basepoint {
        Some(_) => Ok(()),
        None => Err(Error::InvalidInput(
            "reduced invariants need a G-fixed basepoint".into(),
        )),
    }
}

/// Homology relative to the basepoint.
pub fn reduced_betti(x: &GSimplicialComplex) -> Result<BettiVector> {
    require_basepoint(x)?;
    let mut b = betti(x);
    b.0[0] -= 1;
    Ok(b)
}

/// Bredon homology relative to the basepoint; the point contributes one
/// summand per conjugacy class in degree 0.
pub fn reduced_bredon_dims(x: &GSimplicialComplex) -> Result<BettiVector> {
    require_basepoint(x)?;
    let mut b = bredon_dims(x)?;
    b.0[0] -= x.group.class_count();
    Ok(b)
}

pub fn reduced_equivariant_k_dims(x: &GSimplicialComplex) -> Result<EquivariantKDims> {
    require_basepoint(x)?;
    let mut k = equivariant_k_dims(x)?;
    k.even -= x.group.class_count();
    Ok(k)
}

pub fn reduced_connective_k_dims(x: &GSimplicialComplex, truncation: usize) -> Result<Vec<usize>> {
    Ok(connective_from_bredon(&reduced_bredon_dims(x)?, truncation))
}

/// Sum of the rational Betti numbers of `X/G`, split by parity.
pub fn quotient_k_dims(x: &GSimplicialComplex) -> Result<EquivariantKDims> {
    let b = quotient_betti(x, &x.acting)?;
    Ok(EquivariantKDims {
        even: b.even_total(),
        odd: b.odd_total(),
    })
}
