//! The graded Hopf algebra `⊕ₙ qⁿ Class(Gₙ)`, `Gₙ = G ≀ Sₙ`, truncated at
//! degree `N`.
//!
//! The product of `f` on `Gₙ` and `h` on `Gₘ` is the induction of `f ⊠ h`
//! from `Gₙ × Gₘ` to `G_{n+m}`. The coproduct restricts a class function on
//! `Gₙ` to every `Gₘ × G_{n-m}` and splits it on pair-class indicators. The
//! unit is `1 ∈ Class(G₀) = ℚ`, the counit reads off the degree-0 part, and
//! the antipode comes from the connected-graded recursion. Everything sits in
//! even degree, so no Koszul signs appear.
//!
//! Internally elements are sparse vectors over the indicator basis
//! `q^n[c]` = indicator of class `c` of `Gₙ`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::classfun::{
    external_tensor_on, indicator, induce, restrict, split_tensor, ClassFunction,
};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupEmbedding};
use crate::qseries::{eta_power, odd_product, QSeries};
use crate::wreath::{embed_pair, wreath_group, WreathClassLabel, WreathGroup};
use crate::Rational;

/// Basis element: (degree, class index in `G_degree`).
type Key = (usize, usize);
type Vector = BTreeMap<Key, Rational>;
type Tensor = BTreeMap<Vec<Key>, Rational>;
type SplitTerm = ((usize, usize), Vec<Vec<Rational>>);

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

fn show_key((n, c): Key) -> String {
    format!("q^{n}[{c}]")
}

/// An element of the truncated algebra: one class function per degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqElement {
    terms: BTreeMap<usize, ClassFunction>,
    truncation: usize,
}

impl FqElement {
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn terms(&self) -> &BTreeMap<usize, ClassFunction> {
        &self.terms
    }

    pub fn term(&self, degree: usize) -> Option<&ClassFunction> {
        self.terms.get(&degree)
    }
}

/// `Δ(a)` as coefficient matrices: `components[(m, k)][a][b]` is the
/// coefficient of `δ_a ⊗ δ_b` with `δ_a` on `Gₘ` and `δ_b` on `Gₖ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coproduct {
    pub components: BTreeMap<(usize, usize), Vec<Vec<Rational>>>,
}

pub struct FqAlgebra {
    base: Arc<FiniteGroup>,
    truncation: usize,
    levels: Vec<WreathGroup>,
    embeddings: HashMap<(usize, usize), GroupEmbedding>,
    products: HashMap<(Key, Key), Vector>,
    coproducts: Vec<Vec<Tensor>>,
    antipodes: Vec<Vec<Vector>>,
}

impl fmt::Debug for FqAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FqAlgebra")
            .field("base", &self.base.name())
            .field("truncation", &self.truncation)
            .finish()
    }
}

impl FqAlgebra {
    /// Materializes `G₀..G_N`, every embedding `Gₙ × Gₘ → G_{n+m}` with
    /// `n + m ≤ N`, and the structure constants on the indicator basis.
    pub fn new(base: Arc<FiniteGroup>, truncation: usize, cap: usize) -> Result<Self> {
        let levels = (0..=truncation)
            .map(|n| wreath_group(&base, n, cap))
            .collect::<Result<Vec<_>>>()?;
        let mut embeddings = HashMap::new();
        for n in 0..=truncation {
            for m in 0..=truncation - n {
                let (_, emb) = embed_pair(&levels[n], &levels[m], &levels[n + m], cap)?;
                embeddings.insert((n, m), emb);
            }
        }
        let mut alg = FqAlgebra {
            base,
            truncation,
            levels,
            embeddings,
            products: HashMap::new(),
            coproducts: Vec::new(),
            antipodes: Vec::new(),
        };

        for n in 0..=truncation {
            for m in 0..=truncation - n {
                for a in 0..alg.dim(n) {
                    for b in 0..alg.dim(m) {
                        let f = indicator(alg.levels[n].group(), a)?;
                        let h = indicator(alg.levels[m].group(), b)?;
                        let prod = alg.product_terms(n, &f, m, &h)?;
                        alg.products
                            .insert(((n, a), (m, b)), to_vector(n + m, &prod));
                    }
                }
            }
        }

        for n in 0..=truncation {
            let mut row = Vec::new();
            for c in 0..alg.dim(n) {
                let f = indicator(alg.levels[n].group(), c)?;
                let mut t = Tensor::new();
                for ((m, k), mat) in alg.coproduct_terms(n, &f)? {
                    for (a, r) in mat.into_iter().enumerate() {
                        for (b, v) in r.into_iter().enumerate() {
                            accumulate(&mut t, vec![(m, a), (k, b)], v);
                        }
                    }
                }
                row.push(t);
            }
            alg.coproducts.push(row);
        }

        // S(1) = 1, S(x) = -Σ_{m<n} S(x'_m) x''_{n-m}
        for n in 0..=truncation {
            let mut row = Vec::new();
            for c in 0..alg.dim(n) {
                let mut s = Vector::new();
                if n == 0 {
                    s.insert((0, 0), Rational::one());
                } else {
                    for (keys, coeff) in &alg.coproducts[n][c] {
                        let (left, right) = (keys[0], keys[1]);
                        if left.0 == n {
                            continue;
                        }
                        let sl = alg.antipodes[left.0][left.1].clone();
                        let prod = alg.mul_vec(&sl, &Vector::from([(right, Rational::one())]));
                        for (k, v) in prod {
                            accumulate(&mut s, k, -(v * coeff));
                        }
                    }
                }
                row.push(s);
            }
            alg.antipodes.push(row);
        }
        Ok(alg)
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Number of conjugacy classes of `Gₙ`.
    pub fn dim(&self, n: usize) -> usize {
        self.levels[n].group().class_count()
    }

    pub fn level(&self, n: usize) -> &WreathGroup {
        &self.levels[n]
    }

    /// Partition-valued label of each class of `Gₙ`, in class-table order.
    pub fn class_labels(&self, n: usize) -> Vec<WreathClassLabel> {
        let w = &self.levels[n];
        w.group()
            .class_table()
            .reps()
            .into_iter()
            .map(|r| w.label_of(r))
            .collect()
    }

    pub fn embedding(&self, n: usize, m: usize) -> &GroupEmbedding {
        &self.embeddings[&(n, m)]
    }

    pub fn zero(&self) -> FqElement {
        FqElement {
            terms: BTreeMap::new(),
            truncation: self.truncation,
        }
    }

    pub fn unit(&self) -> FqElement {
        self.element(BTreeMap::from([(
            0,
            ClassFunction::constant(self.levels[0].group().clone(), Rational::one()),
        )]))
        .expect("unit")
    }

    /// The indicator of class `c` of `Gₙ`, placed in degree `n`.
    pub fn basis(&self, n: usize, c: usize) -> Result<FqElement> {
        if n > self.truncation {
            return Err(Error::InvalidInput(format!("degree {n} beyond truncation")));
        }
        self.element(BTreeMap::from([(n, indicator(self.levels[n].group(), c)?)]))
    }

    /// Wraps per-degree class functions; each must live on the materialized `Gₙ`.
    pub fn element(&self, terms: BTreeMap<usize, ClassFunction>) -> Result<FqElement> {
        for (&n, f) in &terms {
            if n > self.truncation {
                return Err(Error::InvalidInput(format!("degree {n} beyond truncation")));
            }
            if **f.group() != **self.levels[n].group() {
                return Err(Error::GroupMismatch);
            }
        }
        let terms = terms.into_iter().filter(|(_, f)| !f.is_zero()).collect();
        Ok(FqElement {
            terms,
            truncation: self.truncation,
        })
    }

    fn check(&self, a: &FqElement) -> Result<()> {
        if a.truncation != self.truncation {
            return Err(Error::TruncationMismatch(a.truncation, self.truncation));
        }
        Ok(())
    }

    /// `Ind_{Gₙ×Gₘ}^{G_{n+m}} (f ⊠ h)`
    fn product_terms(
        &self,
        n: usize,
        f: &ClassFunction,
        m: usize,
        h: &ClassFunction,
    ) -> Result<ClassFunction> {
        let emb = &self.embeddings[&(n, m)];
        induce(emb, &external_tensor_on(emb.source(), f, h)?)
    }

    fn coproduct_terms(&self, n: usize, f: &ClassFunction) -> Result<Vec<SplitTerm>> {
        (0..=n)
            .map(|m| {
                let emb = &self.embeddings[&(m, n - m)];
                let res = restrict(emb, f)?;
                let mat = split_tensor(&res, self.levels[m].group(), self.levels[n - m].group())?;
                Ok(((m, n - m), mat))
            })
            .collect()
    }

    /// Induction product; terms landing above the truncation are dropped.
    pub fn product(&self, a: &FqElement, b: &FqElement) -> Result<FqElement> {
        self.check(a)?;
        self.check(b)?;
        let mut terms: BTreeMap<usize, ClassFunction> = BTreeMap::new();
        for (&n, f) in &a.terms {
            for (&m, h) in &b.terms {
                if n + m > self.truncation {
                    continue;
                }
                let p = self.product_terms(n, f, m, h)?;
                let slot = terms.entry(n + m);
                match slot {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let sum = e.get().add(&p)?;
                        e.insert(sum);
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(p);
                    }
                }
            }
        }
        self.element(terms)
    }

    /// Restriction coproduct in the tensor basis.
    pub fn coproduct(&self, a: &FqElement) -> Result<Coproduct> {
        self.check(a)?;
        let mut components = BTreeMap::new();
        for (&n, f) in &a.terms {
            for (split, mat) in self.coproduct_terms(n, f)? {
                components.insert(split, mat);
            }
        }
        Ok(Coproduct { components })
    }

    pub fn counit(&self, a: &FqElement) -> Rational {
        a.terms
            .get(&0)
            .map(|f| f.value(0).clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn antipode(&self, a: &FqElement) -> Result<FqElement> {
        self.check(a)?;
        let mut out = Vector::new();
        for (k, c) in self.to_vec(a) {
            for (k2, v) in &self.antipodes[k.0][k.1] {
                accumulate(&mut out, *k2, v * &c);
            }
        }
        self.element_of(&out)
    }

    fn to_vec(&self, a: &FqElement) -> Vector {
        let mut v = Vector::new();
        for (&n, f) in &a.terms {
            v.extend(to_vector(n, f));
        }
        v
    }

    fn element_of(&self, v: &Vector) -> Result<FqElement> {
        let mut terms = BTreeMap::new();
        for (&(n, c), x) in v {
            let f = terms
                .entry(n)
                .or_insert_with(|| ClassFunction::zero(self.levels[n].group().clone()));
            let mut vals = f.values().to_vec();
            vals[c] += x;
            *f = ClassFunction::new(self.levels[n].group().clone(), vals)?;
        }
        self.element(terms)
    }

    fn basis_keys(&self) -> Vec<Key> {
        (0..=self.truncation)
            .flat_map(|n| (0..self.dim(n)).map(move |c| (n, c)))
            .collect()
    }

    fn mul_vec(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::new();
        for (ka, ca) in x {
            for (kb, cb) in y {
                if ka.0 + kb.0 > self.truncation {
                    continue;
                }
                for (k, v) in &self.products[&(*ka, *kb)] {
                    accumulate(&mut out, *k, v * ca * cb);
                }
            }
        }
        out
    }

    fn basis_mul(&self, a: Key, b: Key) -> Vector {
        if a.0 + b.0 > self.truncation {
            return Vector::new();
        }
        self.products[&(a, b)].clone()
    }

    /// Replaces tensor factor `pos` by the image of a linear map given on basis
    /// keys as a tensor of any arity (0 for the counit).
    fn map_factor(&self, t: &Tensor, pos: usize, f: impl Fn(Key) -> Tensor) -> Tensor {
        let mut out = Tensor::new();
        for (keys, c) in t {
            for (img, v) in f(keys[pos]) {
                let mut k = keys[..pos].to_vec();
                k.extend(img);
                k.extend_from_slice(&keys[pos + 1..]);
                accumulate(&mut out, k, v * c);
            }
        }
        out
    }

    fn delta(&self, k: Key) -> Tensor {
        self.coproducts[k.0][k.1].clone()
    }

    fn epsilon(k: Key) -> Tensor {
        if k.0 == 0 {
            Tensor::from([(vec![], Rational::one())])
        } else {
            Tensor::new()
        }
    }

    fn multiply2(&self, t: &Tensor) -> Vector {
        let mut out = Vector::new();
        for (keys, c) in t {
            for (k, v) in self.basis_mul(keys[0], keys[1]) {
                accumulate(&mut out, k, v * c);
            }
        }
        out
    }

    fn vec_as_tensor(v: &Vector) -> Tensor {
        v.iter().map(|(k, c)| (vec![*k], c.clone())).collect()
    }

    /// Product in `A ⊗ A`: `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    fn mul_tensor2(&self, x: &Tensor, y: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        for (kx, cx) in x {
            for (ky, cy) in y {
                let left = self.basis_mul(kx[0], ky[0]);
                let right = self.basis_mul(kx[1], ky[1]);
                for (a, va) in &left {
                    for (b, vb) in &right {
                        accumulate(&mut out, vec![*a, *b], va * vb * cx * cy);
                    }
                }
            }
        }
        out
    }

    /// Checks every Hopf axiom exactly on the full indicator basis up to the
    /// truncation degree.
    pub fn hopf_axiom_report(&self) -> HopfReport {
        let keys = self.basis_keys();
        let n_max = self.truncation;
        let unit: Vector = Vector::from([((0, 0), Rational::one())]);
        let single = |k: Key| Vector::from([(k, Rational::one())]);

        let mut assoc = AxiomCheck::new("associativity");
        'outer: for &a in &keys {
            for &b in &keys {
                for &c in &keys {
                    if a.0 + b.0 + c.0 > n_max {
                        continue;
                    }
                    assoc.checked += 1;
                    let lhs = self.mul_vec(&self.basis_mul(a, b), &single(c));
                    let rhs = self.mul_vec(&single(a), &self.basis_mul(b, c));
                    if lhs != rhs {
                        assoc.fail(format!(
                            "({})({})({})",
                            show_key(a),
                            show_key(b),
                            show_key(c)
                        ));
                        break 'outer;
                    }
                }
            }
        }

        let mut coassoc = AxiomCheck::new("coassociativity");
        for &x in &keys {
            coassoc.checked += 1;
            let d = self.delta(x);
            let lhs = self.map_factor(&d, 0, |k| self.delta(k));
            let rhs = self.map_factor(&d, 1, |k| self.delta(k));
            if lhs != rhs {
                coassoc.fail(show_key(x));
                break;
            }
        }

        let mut unit_counit = AxiomCheck::new("unit_counit");
        if self.delta((0, 0)) != Tensor::from([(vec![(0, 0), (0, 0)], Rational::one())]) {
            unit_counit.fail("coproduct of the unit".into());
        }
        for &x in &keys {
            if !unit_counit.passed {
                break;
            }
            unit_counit.checked += 1;
            let sx = single(x);
            let d = self.delta(x);
            let checks = [
                self.mul_vec(&unit, &sx) == sx,
                self.mul_vec(&sx, &unit) == sx,
                self.map_factor(&d, 0, Self::epsilon) == Self::vec_as_tensor(&sx),
                self.map_factor(&d, 1, Self::epsilon) == Self::vec_as_tensor(&sx),
            ];
            if checks.iter().any(|ok| !ok) {
                unit_counit.fail(show_key(x));
            }
        }
        // counit is multiplicative
        'eps: for &a in &keys {
            for &b in &keys {
                if a.0 + b.0 > n_max || !unit_counit.passed {
                    continue;
                }
                unit_counit.checked += 1;
                let lhs = self
                    .basis_mul(a, b)
                    .get(&(0, 0))
                    .cloned()
                    .unwrap_or_else(Rational::zero);
                let rhs = Rational::from_integer(((a.0 == 0 && b.0 == 0) as i64).into());
                if lhs != rhs {
                    unit_counit.fail(format!("counit of {} * {}", show_key(a), show_key(b)));
                    break 'eps;
                }
            }
        }

        let mut bialg = AxiomCheck::new("bialgebra");
        'bi: for &a in &keys {
            for &b in &keys {
                if a.0 + b.0 > n_max {
                    continue;
                }
                bialg.checked += 1;
                let ab = Self::vec_as_tensor(&self.basis_mul(a, b));
                let lhs = self.map_factor(&ab, 0, |k| self.delta(k));
                let rhs = self.mul_tensor2(&self.delta(a), &self.delta(b));
                if lhs != rhs {
                    bialg.fail(format!("{} * {}", show_key(a), show_key(b)));
                    break 'bi;
                }
            }
        }

        let mut antipode = AxiomCheck::new("antipode");
        for &x in &keys {
            antipode.checked += 1;
            let d = self.delta(x);
            let expected = if x.0 == 0 {
                unit.clone()
            } else {
                Vector::new()
            };
            let s = |k: Key| Self::vec_as_tensor(&self.antipodes[k.0][k.1]);
            let left = self.multiply2(&self.map_factor(&d, 0, s));
            let right = self.multiply2(&self.map_factor(&d, 1, s));
            if left != expected || right != expected {
                antipode.fail(show_key(x));
                break;
            }
        }

        HopfReport {
            group: self.base.name().to_string(),
            truncation: self.truncation,
            checks: vec![assoc, coassoc, unit_counit, bialg, antipode],
        }
    }

    /// `ab = ba` on every basis pair (no signs, everything is even).
    pub fn is_commutative(&self) -> bool {
        let keys = self.basis_keys();
        keys.iter().all(|&a| {
            keys.iter().all(|&b| {
                a.0 + b.0 > self.truncation || self.basis_mul(a, b) == self.basis_mul(b, a)
            })
        })
    }
}

fn to_vector(n: usize, f: &ClassFunction) -> Vector {
    f.values()
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| ((n, c), v.clone()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub passed: bool,
    /// Number of basis instances examined.
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl AxiomCheck {
    fn new(axiom: &'static str) -> Self {
        AxiomCheck {
            axiom,
            passed: true,
            checked: 0,
            counterexample: None,
        }
    }

    fn fail(&mut self, what: String) {
        self.passed = false;
        self.counterexample.get_or_insert(what);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HopfReport {
    pub group: String,
    pub truncation: usize,
    pub checks: Vec<AxiomCheck>,
}

impl HopfReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Builds the algebra and checks it.
pub fn hopf_axiom_report(
    base: &Arc<FiniteGroup>,
    truncation: usize,
    cap: usize,
) -> Result<HopfReport> {
    Ok(FqAlgebra::new(base.clone(), truncation, cap)?.hopf_axiom_report())
}

/// `∏_{r≥1} (1 + q^r)^{d1} / ∏_{r≥1} (1 - q^r)^{d0}` up to `q^N`.
pub fn fq_dim_series(d0: u64, d1: u64, truncation: usize) -> QSeries {
    odd_product(d1, truncation)
        .mul(&eta_power(-(d0 as i64), truncation))
        .expect("equal truncations")
}

/// Graded dimensions of `Sym(V₀) ⊗ Λ(V₁)` up to degree `N`, where `Vᵢ` has
/// `genᵢ[r]` generators in degree `r ≥ 1`.
pub fn supersymmetric_dims(
    gen0: &BTreeMap<usize, u64>,
    gen1: &BTreeMap<usize, u64>,
    truncation: usize,
) -> Vec<BigUint> {
    let mut dims = vec![BigUint::zero(); truncation + 1];
    dims[0] = BigUint::one();
    for (&r, &count) in gen0 {
        if r == 0 || r > truncation {
            continue;
        }
        for _ in 0..count {
            // one polynomial generator: 1 + q^r + q^{2r} + ...
            let old = dims.clone();
            for i in 0..=truncation {
                let mut j = r;
                while j <= i {
                    dims[i] += &old[i - j];
                    j += r;
                }
            }
        }
    }
    for (&r, &count) in gen1 {
        if r == 0 || r > truncation {
            continue;
        }
        for _ in 0..count {
            // one exterior generator: 1 + q^r
            let old = dims.clone();
            for i in r..=truncation {
                dims[i] += &old[i - r];
            }
        }
    }
    dims
}
