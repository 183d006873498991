//! Rational class functions with induction, restriction and the external
//! tensor product.
//!
//! Values are stored one per conjugacy class, in the group's class-table
//! order. Everything here is closed over ℚ, so no cyclotomic arithmetic is
//! needed.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{direct_product, FiniteGroup, GroupEmbedding};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Rational>,
}

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl ClassFunction {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<Rational>) -> Result<Self> {
        if values.len() != group.class_count() {
            return Err(Error::InvalidInput(format!(
                "{} values for {} classes",
                values.len(),
                group.class_count()
            )));
        }
        Ok(ClassFunction { group, values })
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let k = group.class_count();
        ClassFunction {
            group,
            values: vec![Rational::zero(); k],
        }
    }

    pub fn constant(group: Arc<FiniteGroup>, c: Rational) -> Self {
        let k = group.class_count();
        ClassFunction {
            group,
            values: vec![c; k],
        }
    }

    /// Builds `g ↦ f(g)` from a function on elements. `f` must be constant on
    /// classes; only class representatives are evaluated.
    pub fn from_element_fn(group: Arc<FiniteGroup>, f: impl Fn(usize) -> Rational) -> Self {
        let values = group.class_table().reps().into_iter().map(f).collect();
        ClassFunction { group, values }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Rational {
        &self.values[class]
    }

    /// Value at an element.
    pub fn eval(&self, g: usize) -> &Rational {
        &self.values[self.group.class_table().class_of(g)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        Ok(ClassFunction {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.values.iter().map(|v| v.to_string()).collect()
    }
}

/// 1 on class `c`, 0 elsewhere.
pub fn indicator(group: &Arc<FiniteGroup>, class: usize) -> Result<ClassFunction> {
    let k = group.class_count();
    if class >= k {
        return Err(Error::InvalidInput(format!(
            "class index {class} out of range 0..{k}"
        )));
    }
    let mut f = ClassFunction::zero(group.clone());
    f.values[class] = Rational::one();
    Ok(f)
}

/// Frobenius induction along `emb: H → G`, evaluated literally as
/// `(Ind f)(g) = |H|⁻¹ Σ_{x ∈ G, x⁻¹gx ∈ H} f(x⁻¹gx)`.
pub fn induce(emb: &GroupEmbedding, f: &ClassFunction) -> Result<ClassFunction> {
    if !same_group(emb.source(), f.group()) {
        return Err(Error::GroupMismatch);
    }
    let target = emb.target();
    let h_order = Rational::from_integer(emb.source().order().into());
    let values = target
        .class_table()
        .reps()
        .into_iter()
        .map(|g| {
            let mut acc = Rational::zero();
            for x in 0..target.order() {
                if let Some(h) = emb.preimage(target.conjugate(g, x)) {
                    acc += f.eval(h);
                }
            }
            acc / &h_order
        })
        .collect();
    Ok(ClassFunction {
        group: target.clone(),
        values,
    })
}

/// `(Res f)(h) = f(emb(h))`
pub fn restrict(emb: &GroupEmbedding, f: &ClassFunction) -> Result<ClassFunction> {
    if !same_group(emb.target(), f.group()) {
        return Err(Error::GroupMismatch);
    }
    Ok(ClassFunction::from_element_fn(emb.source().clone(), |h| {
        f.eval(emb.map(h)).clone()
    }))
}

/// `f ⊠ h` on a product group laid out as by [`direct_product`]
/// (element `(a, b)` at index `a·|H| + b`).
pub fn external_tensor_on(
    product: &Arc<FiniteGroup>,
    f: &ClassFunction,
    h: &ClassFunction,
) -> Result<ClassFunction> {
    let n = h.group().order();
    if product.order() != f.group().order() * n {
        return Err(Error::GroupMismatch);
    }
    Ok(ClassFunction::from_element_fn(product.clone(), |x| {
        f.eval(x / n) * h.eval(x % n)
    }))
}

/// `f ⊠ h` on a freshly built `G × H`.
pub fn external_tensor(f: &ClassFunction, h: &ClassFunction, cap: usize) -> Result<ClassFunction> {
    let (product, _, _) = direct_product(f.group(), h.group(), cap)?;
    external_tensor_on(&product, f, h)
}

/// Inverse of the external tensor product: the coefficient matrix of a class
/// function on `G × H` in the basis `δ_c ⊠ δ_d`, indexed `[c][d]`.
pub fn split_tensor(
    f: &ClassFunction,
    left: &Arc<FiniteGroup>,
    right: &Arc<FiniteGroup>,
) -> Result<Vec<Vec<Rational>>> {
    let n = right.order();
    if f.group().order() != left.order() * n {
        return Err(Error::GroupMismatch);
    }
    let rreps = right.class_table().reps();
    Ok(left
        .class_table()
        .reps()
        .into_iter()
        .map(|a| rreps.iter().map(|&b| f.eval(a * n + b).clone()).collect())
        .collect())
}

/// `⟨f, h⟩ = |G|⁻¹ Σ_g f(g) h(g)`
pub fn inner_product(f: &ClassFunction, h: &ClassFunction) -> Result<Rational> {
    if !same_group(f.group(), h.group()) {
        return Err(Error::GroupMismatch);
    }
    let ct = f.group().class_table();
    let mut acc = Rational::zero();
    for c in 0..ct.len() {
        acc += Rational::from_integer(ct.size(c).into()) * &f.values[c] * &h.values[c];
    }
    Ok(acc / Rational::from_integer(f.group().order().into()))
}
