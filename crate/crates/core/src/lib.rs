//! Exact computations around wreath products `G ≀ Sₙ`: conjugacy classes, the
//! graded Hopf algebra `⊕ₙ Class(G ≀ Sₙ)` under induction and restriction, its
//! q-series dimension formulas, and rational equivariant K-theory dimensions of
//! finite G-simplicial complexes via fixed-point decomposition.

pub mod classfun;
pub mod cli;
pub mod complex;
pub mod counting;
pub mod error;
pub mod group;
pub mod hopf;
pub mod io;
pub mod linalg;
pub mod qseries;
pub mod wreath;

pub use error::{Error, Result};

/// Exact rational scalars used throughout.
pub type Rational = num_rational::BigRational;
