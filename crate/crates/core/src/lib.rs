//! Eigenpolynomials of finite-order differential operators with polynomial
//! coefficients, certified root finding, and zero-distribution diagnostics.

pub mod classical;
pub mod error;
pub mod measures;
pub mod operator;
pub mod poly;
pub mod report;
pub mod roots;

pub use classical::{
    bochner_operator, classical_monic, gram_schmidt_ops, inner_product, Family, MomentFunctional,
};
pub use error::{Error, ParseError, Result};
pub use measures::{ks_distance, root_measure, ArcsineLaw, ProbeSettings, RootMeasure};
pub use operator::{AdmissibilityReport, Degeneracy, DiffOperator, Eigenpolynomial};
pub use poly::{Poly, Rat};
pub use roots::{find_roots, find_roots_with, RootConfig, RootSet};

/// The order-4 Legendre-type Krall operator with `a_4 = (x² - 1)²`, as JSON.
pub const KRALL_LEGENDRE_JSON: &str = include_str!("../data/krall_legendre.json");
