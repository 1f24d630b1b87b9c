//! Exact arithmetic: rationals, polynomials over Q and small number fields,
//! factorization and complex root isolation.

pub mod bipoly;
pub mod factor;
pub mod linalg;
pub mod modp;
pub mod numfield;
pub mod poly;
pub mod ring;
pub mod roots;

pub use bipoly::BiPoly;
pub use factor::{factor_over_q, MAX_FACTOR_DEGREE};
pub use numfield::{NfElem, NumberField};
pub use poly::{Poly, UniPoly};
pub use ring::{rat, ratio, Field, Rat, Ring};
pub use roots::{AlgPoint, Rect};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("polynomial {0} is not irreducible over Q")]
    NotIrreducible(String),
    #[error("root isolation failed: {0}")]
    Isolation(String),
}
