//! Exact arbitrary-precision building blocks: base-`k` fractions, integer
//! polynomials, rational intervals, root isolation and Sturm counts.
//!
//! Everything here is pure and exact; no floating point is used anywhere.

mod interval;
mod kadic;
mod poly;
mod roots;

pub use interval::RatInterval;
pub use kadic::KAdic;
pub use poly::{poly_gcd, IntPoly};
pub use roots::{isolate_unique_positive_root, refine_root, sturm_count};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactNumError {
    /// The polynomial does not have exactly one coefficient sign change after
    /// removing its power-of-x factor, so the unique-positive-root machinery
    /// does not apply.
    #[error("polynomial has {changes} coefficient sign changes after deflation; exactly one is required")]
    NotSingleSignChange { changes: usize },
    #[error("the zero polynomial has no roots to isolate")]
    ZeroPolynomial,
    #[error("interval endpoint is a root; perturb the interval before counting")]
    EndpointIsRoot,
    #[error("cannot parse {input:?} as {expected}")]
    Parse { input: String, expected: &'static str },
}
