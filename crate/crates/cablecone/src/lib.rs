//! Exact-arithmetic tools for the filtered mapping cones computing the knot
//! Floer complex of the (n,1)-cable of the meridian inside +1- and
//! 1/p-surgeries on a knot in the three-sphere.
//!
//! The pipeline: build a doubly-filtered cone from a bigraded knot complex
//! ([`mapping_cone`]), cancel filtration-preserving differentials
//! ([`reduction`]), normalize the result to a standard complex over
//! `F2[U,V]/(UV)` or the extended ring with the telescoping generators
//! ([`local_equiv`]), and read off the concordance homomorphisms and the
//! d-invariant. Everything is exact: exponents are big integers, gradings
//! big rationals, coefficients mod 2.

pub mod coefficients;
pub mod knot_complex;
pub mod mapping_cone;
pub mod reduction;
pub mod local_equiv;
pub mod cli;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input: bad CFK text, a complex failing its
    /// structural checks, out-of-range parameters, an unusable window.
    #[error("invalid input: {0}")]
    Input(String),
    /// The merge passes stopped making progress before every arrow was a
    /// single monomial on a single alternating path.
    #[error("standardization incomplete: {0}")]
    Standardization(String),
    /// A search exceeded its configured budget.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    /// Localized homology was expected to be a single tower and was not.
    #[error("homology rank check failed: {0}")]
    HomologyRank(String),
}

pub type Result<T> = std::result::Result<T, Error>;
