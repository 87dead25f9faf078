//! Exact-arithmetic engine for deciding monogenity questions about number
//! fields defined by trinomials `x^n + a x + b`.
//!
//! The crate is organised bottom-up:
//!
//! - [`intarith`]: p-adic valuations, residue units, Moebius function and
//!   counts of monic irreducible polynomials over prime fields.
//! - [`fqpoly`]: dense polynomial arithmetic and factorization over `F_p`
//!   and over single-step extensions `F_q = F_p[x]/(g)`.
//! - [`zpoly`]: integer polynomials, trinomial discriminants, phi-adic
//!   developments, lift selection, irreducibility certificates and the
//!   Dedekind maximality test.
//! - [`newton`]: principal phi-Newton polygons, residual polynomials,
//!   phi-index counts and admissible developments.
//! - [`ore`]: factorization shapes of `p Z_K` via polygon sides and
//!   residual factors, lift refinement and a restricted second-order
//!   (augmented-valuation) layer.
//! - [`monogenity`]: common-index-divisor witnesses, monogenity
//!   certificates for the supported trinomial families, and the top-level
//!   analysis entry point.
//! - [`report`]: versioned structured report rendering (text and JSON).
//!
//! All arithmetic is exact: valuations are explicit [`intarith::Valuation`]
//! values, slopes are reduced fraction pairs, and big integers are used
//! throughout. No floating point is involved anywhere.

pub mod fqpoly;
pub mod intarith;
pub mod monogenity;
pub mod newton;
pub mod ore;
pub mod report;
pub mod zpoly;

use thiserror::Error;

/// Domain errors shared by every module. Library paths never panic on bad
/// input; they return one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("{0} is not a factor of the reduction")]
    NotAFactor(String),
    #[error("not a development of the target polynomial")]
    NotADevelopment,
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("invalid trinomial: {0}")]
    InvalidTrinomial(String),
    #[error("mismatched field contexts")]
    FieldMismatch,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
