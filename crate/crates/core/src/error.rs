use thiserror::Error;

use crate::rational::{fmt_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("density weights do not compose: left operator has source weight {left}, right operator has target weight {right}")]
    WeightMismatch { left: String, right: String },

    #[error("operands live over different dimensions (ell = {0} vs ell = {1})")]
    DimensionMismatch(usize, usize),

    #[error("symbol basis mismatch: expected {expected}, found {found}")]
    BasisMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("delta = {delta} is projectively resonant: binomial denominator vanishes at degree k = {k}, s = {s}")]
    ProjectiveResonance { delta: String, k: usize, s: usize },

    #[error("delta = {delta} is contact-resonant: binomial denominator vanishes at zeta-degree c = {c}, s = {s}")]
    ContactResonance { delta: String, c: usize, s: usize },

    #[error("subsymbol of order {k} is undefined at delta = {delta}")]
    SubsymbolExcluded { delta: String, k: usize },

    #[error("the zero operator has no {0}")]
    ZeroOperator(&'static str),

    #[error("expected a single monomial, found {0} terms")]
    NotMonomial(usize),

    #[error("vector field is not tangential: its contact component is {0}")]
    NotTangential(String),

    #[error("invalid fine bidegree (k, d) = ({k}, {d}); need k <= d <= 2k")]
    InvalidBidegree { k: i64, d: i64 },

    #[error("pairs must satisfy k' < k, or k' = k and d' < d")]
    OrderingViolated,

    #[error("unknown {kind}: {name}")]
    Unknown { kind: &'static str, name: String },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0}")]
    Domain(String),
}

impl Error {
    pub(crate) fn projective(delta: &Rational, k: usize, s: usize) -> Self {
        Error::ProjectiveResonance {
            delta: fmt_rational(delta),
            k,
            s,
        }
    }

    pub(crate) fn contact(delta: &Rational, c: usize, s: usize) -> Self {
        Error::ContactResonance {
            delta: fmt_rational(delta),
            c,
            s,
        }
    }

    /// Resonance and other mathematical domain failures, as opposed to malformed input.
    pub fn is_domain_error(&self) -> bool {
        !matches!(self, Error::Parse { .. } | Error::Unknown { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
