use thiserror::Error;

/// Errors produced by curve construction, counting, and structure analysis.
///
/// Contract violations that can only arise from caller bugs (combining
/// elements of different fields, adding points of different curves) panic
/// instead; everything data-dependent is reported here.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is too small; the field characteristic must exceed 3")]
    PrimeTooSmall(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("invalid residue class {residue} mod {modulus}")]
    InvalidResidueClass { residue: u64, modulus: u64 },
    #[error("bound {bound} is below the minimum {min}")]
    BoundTooSmall { bound: u64, min: u64 },
    #[error("curve coefficient a must be nonzero in F_{p}")]
    ZeroCurveCoefficient { p: u64 },
    #[error("({x}, {y}) does not satisfy y^2 = x^3 + {b} over F_{p}")]
    PointNotOnCurve { p: u64, b: u64, x: u64, y: u64 },
    #[error("p = {p} exceeds the point-enumeration bound {bound}")]
    EnumerationBoundExceeded { p: u64, bound: u64 },
    #[error("claimed group order {claimed} does not annihilate the point; the count is wrong")]
    InconsistentGroupOrder { claimed: u64 },
    #[error("duplication is undefined when y = 0")]
    DuplicationUndefined,
    #[error("coordinates do not satisfy y^2 - x^3 = c")]
    NotASolution,
    #[error("operation requires p = 1 (mod 6), got p = {p}")]
    NotOneMod6 { p: u64 },
    #[error("g = {g} is not a quadratic non-residue mod {p}")]
    NotANonResidue { g: u64, p: u64 },
    #[error("invariant factors ({n}, {nm}) are inconsistent with order {order} over F_{p}")]
    InvariantFactorViolation { n: u64, nm: u64, order: u64, p: u64 },
    #[error("randomized structure unverified after {samples} samples; best candidate ({n}, {nm})")]
    UnverifiedStructure { n: u64, nm: u64, samples: usize },
    #[error("report parse error: {0}")]
    ReportParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
