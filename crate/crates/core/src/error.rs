use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("precision p^{exponent} is out of range for p = {p}")]
    PrecisionOutOfRange { p: u64, exponent: u32 },
    #[error("degree bound {got} exceeds the supported maximum {max}")]
    DegreeOutOfRange { got: u32, max: u32 },
    #[error("duplicate coordinate label `{0}`")]
    DuplicateCoordinate(String),
    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),
    #[error("operands live in different precision contexts")]
    ContextMismatch,
    #[error("exponent vector has length {got}, expected {expected}")]
    ExponentLength { got: usize, expected: usize },
    #[error("monomial of total degree {degree} exceeds the degree bound {bound}")]
    DegreeExceeded { degree: u32, bound: u32 },
    #[error("congruence modulo p^{requested} requested but coefficients are only known modulo p^{available}")]
    InsufficientPrecision { requested: u32, available: u32 },

    #[error("invalid orbit: {0}")]
    InvalidOrbit(String),
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error("self-dual orbit {orbit} has the middle slope e/2 = {half}")]
    SlopeEHalf { orbit: usize, half: u32 },
    #[error("self-dual orbit {orbit} has an odd number of slopes ({count})")]
    OddSlopeCount { orbit: usize, count: usize },

    #[error("not a partition: {0:?}")]
    NotAPartition(Vec<i64>),
    #[error("block sizes sum to {got}, expected {expected}")]
    CompositionMismatch { expected: usize, got: usize },
    #[error("weight does not match the datum: {0}")]
    ShapeMismatch(String),
    #[error("weight is not positive: {0}")]
    NotPositive(String),
    #[error("weight is not simple: {0}")]
    NotSimple(String),

    #[error("coordinate assignment mismatch: {0}")]
    AssignmentMismatch(String),
    #[error("theta hypotheses fail: {0}")]
    ThetaHypotheses(String),
    #[error("binomial exponent {exponent} on coordinate `{coordinate}` is not a p-adic unit")]
    NonUnitExponent { coordinate: String, exponent: u64 },
    #[error("measure seed must be given in the (1+u)^a basis")]
    NotBinomial,
    #[error("exhaustive check over {0} unit tuples is beyond the supported size")]
    EnumerationTooLarge(u64),
}

impl Error {
    /// Plain statement of the precondition a domain error violates.
    pub fn precondition(&self) -> Option<&'static str> {
        Some(match self {
            Error::SlopeEHalf { .. } => {
                "self-dual orbits must not have e/2 as a slope; the Levi factor would be unitary rather than a product of GL blocks"
            }
            Error::OddSlopeCount { .. } => {
                "a self-dual orbit without the slope e/2 has an even number of slopes"
            }
            Error::InsufficientPrecision { .. } => {
                "a congruence modulo p^m needs coefficients known modulo p^M with m <= M"
            }
            Error::NotSimple(_) => {
                "theta operators are defined for symmetric weights supported on the highest-slope block of orbits where f(tau) is never 0 or n"
            }
            Error::ThetaHypotheses(_) => {
                "congruent weights modulo p^m(p-1) whose differing gaps and last entries exceed m"
            }
            Error::NonUnitExponent { .. } => {
                "measures live on products of p-adic units, so seed exponents must be prime to p"
            }
            Error::ContextMismatch => "operands must share prime, precision, degree bound and coordinates",
            _ => return None,
        })
    }
}
