use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("exponents {0} do not form a product of cyclotomic polynomials")]
    NotCyclotomicProduct(String),
    #[error("exponent {0} is an integer; the root X = 1 is not allowed")]
    IntegerExponent(String),
    #[error("normalization constant is not an integer: {0}")]
    NonIntegerC(String),
    #[error("coefficient {index} of f0 is not an integer: {value}")]
    NonIntegerCoefficient { index: usize, value: String },
    #[error("factorial ratio is not an integer: {0}")]
    NonIntegerFactorialRatio(String),
    #[error("jet is not invertible: constant term {0} is not a nonzero rational")]
    NonInvertibleJet(String),
    #[error("determinant {0} does not reduce to a rational")]
    NonRationalDeterminant(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("resonant input: {0}")]
    ResonantInput(String),
    #[error("1 + Tr(R) vanishes; I + R is not invertible")]
    TraceMinusOne,
    #[error("Γ has a pole at {0}")]
    PoleAtNonpositiveInteger(String),
    #[error("invalid contour: {0}")]
    ContourInvalid(String),
    #[error("integrand tail did not decay below tolerance (t = {0})")]
    TailNotConverged(f64),
    #[error("residue sum did not converge after {0} terms")]
    TruncationNotConverged(usize),
    #[error("series did not converge: {0}")]
    NotConverged(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
