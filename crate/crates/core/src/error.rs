use thiserror::Error;

use crate::scalars::Rat;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("leading residue of zero is undefined")]
    ZeroInput,
    #[error("uniformizer power with non-integral exponent {0} is not in this field")]
    NonIntegralExponent(Rat),
    #[error("weight vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial involves variable {var} beyond level {level}")]
    VariableOutOfScope { var: String, level: usize },
    #[error("constant coefficient vanishes: the variety meets a coordinate hyperplane")]
    ZeroConstantTerm,
    #[error("Newton polygon has a single vertex (zero width)")]
    DegeneratePolygon,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("coefficients must have valuation zero")]
    NonConstantValuation,
    #[error("ideal is not homogeneous")]
    NotHomogeneous,
    #[error("operation not supported over this field: {0}")]
    UnsupportedField(String),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("not a triangular set: {0}")]
    NotTriangular(String),
    #[error("residue polynomial has no usable root: {0}")]
    NoResidueRoot(String),
    #[error("residue root is not simple: {0}")]
    MultipleResidueRoot(String),
    #[error("residue equation has no rational root: {0}")]
    IrrationalResidueRoot(String),
    #[error("Newton polygon at level {level} still ambiguous at precision cap {cap}")]
    InsufficientPrecision { level: usize, cap: u32 },
    #[error("variety is not contained in the torus: {0}")]
    NonTorusVariety(String),
    #[error("no admissible substitution found after {0} attempts")]
    ExhaustedAttempts(usize),
    #[error("projection of the homogeneity space covers the whole weight space")]
    ProjectionCoversSpace,
    #[error("computed point lies in the homogeneity space")]
    TrivialPoint,
    #[error("tropical variety is not combinatorially a curve (Krull dimension {krull}, homogeneity space dimension {lineality})")]
    NotCombinatoriallyCurve { krull: i64, lineality: usize },
    #[error("slice {coord} -> t^{exponent} is not zero-dimensional (try --precondition)")]
    DegenerateSlice { coord: String, exponent: Rat },
    #[error("syntax error at {line}:{col}: {msg} (expected {})", expected.join(", "))]
    Syntax { line: usize, col: usize, msg: String, expected: Vec<String> },
    #[error("unknown variable '{name}' at {line}:{col}")]
    UnknownVariable { name: String, line: usize, col: usize },
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable name used in result documents.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::ZeroInput => "ZeroInput",
            Error::NonIntegralExponent(_) => "NonIntegralExponent",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::VariableOutOfScope { .. } => "VariableOutOfScope",
            Error::ZeroConstantTerm => "ZeroConstantTerm",
            Error::DegeneratePolygon => "DegeneratePolygon",
            Error::ResourceLimit(_) => "ResourceLimit",
            Error::NonConstantValuation => "NonConstantValuation",
            Error::NotHomogeneous => "NotHomogeneous",
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::NotZeroDimensional => "NotZeroDimensional",
            Error::NotTriangular(_) => "NotTriangular",
            Error::NoResidueRoot(_) => "NoResidueRoot",
            Error::MultipleResidueRoot(_) => "MultipleResidueRoot",
            Error::IrrationalResidueRoot(_) => "IrrationalResidueRoot",
            Error::InsufficientPrecision { .. } => "InsufficientPrecision",
            Error::NonTorusVariety(_) => "NonTorusVariety",
            Error::ExhaustedAttempts(_) => "ExhaustedAttempts",
            Error::ProjectionCoversSpace => "ProjectionCoversSpace",
            Error::TrivialPoint => "TrivialPoint",
            Error::NotCombinatoriallyCurve { .. } => "NotCombinatoriallyCurve",
            Error::DegenerateSlice { .. } => "DegenerateSlice",
            Error::Syntax { .. } => "SyntaxError",
            Error::UnknownVariable { .. } => "UnknownVariable",
            Error::NonPrimeModulus(_) => "NonPrimeModulus",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    /// Resource and precision failures map to their own exit code.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceLimit(_) | Error::InsufficientPrecision { .. } | Error::ExhaustedAttempts(_))
    }
}
