use thiserror::Error;

use crate::groupkit::MatrixGroup;
use crate::qgal::QGCertificate;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the workbench can report.
///
/// Variants map one-to-one onto the stable error codes exposed by the C ABI
/// and the CLI diagnostics (see [`Error::code`]).
#[derive(Debug, Error)]
pub enum Error {
    #[error("adjunct square must be nonzero")]
    ZeroAdjunct,
    #[error("primitive {n}-th roots of unity are missing from Q(zeta_{conductor}); conductor {minimal_conductor} suffices")]
    RootsMissing {
        n: u32,
        conductor: u32,
        minimal_conductor: u32,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("nonzero element with vanishing adjunct norm (the adjunct is a square in the base field)")]
    ZeroDivisor,
    #[error("field contexts differ: {0}")]
    ContextMismatch(String),
    #[error("parse error at byte {position} in {input:?}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("line through a point and itself is undefined")]
    DegenerateLine,
    #[error("the line is contained in the curve")]
    LineInCurve,
    #[error("polynomial is identically zero")]
    ZeroPoly,
    #[error("points are equal")]
    EqualPoints,
    #[error("point {0} is not on the curve")]
    NotOnCurve(String),
    #[error("point {0} is a singular point of the curve")]
    SingularPoint(String),
    #[error("point {0} is not on the line")]
    NotIncident(String),
    #[error("projection from {point} has degree {degree} <= 1")]
    ProjectionDegenerate { point: String, degree: u32 },
    #[error("transform is not a homology: {0}")]
    NotHomology(String),
    #[error("point {0} is not quasi-Galois")]
    NotQuasiGalois(String),
    #[error("transform does not preserve the curve")]
    NotAutomorphism,
    #[error("discovery exceeded the cap of {cap} points ({} certificates found)", partial.len())]
    DiscoveryCapExceeded {
        cap: usize,
        partial: Vec<QGCertificate>,
    },
    #[error("group closure exceeded the cap of {cap} elements")]
    ClosureCapExceeded {
        cap: usize,
        partial: Box<MatrixGroup>,
    },
    #[error("{n} does not divide {degree}")]
    NotDivisible { n: u32, degree: u32 },
    #[error("prediction requires degree 2n, got n = {n}, degree = {degree}")]
    NotApplicable { n: u32, degree: u32 },
    #[error("eigenvalue structure needs root-finding: {0}")]
    IrrationalEigenvalue(String),
    #[error("not a subgroup")]
    NotSubgroup,
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("no proven census for {0}")]
    NoExpectation(String),
    #[error("invalid curve file: {0}")]
    InvalidCurveFile(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable symbolic code, shared by the CLI and the C ABI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroAdjunct => "ZERO_ADJUNCT",
            Error::RootsMissing { .. } => "ROOTS_MISSING",
            Error::DivisionByZero => "DIVISION_BY_ZERO",
            Error::ZeroDivisor => "ZERO_DIVISOR",
            Error::ContextMismatch(_) => "CONTEXT_MISMATCH",
            Error::Parse { .. } => "PARSE",
            Error::SingularMatrix => "SINGULAR_MATRIX",
            Error::DegenerateLine => "DEGENERATE_LINE",
            Error::LineInCurve => "LINE_IN_CURVE",
            Error::ZeroPoly => "ZERO_POLY",
            Error::EqualPoints => "EQUAL_POINTS",
            Error::NotOnCurve(_) => "NOT_ON_CURVE",
            Error::SingularPoint(_) => "SINGULAR_POINT",
            Error::NotIncident(_) => "NOT_INCIDENT",
            Error::ProjectionDegenerate { .. } => "PROJECTION_DEGENERATE",
            Error::NotHomology(_) => "NOT_HOMOLOGY",
            Error::NotQuasiGalois(_) => "NOT_QUASI_GALOIS",
            Error::NotAutomorphism => "NOT_AUTOMORPHISM",
            Error::DiscoveryCapExceeded { .. } | Error::ClosureCapExceeded { .. } => "CAP_EXCEEDED",
            Error::NotDivisible { .. } => "NOT_DIVISIBLE",
            Error::NotApplicable { .. } => "NOT_APPLICABLE",
            Error::IrrationalEigenvalue(_) => "IRRATIONAL_EIGENVALUE",
            Error::NotSubgroup => "NOT_SUBGROUP",
            Error::UnknownName(_) => "UNKNOWN_NAME",
            Error::BadParams(_) => "BAD_PARAMS",
            Error::NoExpectation(_) => "NO_EXPECTATION",
            Error::InvalidCurveFile(_) => "INVALID_CURVE_FILE",
            Error::Io(_) => "IO",
            Error::Json(_) => "JSON",
        }
    }
}
