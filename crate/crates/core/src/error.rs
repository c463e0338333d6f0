use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("not an exact rational: {0:?}")]
    BadRational(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("operator term k = {0} appears more than once")]
    DuplicateOrder(usize),
    #[error("operator term order must be at least 1, got {0}")]
    ZeroOrder(usize),
    #[error("operator has no nonzero terms")]
    EmptyOperator,
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("bad family spec {0:?}: {1}")]
    BadFamilySpec(String, String),
    #[error("not a complex number: {0:?}")]
    BadComplex(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("operator is not admissible: {0}")]
    NotAdmissible(String),

    /// `λ_n = λ_j` for the listed `j < n` and the triangular system could
    /// not be solved there. `inconsistent` is the subset with no solution at
    /// all; the rest are free coordinates.
    #[error("degenerate spectrum: eigenvalue collides at indices {indices:?} (inconsistent: {inconsistent:?})")]
    DegenerateSpectrum {
        indices: Vec<usize>,
        inconsistent: Vec<usize>,
    },

    #[error("cannot find roots of a polynomial of degree < 1")]
    NoRoots,

    #[error("root finder did not certify {target_digits} digits below the precision ceiling of {ceiling} bits")]
    NoConvergence { target_digits: u32, ceiling: u32 },

    #[error("measure has atoms off the real line")]
    NonRealAtoms,

    #[error("probe point is within {distance} of a root (guard {guard})")]
    ProbeTooCloseToRoot { distance: String, guard: String },

    #[error("leading coefficient a_{order} has degree {degree:?} < {order}")]
    LeadingDegreeTooLow { order: usize, degree: Option<usize> },

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("sequence must be strictly increasing")]
    NotIncreasing,

    #[error("non-positive value where a positive one is required: {0}")]
    NonPositive(String),

    #[error("bad parameters for {family}: {reason}")]
    BadParameters { family: String, reason: String },

    /// Gram-Schmidt found `<p_order, p_order> <= 0`. `hankel` is the Hankel
    /// determinant of that order, as a diagnostic.
    #[error(
        "moment functional is not positive definite at order {order} (Hankel determinant {hankel})"
    )]
    NotPositiveDefinite { order: usize, hankel: String },

    #[error("need {needed} moments, functional has {have}")]
    InsufficientMoments { needed: usize, have: usize },

    #[error("invalid interval: need a < b")]
    BadInterval,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
