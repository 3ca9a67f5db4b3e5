use thiserror::Error;

/// Errors raised by the algebra and complex routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomials live in different rings")]
    RingMismatch,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("prime {0} is too large (must be below 2^31)")]
    PrimeTooLarge(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("zero polynomial has no lead term")]
    ZeroPolynomial,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("entry at map {map}, row {row}, col {col} is not homogeneous of degree {expected:?}")]
    Inhomogeneous {
        map: usize,
        row: usize,
        col: usize,
        expected: Vec<i64>,
    },

    #[error("not a complex: A_{} A_{} is nonzero", .0 - 1, .0)]
    NotAComplex(usize),

    #[error("complex is not minimal: map {map} has a unit entry at ({row}, {col})")]
    NotMinimal { map: usize, row: usize, col: usize },

    #[error("invalid grading: {0}")]
    Grading(String),

    #[error("truncation bound {bound} is below the generator degree {degree}")]
    BoundTooSmall { bound: i64, degree: i64 },

    #[error("k = {k} exceeds n = {n}")]
    TooManyRows { k: usize, n: usize },

    #[error("`{0}` is a zero cell of the pattern")]
    ZeroCell(String),

    #[error("the ideal is zero")]
    ZeroIdeal,

    #[error("the ideal is the unit ideal")]
    UnitIdeal,

    #[error("`{0}` is not a monomial")]
    NotMonomial(String),

    #[error("minimal primes do not intersect to the ideal")]
    Decomposition,

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("monomial ideal is not squarefree")]
    NotSquarefree,

    #[error("variables `{0}` and `{1}` are not in the same column")]
    CrossColumn(String, String),

    #[error("invalid weights: {0}")]
    Weights(String),

    #[error("negative Betti difference at ({i}, {j})")]
    NegativeBetti { i: usize, j: i64 },

    #[error("pure diagram coefficients are negative: a1 = {a1}, a2 = {a2}")]
    NegativeCoefficients { a1: String, a2: String },

    #[error("pure diagram combination has non-integral Betti number {value} at position {i}")]
    NonIntegralBetti { i: usize, value: String },

    #[error("Groebner certification failed for pair ({0}, {1})")]
    NotGroebner(usize, usize),

    #[error("empty Betti table")]
    EmptyBetti,

    #[error("invalid term order: {0}")]
    TermOrder(String),
}

pub type Result<T> = std::result::Result<T, Error>;
