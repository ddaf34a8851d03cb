use num_bigint::BigInt;
use thiserror::Error;

/// Every failure the library can report.
///
/// Mathematical outcomes (a class being non-trivial, a theorem gate not
/// applying) are never errors; these variants flag rejected inputs or
/// exhausted search budgets.
#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("degree {0} outside the supported range 2..=8")]
    DegreeOutOfRange(usize),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial is reducible (factor of degree {factor_degree})")]
    ReduciblePolynomial { factor_degree: usize },
    #[error("could not certify irreducibility")]
    IrreducibilityUndecided,
    #[error("Z[theta] is not maximal at p = {prime}")]
    NonMonogenicOrder { prime: BigInt },
    #[error("reduction mod {p} is not monic")]
    NonMonicModP { p: u64 },
    #[error("root is singular mod {p}")]
    SingularRoot { p: BigInt },
    #[error("elements or ideals belong to different fields")]
    FieldMismatch,
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("embeddings do not compose: {0}")]
    EmbeddingMismatch(String),
    #[error("Minkowski bound {bound} exceeds the factor-base limit")]
    FactorBaseTooLarge { bound: BigInt },
    #[error("relation search exhausted its budget: {0}")]
    SaturationFailure(String),
    #[error("relation lattice gives h = {relations} but the form count gives {oracle}")]
    OracleMismatch { relations: BigInt, oracle: BigInt },
    #[error("could not reduce an ideal to the factor base within budget")]
    ReductionBudgetExceeded,
    #[error("principal generator search box exhausted")]
    SearchBoxExceeded,
    #[error("field is not Galois: found {found} of {degree} automorphisms")]
    NotGalois { found: usize, degree: usize },
    #[error("non-integral cohomology order: {numerator} / {denominator}")]
    NonIntegralOrder { numerator: BigInt, denominator: BigInt },
    #[error("quotient requested for non-nested subgroups")]
    NonNestedQuotient,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("table error: {0}")]
    Table(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
