use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("ring {p}^{k} does not fit the supported code width")]
    Overflow { p: u64, k: u32 },
    #[error("operands belong to different rings")]
    SpecMismatch,
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("unsupported matrix dimension {0} (supported: 2..=4)")]
    UnsupportedDim(usize),
    #[error("matrix code space for {0} does not fit the supported width")]
    CodeSpaceTooLarge(String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("matrix is not invertible (determinant is not a unit)")]
    NotInvertible,
    #[error("code {code} is out of range (must be < {bound})")]
    CodeOutOfRange { code: u128, bound: u128 },
    #[error("unknown generator catalog {0:?}")]
    UnknownCatalog(String),
    #[error("matrix is not an element of the group")]
    NotInGroup,
    #[error("closure grew past the limit of {0} elements")]
    LimitExceeded(u64),
    #[error("estimated memory of {needed} bytes exceeds the budget of {budget} bytes")]
    MemoryBudgetExceeded { needed: u64, budget: u64 },
    #[error("group order {order} exceeds the enumeration budget of {budget} elements")]
    BudgetExceeded { order: String, budget: u64 },
    #[error("group order {0} is too large for the quadratic oracle")]
    TooLarge(u64),
    #[error("code {0} is absent from the element table")]
    IndexNotFound(u64),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Short machine-readable name used in JSON error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonPrime(_) => "NonPrime",
            Error::Overflow { .. } => "Overflow",
            Error::SpecMismatch => "SpecMismatch",
            Error::DimMismatch(..) => "DimMismatch",
            Error::UnsupportedDim(_) => "UnsupportedDim",
            Error::CodeSpaceTooLarge(_) => "CodeSpaceTooLarge",
            Error::NotAUnit => "NotAUnit",
            Error::NotInvertible => "NotInvertible",
            Error::CodeOutOfRange { .. } => "CodeOutOfRange",
            Error::UnknownCatalog(_) => "UnknownCatalog",
            Error::NotInGroup => "NotInGroup",
            Error::LimitExceeded(_) => "LimitExceeded",
            Error::MemoryBudgetExceeded { .. } => "MemoryBudgetExceeded",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::TooLarge(_) => "TooLarge",
            Error::IndexNotFound(_) => "IndexNotFound",
            Error::Invariant(_) => "Invariant",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
            Error::Json(_) => "Json",
            Error::Csv(_) => "Csv",
        }
    }

    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::LimitExceeded(_)
            | Error::MemoryBudgetExceeded { .. }
            | Error::BudgetExceeded { .. }
            | Error::TooLarge(_) => 3,
            Error::IndexNotFound(_) | Error::Invariant(_) => 4,
            Error::Io(_) | Error::Json(_) | Error::Csv(_) => 1,
            _ => 2,
        }
    }
}
