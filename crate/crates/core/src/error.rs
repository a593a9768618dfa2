use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live over different base instances ({left} vs {right})")]
    InstanceMismatch { left: String, right: String },

    #[error("base instance {0} carries no coalgebra structure")]
    UnsupportedCoalgebra(String),

    #[error("base instance {0} carries no filtration")]
    NoFiltration(String),

    #[error("degree of the zero element is undefined")]
    UndefinedDegree,

    #[error("malformed tensor word: {0}")]
    MalformedWord(String),

    #[error("generator `{generator}` is not declared by base instance {instance}")]
    UnknownGenerator { generator: String, instance: String },

    #[error("negative exponent {exponent} on `{generator}` outside a Laurent base")]
    NegativeExponent { generator: String, exponent: i32 },

    #[error("overlap r = {r} out of range for m = {m}, n = {n}")]
    OverlapOutOfRange { m: usize, n: usize, r: usize },

    #[error("word lengths ({left}, {right}) do not match injection pair for m = {m}, n = {n}")]
    LengthMismatch {
        left: usize,
        right: usize,
        m: usize,
        n: usize,
    },

    #[error("operator weight {target} does not match the required weight {context}")]
    WeightMismatch { context: String, target: String },

    #[error("operator is not involutive: {0}")]
    NotInvolutive(String),

    #[error("operator fails the {identity} identity: {witness}")]
    IdentityFailure { identity: String, witness: String },

    #[error("product engines disagree on {0}")]
    EngineMismatch(String),

    #[error("invalid weight scaling: {0}")]
    InvalidScaling(String),

    #[error("filtration violated while computing the antipode of {0}")]
    FiltrationViolation(String),

    #[error("cannot parse rational `{0}`")]
    ParseRational(String),

    #[error("{0}")]
    Parse(String),
}
