use thiserror::Error;

pub type Result<T> = std::result::Result<T, QosError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QosError {
    #[error("label `{0}` is present in both registers")]
    LabelCollision(String),
    #[error("label `{0}` appears more than once")]
    DuplicateLabel(String),
    #[error("no qutrit labelled `{0}` in the register")]
    UnknownLabel(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),
    #[error("matrix is not unitary (max |U†U - I| = {0:.3e})")]
    NonUnitary(f64),
    #[error("non-finite amplitude or matrix entry")]
    NonFinite,
    #[error("basis is not orthonormal (max deviation {0:.3e})")]
    NotOrthonormal(f64),
    #[error("basis parameters violate the normalization constraint (residual {0:.3e})")]
    ConstraintViolation(f64),
    #[error("basis parameters are degenerate: the third basis vector vanishes")]
    SingularBasis,
    #[error("outcome {0} is outside 0..=2")]
    OutcomeOutOfRange(usize),
    #[error("family {family} takes {expected} angles, got {found}")]
    ParamCount {
        family: String,
        expected: usize,
        found: usize,
    },
    #[error("unknown operation family `{0}`")]
    UnknownFamily(String),
    #[error("{party} acted on `{label}`, which it does not own")]
    NotOwned { party: String, label: String },
    #[error("success probability {probability} is not admissible for scheme {scheme}")]
    InvalidClass { scheme: String, probability: String },
    #[error("protocol invariant violated: {0}")]
    Protocol(String),
}
