use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max |H - H^dagger| = {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not unitary (max |U^dagger U - I| = {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("not a probability distribution: {0}")]
    NotDistribution(String),

    #[error("invalid density operator: {0}")]
    InvalidDensity(String),

    #[error("ket is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operators do not commute (max |AB - BA| = {residual:.3e})")]
    NotCommuting { residual: f64 },

    #[error("failed to find a common eigenbasis after {attempts} attempts")]
    NoCommonBasis { attempts: usize },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("invalid irreducible representation set: {0}")]
    InvalidIrreps(String),

    #[error("irreducible representations of group `{0}` are not built in; supply them explicitly")]
    UnsupportedGroup(String),

    #[error("irrep set is incomplete (sum of squared dimensions {sum} != group order {order})")]
    IncompleteIrrepSet { sum: usize, order: usize },

    #[error("reference states are undefined: {0}")]
    ReferenceStateUndefined(String),

    #[error("group `{0}` is not abelian")]
    NonAbelianGroup(String),

    #[error("encoder {encoder} is not G-invariant (element {element}, residual {residual:.3e})")]
    EncoderNotInvariant { encoder: usize, element: String, residual: f64 },

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("dimension {dim} exceeds the cap of {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },

    #[error("unknown element label `{0}`")]
    UnknownElement(String),
}

pub type Result<T> = std::result::Result<T, Error>;
