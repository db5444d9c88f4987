use thiserror::Error;

/// Errors raised by constructors and checked operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("atom count {atoms} exceeds the cap of {cap}")]
    TooManyAtoms { atoms: usize, cap: usize },

    #[error("operands belong to different algebras")]
    AlgebraMismatch,

    #[error("bit pattern {bits:#b} is not an element of a {atoms}-atom algebra")]
    NotAnElement { bits: u64, atoms: usize },

    #[error("atom index {index} out of range for {atoms} atoms")]
    AtomOutOfRange { index: usize, atoms: usize },

    #[error("relative algebra requires a nonzero element")]
    ZeroRelativeTop,

    #[error("element table has {got} entries, expected {expected}")]
    PartialTable { got: usize, expected: usize },

    #[error("relation matrix must be {atoms}x{atoms}")]
    BadMatrix { atoms: usize },

    #[error("set of elements is not a Boolean subalgebra: {0}")]
    NotSubalgebra(String),

    #[error("map is not a Boolean homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("contact relation required, but {0} fails")]
    NotContact(&'static str),

    #[error("element {bits:#b} is not bounded")]
    NotBounded { bits: u64 },

    #[error("local contact algebra is not valid: {0}")]
    InvalidLca(String),

    #[error("element set must contain 0 and 1")]
    MissingBounds,

    #[error("set is not dense in the required sense: {0}")]
    NotDense(String),

    #[error("set is not a base")]
    NotABase,

    #[error("dimension level {0} is below -1")]
    BadLevel(i64),

    #[error("product of an empty family")]
    EmptyProduct,

    #[error("morphisms are not composable")]
    NotComposable,

    #[error("family of sets is empty")]
    EmptyFamily,

    #[error("families have different index sets ({left} vs {right})")]
    IndexMismatch { left: usize, right: usize },

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("point map is not continuous: preimage of {open:#b} is not open")]
    Discontinuous { open: u64 },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
