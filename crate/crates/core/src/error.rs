use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    /// A fusion datum failed one of its axioms.
    #[error("fusion datum violates {axiom}: {detail}")]
    Invariant { axiom: &'static str, detail: String },

    #[error("unstable type (g, n) = ({g}, {n}): need 2g - 2 + n > 0")]
    Unstable { g: u32, n: usize },

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },

    #[error("ambient mismatch: ({0}, {1}) vs ({2}, {3})")]
    AmbientMismatch(u32, usize, u32, usize),

    #[error("divisor is not a separating one-edge graph of the ambient type")]
    NonSeparatingDivisor,

    /// The self-intersection of a boundary divisor picks up excess terms
    /// that the divisor calculus does not model.
    #[error("unsupported product: divisor side (genus {genus}, no markings) would need excess-intersection corrections")]
    CorrectionRequired { genus: u32 },

    #[error("graph is not a tree")]
    NotATree,

    #[error("label sum {sum} is not divisible by {r}")]
    LabelSumNotDivisible { sum: u64, r: u32 },

    #[error("R-matrix is not symplectic: R(z) R*(-z) != 1 at label {0}")]
    NonSymplectic(String),

    #[error("rank is zero; the Chern character is the zero class")]
    ZeroRank,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("{0}")]
    Precondition(String),
}

impl Error {
    /// True for failures of the limited product calculus rather than bad input.
    pub fn is_unsupported(&self) -> bool {
        matches!(self, Error::CorrectionRequired { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
