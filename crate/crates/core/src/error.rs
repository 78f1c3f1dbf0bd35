use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// The requested register would exceed [`crate::MAX_QUBITS`].
    #[error("resource limit: {qubits} qubits requested, at most {cap} allowed")]
    Resource { qubits: u32, cap: u32 },

    /// A closed form was evaluated at (or numerically at) a removable
    /// singularity.
    #[error("singularity: {0}")]
    Singularity(String),

    /// The second register did not factor out as the eigenvector after the
    /// controlled-power stage.
    #[error("second register entangled with first: residual {residual:e} exceeds {threshold:e}")]
    Entanglement { residual: f64, threshold: f64 },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// Orthonormalization of a random draw lost rank on every attempt.
    #[error("degenerate random draw after {attempts} attempts")]
    DegenerateDraw { attempts: u32 },

    #[error("check graph: {0}")]
    Graph(String),

    #[error("config: {0}")]
    Config(String),

    #[error("phase parse error: {0}")]
    PhaseParse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
