use thiserror::Error;

use crate::state::{Backend, ProbeId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("register must contain at least one qubit")]
    EmptyRegister,

    #[error("register of {0} qubits exceeds the supported maximum of {max}", max = crate::state::MAX_QUBITS)]
    TooManyQubits(usize),

    #[error("initial amplitudes are not normalized: |c0|^2 + |c1|^2 = {0}")]
    NotNormalized(f64),

    #[error("qubit {qubit} is out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("qubit {0} has been lost")]
    LostQubit(usize),

    #[error("qubit {0} is already lost")]
    AlreadyLost(usize),

    #[error("qubit {0} is not flagged as lost")]
    NotLost(usize),

    #[error("gate needs distinct qubits, got {0} twice")]
    RepeatedQubit(usize),

    #[error("probe {0} is not attached")]
    UnknownProbe(ProbeId),

    #[error("probe phase {phase} rad lies outside the expected read-out footprint")]
    WrongFootprint { phase: f64 },

    #[error("comparison needs probe-free states; measure attached probes first")]
    ProbeAttached,

    #[error("register sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("{0:?} back-end is not supported by this read-out")]
    UnsupportedBackend(Backend),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid code layout: {0}")]
    InvalidLayout(String),

    #[error("unrecoverable loss: {0}")]
    Unrecoverable(String),
}
