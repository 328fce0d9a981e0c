use thiserror::Error;

/// Errors raised by state and channel constructors and by the distance measures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("not Hermitian (max |A - A^H| = {0:e})")]
    NotHermitian(f64),

    #[error("not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("state vector is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("Bloch vector outside the unit ball (|r| = {0})")]
    OutsideBlochBall(f64),

    #[error("value {0} outside the unit interval")]
    OutsideUnitInterval(f64),

    #[error("channel is not trace preserving (max |sum K^H K - I| = {0:e})")]
    NotTracePreserving(f64),

    #[error("channel is not completely positive (Choi eigenvalue {0:e})")]
    NotCompletelyPositive(f64),

    #[error("channel is not positive: image of Bloch vector has length {0}")]
    NotPositiveMap(f64),

    #[error("Pauli parameters outside the tetrahedron: p{index} = {value:e}")]
    OutsideTetrahedron { index: usize, value: f64 },

    #[error("probability vector invalid: {0}")]
    InvalidProbabilities(String),

    #[error("channel is not unital (max deviation {0:e})")]
    NotUnital(f64),

    #[error("matrix is not a proper rotation: {0}")]
    NotRotation(String),

    #[error("vector is not a unit vector (|h| = {0})")]
    NotUnitVector(f64),

    #[error("operation requires a qubit channel, got dimension {0}")]
    NotQubit(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("empty input: {0}")]
    Empty(&'static str),
}

impl Error {
    /// Whether the error reports a violated physical invariant of a state or channel
    /// (as opposed to malformed or mismatched input).
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::NotHermitian(_)
                | Error::NotPositive(_)
                | Error::InvalidTrace(_)
                | Error::NotNormalized(_)
                | Error::OutsideBlochBall(_)
                | Error::OutsideUnitInterval(_)
                | Error::NotTracePreserving(_)
                | Error::NotCompletelyPositive(_)
                | Error::NotPositiveMap(_)
                | Error::OutsideTetrahedron { .. }
                | Error::InvalidProbabilities(_)
                | Error::NotUnital(_)
                | Error::NotRotation(_)
                | Error::NotUnitVector(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
