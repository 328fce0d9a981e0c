//! Distinguishability measures between quantum states and channels.
//!
//! Entropies are in bits. Channels act on the first factor of their Choi
//! states, |Φ⟩ = Σ_i |i⟩|i⟩/√N.

pub mod channel;
pub mod divergence;
pub mod error;
pub mod hamiltonian;
pub mod linalg;
pub mod metrics;
pub mod optimize;
pub mod sampling;
pub mod state;

pub use channel::{
    adjoint, apply, choi_of, compose, Channel, ChoiState, FanoForm, KrausChannel, PauliChannel, QuantumChannel,
    StandardChannel,
};
pub use divergence::{jensen_shannon, qjsd, qjsd_ensemble, state_bounds_report, transmission_distance, StateBounds};
pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector};
pub use metrics::{
    choi_map_distances, d_t_iso, d_t_pauli_iso, entropic_divergence_k, entropic_divergence_k1,
    entropic_divergence_pauli_closed, entropic_divergence_scaled_rotation, map_bounds_report,
    trace_channel_divergence_unital, DivergenceOptions, DivergenceResult,
};
pub use state::{
    binary_entropy, bloch_to_state, bures_distance, entropic_distance, fidelity, partial_trace, relative_entropy,
    state_to_bloch, tensor, trace_distance, von_neumann_entropy, BlochVector, DensityMatrix, PureState, TraceOut,
};
