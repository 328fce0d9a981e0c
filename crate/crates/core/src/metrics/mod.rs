//! Distinguishability measures between channels.

mod chain;
mod entropic;
mod iso;
mod trace;

pub use chain::{bistochastic_chaining_check, chain_rule_check, BistochasticChaining, ChainRuleReport};
pub use entropic::{
    entropic_divergence_k, entropic_divergence_k1, entropic_divergence_pauli_closed,
    entropic_divergence_scaled_rotation, Argmax, DivergenceOptions, DivergenceResult, Method,
};
pub use iso::{choi_map_distances, d_t_iso, d_t_pauli_iso, map_bounds_report, MapBounds, MapDistances, UpperBound};
pub use trace::{trace_channel_divergence_unital, trace_divergence_k1_numeric};

use crate::channel::QuantumChannel;
use crate::error::{Error, Result};

fn check_same_dim<A, B>(e: &A, f: &B) -> Result<usize>
where
    A: QuantumChannel + ?Sized,
    B: QuantumChannel + ?Sized,
{
    if e.dim() != f.dim() {
        return Err(Error::DimensionMismatch { expected: e.dim(), found: f.dim() });
    }
    Ok(e.dim())
}
