use super::check_same_dim;
use crate::channel::{PauliChannel, QuantumChannel};
use crate::divergence::{jensen_shannon, transmission_distance, BOUND_SLACK};
use crate::error::Result;
use crate::state::{entropic_distance_from_fidelity, fidelity, trace_distance};

/// d_t^iso(E, F) = d_t(ρ_E, ρ_F).
pub fn d_t_iso<A, B>(e: &A, f: &B) -> Result<f64>
where
    A: QuantumChannel + ?Sized,
    B: QuantumChannel + ?Sized,
{
    check_same_dim(e, f)?;
    transmission_distance(e.choi()?.state(), f.choi()?.state())
}

/// State distances evaluated on the two Choi states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapDistances {
    pub trace: f64,
    pub fidelity: f64,
    pub bures: f64,
    pub entropic: f64,
}

pub fn choi_map_distances<A, B>(e: &A, f: &B) -> Result<MapDistances>
where
    A: QuantumChannel + ?Sized,
    B: QuantumChannel + ?Sized,
{
    check_same_dim(e, f)?;
    let (ce, cf) = (e.choi()?, f.choi()?);
    let trace = trace_distance(ce.state(), cf.state())?;
    let fid = fidelity(ce.state(), cf.state())?;
    Ok(MapDistances {
        trace,
        fidelity: fid,
        bures: (2.0 - 2.0 * fid.sqrt()).max(0.0).sqrt(),
        entropic: entropic_distance_from_fidelity(fid),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpperBound {
    SqrtTrace,
    Entropic,
    Equal,
}

/// T/(2√2) ≤ d_t^iso ≤ min(√T, D_E).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapBounds {
    pub lower: f64,
    pub d_t_iso: f64,
    pub upper_sqrt_t: f64,
    pub upper_de: f64,
    pub upper: f64,
    pub active: UpperBound,
    pub all_hold: bool,
}

pub fn map_bounds_report<A, B>(e: &A, f: &B) -> Result<MapBounds>
where
    A: QuantumChannel + ?Sized,
    B: QuantumChannel + ?Sized,
{
    let distances = choi_map_distances(e, f)?;
    let d = d_t_iso(e, f)?;
    let lower = distances.trace / (2.0 * std::f64::consts::SQRT_2);
    let upper_sqrt_t = distances.trace.sqrt();
    let upper_de = distances.entropic;
    let active = if upper_sqrt_t < upper_de {
        UpperBound::SqrtTrace
    } else if upper_de < upper_sqrt_t {
        UpperBound::Entropic
    } else {
        UpperBound::Equal
    };
    let upper = upper_sqrt_t.min(upper_de);
    Ok(MapBounds {
        lower,
        d_t_iso: d,
        upper_sqrt_t,
        upper_de,
        upper,
        active,
        all_hold: lower <= d + BOUND_SLACK && d <= upper + BOUND_SLACK,
    })
}

/// Pauli Choi states are simultaneously Bell-diagonal, so d_t^iso reduces to
/// the classical √JSD of the probability vectors.
pub fn d_t_pauli_iso(p: &PauliChannel, q: &PauliChannel) -> f64 {
    jensen_shannon(&p.probabilities(), &q.probabilities())
        .expect("Pauli probabilities are valid")
        .sqrt()
}
