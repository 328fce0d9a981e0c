use nalgebra::{Matrix3, SymmetricEigen, Vector3};

use super::check_same_dim;
use super::entropic::{maximize_on_sphere, Argmax, DivergenceOptions, DivergenceResult, Method};
use crate::channel::QuantumChannel;
use crate::error::{Error, Result};
use crate::state::BlochVector;

fn unital_distortion<C: QuantumChannel + ?Sized>(c: &C) -> Result<Matrix3<f64>> {
    if c.dim() != 2 {
        return Err(Error::NotQubit(c.dim()));
    }
    let fano = c.fano()?;
    let l = fano.translation().amax();
    if l > 1e-10 {
        return Err(Error::NotUnital(l));
    }
    Ok(*fano.distortion())
}

/// sup_ρ T(E(ρ), F(ρ)) for unital qubit maps: ½ √λ_max(ΔᵀΔ) with Δ = Λ_E − Λ_F.
pub fn trace_channel_divergence_unital<A, B>(e: &A, f: &B) -> Result<f64>
where
    A: QuantumChannel + ?Sized,
    B: QuantumChannel + ?Sized,
{
    check_same_dim(e, f)?;
    let diff = unital_distortion(e)? - unital_distortion(f)?;
    let gram = diff.transpose() * diff;
    let top = SymmetricEigen::new(gram).eigenvalues.max().max(0.0);
    Ok(0.5 * top.sqrt())
}

/// Direct search of sup_r ½|(Λ_E − Λ_F) r + l_E − l_F| over the Bloch sphere.
pub fn trace_divergence_k1_numeric<A, B>(e: &A, f: &B, opts: &DivergenceOptions) -> Result<DivergenceResult>
where
    A: QuantumChannel + ?Sized,
    B: QuantumChannel + ?Sized,
{
    check_same_dim(e, f)?;
    if e.dim() != 2 {
        return Err(Error::NotQubit(e.dim()));
    }
    let (fe, ff) = (e.fano()?, f.fano()?);
    let diff = fe.distortion() - ff.distortion();
    let shift = fe.translation() - ff.translation();
    let objective = |r: &Vector3<f64>| 0.5 * (diff * r + shift).norm();
    let best = maximize_on_sphere(objective, opts);
    Ok(DivergenceResult {
        value: best.value,
        argmax: Argmax::Bloch(BlochVector::new([best.r[0], best.r[1], best.r[2]])?),
        method: Method::GridRefine,
        evaluations: best.evaluations,
        converged: best.converged,
    })
}
