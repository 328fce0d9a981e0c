//! Qubit Hamiltonian evolutions H = h⁰1 + h·σ (ħ = ω = 1) followed by
//! depolarizing decoherence at rate Γ.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::channel::{FanoForm, KrausChannel};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::metrics::{choi_map_distances, d_t_iso, entropic_divergence_scaled_rotation};
use crate::optimize::golden_section_max;
use crate::state::BlochVector;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianSpec {
    h0: f64,
    h: Vector3<f64>,
}

fn check_unit(h: &Vector3<f64>) -> Result<()> {
    let n = h.norm();
    if !((n - 1.0).abs() <= 1e-12) {
        return Err(Error::NotUnitVector(n));
    }
    Ok(())
}

impl HamiltonianSpec {
    pub fn new(h0: f64, h: Vector3<f64>) -> Result<Self> {
        check_unit(&h)?;
        Ok(Self { h0, h })
    }

    pub fn h0(&self) -> f64 {
        self.h0
    }

    pub fn axis(&self) -> &Vector3<f64> {
        &self.h
    }

    /// e^{−iHt} = e^{−ih⁰t}(cos t − i sin t h·σ)
    pub fn unitary(&self, t: f64) -> CMatrix {
        let mut hs = CMatrix::zeros(2, 2);
        for i in 0..3 {
            hs += linalg::pauli(i + 1).scale(self.h[i]);
        }
        let u = linalg::identity(2).scale(t.cos()) - hs * Complex64::new(0.0, t.sin());
        u * Complex64::from_polar(1.0, -self.h0 * t)
    }

    pub fn unitary_channel(&self, t: f64) -> KrausChannel {
        KrausChannel::unitary(self.unitary(t)).expect("e^{-iHt} is unitary")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoherenceParams {
    pub gamma: f64,
    pub t: f64,
}

impl DecoherenceParams {
    pub fn new(gamma: f64, t: f64) -> Result<Self> {
        for v in [gamma, t] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidParameter(format!("expected finite nonnegative value, got {v}")));
            }
        }
        Ok(Self { gamma, t })
    }
}

/// [h], the matrix of r ↦ h × r.
pub fn skew(h: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, -h[2], h[1], h[2], 0.0, -h[0], -h[1], h[0], 0.0)
}

/// cos2t(1 − hhᵀ) + sin2t[h] + hhᵀ, the rotation by 2t about h.
pub fn unitary_distortion(h: &Vector3<f64>, t: f64) -> Result<Matrix3<f64>> {
    check_unit(h)?;
    let hh = h * h.transpose();
    let (s, c) = (2.0 * t).sin_cos();
    Ok((Matrix3::identity() - hh) * c + skew(h) * s + hh)
}

/// e^{2t[h]} by matrix exponential.
pub fn unitary_distortion_exp(h: &Vector3<f64>, t: f64) -> Result<Matrix3<f64>> {
    check_unit(h)?;
    Ok((skew(h) * (2.0 * t)).exp())
}

/// Λ = e^{−Γt} e^{2t[h]}, l = 0.
pub fn decohered_channel(h: &Vector3<f64>, gamma: f64, t: f64) -> Result<FanoForm> {
    let p = DecoherenceParams::new(gamma, t)?;
    FanoForm::unital(unitary_distortion(h, p.t)? * (-p.gamma * p.t).exp())
}

/// r(t) = e^{−Γt} e^{2t[h]} r₀
pub fn bloch_trajectory(h: &Vector3<f64>, gamma: f64, r0: &BlochVector, times: &[f64]) -> Result<Vec<BlochVector>> {
    times
        .iter()
        .map(|&t| decohered_channel(h, gamma, t)?.map_bloch(r0))
        .collect()
}

/// The two axes compared throughout: h₁ = z, h₂ = (sin θ, 0, cos θ).
pub fn axis_pair(theta: f64) -> (Vector3<f64>, Vector3<f64>) {
    (Vector3::z(), Vector3::new(theta.sin(), 0.0, theta.cos()))
}

/// Tr[Λ₁ᵀΛ₂] for unitary distortions with h₁·h₂ = cos θ.
pub fn tr_lambda_product(theta: f64, t: f64) -> f64 {
    2.0 * (2.0 * theta).cos() * t.sin().powi(4)
        + 2.0 * theta.cos() * (2.0 * t).sin().powi(2)
        + (2.0 * t).cos()
        + 0.75 * (4.0 * t).cos()
        + 1.25
}

/// Time of maximal distinguishability of the noiseless evolutions.
pub fn noiseless_t_max(theta: f64) -> f64 {
    let c = theta.cos();
    if c >= 0.0 {
        std::f64::consts::FRAC_PI_2
    } else {
        0.5 * ((c + 1.0) / (c - 1.0)).acos()
    }
}

/// ½[1 − e^{−Γt}|sin t|]
pub fn error_probability(gamma: f64, t: f64) -> f64 {
    0.5 * (1.0 - (-gamma * t).exp() * t.sin().abs())
}

/// arctan(1/Γ), with π/2 at Γ = 0.
pub fn error_t_opt(gamma: f64) -> f64 {
    if gamma == 0.0 {
        std::f64::consts::FRAC_PI_2
    } else {
        (1.0 / gamma).atan()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeMeasure {
    DtIso,
    DtK1,
    /// Bures distance between the Choi states.
    Bures,
    PError,
}

impl TimeMeasure {
    fn maximized(self) -> bool {
        !matches!(self, TimeMeasure::PError)
    }
}

/// The chosen measure between the decohered evolutions about h₁ and h₂.
pub fn measure_at(theta: f64, gamma: f64, t: f64, measure: TimeMeasure) -> Result<f64> {
    let (h1, h2) = axis_pair(theta);
    match measure {
        TimeMeasure::DtIso => d_t_iso(&decohered_channel(&h1, gamma, t)?, &decohered_channel(&h2, gamma, t)?),
        TimeMeasure::DtK1 => {
            let alpha = (-gamma * t).exp();
            let r1 = unitary_distortion(&h1, t)?;
            let r2 = unitary_distortion(&h2, t)?;
            Ok(entropic_divergence_scaled_rotation(alpha, &r1, alpha, &r2)?.value)
        }
        TimeMeasure::Bures => {
            Ok(choi_map_distances(&decohered_channel(&h1, gamma, t)?, &decohered_channel(&h2, gamma, t)?)?.bures)
        }
        TimeMeasure::PError => Ok(error_probability(gamma, t)),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeScan {
    pub t_star: f64,
    pub value: f64,
    /// (t, value) on the input grid.
    pub curve: Vec<(f64, f64)>,
}

/// 512 points on (0, π].
pub fn default_time_grid() -> Vec<f64> {
    (1..=512).map(|i| std::f64::consts::PI * i as f64 / 512.0).collect()
}

/// Grid optimum (maximum, or minimum for the error probability) refined by
/// golden-section search between the neighbouring grid points. Ties on the
/// grid go to the earliest time.
pub fn optimal_time_scan(theta: f64, gamma: f64, measure: TimeMeasure, t_grid: &[f64]) -> Result<TimeScan> {
    if t_grid.is_empty() {
        return Err(Error::Empty("time grid"));
    }
    let curve: Vec<(f64, f64)> = t_grid
        .par_iter()
        .map(|&t| measure_at(theta, gamma, t, measure).map(|v| (t, v)))
        .collect::<Result<_>>()?;
    let sign = if measure.maximized() { 1.0 } else { -1.0 };
    let best = curve.iter().map(|&(_, v)| sign * v).fold(f64::NEG_INFINITY, f64::max);
    let i = curve.iter().position(|&(_, v)| sign * v >= best - 1e-12).expect("nonempty grid");

    let lo = if i > 0 { curve[i - 1].0 } else { curve[i].0 };
    let hi = if i + 1 < curve.len() { curve[i + 1].0 } else { curve[i].0 };
    let (mut t_star, mut value) = curve[i];
    if hi > lo {
        let mut failed = None;
        let (t, v, _) = golden_section_max(
            |t| match measure_at(theta, gamma, t, measure) {
                Ok(v) => sign * v,
                Err(e) => {
                    failed = Some(e);
                    f64::NEG_INFINITY
                }
            },
            lo,
            hi,
            1e-8,
        );
        if let Some(e) = failed {
            return Err(e);
        }
        if v > sign * value {
            t_star = t;
            value = sign * v;
        }
    }
    Ok(TimeScan { t_star, value, curve })
}
