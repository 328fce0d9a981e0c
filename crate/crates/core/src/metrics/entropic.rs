use nalgebra::{Matrix3, Vector3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::check_same_dim;
use crate::channel::{PauliChannel, QuantumChannel};
use crate::divergence::transmission_distance_matrices;
use crate::error::{Error, Result};
use crate::linalg::{c, CVector};
use crate::optimize::{fibonacci_sphere, nelder_mead, NelderMeadOptions};
use crate::sampling::random_pure;
use crate::state::{bloch_entropy, BlochVector, PureState};

/// Search budget for the numeric divergences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivergenceOptions {
    /// Fibonacci directions scanned for qubit inputs.
    pub grid_size: usize,
    /// Simplex iterations per refinement on the sphere.
    pub refine_iters: usize,
    /// Grid points refined.
    pub top_k: usize,
    /// Random starting states for the amplitude search.
    pub restarts: usize,
    /// Simplex iterations per amplitude-search start.
    pub restart_iters: usize,
    pub ftol: f64,
    pub seed: u64,
}

impl Default for DivergenceOptions {
    fn default() -> Self {
        Self {
            grid_size: 2048,
            refine_iters: 200,
            top_k: 8,
            restarts: 32,
            restart_iters: 4000,
            ftol: 1e-9,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    GridRefine,
}

/// Where the supremum is attained.
#[derive(Debug, Clone, PartialEq)]
pub enum Argmax {
    State(PureState),
    Bloch(BlochVector),
    /// Bloch axes (0 = x, 1 = y, 2 = z); ± each axis attains the value.
    Axes(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceResult {
    pub value: f64,
    pub argmax: Argmax,
    pub method: Method,
    pub evaluations: usize,
    pub converged: bool,
}

pub(crate) struct SphereMax {
    pub r: Vector3<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

fn tangent_basis(r: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let a = r.iamin();
    let mut helper = Vector3::zeros();
    helper[a] = 1.0;
    let e1 = r.cross(&helper).normalize();
    let e2 = r.cross(&e1);
    (e1, e2)
}

/// Grid scan of the unit sphere followed by simplex refinement in the tangent
/// plane of the best grid points.
pub(crate) fn maximize_on_sphere<F>(objective: F, opts: &DivergenceOptions) -> SphereMax
where
    F: Fn(&Vector3<f64>) -> f64 + Sync,
{
    let grid: Vec<Vector3<f64>> = fibonacci_sphere(opts.grid_size.max(1)).into_iter().map(Vector3::from).collect();
    let values: Vec<f64> = grid.iter().map(&objective).collect();
    let mut order: Vec<usize> = (0..grid.len()).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));

    let nm = NelderMeadOptions { initial_step: 0.05, max_iters: opts.refine_iters, ftol: opts.ftol, xtol: 1e-7 };
    let runs: Vec<SphereMax> = order
        .iter()
        .take(opts.top_k.max(1))
        .map(|&i| {
            let r0 = grid[i];
            let (e1, e2) = tangent_basis(&r0);
            let point = |x: &[f64]| (r0 + e1 * x[0] + e2 * x[1]).normalize();
            let m = nelder_mead(|x| -objective(&point(x)), &[0.0, 0.0], &nm);
            SphereMax { r: point(&m.x), value: -m.value, evaluations: m.evaluations, converged: m.converged }
        })
        .collect();

    let evaluations = grid.len() + runs.iter().map(|r| r.evaluations).sum::<usize>();
    let mut best = runs
        .into_iter()
        .reduce(|best, run| if run.value > best.value { run } else { best })
        .expect("at least one refinement");
    let top = order[0];
    if values[top] >= best.value {
        best = SphereMax { r: grid[top], value: values[top], evaluations: 0, converged: best.converged };
    }
    best.evaluations = evaluations;
    best
}

/// QJSD between qubit states with Bloch vectors a and b.
pub(crate) fn bloch_qjsd(a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    let mid = (a + b) * 0.5;
    let value = bloch_entropy(mid.norm_squared()) - 0.5 * (bloch_entropy(a.norm_squared()) + bloch_entropy(b.norm_squared()));
    value.clamp(0.0, 1.0)
}

pub(crate) fn pure_from_bloch(r: &Vector3<f64>) -> PureState {
    let r = r.normalize();
    let theta = r[2].clamp(-1.0, 1.0).acos();
    let phi = r[1].atan2(r[0]);
    let v = CVector::from_vec(vec![
        c((theta / 2.0).cos()),
        num_complex::Complex64::from_polar((theta / 2.0).sin(), phi),
    ]);
    PureState::normalized(v).expect("unit Bloch vector")
}

/// d_t^{K=1}(E, F) = sup over pure ψ of d_t(E(ψ), F(ψ)).
///
/// Qubit channels are searched over the Bloch sphere; larger dimensions use
/// the amplitude search of [`entropic_divergence_k`].
pub fn entropic_divergence_k1<A, B>(e: &A, f: &B, opts: &DivergenceOptions) -> Result<DivergenceResult>
where
    A: QuantumChannel + ?Sized,
    B: QuantumChannel + ?Sized,
{
    let n = check_same_dim(e, f)?;
    if n != 2 {
        return amplitude_search(e, f, 1, opts, None);
    }
    let (fe, ff) = (e.fano()?, f.fano()?);
    let objective = |r: &Vector3<f64>| {
        let a = fe.distortion() * r + fe.translation();
        let b = ff.distortion() * r + ff.translation();
        bloch_qjsd(&a, &b).sqrt()
    };
    let best = maximize_on_sphere(objective, opts);
    Ok(DivergenceResult {
        value: best.value,
        argmax: Argmax::State(pure_from_bloch(&best.r)),
        method: Method::GridRefine,
        evaluations: best.evaluations,
        converged: best.converged,
    })
}

/// d_t^K(E, F) = sup over pure σ on C^N ⊗ C^K of d_t((E⊗1)(σ), (F⊗1)(σ)).
///
/// Multi-start simplex search over normalized amplitudes. For K > 1 one start
/// is the K = 1 optimum tensored with |0⟩, so the result never falls below the
/// K = 1 value.
pub fn entropic_divergence_k<A, B>(e: &A, f: &B, k: usize, opts: &DivergenceOptions) -> Result<DivergenceResult>
where
    A: QuantumChannel + ?Sized,
    B: QuantumChannel + ?Sized,
{
    let n = check_same_dim(e, f)?;
    if k == 0 || n * k > 16 {
        return Err(Error::InvalidParameter(format!("ancilla dimension {k} with N = {n} (need 1 <= N*K <= 16)")));
    }
    if k == 1 {
        return entropic_divergence_k1(e, f, opts);
    }
    let base = entropic_divergence_k1(e, f, opts)?;
    let warm = match &base.argmax {
        Argmax::State(psi) => {
            let mut v = CVector::zeros(n * k);
            for a in 0..n {
                v[a * k] = psi.amplitudes()[a];
            }
            Some(v)
        }
        _ => None,
    };
    let mut result = amplitude_search(e, f, k, opts, warm)?;
    result.evaluations += base.evaluations;
    Ok(result)
}

fn to_params(v: &CVector) -> Vec<f64> {
    // Remove the global phase so the first amplitude is real.
    let phase = if v[0].norm() > 0.0 { v[0].conj() / v[0].norm() } else { c(1.0) };
    let mut x = vec![(v[0] * phase).re];
    for a in v.iter().skip(1) {
        let a = a * phase;
        x.push(a.re);
        x.push(a.im);
    }
    x
}

fn from_params(x: &[f64], d: usize) -> Option<CVector> {
    let mut v = CVector::zeros(d);
    v[0] = c(x[0]);
    for j in 1..d {
        v[j] = num_complex::Complex64::new(x[2 * j - 1], x[2 * j]);
    }
    let norm = v.norm();
    if norm < 1e-12 || !norm.is_finite() {
        return None;
    }
    Some(v.unscale(norm))
}

fn amplitude_search<A, B>(
    e: &A,
    f: &B,
    k: usize,
    opts: &DivergenceOptions,
    warm: Option<CVector>,
) -> Result<DivergenceResult>
where
    A: QuantumChannel + ?Sized,
    B: QuantumChannel + ?Sized,
{
    let (ke, kf) = (e.kraus()?, f.kraus()?);
    let d = ke.dim() * k;
    let objective = |x: &[f64]| -> f64 {
        match from_params(x, d) {
            Some(v) => {
                let sigma = &v * v.adjoint();
                transmission_distance_matrices(
                    &ke.apply_extended_matrix(&sigma, k),
                    &kf.apply_extended_matrix(&sigma, k),
                )
            }
            None => 0.0,
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut starts: Vec<CVector> = warm.into_iter().collect();
    for _ in 0..opts.restarts.max(1) {
        starts.push(random_pure(d, &mut rng).amplitudes().clone());
    }
    let nm = NelderMeadOptions { initial_step: 0.1, max_iters: opts.restart_iters, ftol: opts.ftol, xtol: 1e-6 };
    let runs: Vec<_> = starts
        .par_iter()
        .map(|v| nelder_mead(|x| -objective(x), &to_params(v), &nm))
        .collect();

    let evaluations = runs.iter().map(|m| m.evaluations).sum();
    let best = runs
        .iter()
        .enumerate()
        .reduce(|best, run| if run.1.value < best.1.value { run } else { best })
        .map(|(_, m)| m)
        .expect("at least one start");
    let psi = PureState::normalized(from_params(&best.x, d).expect("optimizer keeps a nonzero vector"))?;
    Ok(DivergenceResult {
        value: (-best.value).clamp(0.0, 1.0),
        argmax: Argmax::State(psi),
        method: Method::GridRefine,
        evaluations,
        converged: best.converged,
    })
}

/// Closed form for two Pauli channels: the supremum sits on a Bloch axis,
/// max_i √(f(c̄_i²) − ½[f(c_pi²) + f(c_qi²)]) with f(x) = H₂((1 − √x)/2).
pub fn entropic_divergence_pauli_closed(p: &PauliChannel, q: &PauliChannel) -> DivergenceResult {
    let (cp, cq) = (p.distortion_diagonal(), q.distortion_diagonal());
    let per_axis: Vec<f64> = (0..3)
        .map(|i| {
            let mean = 0.5 * (cp[i] + cq[i]);
            let gap = bloch_entropy(mean * mean) - 0.5 * (bloch_entropy(cp[i] * cp[i]) + bloch_entropy(cq[i] * cq[i]));
            gap.clamp(0.0, 1.0).sqrt()
        })
        .collect();
    let value = per_axis.iter().copied().fold(0.0, f64::max);
    let axes = (0..3).filter(|&i| value - per_axis[i] <= 1e-12).collect();
    DivergenceResult { value, argmax: Argmax::Axes(axes), method: Method::ClosedForm, evaluations: 3, converged: true }
}

fn check_rotation(r: &Matrix3<f64>) -> Result<()> {
    let orth = (r.transpose() * r - Matrix3::identity()).amax();
    if !(orth <= 1e-9) {
        return Err(Error::NotRotation(format!("max |RᵀR − I| = {orth:e}")));
    }
    let det = r.determinant();
    if (det - 1.0).abs() > 1e-9 {
        return Err(Error::NotRotation(format!("determinant {det}")));
    }
    Ok(())
}

/// Closed form for unital qubit maps Λ_i = α_i R_i with R_i proper rotations.
///
/// The average output Bloch vector has squared length
/// r_opt = [α₁² + α₂² + α₁α₂(Tr[R₁ᵀR₂] − 1)]/4 on inputs orthogonal to the
/// axis of R₁ᵀR₂, which minimizes it.
pub fn entropic_divergence_scaled_rotation(
    alpha1: f64,
    r1: &Matrix3<f64>,
    alpha2: f64,
    r2: &Matrix3<f64>,
) -> Result<DivergenceResult> {
    for alpha in [alpha1, alpha2] {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::OutsideUnitInterval(alpha));
        }
    }
    check_rotation(r1)?;
    check_rotation(r2)?;
    let relative = r1.transpose() * r2;
    let argmax = Argmax::Bloch(BlochVector::new(orthogonal_to_axis(&relative))?);
    if alpha1 == alpha2 && r1 == r2 {
        return Ok(DivergenceResult { value: 0.0, argmax, method: Method::ClosedForm, evaluations: 1, converged: true });
    }
    let r_opt = (alpha1 * alpha1 + alpha2 * alpha2 + alpha1 * alpha2 * (relative.trace() - 1.0)) / 4.0;
    let gap = bloch_entropy(r_opt) - 0.5 * (bloch_entropy(alpha1 * alpha1) + bloch_entropy(alpha2 * alpha2));
    Ok(DivergenceResult {
        value: gap.clamp(0.0, 1.0).sqrt(),
        argmax,
        method: Method::ClosedForm,
        evaluations: 1,
        converged: true,
    })
}

/// A unit vector orthogonal to the rotation axis of `m`.
fn orthogonal_to_axis(m: &Matrix3<f64>) -> [f64; 3] {
    let skew = Vector3::new(m[(2, 1)] - m[(1, 2)], m[(0, 2)] - m[(2, 0)], m[(1, 0)] - m[(0, 1)]);
    let axis = if skew.norm() > 1e-9 {
        skew.normalize()
    } else {
        // Angle 0 or π: the axis spans the +1 eigenspace, read off M + 1.
        let sym = m + Matrix3::identity();
        let col = (0..3).max_by(|&a, &b| sym.column(a).norm().total_cmp(&sym.column(b).norm())).unwrap();
        let v = sym.column(col).into_owned();
        if v.norm() > 1e-9 {
            v.normalize()
        } else {
            Vector3::z()
        }
    };
    let (e1, _) = tangent_basis(&axis);
    [e1[0], e1[1], e1[2]]
}
