//! Density operators, entropies and the state-space distance measures.
//!
//! All logarithms are base two; entropies are in bits. Matrix functions are
//! evaluated through a Hermitian eigendecomposition after symmetrizing the
//! input, and eigenvalues in `[-1e-8, 1e-12]` are treated as exact zeros.

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix, CVector};
use num_complex::Complex64;

/// Tolerance on `max |A - A^H|` for a valid density matrix.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Most negative eigenvalue accepted as positive semidefinite.
pub const PSD_TOL: f64 = 1e-10;
/// Tolerance on `|Tr A - 1|`.
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues at or below this are clamped to zero before logs and roots.
pub const EIGEN_FLOOR: f64 = 1e-12;
/// Eigenvalues below this are reported as an invalid state.
pub const NEGATIVE_EIGEN_ERROR: f64 = -1e-8;

/// Hermitian, positive semidefinite, unit-trace complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: CMatrix,
}

impl DensityMatrix {
    /// Validates and wraps `m`. The stored matrix is the Hermitian part of `m`.
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
        }
        if m.nrows() == 0 {
            return Err(Error::Empty("density matrix"));
        }
        let asym = linalg::max_abs_diff(&m, &m.adjoint());
        if asym > HERMITIAN_TOL {
            return Err(Error::NotHermitian(asym));
        }
        let m = linalg::hermitize(&m);
        let tr = linalg::trace(&m).re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidTrace(tr));
        }
        let min = linalg::eigvalsh(&m)[0];
        if min < -PSD_TOL {
            return Err(Error::NotPositive(min));
        }
        Ok(Self { m })
    }

    /// Wraps a matrix already known to be a state (up to round-off).
    pub(crate) fn from_matrix_unchecked(m: CMatrix) -> Self {
        Self { m: linalg::hermitize(&m) }
    }

    pub fn from_diagonal(p: &[f64]) -> Result<Self> {
        let n = p.len();
        Self::new(CMatrix::from_diagonal(&CVector::from_iterator(
            n,
            p.iter().map(|&v| c(v)),
        )))
    }

    pub fn maximally_mixed(n: usize) -> Self {
        Self { m: linalg::identity(n).scale(1.0 / n as f64) }
    }

    /// |ψ⟩⟨ψ|
    pub fn projector(psi: &PureState) -> Self {
        let v = psi.amplitudes();
        Self { m: v * v.adjoint() }
    }

    /// Computational basis projector |k⟩⟨k| in dimension `n`.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        m[(k, k)] = c(1.0);
        Self { m }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::eigvalsh(&self.m)
    }

    /// Equal-weight mixture (ρ + σ)/2.
    pub fn midpoint(&self, other: &Self) -> Result<Self> {
        check_dims(self, other)?;
        Ok(Self { m: (&self.m + &other.m).scale(0.5) })
    }

    /// Conjugation U ρ U^H.
    pub fn conjugate_by(&self, u: &CMatrix) -> Result<Self> {
        if u.nrows() != self.dim() || u.ncols() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: u.nrows() });
        }
        Ok(Self::from_matrix_unchecked(u * &self.m * u.adjoint()))
    }
}

/// Normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    v: CVector,
}

impl PureState {
    pub fn new(v: CVector) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::Empty("state vector"));
        }
        let norm = v.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { v })
    }

    /// Rescales `v` to unit norm.
    pub fn normalized(v: CVector) -> Result<Self> {
        let norm = v.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { v: v.unscale(norm) })
    }

    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = CVector::zeros(n);
        v[k] = c(1.0);
        Self { v }
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.v
    }

    pub fn projector(&self) -> DensityMatrix {
        DensityMatrix::projector(self)
    }
}

/// Qubit Bloch vector, |r| ≤ 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector([f64; 3]);

impl BlochVector {
    pub fn new(r: [f64; 3]) -> Result<Self> {
        let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
        if !norm.is_finite() || norm > 1.0 + 1e-10 {
            return Err(Error::OutsideBlochBall(norm));
        }
        Ok(Self(r))
    }

    pub fn origin() -> Self {
        Self([0.0; 3])
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    pub fn norm(&self) -> f64 {
        let r = self.0;
        (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt()
    }
}

fn check_dims(a: &DensityMatrix, b: &DensityMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    Ok(())
}

/// −Σ λ log₂ λ over an eigenvalue list with the zero-clamp convention.
pub(crate) fn spectrum_entropy(values: &[f64]) -> f64 {
    values
        .iter()
        .filter(|&&l| l > EIGEN_FLOOR)
        .map(|&l| -l * l.log2())
        .sum()
}

fn checked_spectrum(m: &CMatrix) -> Result<Vec<f64>> {
    let values = linalg::eigvalsh(m);
    if values[0] < NEGATIVE_EIGEN_ERROR {
        return Err(Error::NotPositive(values[0]));
    }
    Ok(values)
}

/// Entropy of a matrix assumed positive; negative round-off is clamped.
pub(crate) fn matrix_entropy(m: &CMatrix) -> f64 {
    spectrum_entropy(&linalg::eigvalsh(m))
}

/// Von Neumann entropy S(ρ) = −Tr ρ log₂ ρ.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    Ok(spectrum_entropy(&checked_spectrum(rho.matrix())?))
}

/// Quantum relative entropy Tr ρ(log₂ρ − log₂σ); `+inf` when supp ρ ⊄ supp σ.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_dims(rho, sigma)?;
    let neg_entropy = -von_neumann_entropy(rho)?;
    let (mu, vectors) = linalg::eigh(sigma.matrix());
    if mu[0] < NEGATIVE_EIGEN_ERROR {
        return Err(Error::NotPositive(mu[0]));
    }
    let mut cross = 0.0;
    for (k, &m) in mu.iter().enumerate() {
        let v = vectors.column(k);
        let weight = (v.adjoint() * rho.matrix() * v)[(0, 0)].re;
        if m <= EIGEN_FLOOR {
            if weight > 1e-10 {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        cross += weight * m.log2();
    }
    Ok((neg_entropy - cross).max(0.0))
}

/// Trace distance ½ Σ |eig(ρ − σ)|.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_dims(rho, sigma)?;
    Ok(trace_distance_matrices(rho.matrix(), sigma.matrix()))
}

pub(crate) fn trace_distance_matrices(a: &CMatrix, b: &CMatrix) -> f64 {
    let diff = a - b;
    let t: f64 = linalg::eigvalsh(&diff).iter().map(|v| v.abs()).sum();
    (0.5 * t).clamp(0.0, 1.0)
}

/// Uhlmann fidelity (Tr √(√ρ σ √ρ))².
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_dims(rho, sigma)?;
    if rho == sigma {
        return Ok(1.0);
    }
    let root = linalg::hermitian_function(rho.matrix(), |l| {
        if l > EIGEN_FLOOR {
            l.sqrt()
        } else {
            0.0
        }
    });
    let inner = &root * sigma.matrix() * &root;
    let s: f64 = linalg::eigvalsh(&inner)
        .iter()
        .filter(|&&l| l > EIGEN_FLOOR)
        .map(|l| l.sqrt())
        .sum();
    Ok((s * s).clamp(0.0, 1.0))
}

/// Bures distance √(2 − 2√F).
pub fn bures_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let f = fidelity(rho, sigma)?;
    Ok((2.0 - 2.0 * f.sqrt()).max(0.0).sqrt())
}

pub(crate) fn h2(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

/// Binary entropy H₂(x) in bits.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&x) {
        return Err(Error::OutsideUnitInterval(x));
    }
    Ok(h2(x))
}

/// Entropy of a qubit state as a function of its squared Bloch length:
/// f(x) = H₂((1 − √x)/2).
pub fn bloch_entropy(squared_length: f64) -> f64 {
    h2(0.5 * (1.0 - squared_length.clamp(0.0, 1.0).sqrt()))
}

/// Entropic distance D_E = √H₂(½[1 − √F]).
pub fn entropic_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let f = fidelity(rho, sigma)?;
    Ok(entropic_distance_from_fidelity(f))
}

pub(crate) fn entropic_distance_from_fidelity(f: f64) -> f64 {
    h2(0.5 * (1.0 - f.clamp(0.0, 1.0).sqrt())).sqrt()
}

/// ρ ⊗ σ
pub fn tensor(a: &DensityMatrix, b: &DensityMatrix) -> DensityMatrix {
    DensityMatrix { m: linalg::kron(a.matrix(), b.matrix()) }
}

/// Which tensor factor `partial_trace` removes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceOut {
    First,
    Second,
}

/// Partial trace of an operator on C^{d_a} ⊗ C^{d_b}.
pub fn partial_trace_matrix(m: &CMatrix, which: TraceOut, dims: (usize, usize)) -> Result<CMatrix> {
    let (da, db) = dims;
    if da == 0 || db == 0 || m.nrows() != da * db || m.ncols() != da * db {
        return Err(Error::DimensionMismatch { expected: da * db, found: m.nrows() });
    }
    Ok(match which {
        TraceOut::Second => CMatrix::from_fn(da, da, |i, j| {
            (0..db).map(|k| m[(i * db + k, j * db + k)]).sum::<Complex64>()
        }),
        TraceOut::First => CMatrix::from_fn(db, db, |i, j| {
            (0..da).map(|k| m[(k * db + i, k * db + j)]).sum::<Complex64>()
        }),
    })
}

pub fn partial_trace(rho: &DensityMatrix, which: TraceOut, dims: (usize, usize)) -> Result<DensityMatrix> {
    Ok(DensityMatrix::from_matrix_unchecked(partial_trace_matrix(rho.matrix(), which, dims)?))
}

/// ρ = ½(1 + r·σ)
pub fn bloch_to_state(r: &BlochVector) -> DensityMatrix {
    let mut m = linalg::identity(2);
    for (i, &ri) in r.components().iter().enumerate() {
        m += linalg::pauli(i + 1).scale(ri);
    }
    DensityMatrix { m: m.scale(0.5) }
}

/// r_i = Tr(ρ σ_i)
pub fn state_to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::NotQubit(rho.dim()));
    }
    let r = [1, 2, 3].map(|i| linalg::trace_product_re(rho.matrix(), &linalg::pauli(i)));
    BlochVector::new(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn plus() -> DensityMatrix {
        DensityMatrix::new(CMatrix::from_element(2, 2, c(0.5))).unwrap()
    }

    #[test]
    fn entropy_examples() {
        let mixed = DensityMatrix::maximally_mixed(2);
        assert_abs_diff_eq!(von_neumann_entropy(&mixed).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(von_neumann_entropy(&plus()).unwrap(), 0.0, epsilon = 1e-14);
        let d = DensityMatrix::from_diagonal(&[5.0 / 8.0, 1.0 / 8.0, 1.0 / 8.0, 1.0 / 8.0]).unwrap();
        // −(5/8)log₂(5/8) + 3·(1/8)·3
        let oracle = -(0.625f64) * 0.625f64.log2() + 3.0 * 0.125 * 3.0;
        assert_abs_diff_eq!(oracle, 1.548795, epsilon = 1e-6);
        assert_abs_diff_eq!(von_neumann_entropy(&d).unwrap(), oracle, epsilon = 1e-13);
    }

    #[test]
    fn invalid_states_rejected() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.2), c(-0.2)]));
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotPositive(_))));
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![c(0.6), c(0.6)]));
        assert!(matches!(DensityMatrix::new(m), Err(Error::InvalidTrace(_))));
        let mut m = linalg::identity(2).scale(0.5);
        m[(0, 1)] = c(0.1);
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotHermitian(_))));
        let m = CMatrix::zeros(2, 3);
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn entropy_rejects_strongly_negative_spectrum() {
        let bad = DensityMatrix::from_matrix_unchecked(CMatrix::from_diagonal(&CVector::from_vec(
            vec![c(1.0 + 1e-6), c(-1e-6)],
        )));
        assert!(von_neumann_entropy(&bad).is_err());
    }

    #[test]
    fn relative_entropy_examples() {
        let zero = DensityMatrix::basis(2, 0);
        let one = DensityMatrix::basis(2, 1);
        let mixed = DensityMatrix::maximally_mixed(2);
        assert_abs_diff_eq!(relative_entropy(&mixed, &mixed).unwrap(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(relative_entropy(&zero, &mixed).unwrap(), 1.0, epsilon = 1e-13);
        assert_eq!(relative_entropy(&zero, &one).unwrap(), f64::INFINITY);
        let big = DensityMatrix::maximally_mixed(3);
        assert!(matches!(relative_entropy(&zero, &big), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn trace_distance_examples() {
        let zero = DensityMatrix::basis(2, 0);
        let one = DensityMatrix::basis(2, 1);
        assert_abs_diff_eq!(trace_distance(&zero, &zero).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(trace_distance(&zero, &one).unwrap(), 1.0, epsilon = 1e-15);
        // ρ − σ has eigenvalues ±1/√2
        assert_abs_diff_eq!(trace_distance(&zero, &plus()).unwrap(), std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);
        assert!(trace_distance(&zero, &DensityMatrix::maximally_mixed(4)).is_err());
    }

    #[test]
    fn fidelity_examples() {
        let zero = DensityMatrix::basis(2, 0);
        let one = DensityMatrix::basis(2, 1);
        let mixed = DensityMatrix::maximally_mixed(2);
        assert_abs_diff_eq!(fidelity(&mixed, &mixed).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(fidelity(&zero, &one).unwrap(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(fidelity(&zero, &mixed).unwrap(), 0.5, epsilon = 1e-12);
        assert!(fidelity(&zero, &DensityMatrix::maximally_mixed(3)).is_err());
    }

    #[test]
    fn binary_entropy_examples() {
        assert_abs_diff_eq!(binary_entropy(0.5).unwrap(), 1.0, epsilon = 1e-15);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(binary_entropy(0.25).unwrap(), 0.811278, epsilon = 1e-6);
        assert_eq!(binary_entropy(-1e-13).unwrap(), 0.0);
        assert!(binary_entropy(1.1).is_err());
        assert!(binary_entropy(-0.01).is_err());
    }

    #[test]
    fn entropic_distance_examples() {
        let zero = DensityMatrix::basis(2, 0);
        let one = DensityMatrix::basis(2, 1);
        let mixed = DensityMatrix::maximally_mixed(2);
        assert_eq!(entropic_distance(&zero, &zero).unwrap(), 0.0);
        assert_abs_diff_eq!(entropic_distance(&zero, &one).unwrap(), 1.0, epsilon = 1e-12);
        let oracle = h2((1.0 - 0.5f64.sqrt()) / 2.0).sqrt();
        assert_abs_diff_eq!(oracle, 0.775162, epsilon = 1e-6);
        assert_abs_diff_eq!(entropic_distance(&zero, &mixed).unwrap(), oracle, epsilon = 1e-10);
    }

    #[test]
    fn tensor_and_partial_trace() {
        let mixed = DensityMatrix::maximally_mixed(2);
        let zero = DensityMatrix::basis(2, 0);
        let joint = tensor(&mixed, &zero);
        let spectrum = joint.eigenvalues();
        let expected = [0.0, 0.0, 0.5, 0.5];
        for (a, b) in spectrum.iter().zip(expected) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-14);
        }
        let back = partial_trace(&joint, TraceOut::Second, (2, 2)).unwrap();
        assert!(linalg::max_abs_diff(back.matrix(), mixed.matrix()) < 1e-15);
        let other = partial_trace(&joint, TraceOut::First, (2, 2)).unwrap();
        assert!(linalg::max_abs_diff(other.matrix(), zero.matrix()) < 1e-15);

        let bell = CVector::from_vec(vec![c(1.0), c(0.0), c(0.0), c(1.0)]);
        let bell = PureState::normalized(bell).unwrap().projector();
        for which in [TraceOut::First, TraceOut::Second] {
            let r = partial_trace(&bell, which, (2, 2)).unwrap();
            assert!(linalg::max_abs_diff(r.matrix(), mixed.matrix()) < 1e-15);
        }
        assert!(partial_trace(&bell, TraceOut::First, (3, 2)).is_err());
    }

    #[test]
    fn bloch_conversions() {
        let origin = bloch_to_state(&BlochVector::origin());
        assert!(linalg::max_abs_diff(origin.matrix(), DensityMatrix::maximally_mixed(2).matrix()) < 1e-15);
        let up = bloch_to_state(&BlochVector::new([0.0, 0.0, 1.0]).unwrap());
        assert!(linalg::max_abs_diff(up.matrix(), DensityMatrix::basis(2, 0).matrix()) < 1e-15);
        let s = 1.0 / 3f64.sqrt();
        let diag = bloch_to_state(&BlochVector::new([s, s, s]).unwrap());
        let ev = diag.eigenvalues();
        assert_abs_diff_eq!(ev[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ev[1], 1.0, epsilon = 1e-12);
        assert!(BlochVector::new([1.0, 0.1, 0.0]).is_err());
        let r = [0.3, -0.2, 0.5];
        let back = state_to_bloch(&bloch_to_state(&BlochVector::new(r).unwrap())).unwrap();
        for (a, b) in back.components().iter().zip(r) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn pure_state_normalization() {
        let v = CVector::from_vec(vec![c(1.0), c(1.0)]);
        assert!(PureState::new(v.clone()).is_err());
        let psi = PureState::normalized(v).unwrap();
        assert_abs_diff_eq!(psi.amplitudes().norm(), 1.0, epsilon = 1e-15);
        assert!(PureState::normalized(CVector::zeros(2)).is_err());
    }
}
