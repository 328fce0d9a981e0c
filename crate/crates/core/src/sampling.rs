//! Seedable random states, unitaries and channels.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::channel::{random_pauli_with, FanoForm, KrausChannel};
use crate::linalg::{self, CMatrix, CVector};
use crate::state::{DensityMatrix, PureState};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// G G† / Tr(G G†) with G square Ginibre; full rank almost surely.
pub fn random_density<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityMatrix {
    let g = ginibre(n, n, rng);
    let m = &g * g.adjoint();
    let tr = linalg::trace(&m).re;
    DensityMatrix::from_matrix_unchecked(linalg::hermitize(&m.unscale(tr)))
}

/// Haar-distributed pure state.
pub fn random_pure<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PureState {
    let v = CVector::from_fn(n, |_, _| gaussian(rng));
    PureState::normalized(v).expect("Gaussian vector is nonzero")
}

/// Haar unitary: QR of a Ginibre matrix with the phases of R's diagonal removed.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let qr = ginibre(n, n, rng).qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { linalg::c(1.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Channel from a Haar isometry C^N → C^N ⊗ C^m (Stinespring), m Kraus operators.
pub fn random_kraus<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> KrausChannel {
    let u = haar_unitary(n * m, rng);
    let ops = (0..m).map(|k| u.view((k * n, 0), (n, n)).into_owned()).collect();
    KrausChannel::new(ops).expect("isometry blocks are trace preserving")
}

/// Uniform rotation of R³ via a Haar SU(2) element.
pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R) -> Matrix3<f64> {
    let u = haar_unitary(2, rng);
    rotation_of_unitary(&u)
}

/// Bloch action of ρ ↦ UρU†: R_ij = ½ Tr[σ_i U σ_j U†].
pub fn rotation_of_unitary(u: &CMatrix) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| {
        let image = u * linalg::pauli(j + 1) * u.adjoint();
        0.5 * linalg::trace_product_re(&linalg::pauli(i + 1), &image)
    })
}

/// Unital qubit channel R₁ diag(c) R₂ with c flat in the tetrahedron and Haar rotations.
pub fn random_unital_qubit<R: Rng + ?Sized>(rng: &mut R) -> FanoForm {
    let c = random_pauli_with(rng).distortion_diagonal();
    let r1 = random_rotation(rng);
    let r2 = random_rotation(rng);
    FanoForm::unital(r1 * Matrix3::from_diagonal(&Vector3::from(c)) * r2).expect("rotated Pauli maps are positive")
}
