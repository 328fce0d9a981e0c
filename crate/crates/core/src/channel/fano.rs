use nalgebra::{Matrix3, Vector3};

use super::choi::ChoiState;
use super::kraus::KrausChannel;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::optimize::fibonacci_sphere;
use crate::state::{bloch_to_state, BlochVector, DensityMatrix};

/// Qubit channel in affine (Fano) form, r ↦ Λ r + l.
#[derive(Debug, Clone, PartialEq)]
pub struct FanoForm {
    distortion: Matrix3<f64>,
    translation: Vector3<f64>,
}

/// Sign pattern of the Bell projector in the Pauli basis: |Φ⟩⟨Φ| = ¼ Σ C_ii σ_i⊗σ_i.
const BELL_SIGNS: [f64; 3] = [1.0, -1.0, 1.0];

impl FanoForm {
    /// Checks positivity of the induced Bloch map on a sample of unit vectors.
    pub fn new(distortion: Matrix3<f64>, translation: Vector3<f64>) -> Result<Self> {
        if distortion.iter().chain(translation.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite Fano entry".into()));
        }
        let mut probes = fibonacci_sphere(256);
        for axis in 0..3 {
            for sign in [1.0, -1.0] {
                let mut r = [0.0; 3];
                r[axis] = sign;
                probes.push(r);
            }
        }
        for r in probes {
            let image = distortion * Vector3::from(r) + translation;
            if image.norm() > 1.0 + 1e-9 {
                return Err(Error::NotPositiveMap(image.norm()));
            }
        }
        Ok(Self { distortion, translation })
    }

    /// Also requires complete positivity, checked on the Choi state.
    pub fn new_cptp(distortion: Matrix3<f64>, translation: Vector3<f64>) -> Result<Self> {
        let f = Self::new(distortion, translation)?;
        f.choi()?;
        Ok(f)
    }

    pub fn unital(distortion: Matrix3<f64>) -> Result<Self> {
        Self::new(distortion, Vector3::zeros())
    }

    pub fn identity() -> Self {
        Self { distortion: Matrix3::identity(), translation: Vector3::zeros() }
    }

    pub fn distortion(&self) -> &Matrix3<f64> {
        &self.distortion
    }

    pub fn translation(&self) -> &Vector3<f64> {
        &self.translation
    }

    pub fn is_unital(&self) -> bool {
        self.translation.amax() <= 1e-10
    }

    /// Λ_ij = ½ Tr[σ_i E(σ_j)], l_i = ½ Tr[σ_i E(1)].
    pub fn from_kraus(channel: &KrausChannel) -> Result<Self> {
        if channel.dim() != 2 {
            return Err(Error::NotQubit(channel.dim()));
        }
        let paulis: Vec<CMatrix> = (0..4).map(linalg::pauli).collect();
        let images: Vec<CMatrix> = paulis.iter().map(|s| channel.apply_matrix(s)).collect();
        let distortion = Matrix3::from_fn(|i, j| 0.5 * linalg::trace_product_re(&paulis[i + 1], &images[j + 1]));
        let translation = Vector3::from_fn(|i, _| 0.5 * linalg::trace_product_re(&paulis[i + 1], &images[0]));
        Ok(Self { distortion, translation })
    }

    pub fn map_bloch(&self, r: &BlochVector) -> Result<BlochVector> {
        let image = self.distortion * Vector3::from(r.components()) + self.translation;
        BlochVector::new([image[0], image[1], image[2]])
    }

    pub(crate) fn apply_matrix(&self, m: &CMatrix) -> CMatrix {
        let r = Vector3::from_fn(|i, _| linalg::trace_product_re(m, &linalg::pauli(i + 1)));
        let image = self.distortion * r + self.translation;
        let mut out = linalg::identity(2);
        for i in 0..3 {
            out += linalg::pauli(i + 1).scale(image[i]);
        }
        out.scale(0.5)
    }

    /// Bloch-vector route: reconstructs ½(1 + (Λr + l)·σ).
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: rho.dim() });
        }
        Ok(DensityMatrix::from_matrix_unchecked(self.apply_matrix(rho.matrix())))
    }

    /// ¼(1⊗1 + (l·σ)⊗1 + Σ (ΛC)_ij σ_i⊗σ_j) with the channel on the first factor.
    pub(crate) fn choi_matrix(&self) -> CMatrix {
        let mut m = linalg::kron(&linalg::identity(2), &linalg::identity(2));
        let id = linalg::identity(2);
        for i in 0..3 {
            let si = linalg::pauli(i + 1);
            m += linalg::kron(&si, &id).scale(self.translation[i]);
            for j in 0..3 {
                let coeff = self.distortion[(i, j)] * BELL_SIGNS[j];
                if coeff != 0.0 {
                    m += linalg::kron(&si, &linalg::pauli(j + 1)).scale(coeff);
                }
            }
        }
        m.scale(0.25)
    }

    pub fn choi(&self) -> Result<ChoiState> {
        ChoiState::from_matrix(self.choi_matrix(), 2).map_err(|e| match e {
            Error::NotPositive(v) => Error::NotCompletelyPositive(v),
            other => other,
        })
    }

    pub fn to_kraus(&self) -> Result<KrausChannel> {
        self.choi()?.to_kraus()
    }

    pub fn state_image(&self, r: &BlochVector) -> Result<DensityMatrix> {
        Ok(bloch_to_state(&self.map_bloch(r)?))
    }
}
