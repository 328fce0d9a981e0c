use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::state::DensityMatrix;

/// Tolerance for Σ K†K = 1 and Σ KK† = 1.
pub const TP_TOL: f64 = 1e-9;

/// Completely positive trace-preserving map given by Kraus operators.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    dim: usize,
    ops: Vec<CMatrix>,
    unital: bool,
}

impl KrausChannel {
    pub fn new(ops: Vec<CMatrix>) -> Result<Self> {
        let first = ops.first().ok_or(Error::Empty("Kraus operator list"))?;
        let dim = first.nrows();
        for k in &ops {
            if k.nrows() != k.ncols() {
                return Err(Error::NotSquare { rows: k.nrows(), cols: k.ncols() });
            }
            if k.nrows() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: k.nrows() });
            }
        }
        let id = linalg::identity(dim);
        let tp = ops.iter().fold(CMatrix::zeros(dim, dim), |acc, k| acc + k.adjoint() * k);
        let dev = linalg::max_abs_diff(&tp, &id);
        if dev > TP_TOL {
            return Err(Error::NotTracePreserving(dev));
        }
        let unital = unital_deviation(&ops) <= TP_TOL;
        Ok(Self { dim, ops, unital })
    }

    pub fn identity(dim: usize) -> Self {
        Self { dim, ops: vec![linalg::identity(dim)], unital: true }
    }

    /// ρ ↦ U ρ U†
    pub fn unitary(u: CMatrix) -> Result<Self> {
        Self::new(vec![u])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[CMatrix] {
        &self.ops
    }

    /// Σ K K† = 1 within tolerance.
    pub fn is_unital(&self) -> bool {
        self.unital
    }

    /// max |Σ K K† − 1|
    pub fn unital_deviation(&self) -> f64 {
        unital_deviation(&self.ops)
    }

    pub(crate) fn apply_matrix(&self, m: &CMatrix) -> CMatrix {
        self.ops
            .iter()
            .fold(CMatrix::zeros(self.dim, self.dim), |acc, k| acc + k * m * k.adjoint())
    }

    /// Σ K_i ρ K_i†
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: rho.dim() });
        }
        Ok(DensityMatrix::from_matrix_unchecked(self.apply_matrix(rho.matrix())))
    }

    /// (E ⊗ 1_K)(σ) for σ on C^N ⊗ C^K.
    pub(crate) fn apply_extended_matrix(&self, sigma: &CMatrix, ancilla: usize) -> CMatrix {
        if ancilla == 1 {
            return self.apply_matrix(sigma);
        }
        let n = self.dim;
        let d = n * ancilla;
        let mut out = CMatrix::zeros(d, d);
        for k in &self.ops {
            // (K ⊗ 1) σ (K ⊗ 1)† without forming the Kronecker product.
            let mut left = CMatrix::zeros(d, d);
            for a in 0..n {
                for b in 0..n {
                    let kab = k[(a, b)];
                    if kab.norm_sqr() == 0.0 {
                        continue;
                    }
                    for i in 0..ancilla {
                        for col in 0..d {
                            left[(a * ancilla + i, col)] += kab * sigma[(b * ancilla + i, col)];
                        }
                    }
                }
            }
            for row in 0..d {
                for a in 0..n {
                    for b in 0..n {
                        let kab = k[(a, b)].conj();
                        if kab.norm_sqr() == 0.0 {
                            continue;
                        }
                        for i in 0..ancilla {
                            out[(row, a * ancilla + i)] += left[(row, b * ancilla + i)] * kab;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn apply_extended(&self, sigma: &DensityMatrix, ancilla: usize) -> Result<DensityMatrix> {
        if ancilla == 0 || sigma.dim() != self.dim * ancilla {
            return Err(Error::DimensionMismatch { expected: self.dim * ancilla, found: sigma.dim() });
        }
        Ok(DensityMatrix::from_matrix_unchecked(
            self.apply_extended_matrix(sigma.matrix(), ancilla),
        ))
    }

    /// E ⊗ 1_K as a channel on dimension N·K.
    pub fn tensor_identity(&self, ancilla: usize) -> Self {
        let id = linalg::identity(ancilla);
        Self {
            dim: self.dim * ancilla,
            ops: self.ops.iter().map(|k| linalg::kron(k, &id)).collect(),
            unital: self.unital,
        }
    }

    /// Applies `first`, then `self`.
    pub fn after(&self, first: &KrausChannel) -> Result<Self> {
        if self.dim != first.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: first.dim });
        }
        let mut ops = Vec::with_capacity(self.ops.len() * first.ops.len());
        for s in &self.ops {
            for f in &first.ops {
                ops.push(s * f);
            }
        }
        Self::new(ops)
    }

    /// Map with Kraus operators {K_iᵀ}; trace preserving exactly when `self` is unital.
    pub fn transposed(&self) -> Result<Self> {
        Self::new(self.ops.iter().map(|k| k.transpose()).collect())
    }
}

fn unital_deviation(ops: &[CMatrix]) -> f64 {
    let dim = ops[0].nrows();
    let sum = ops.iter().fold(CMatrix::zeros(dim, dim), |acc, k| acc + k * k.adjoint());
    linalg::max_abs_diff(&sum, &linalg::identity(dim))
}
