//! Small dense complex linear algebra: Hermitian eigendecomposition, matrix
//! functions, Kronecker products and the Pauli basis.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// (A + A^H) / 2
pub fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

/// Eigenvalues and eigenvectors (columns) of the Hermitian part of `m`,
/// eigenvalues in ascending order.
pub fn eigh(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = SymmetricEigen::new(hermitize(m));
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    (values, vectors)
}

/// Eigenvalues of the Hermitian part of `m`, ascending.
pub fn eigvalsh(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 2 {
        let a = m[(0, 0)].re;
        let d = m[(1, 1)].re;
        let b = (m[(0, 1)] + m[(1, 0)].conj()) * 0.5;
        let mean = 0.5 * (a + d);
        let half_gap = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        return vec![mean - half_gap, mean + half_gap];
    }
    let mut values: Vec<f64> = SymmetricEigen::new(hermitize(m))
        .eigenvalues
        .iter()
        .copied()
        .collect();
    values.sort_by(f64::total_cmp);
    values
}

/// V diag(f(λ)) V^H for the Hermitian part of `m`.
pub fn hermitian_function(m: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let (values, vectors) = eigh(m);
    let n = m.nrows();
    let mut scaled = vectors.clone();
    for (j, &lambda) in values.iter().enumerate() {
        let fl = f(lambda);
        for i in 0..n {
            scaled[(i, j)] *= fl;
        }
    }
    scaled * vectors.adjoint()
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Pauli matrix σ_α with σ_0 = 1, σ_1 = X, σ_2 = Y, σ_3 = Z.
pub fn pauli(alpha: usize) -> CMatrix {
    match alpha {
        0 => CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ONE]),
        1 => CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
        2 => CMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]),
        3 => CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
        _ => panic!("Pauli index {alpha} out of range"),
    }
}

/// Real part of Tr(a b).
pub(crate) fn trace_product_re(a: &CMatrix, b: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut acc = 0.0;
    for i in 0..n {
        for k in 0..n {
            acc += (a[(i, k)] * b[(k, i)]).re;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra() {
        let x = pauli(1);
        let y = pauli(2);
        let z = pauli(3);
        // XY = iZ
        assert!(max_abs_diff(&(&x * &y), &z.scale(1.0).map(|v| v * I)) < 1e-15);
        for a in 1..4 {
            let s = pauli(a);
            assert!(max_abs_diff(&(&s * &s), &identity(2)) < 1e-15);
        }
    }

    #[test]
    fn eigen_reconstruction() {
        let m = CMatrix::from_fn(4, 4, |i, j| {
            Complex64::new((i + 2 * j) as f64 * 0.1, (i as f64 - j as f64) * 0.07)
        });
        let h = hermitize(&m);
        let (values, vectors) = eigh(&h);
        let diag = CMatrix::from_diagonal(&CVector::from_iterator(4, values.iter().map(|&v| c(v))));
        let back = &vectors * diag * vectors.adjoint();
        assert!(max_abs_diff(&back, &h) < 1e-12);
        assert!(values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn two_by_two_fast_path_matches_general() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[c(0.7), Complex64::new(0.1, -0.3), Complex64::new(0.1, 0.3), c(0.3)],
        );
        let fast = eigvalsh(&m);
        let (slow, _) = eigh(&m);
        for (a, b) in fast.iter().zip(&slow) {
            assert!((a - b).abs() < 1e-14);
        }
    }
}
