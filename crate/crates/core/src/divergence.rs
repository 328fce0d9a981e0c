//! Quantum Jensen–Shannon divergence and the transmission distance between states.

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::state::{
    self, entropic_distance_from_fidelity, fidelity, matrix_entropy, trace_distance, DensityMatrix,
};

/// Slack used when checking the bound sandwich.
pub const BOUND_SLACK: f64 = 1e-9;

pub(crate) fn qjsd_matrices(a: &CMatrix, b: &CMatrix) -> f64 {
    let mid = (a + b).scale(0.5);
    // Sum the two entropies first so the result is exactly symmetric.
    let value = matrix_entropy(&mid) - 0.5 * (matrix_entropy(a) + matrix_entropy(b));
    value.clamp(0.0, 1.0)
}

pub(crate) fn transmission_distance_matrices(a: &CMatrix, b: &CMatrix) -> f64 {
    qjsd_matrices(a, b).sqrt()
}

/// QJSD(ρ, σ) = S((ρ+σ)/2) − ½S(ρ) − ½S(σ), in bits and clamped to [0, 1].
pub fn qjsd(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let mid = rho.midpoint(sigma)?;
    let value =
        state::von_neumann_entropy(&mid)? - 0.5 * (state::von_neumann_entropy(rho)? + state::von_neumann_entropy(sigma)?);
    Ok(value.clamp(0.0, 1.0))
}

/// Holevo quantity S(Σ p_i ρ_i) − Σ p_i S(ρ_i) of a weighted ensemble.
pub fn qjsd_ensemble(weights: &[f64], states: &[DensityMatrix]) -> Result<f64> {
    if states.is_empty() {
        return Err(Error::Empty("ensemble"));
    }
    if weights.len() != states.len() {
        return Err(Error::DimensionMismatch { expected: states.len(), found: weights.len() });
    }
    check_probabilities(weights)?;
    let n = states[0].dim();
    let mut avg = CMatrix::zeros(n, n);
    let mut mean_entropy = 0.0;
    for (&p, rho) in weights.iter().zip(states) {
        if rho.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: rho.dim() });
        }
        avg += rho.matrix().scale(p);
        mean_entropy += p * state::von_neumann_entropy(rho)?;
    }
    let avg = DensityMatrix::from_matrix_unchecked(avg);
    Ok((state::von_neumann_entropy(&avg)? - mean_entropy).max(0.0))
}

pub(crate) fn check_probabilities(p: &[f64]) -> Result<()> {
    if let Some((i, &v)) = p.iter().enumerate().find(|(_, &v)| !(v >= -1e-12)) {
        return Err(Error::InvalidProbabilities(format!("entry {i} is {v}")));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidProbabilities(format!("weights sum to {sum}")));
    }
    Ok(())
}

/// Transmission distance d_t = √QJSD, a metric on density operators.
pub fn transmission_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(qjsd(rho, sigma)?.sqrt())
}

/// Shannon entropy in bits.
pub fn shannon_entropy(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
}

/// Classical Jensen–Shannon divergence between two distributions, in bits.
pub fn jensen_shannon(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch { expected: p.len(), found: q.len() });
    }
    check_probabilities(p)?;
    check_probabilities(q)?;
    let p: Vec<f64> = p.iter().map(|v| v.max(0.0)).collect();
    let q: Vec<f64> = q.iter().map(|v| v.max(0.0)).collect();
    let mid: Vec<f64> = p.iter().zip(&q).map(|(a, b)| 0.5 * (a + b)).collect();
    let value = shannon_entropy(&mid) - 0.5 * (shannon_entropy(&p) + shannon_entropy(&q));
    Ok(value.clamp(0.0, 1.0))
}

/// The state-space sandwich T/√2 ≤ d_t ≤ min(√T, D_E).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateBounds {
    pub lower: f64,
    pub d_t: f64,
    pub upper_sqrt_t: f64,
    pub upper_de: f64,
    pub all_hold: bool,
}

pub fn state_bounds_report(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<StateBounds> {
    let t = trace_distance(rho, sigma)?;
    let d_t = transmission_distance(rho, sigma)?;
    let upper_de = entropic_distance_from_fidelity(fidelity(rho, sigma)?);
    // T/√(2 log 2) with log 2 = 1 in bits.
    let lower = t / std::f64::consts::SQRT_2;
    let upper_sqrt_t = t.sqrt();
    let all_hold = lower <= d_t + BOUND_SLACK
        && d_t <= upper_sqrt_t + BOUND_SLACK
        && d_t <= upper_de + BOUND_SLACK;
    Ok(StateBounds { lower, d_t, upper_sqrt_t, upper_de, all_hold })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, CVector};
    use crate::state::{h2, relative_entropy, PureState};
    use approx::assert_abs_diff_eq;

    fn plus() -> DensityMatrix {
        DensityMatrix::new(CMatrix::from_element(2, 2, c(0.5))).unwrap()
    }

    fn bell(k: usize) -> DensityMatrix {
        let s = [
            [1.0, 0.0, 0.0, 1.0],
            [1.0, 0.0, 0.0, -1.0],
            [0.0, 1.0, 1.0, 0.0],
            [0.0, 1.0, -1.0, 0.0],
        ];
        PureState::normalized(CVector::from_iterator(4, s[k].iter().map(|&v| c(v))))
            .unwrap()
            .projector()
    }

    #[test]
    fn qjsd_examples() {
        let zero = DensityMatrix::basis(2, 0);
        let one = DensityMatrix::basis(2, 1);
        assert_eq!(qjsd(&zero, &zero).unwrap(), 0.0);
        assert_abs_diff_eq!(qjsd(&zero, &one).unwrap(), 1.0, epsilon = 1e-14);
        // (|0⟩⟨0| + |+⟩⟨+|)/2 has eigenvalues (1 ± 1/√2)/2
        let oracle = h2((1.0 - 1.0 / 2f64.sqrt()) / 2.0);
        assert_abs_diff_eq!(oracle, 0.600876, epsilon = 1e-6);
        assert_abs_diff_eq!(qjsd(&zero, &plus()).unwrap(), oracle, epsilon = 1e-13);
        assert!(qjsd(&zero, &DensityMatrix::maximally_mixed(4)).is_err());
    }

    #[test]
    fn ensemble_examples() {
        let mixed = DensityMatrix::maximally_mixed(3);
        assert_abs_diff_eq!(qjsd_ensemble(&[1.0], &[mixed]).unwrap(), 0.0, epsilon = 1e-14);
        let zero = DensityMatrix::basis(2, 0);
        let one = DensityMatrix::basis(2, 1);
        assert_abs_diff_eq!(
            qjsd_ensemble(&[0.5, 0.5], &[zero.clone(), one]).unwrap(),
            1.0,
            epsilon = 1e-14
        );
        let bells: Vec<_> = (0..4).map(bell).collect();
        assert_abs_diff_eq!(qjsd_ensemble(&[0.25; 4], &bells).unwrap(), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn ensemble_matches_divergence_to_average() {
        let states = [DensityMatrix::basis(2, 0), plus(), DensityMatrix::maximally_mixed(2)];
        let w = [0.2, 0.5, 0.3];
        let mut avg = CMatrix::zeros(2, 2);
        for (p, s) in w.iter().zip(&states) {
            avg += s.matrix().scale(*p);
        }
        let avg = DensityMatrix::new(avg).unwrap();
        let radius: f64 = w
            .iter()
            .zip(&states)
            .map(|(p, s)| p * relative_entropy(s, &avg).unwrap())
            .sum();
        assert_abs_diff_eq!(qjsd_ensemble(&w, &states).unwrap(), radius, epsilon = 1e-9);
        let two = qjsd_ensemble(&[0.5, 0.5], &states[..2]).unwrap();
        assert_abs_diff_eq!(two, qjsd(&states[0], &states[1]).unwrap(), epsilon = 1e-12);
    }

    #[test]
    fn ensemble_errors() {
        let s = [DensityMatrix::basis(2, 0), DensityMatrix::basis(2, 1)];
        assert!(matches!(qjsd_ensemble(&[0.6, 0.6], &s), Err(Error::InvalidProbabilities(_))));
        assert!(matches!(qjsd_ensemble(&[1.2, -0.2], &s), Err(Error::InvalidProbabilities(_))));
        let mixed = [DensityMatrix::basis(2, 0), DensityMatrix::maximally_mixed(3)];
        assert!(matches!(qjsd_ensemble(&[0.5, 0.5], &mixed), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn transmission_distance_examples() {
        let zero = DensityMatrix::basis(2, 0);
        let one = DensityMatrix::basis(2, 1);
        assert_eq!(transmission_distance(&zero, &zero).unwrap(), 0.0);
        assert_abs_diff_eq!(transmission_distance(&zero, &one).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(transmission_distance(&zero, &plus()).unwrap(), 0.775162, epsilon = 1e-6);
    }

    #[test]
    fn bounds_examples() {
        let zero = DensityMatrix::basis(2, 0);
        let one = DensityMatrix::basis(2, 1);
        let same = state_bounds_report(&zero, &zero).unwrap();
        assert_eq!((same.lower, same.d_t, same.upper_sqrt_t, same.upper_de), (0.0, 0.0, 0.0, 0.0));
        assert!(same.all_hold);
        let orth = state_bounds_report(&zero, &one).unwrap();
        assert_abs_diff_eq!(orth.lower, 1.0 / 2f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(orth.d_t, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(orth.upper_sqrt_t, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(orth.upper_de, 1.0, epsilon = 1e-12);
        assert!(orth.all_hold);
        assert!(state_bounds_report(&zero, &plus()).unwrap().all_hold);
    }

    #[test]
    fn classical_jsd() {
        assert_abs_diff_eq!(jensen_shannon(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 1.0, epsilon = 1e-15);
        assert_eq!(jensen_shannon(&[0.3, 0.7], &[0.3, 0.7]).unwrap(), 0.0);
        assert!(jensen_shannon(&[0.3, 0.7], &[0.3, 0.6]).is_err());
    }
}
