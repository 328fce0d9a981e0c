use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::entropic::{entropic_divergence_k, Argmax, DivergenceOptions};
use super::iso::d_t_iso;
use crate::channel::{compose, QuantumChannel};
use crate::divergence::transmission_distance_matrices;
use crate::error::{Error, Result};
use crate::sampling::{random_density, random_pure};
use crate::state::DensityMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainRuleReport {
    /// d_t^K(E, F) from the optimizer.
    pub d_t_k: f64,
    /// max over samples of d_t[(E⊗1)ρ, (F⊗1)σ] − d_t(ρ, σ) − d_t^K(E, F).
    pub max_violation: f64,
    /// Same quantity: the sampled estimate of the amortized divergence minus d_t^K.
    pub amortized_gap: f64,
    pub samples: usize,
}

/// Samples bipartite pairs (ρ, σ) on C^N ⊗ C^K and checks
/// d_t[(E⊗1)ρ, (F⊗1)σ] ≤ d_t(ρ, σ) + d_t^K(E, F).
///
/// The pair ρ = σ = optimizer argmax is always included, and a third of the
/// samples use ρ = σ, so the amortized estimate probes attainability.
pub fn chain_rule_check<A, B>(
    e: &A,
    f: &B,
    k: usize,
    samples: usize,
    opts: &DivergenceOptions,
) -> Result<ChainRuleReport>
where
    A: QuantumChannel + ?Sized,
    B: QuantumChannel + ?Sized,
{
    let divergence = entropic_divergence_k(e, f, k, opts)?;
    let (ke, kf) = (e.kraus()?, f.kraus()?);
    let d = ke.dim() * k;

    let mut pairs: Vec<(DensityMatrix, DensityMatrix)> = Vec::with_capacity(samples + 1);
    if let Argmax::State(psi) = &divergence.argmax {
        if psi.dim() == d {
            pairs.push((psi.projector(), psi.projector()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(1));
    for i in 0..samples {
        let pair = match i % 3 {
            0 => (random_density(d, &mut rng), random_density(d, &mut rng)),
            1 => (random_pure(d, &mut rng).projector(), random_pure(d, &mut rng).projector()),
            _ => {
                let rho = random_pure(d, &mut rng).projector();
                (rho.clone(), rho)
            }
        };
        pairs.push(pair);
    }

    let mut gap = f64::NEG_INFINITY;
    for (rho, sigma) in &pairs {
        let out = transmission_distance_matrices(
            &ke.apply_extended_matrix(rho.matrix(), k),
            &kf.apply_extended_matrix(sigma.matrix(), k),
        );
        let input = transmission_distance_matrices(rho.matrix(), sigma.matrix());
        gap = gap.max(out - input - divergence.value);
    }
    Ok(ChainRuleReport { d_t_k: divergence.value, max_violation: gap, amortized_gap: gap, samples: pairs.len() })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BistochasticChaining {
    /// d_t^iso(E₂∘E₁, F₂∘D)
    pub lhs: f64,
    /// d_t^iso(E₁, D) + d_t^iso(E₂, F₂)
    pub rhs: f64,
    pub holds: bool,
}

/// Chaining with a bistochastic first map D on the second branch.
pub fn bistochastic_chaining_check<E1, E2, F2, D>(e1: &E1, e2: &E2, f2: &F2, bi: &D) -> Result<BistochasticChaining>
where
    E1: QuantumChannel + ?Sized,
    E2: QuantumChannel + ?Sized,
    F2: QuantumChannel + ?Sized,
    D: QuantumChannel + ?Sized,
{
    if !bi.is_unital() {
        return Err(Error::NotUnital(bi.kraus()?.unital_deviation()));
    }
    let lhs = d_t_iso(&compose(e2, e1)?, &compose(f2, bi)?)?;
    let rhs = d_t_iso(e1, bi)? + d_t_iso(e2, f2)?;
    Ok(BistochasticChaining { lhs, rhs, holds: lhs <= rhs + 1e-9 })
}
