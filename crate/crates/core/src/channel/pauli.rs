use nalgebra::{Matrix3, Vector3};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

use super::choi::ChoiState;
use super::fano::FanoForm;
use super::kraus::KrausChannel;
use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix};

/// Membership slack for p_α; entries in [−1e-10, 0) are clamped to 0.
pub const TETRAHEDRON_TOL: f64 = 1e-10;

/// Diagonal signs of R_α, the Bloch action of σ_α.
const SIGNS: [[f64; 3]; 4] = [
    [1.0, 1.0, 1.0],
    [1.0, -1.0, -1.0],
    [-1.0, 1.0, -1.0],
    [-1.0, -1.0, 1.0],
];

/// Pauli channel ρ ↦ Σ p_α σ_α ρ σ_α, equivalently Λ = diag(c₁, c₂, c₃).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliChannel {
    p: [f64; 4],
    c: [f64; 3],
}

/// c_i = Σ_α p_α (R_α)_ii
pub fn c_from_p(p: &[f64; 4]) -> [f64; 3] {
    let mut c = [0.0; 3];
    for (alpha, signs) in SIGNS.iter().enumerate() {
        for i in 0..3 {
            c[i] += p[alpha] * signs[i];
        }
    }
    c
}

/// p_α = ¼(1 + Σ_i (R_α)_ii c_i), unclamped.
pub fn p_from_c(c: &[f64; 3]) -> [f64; 4] {
    SIGNS.map(|s| 0.25 * (1.0 + s[0] * c[0] + s[1] * c[1] + s[2] * c[2]))
}

pub fn in_tetrahedron(c: &[f64; 3]) -> bool {
    p_from_c(c).iter().all(|&p| p >= -TETRAHEDRON_TOL)
}

fn clamp_probabilities(p: [f64; 4]) -> Result<[f64; 4]> {
    for (index, &value) in p.iter().enumerate() {
        if !(value >= -TETRAHEDRON_TOL) {
            return Err(Error::OutsideTetrahedron { index, value });
        }
    }
    Ok(p.map(|v| v.max(0.0)))
}

/// Builds the channel from its distortion diagonal.
pub fn pauli_from_c(c: [f64; 3]) -> Result<PauliChannel> {
    PauliChannel::from_c(c)
}

/// Named one-parameter families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StandardChannel {
    Identity,
    PhaseFlip(f64),
    Depolarizing(f64),
}

pub fn standard_channel(kind: StandardChannel) -> Result<PauliChannel> {
    let check = |x: f64| {
        if (0.0..=1.0).contains(&x) {
            Ok(x)
        } else {
            Err(Error::OutsideUnitInterval(x))
        }
    };
    match kind {
        StandardChannel::Identity => PauliChannel::from_c([1.0, 1.0, 1.0]),
        StandardChannel::PhaseFlip(x) => {
            let x = check(x)?;
            PauliChannel::from_c([1.0 - x, 1.0 - x, 1.0])
        }
        StandardChannel::Depolarizing(x) => {
            let x = check(x)?;
            PauliChannel::from_c([1.0 - x, 1.0 - x, 1.0 - x])
        }
    }
}

impl PauliChannel {
    pub fn from_c(c: [f64; 3]) -> Result<Self> {
        if c.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite distortion".into()));
        }
        let p = clamp_probabilities(p_from_c(&c))?;
        Ok(Self { p, c })
    }

    pub fn from_probabilities(p: [f64; 4]) -> Result<Self> {
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidProbabilities(format!("sum is {sum}")));
        }
        let p = clamp_probabilities(p)?;
        Ok(Self { p, c: c_from_p(&p) })
    }

    pub fn identity() -> Self {
        Self { p: [1.0, 0.0, 0.0, 0.0], c: [1.0; 3] }
    }

    pub fn phase_flip(x: f64) -> Result<Self> {
        standard_channel(StandardChannel::PhaseFlip(x))
    }

    pub fn depolarizing(x: f64) -> Result<Self> {
        standard_channel(StandardChannel::Depolarizing(x))
    }

    pub fn probabilities(&self) -> [f64; 4] {
        self.p
    }

    pub fn distortion_diagonal(&self) -> [f64; 3] {
        self.c
    }

    pub fn to_fano(&self) -> FanoForm {
        FanoForm::unital(Matrix3::from_diagonal(&Vector3::from(self.c)))
            .expect("tetrahedron channels are positive")
    }

    /// {√p_α σ_α}
    pub fn to_kraus(&self) -> KrausChannel {
        let ops = (0..4)
            .filter(|&a| self.p[a] > 0.0)
            .map(|a| linalg::pauli(a).scale(self.p[a].sqrt()))
            .collect();
        KrausChannel::new(ops).expect("Pauli Kraus operators are trace preserving")
    }

    /// Bell-diagonal Choi state Σ p_α |B_α⟩⟨B_α| with |B_α⟩ = (σ_α ⊗ 1)|Φ⟩.
    pub fn choi(&self) -> ChoiState {
        let mut m = CMatrix::zeros(4, 4);
        for alpha in 0..4 {
            let b = bell_vector(alpha);
            m += (&b * b.adjoint()).scale(self.p[alpha]);
        }
        ChoiState::from_matrix(m, 2).expect("Bell-diagonal states are valid")
    }
}

/// (σ_α ⊗ 1)|Φ⟩ in the computational basis.
pub(crate) fn bell_vector(alpha: usize) -> CMatrix {
    let s = linalg::pauli(alpha);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(4, 1, |row, _| {
        let (a, i) = (row / 2, row % 2);
        s[(a, i)] * c(h)
    })
}

/// Pauli channel with p drawn from the flat (Dirichlet(1,1,1,1)) measure on the simplex.
pub fn random_pauli(seed: u64) -> PauliChannel {
    random_pauli_with(&mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_pauli_with<R: Rng + ?Sized>(rng: &mut R) -> PauliChannel {
    let e: [f64; 4] = std::array::from_fn(|_| Exp1.sample(rng));
    let total: f64 = e.iter().sum();
    let p = e.map(|v| v / total);
    PauliChannel { p, c: c_from_p(&p) }
}
