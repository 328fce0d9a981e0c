use super::kraus::KrausChannel;
use crate::divergence::transmission_distance;
use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix};
use crate::state::{partial_trace_matrix, DensityMatrix, TraceOut};

/// Choi state (E ⊗ 1)(|Φ⟩⟨Φ|) with |Φ⟩ = Σ_i |i⟩|i⟩/√N.
///
/// Layout: the first tensor factor is the channel output, the second the
/// reference copy, so entry (a·N + i, b·N + j) equals E(|i⟩⟨j|)_{ab} / N.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiState {
    state: DensityMatrix,
    source_dim: usize,
}

impl ChoiState {
    /// Validates dimension N² and Tr_out ρ = 1/N (trace preservation).
    pub fn new(state: DensityMatrix, source_dim: usize) -> Result<Self> {
        if source_dim == 0 || state.dim() != source_dim * source_dim {
            return Err(Error::DimensionMismatch { expected: source_dim * source_dim, found: state.dim() });
        }
        let reduced = partial_trace_matrix(state.matrix(), TraceOut::First, (source_dim, source_dim))?;
        let target = linalg::identity(source_dim).scale(1.0 / source_dim as f64);
        let dev = linalg::max_abs_diff(&reduced, &target);
        if dev > 1e-9 {
            return Err(Error::NotTracePreserving(dev));
        }
        Ok(Self { state, source_dim })
    }

    pub fn from_matrix(m: CMatrix, source_dim: usize) -> Result<Self> {
        Self::new(DensityMatrix::new(m)?, source_dim)
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn matrix(&self) -> &CMatrix {
        self.state.matrix()
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    /// Kraus operators from the spectral decomposition: K[a, i] = √(Nλ) v[a·N + i].
    pub fn to_kraus(&self) -> Result<KrausChannel> {
        let n = self.source_dim;
        let (values, vectors) = linalg::eigh(self.matrix());
        let mut ops = Vec::new();
        for (k, &lambda) in values.iter().enumerate() {
            if lambda <= 1e-14 {
                continue;
            }
            let scale = (n as f64 * lambda).sqrt();
            ops.push(CMatrix::from_fn(n, n, |a, i| vectors[(a * n + i, k)] * scale));
        }
        KrausChannel::new(ops)
    }

    /// The same operator with the tensor factors exchanged (reference first).
    pub fn swapped(&self) -> CMatrix {
        swap_factors(self.matrix(), self.source_dim)
    }
}

pub(crate) fn swap_factors(m: &CMatrix, n: usize) -> CMatrix {
    let idx = |r: usize| (r % n) * n + r / n;
    CMatrix::from_fn(n * n, n * n, |r, s| m[(idx(r), idx(s))])
}

/// |Φ⟩⟨Φ| in dimension N².
pub fn bell_projector(n: usize) -> DensityMatrix {
    let mut m = CMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            m[(i * n + i, j * n + j)] = c(1.0 / n as f64);
        }
    }
    DensityMatrix::from_matrix_unchecked(m)
}

pub(crate) fn choi_from_kraus(channel: &KrausChannel) -> ChoiState {
    let n = channel.dim();
    let mut m = CMatrix::zeros(n * n, n * n);
    for k in channel.operators() {
        // (K ⊗ 1)|Φ⟩ has amplitude K[a, i]/√N at index a·N + i.
        let v = CMatrix::from_fn(n * n, 1, |row, _| k[(row / n, row % n)]);
        m += &v * v.adjoint();
    }
    let state = DensityMatrix::from_matrix_unchecked(m.scale(1.0 / n as f64));
    ChoiState { state, source_dim: n }
}

/// Four qubit channels, given by their Choi states, for which chaining
/// d(E₂∘E₁, F₂∘F₁) ≤ d(E₁, F₁) + d(E₂, F₂) fails under d_t^iso.
#[derive(Debug, Clone)]
pub struct ChainingCounterexample {
    pub e1: ChoiState,
    pub e2: ChoiState,
    pub f1: ChoiState,
    pub f2: ChoiState,
    /// d_t^iso(E₂∘E₁, F₂∘F₁), evaluated on the composed channels.
    pub composed: f64,
    pub first: f64,
    pub second: f64,
    pub violated: bool,
}

pub fn chaining_counterexample() -> ChainingCounterexample {
    let diag = |d: [f64; 4]| {
        ChoiState::from_matrix(
            CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(4, d.iter().map(|&v| c(0.5 * v)))),
            2,
        )
        .expect("counterexample Choi states are valid")
    };
    let e1 = diag([1.0, 1.0, 0.0, 0.0]);
    let e2 = diag([1.0, 0.0, 0.0, 1.0]);
    let f1 = e1.clone();
    let f2 = diag([0.0, 0.0, 1.0, 1.0]);

    let kraus = |s: &ChoiState| s.to_kraus().expect("trace preserving");
    let left = kraus(&e2).after(&kraus(&e1)).expect("qubit maps compose");
    let right = kraus(&f2).after(&kraus(&f1)).expect("qubit maps compose");
    let composed = transmission_distance(choi_from_kraus(&left).state(), choi_from_kraus(&right).state())
        .expect("equal dimensions");
    let first = transmission_distance(e1.state(), f1.state()).expect("equal dimensions");
    let second = transmission_distance(e2.state(), f2.state()).expect("equal dimensions");
    ChainingCounterexample {
        violated: composed > first + second + 1e-9,
        e1,
        e2,
        f1,
        f2,
        composed,
        first,
        second,
    }
}
