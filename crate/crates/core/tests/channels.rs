use chandist::channel::{
    bell_projector, chaining_counterexample, choi_of, compose, adjoint, random_pauli_with, ChoiState, FanoForm,
    KrausChannel, PauliChannel,
};
use chandist::linalg::{self, CMatrix};
use chandist::sampling::{haar_unitary, random_density, random_kraus};
use chandist::state::{partial_trace_matrix, TraceOut};
use chandist::{bloch_to_state, BlochVector, DensityMatrix, Error};
use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn close(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
    linalg::max_abs_diff(a, b) <= tol
}

fn amplitude_damping(eta: f64) -> FanoForm {
    let s = eta.sqrt();
    FanoForm::new_cptp(Matrix3::from_diagonal(&Vector3::new(s, s, eta)), Vector3::new(0.0, 0.0, 1.0 - eta)).unwrap()
}

/// (A ⊗ B)|Φ⟩⟨Φ| for Kraus lists A, B acting on the two factors.
fn local_on_bell(a: &[CMatrix], b: &[CMatrix]) -> CMatrix {
    let bell = bell_projector(2).into_matrix();
    let mut out = CMatrix::zeros(4, 4);
    for ka in a {
        for kb in b {
            let k = linalg::kron(ka, kb);
            out += &k * &bell * k.adjoint();
        }
    }
    out
}

#[test]
fn choi_examples() {
    let id = choi_of(&KrausChannel::identity(2)).unwrap();
    assert!(close(id.matrix(), bell_projector(2).matrix(), 1e-15));
    let quarter = linalg::identity(4).scale(0.25);
    let depol = FanoForm::unital(Matrix3::zeros()).unwrap();
    assert!(close(choi_of(&depol).unwrap().matrix(), &quarter, 1e-15));
    let flat = PauliChannel::from_probabilities([0.25; 4]).unwrap();
    assert!(close(choi_of(&flat).unwrap().matrix(), &quarter, 1e-15));
}

#[test]
fn fano_choi_matches_kraus_choi() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut channels: Vec<KrausChannel> = (0..50).map(|i| random_kraus(2, 1 + i % 4, &mut rng)).collect();
    channels.push(amplitude_damping(0.3).to_kraus().unwrap());
    for k in &channels {
        let fano = FanoForm::from_kraus(k).unwrap();
        assert!(close(fano.choi().unwrap().matrix(), choi_of(k).unwrap().matrix(), 1e-12));
    }
}

#[test]
fn printed_qubit_formula_is_reference_first() {
    // ¼(1⊗1 + 1⊗l·σ + Σ (CΛᵀ)_ij σ_i⊗σ_j) with C = diag(1, −1, 1).
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let c = Matrix3::from_diagonal(&Vector3::new(1.0, -1.0, 1.0));
    for _ in 0..20 {
        let fano = FanoForm::from_kraus(&random_kraus(2, 3, &mut rng)).unwrap();
        let lp = c * fano.distortion().transpose();
        let mut m = linalg::identity(4);
        for i in 0..3 {
            m += linalg::kron(&linalg::identity(2), &linalg::pauli(i + 1)).scale(fano.translation()[i]);
            for j in 0..3 {
                m += linalg::kron(&linalg::pauli(i + 1), &linalg::pauli(j + 1)).scale(lp[(i, j)]);
            }
        }
        let printed = m.scale(0.25);
        assert!(close(&fano.choi().unwrap().swapped(), &printed, 1e-12));
    }
}

#[test]
fn pauli_choi_is_bell_diagonal() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let p = random_pauli_with(&mut rng);
        let from_kraus = choi_of(&p.to_kraus()).unwrap();
        assert!(close(from_kraus.matrix(), p.choi().matrix(), 1e-12));
        let mut spectrum = from_kraus.state().eigenvalues();
        let mut probs = p.probabilities().to_vec();
        spectrum.sort_by(f64::total_cmp);
        probs.sort_by(f64::total_cmp);
        for (a, b) in spectrum.iter().zip(&probs) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}

#[test]
fn choi_states_witness_trace_preservation() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in [2, 3] {
        let choi = choi_of(&random_kraus(n, 2, &mut rng)).unwrap();
        let reduced = partial_trace_matrix(choi.matrix(), TraceOut::First, (n, n)).unwrap();
        assert!(close(&reduced, &linalg::identity(n).scale(1.0 / n as f64), 1e-9));
    }
    let not_tp = DensityMatrix::from_diagonal(&[0.5, 0.5, 0.0, 0.0]).unwrap().into_matrix();
    let swapped = CMatrix::from_fn(4, 4, |r, s| not_tp[((r % 2) * 2 + r / 2, (s % 2) * 2 + s / 2)]);
    assert!(matches!(ChoiState::from_matrix(swapped, 2), Err(Error::NotTracePreserving(_))));
}

#[test]
fn choi_kraus_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in [2, 3] {
        let k = random_kraus(n, 3, &mut rng);
        let choi = choi_of(&k).unwrap();
        let again = choi_of(&choi.to_kraus().unwrap()).unwrap();
        assert!(close(choi.matrix(), again.matrix(), 1e-10));
    }
}

#[test]
fn apply_routes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut families: Vec<PauliChannel> = vec![PauliChannel::identity()];
    for x in [0.0, 0.2, 0.5, 0.9, 1.0] {
        families.push(PauliChannel::phase_flip(x).unwrap());
        families.push(PauliChannel::depolarizing(x).unwrap());
    }
    for p in &families {
        for _ in 0..5 {
            let rho = random_density(2, &mut rng);
            let via_fano = p.to_fano().apply(&rho).unwrap();
            let via_kraus = p.to_kraus().apply(&rho).unwrap();
            assert!(close(via_fano.matrix(), via_kraus.matrix(), 1e-10));
        }
    }
    let ad = amplitude_damping(0.6);
    let rho = random_density(2, &mut rng);
    assert!(close(ad.apply(&rho).unwrap().matrix(), ad.to_kraus().unwrap().apply(&rho).unwrap().matrix(), 1e-10));

    let rho = random_density(2, &mut rng);
    assert!(close(KrausChannel::identity(2).apply(&rho).unwrap().matrix(), rho.matrix(), 0.0));
    let out = PauliChannel::depolarizing(1.0).unwrap().to_fano().apply(&rho).unwrap();
    assert!(close(out.matrix(), DensityMatrix::maximally_mixed(2).matrix(), 1e-15));

    let x = BlochVector::new([1.0, 0.0, 0.0]).unwrap();
    let flipped = PauliChannel::phase_flip(0.3).unwrap().to_fano().map_bloch(&x).unwrap();
    assert!((flipped.components()[0] - 0.7).abs() < 1e-15);
    assert!(close(
        PauliChannel::phase_flip(0.3).unwrap().to_kraus().apply(&bloch_to_state(&x)).unwrap().matrix(),
        bloch_to_state(&flipped).matrix(),
        1e-12
    ));
}

#[test]
fn composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let e = random_kraus(2, 2, &mut rng);
        let f = random_kraus(2, 3, &mut rng);
        let g = random_kraus(2, 2, &mut rng);

        let with_identity = compose(&KrausChannel::identity(2), &e).unwrap();
        assert!(close(choi_of(&with_identity).unwrap().matrix(), choi_of(&e).unwrap().matrix(), 1e-10));

        let rho = random_density(2, &mut rng);
        let ef = compose(&e, &f).unwrap();
        assert!(close(ef.apply(&rho).unwrap().matrix(), e.apply(&f.apply(&rho).unwrap()).unwrap().matrix(), 1e-12));

        // ρ_{E∘F} = (E ⊗ Fᵀ)|Φ⟩⟨Φ| with E on the output factor; the reference-first
        // form (Fᵀ ⊗ E)|Φ⟩⟨Φ| is its swap.
        let ft: Vec<CMatrix> = f.operators().iter().map(|k| k.transpose()).collect();
        let output_first = local_on_bell(e.operators(), &ft);
        let choi = choi_of(&ef).unwrap();
        assert!(close(choi.matrix(), &output_first, 1e-10));
        assert!(close(&choi.swapped(), &local_on_bell(&ft, e.operators()), 1e-10));

        let left = compose(&compose(&g, &e).unwrap(), &f).unwrap();
        let right = compose(&g, &compose(&e, &f).unwrap()).unwrap();
        assert!(close(choi_of(&left).unwrap().matrix(), choi_of(&right).unwrap().matrix(), 1e-10));
    }
}

#[test]
fn adjoints() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let u = haar_unitary(2, &mut rng);
    let adj = adjoint(&KrausChannel::unitary(u.clone()).unwrap()).unwrap();
    let expected = KrausChannel::unitary(u.transpose()).unwrap();
    assert!(close(choi_of(&adj).unwrap().matrix(), choi_of(&expected).unwrap().matrix(), 1e-12));

    let pauli = random_pauli_with(&mut rng);
    assert!(adjoint(&pauli).is_ok());
    let unital = KrausChannel::new(vec![
        linalg::pauli(1).scale(0.6f64.sqrt()),
        CMatrix::from_fn(2, 2, |r, s| if r == s { Complex64::new(0.0, 0.4f64.sqrt()) } else { linalg::pauli(0)[(r, s)] }),
    ]);
    assert!(unital.is_ok_and(|k| adjoint(&k).is_ok()));
    assert!(matches!(adjoint(&amplitude_damping(0.5)), Err(Error::NotUnital(_))));
}

#[test]
fn chaining_counterexample_values() {
    let ce = chaining_counterexample();
    assert!((ce.composed - 1.0).abs() < 1e-12);
    assert_eq!(ce.first, 0.0);
    assert!(ce.second < 1.0);
    assert!(ce.violated);
    assert_eq!(ce.e1, ce.f1);
}

#[test]
fn dims_and_units_checked() {
    let qutrit = KrausChannel::identity(3);
    assert!(matches!(qutrit.apply(&DensityMatrix::maximally_mixed(2)), Err(Error::DimensionMismatch { .. })));
    assert!(matches!(compose(&qutrit, &KrausChannel::identity(2)), Err(Error::DimensionMismatch { .. })));
    assert!(KrausChannel::new(vec![linalg::identity(2).scale(0.9)]).is_err());
    assert!(matches!(
        FanoForm::new(Matrix3::identity() * 1.1, Vector3::zeros()),
        Err(Error::NotPositiveMap(_))
    ));
}
