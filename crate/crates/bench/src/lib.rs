//! Fixed inputs shared by the benchmarks.

use chandist::channel::random_pauli;
use chandist::{FanoForm, PauliChannel};
use nalgebra::{Matrix3, Vector3};

pub fn pauli_pair() -> (PauliChannel, PauliChannel) {
    (random_pauli(11), random_pauli(12))
}

pub fn amplitude_damping(eta: f64) -> FanoForm {
    let s = eta.sqrt();
    FanoForm::new_cptp(Matrix3::from_diagonal(&Vector3::new(s, s, eta)), Vector3::new(0.0, 0.0, 1.0 - eta))
        .expect("valid damping parameter")
}
