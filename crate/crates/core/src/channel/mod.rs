//! Channel representations and conversions between them.

mod choi;
mod fano;
mod kraus;
mod pauli;
pub mod schema;

pub use choi::{bell_projector, chaining_counterexample, ChainingCounterexample, ChoiState};
pub use fano::FanoForm;
pub use kraus::{KrausChannel, TP_TOL};
pub use pauli::{
    c_from_p, in_tetrahedron, p_from_c, pauli_from_c, random_pauli, random_pauli_with, standard_channel,
    PauliChannel, StandardChannel, TETRAHEDRON_TOL,
};

pub(crate) use choi::choi_from_kraus;

use crate::error::{Error, Result};
use crate::state::DensityMatrix;

/// Common interface of every channel representation.
pub trait QuantumChannel {
    fn dim(&self) -> usize;
    fn choi(&self) -> Result<ChoiState>;
    fn kraus(&self) -> Result<KrausChannel>;
    fn is_unital(&self) -> bool;

    /// Affine form; qubit channels only.
    fn fano(&self) -> Result<FanoForm> {
        FanoForm::from_kraus(&self.kraus()?)
    }
}

impl QuantumChannel for KrausChannel {
    fn dim(&self) -> usize {
        KrausChannel::dim(self)
    }
    fn choi(&self) -> Result<ChoiState> {
        Ok(choi_from_kraus(self))
    }
    fn kraus(&self) -> Result<KrausChannel> {
        Ok(self.clone())
    }
    fn is_unital(&self) -> bool {
        KrausChannel::is_unital(self)
    }
}

impl QuantumChannel for FanoForm {
    fn dim(&self) -> usize {
        2
    }
    fn choi(&self) -> Result<ChoiState> {
        FanoForm::choi(self)
    }
    fn kraus(&self) -> Result<KrausChannel> {
        self.to_kraus()
    }
    fn is_unital(&self) -> bool {
        FanoForm::is_unital(self)
    }
    fn fano(&self) -> Result<FanoForm> {
        Ok(self.clone())
    }
}

impl QuantumChannel for PauliChannel {
    fn dim(&self) -> usize {
        2
    }
    fn choi(&self) -> Result<ChoiState> {
        Ok(PauliChannel::choi(self))
    }
    fn kraus(&self) -> Result<KrausChannel> {
        Ok(self.to_kraus())
    }
    fn is_unital(&self) -> bool {
        true
    }
    fn fano(&self) -> Result<FanoForm> {
        Ok(self.to_fano())
    }
}

/// Any of the supported representations.
#[derive(Debug, Clone, PartialEq)]
pub enum Channel {
    Kraus(KrausChannel),
    Fano(FanoForm),
    Pauli(PauliChannel),
}

impl From<KrausChannel> for Channel {
    fn from(c: KrausChannel) -> Self {
        Channel::Kraus(c)
    }
}

impl From<FanoForm> for Channel {
    fn from(c: FanoForm) -> Self {
        Channel::Fano(c)
    }
}

impl From<PauliChannel> for Channel {
    fn from(c: PauliChannel) -> Self {
        Channel::Pauli(c)
    }
}

impl Channel {
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        apply(self, rho)
    }

    pub fn as_pauli(&self) -> Option<&PauliChannel> {
        match self {
            Channel::Pauli(p) => Some(p),
            _ => None,
        }
    }
}

impl QuantumChannel for Channel {
    fn dim(&self) -> usize {
        match self {
            Channel::Kraus(k) => k.dim(),
            Channel::Fano(_) | Channel::Pauli(_) => 2,
        }
    }
    fn choi(&self) -> Result<ChoiState> {
        match self {
            Channel::Kraus(k) => QuantumChannel::choi(k),
            Channel::Fano(f) => f.choi(),
            Channel::Pauli(p) => Ok(p.choi()),
        }
    }
    fn kraus(&self) -> Result<KrausChannel> {
        match self {
            Channel::Kraus(k) => Ok(k.clone()),
            Channel::Fano(f) => f.to_kraus(),
            Channel::Pauli(p) => Ok(p.to_kraus()),
        }
    }
    fn is_unital(&self) -> bool {
        match self {
            Channel::Kraus(k) => k.is_unital(),
            Channel::Fano(f) => f.is_unital(),
            Channel::Pauli(_) => true,
        }
    }
    fn fano(&self) -> Result<FanoForm> {
        match self {
            Channel::Kraus(k) => FanoForm::from_kraus(k),
            Channel::Fano(f) => Ok(f.clone()),
            Channel::Pauli(p) => Ok(p.to_fano()),
        }
    }
}

pub fn choi_of<C: QuantumChannel + ?Sized>(channel: &C) -> Result<ChoiState> {
    channel.choi()
}

/// Kraus route for Kraus channels, Bloch route for Fano and Pauli channels.
pub fn apply(channel: &Channel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    match channel {
        Channel::Kraus(k) => k.apply(rho),
        Channel::Fano(f) => f.apply(rho),
        Channel::Pauli(p) => p.to_fano().apply(rho),
    }
}

/// `first`, then `second`.
pub fn compose<A, B>(second: &A, first: &B) -> Result<KrausChannel>
where
    A: QuantumChannel + ?Sized,
    B: QuantumChannel + ?Sized,
{
    second.kraus()?.after(&first.kraus()?)
}

/// Channel with transposed Kraus operators. Only unital maps have a
/// trace-preserving adjoint, so other inputs are rejected.
pub fn adjoint<C: QuantumChannel + ?Sized>(channel: &C) -> Result<KrausChannel> {
    let k = channel.kraus()?;
    if !k.is_unital() {
        return Err(Error::NotUnital(k.unital_deviation()));
    }
    k.transposed()
}
