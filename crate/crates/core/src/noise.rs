//! Error channels injected between protocol steps.
//!
//! Within one step the order is fixed: Pauli errors first, then loss.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::state::{Basis, Gate1, HybridState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl FromStr for Pauli {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" | "x" => Ok(Pauli::X),
            "Y" | "y" => Ok(Pauli::Y),
            "Z" | "z" => Ok(Pauli::Z),
            other => Err(Error::InvalidParameter(format!("unknown Pauli {other:?}"))),
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pauli::X => "X",
            Pauli::Y => "Y",
            Pauli::Z => "Z",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NoiseEvent {
    Pauli(Pauli),
    Loss,
}

/// Protocol points at which a [`NoiseSpec`] fires.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NoiseStep {
    /// Between encoding and the correction cycle.
    AfterEncode,
    /// After the correction cycle, before the fidelity check.
    AfterCorrect,
}

impl NoiseStep {
    pub fn label(self) -> &'static str {
        match self {
            NoiseStep::AfterEncode => "after_encode",
            NoiseStep::AfterCorrect => "after_correct",
        }
    }
}

impl FromStr for NoiseStep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "after_encode" => Ok(NoiseStep::AfterEncode),
            "after_correct" => Ok(NoiseStep::AfterCorrect),
            other => Err(Error::InvalidParameter(format!(
                "unknown noise step {other:?} (expected after_encode or after_correct)"
            ))),
        }
    }
}

/// Independent per-qubit channel plus coupling jitter.
#[derive(Clone, Debug, PartialEq)]
pub struct NoiseSpec {
    pub p_x: f64,
    pub p_z: f64,
    pub p_loss: f64,
    /// Relative standard deviation `Δθ/θ` of every conditional phase.
    pub theta_jitter: f64,
    pub schedule: Vec<NoiseStep>,
}

impl Default for NoiseSpec {
    fn default() -> Self {
        Self::noiseless()
    }
}

impl NoiseSpec {
    pub fn noiseless() -> Self {
        Self { p_x: 0.0, p_z: 0.0, p_loss: 0.0, theta_jitter: 0.0, schedule: vec![NoiseStep::AfterEncode] }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [("p_x", self.p_x), ("p_z", self.p_z), ("p_loss", self.p_loss)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParameter(format!("{name} = {p} is outside [0, 1]")));
            }
        }
        if !(self.theta_jitter.is_finite() && self.theta_jitter >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "theta_jitter = {} must be finite and >= 0",
                self.theta_jitter
            )));
        }
        Ok(())
    }

    pub fn is_noiseless(&self) -> bool {
        self.p_x == 0.0 && self.p_z == 0.0 && self.p_loss == 0.0 && self.theta_jitter == 0.0
    }

    pub fn fires_at(&self, step: NoiseStep) -> bool {
        self.schedule.contains(&step)
    }
}

/// Apply a Pauli error. `Y` is realized as `Z·X`; the global phase is dropped.
pub fn inject_pauli(state: &mut HybridState, qubit: usize, pauli: Pauli) -> Result<()> {
    match pauli {
        Pauli::X => state.apply_gate(qubit, Gate1::X),
        Pauli::Z => state.apply_gate(qubit, Gate1::Z),
        Pauli::Y => {
            state.apply_gate(qubit, Gate1::X)?;
            state.apply_gate(qubit, Gate1::Z)
        }
    }
}

/// Draw independent events for qubits `0..num_qubits`: X with `p_x`, Z with
/// `p_z` (both firing gives Y), then loss with `p_loss`. Three uniforms are
/// consumed per qubit regardless of the probabilities.
pub fn sample_channel<R: Rng + ?Sized>(spec: &NoiseSpec, num_qubits: usize, rng: &mut R) -> Vec<(usize, NoiseEvent)> {
    let mut events = Vec::new();
    for q in 0..num_qubits {
        let x = rng.random::<f64>() < spec.p_x;
        let z = rng.random::<f64>() < spec.p_z;
        let loss = rng.random::<f64>() < spec.p_loss;
        match (x, z) {
            (true, true) => events.push((q, NoiseEvent::Pauli(Pauli::Y))),
            (true, false) => events.push((q, NoiseEvent::Pauli(Pauli::X))),
            (false, true) => events.push((q, NoiseEvent::Pauli(Pauli::Z))),
            (false, false) => {}
        }
        if loss {
            events.push((q, NoiseEvent::Loss));
        }
    }
    events
}

/// Reference channel for a conventional ancilla-based `Z_1 Z_2` check: an
/// ancilla fault at rate `eps` propagates through both CNOTs and flips both
/// data qubits. A comparison model, not part of the probe-based protocols.
pub fn sample_ancilla_reference<R: Rng + ?Sized>(eps: f64, q1: usize, q2: usize, rng: &mut R) -> Vec<(usize, NoiseEvent)> {
    if rng.random::<f64>() < eps {
        vec![(q1, NoiseEvent::Pauli(Pauli::X)), (q2, NoiseEvent::Pauli(Pauli::X))]
    } else {
        Vec::new()
    }
}

/// Apply events in order. Pauli events on already-lost qubits are skipped,
/// since the qubit is no longer there to be hit.
pub fn apply_events<R: Rng + ?Sized>(
    state: &mut HybridState,
    events: &[(usize, NoiseEvent)],
    rng: &mut R,
) -> Result<()> {
    for &(q, ev) in events {
        match ev {
            NoiseEvent::Pauli(p) => {
                if !state.is_lost(q) {
                    inject_pauli(state, q, p)?;
                }
            }
            NoiseEvent::Loss => {
                if !state.is_lost(q) {
                    lose_qubit(state, q, rng)?;
                }
            }
        }
    }
    Ok(())
}

/// Trajectory realization of tracing out `qubit`: measure it in the
/// computational basis (the outcome is hidden from the protocols) and flag
/// it lost. Returns the hidden outcome.
pub fn lose_qubit<R: Rng + ?Sized>(state: &mut HybridState, qubit: usize, rng: &mut R) -> Result<u8> {
    state.check_range(qubit)?;
    if state.is_lost(qubit) {
        return Err(Error::AlreadyLost(qubit));
    }
    let m = state.measure(qubit, Basis::Computational, rng)?;
    state.mark_lost(qubit)?;
    Ok(m)
}

/// `theta (1 + delta)`, `delta ~ Normal(0, theta_jitter^2)`.
pub fn jittered_theta<R: Rng + ?Sized>(theta: f64, spec: &NoiseSpec, rng: &mut R) -> f64 {
    jitter(theta, spec.theta_jitter, rng)
}

pub(crate) fn jitter<R: Rng + ?Sized>(theta: f64, relative_sd: f64, rng: &mut R) -> f64 {
    if relative_sd == 0.0 {
        return theta;
    }
    let delta = Normal::new(0.0, relative_sd).expect("finite jitter").sample(rng);
    theta * (1.0 + delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::QubitInit;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pauli_actions() {
        let mut s = HybridState::zeros(3).unwrap();
        inject_pauli(&mut s, 1, Pauli::X).unwrap();
        assert_eq!(s.branches()[0].bits(), 0b010);

        let mut s = HybridState::new(&[QubitInit::One; 3]).unwrap();
        let before = s.clone();
        inject_pauli(&mut s, 0, Pauli::Z).unwrap();
        assert!((s.amplitude_of(0b111) + Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((s.fidelity(&before).unwrap() - 1.0).abs() < 1e-12);

        let mut s = HybridState::new(&[QubitInit::Plus]).unwrap();
        inject_pauli(&mut s, 0, Pauli::X).unwrap();
        inject_pauli(&mut s, 0, Pauli::X).unwrap();
        assert!((s.fidelity(&HybridState::new(&[QubitInit::Plus]).unwrap()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_and_saturated_channels() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let spec = NoiseSpec::noiseless();
        assert!(sample_channel(&spec, 9, &mut rng).is_empty());

        let spec = NoiseSpec { p_x: 1.0, ..NoiseSpec::noiseless() };
        let ev = sample_channel(&spec, 3, &mut rng);
        assert_eq!(ev, vec![(0, NoiseEvent::Pauli(Pauli::X)), (1, NoiseEvent::Pauli(Pauli::X)), (2, NoiseEvent::Pauli(Pauli::X))]);

        let spec = NoiseSpec { p_x: 1.0, p_z: 1.0, p_loss: 1.0, ..NoiseSpec::noiseless() };
        let ev = sample_channel(&spec, 1, &mut rng);
        assert_eq!(ev, vec![(0, NoiseEvent::Pauli(Pauli::Y)), (0, NoiseEvent::Loss)]);
    }

    #[test]
    fn spec_validation() {
        assert!(NoiseSpec { p_x: 1.5, ..NoiseSpec::noiseless() }.validate().is_err());
        assert!(NoiseSpec { theta_jitter: -0.1, ..NoiseSpec::noiseless() }.validate().is_err());
        assert!(NoiseSpec::noiseless().validate().is_ok());
        assert!("after_encode".parse::<NoiseStep>().is_ok());
        assert!("sometimes".parse::<NoiseStep>().is_err());
    }

    #[test]
    fn loss_of_product_qubit_leaves_partner() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut s = HybridState::new(&[QubitInit::Plus, QubitInit::Zero]).unwrap();
        lose_qubit(&mut s, 0, &mut rng).unwrap();
        assert!(s.is_lost(0));
        assert!(s.branches().iter().all(|b| b.bit(1) == 0));
        assert_eq!(lose_qubit(&mut s, 0, &mut rng), Err(Error::AlreadyLost(0)));
    }

    #[test]
    fn zero_jitter_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert_eq!(jittered_theta(0.37, &NoiseSpec::noiseless(), &mut rng), 0.37);
    }

    #[test]
    fn ancilla_reference_flips_both_or_neither() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert_eq!(sample_ancilla_reference(1.0, 0, 1, &mut rng).len(), 2);
        assert!(sample_ancilla_reference(0.0, 0, 1, &mut rng).is_empty());
    }
}
