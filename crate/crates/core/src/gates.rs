//! Probe-mediated gates: the two-qubit parity gate, its `|+>/|->` variant,
//! the symmetrizer, and the single-probe three-qubit syndrome gate.

use rand::Rng;

use crate::error::{Error, Result};
use crate::measurement::{
    measure_probe_parity, measure_probe_phase_mod4, Mod4Config, Mod4Syndrome, Parity, ParityOutcome,
};
use crate::noise::jitter;
use crate::state::{Gate1, HybridState, ProbeMode};

/// Strength of the qubit-probe coupling: the nominal phase `theta = chi t`
/// and the relative spread `Δθ/θ` of its physical value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coupling {
    pub theta: f64,
    pub jitter: f64,
}

impl Coupling {
    pub fn exact(theta: f64) -> Self {
        Self { theta, jitter: 0.0 }
    }

    pub fn with_jitter(theta: f64, jitter: f64) -> Self {
        Self { theta, jitter }
    }
}

impl From<f64> for Coupling {
    fn from(theta: f64) -> Self {
        Coupling::exact(theta)
    }
}

/// Apply a nominal conditional phase, drawing the physical phase from the
/// coupling's jitter.
fn couple<R: Rng + ?Sized>(
    state: &mut HybridState,
    qubit: usize,
    probe: crate::state::ProbeId,
    nominal: f64,
    jitter_sd: f64,
    rng: &mut R,
) -> Result<()> {
    let actual = jitter(nominal, jitter_sd, rng);
    state.apply_conditional_phase_miscalibrated(qubit, probe, nominal, actual)
}

fn check_pair(state: &HybridState, q1: usize, q2: usize) -> Result<()> {
    if q1 == q2 {
        return Err(Error::RepeatedQubit(q1));
    }
    state.check_operable(q1)?;
    state.check_operable(q2)
}

/// Measure `Z_{q1} Z_{q2}` with a fresh probe: `+theta` when `q1` is `|1>`,
/// `-theta` when `q2` is `|1>`. With `convert_to_even`, an odd outcome is
/// followed by `X` on `q2`.
pub fn parity_gate<R: Rng + ?Sized>(
    state: &mut HybridState,
    q1: usize,
    q2: usize,
    probe: &ProbeMode,
    coupling: impl Into<Coupling>,
    rng: &mut R,
    convert_to_even: bool,
) -> Result<ParityOutcome> {
    let coupling = coupling.into();
    check_pair(state, q1, q2)?;
    let id = state.attach_probe(*probe);
    couple(state, q1, id, coupling.theta, coupling.jitter, rng)?;
    couple(state, q2, id, -coupling.theta, coupling.jitter, rng)?;
    let outcome = measure_probe_parity(state, id, coupling.theta, rng)?;
    if convert_to_even && outcome.parity == Parity::Odd {
        state.apply_gate(q2, Gate1::X)?;
    }
    Ok(outcome)
}

/// Parity of `X_{q1} X_{q2}`: the parity gate conjugated by Hadamards.
pub fn parity_gate_pm<R: Rng + ?Sized>(
    state: &mut HybridState,
    q1: usize,
    q2: usize,
    probe: &ProbeMode,
    coupling: impl Into<Coupling>,
    rng: &mut R,
) -> Result<ParityOutcome> {
    check_pair(state, q1, q2)?;
    state.apply_gate(q1, Gate1::H)?;
    state.apply_gate(q2, Gate1::H)?;
    let outcome = parity_gate(state, q1, q2, probe, coupling, rng, false)?;
    state.apply_gate(q1, Gate1::H)?;
    state.apply_gate(q2, Gate1::H)?;
    Ok(outcome)
}

/// `|xy> -> (|xy> + |x̄ȳ>)/√2`: parity in the `|+>/|->` basis, then
/// `|+> <-> |->` on `q2` if odd.
///
/// For a superposition of inputs whose `q2` values differ, the odd record
/// additionally imprints `(-1)^y`; callers that need a record-independent
/// map (e.g. the Shor cycle) compensate from the returned outcome.
pub fn symmetrizer_gate<R: Rng + ?Sized>(
    state: &mut HybridState,
    q1: usize,
    q2: usize,
    probe: &ProbeMode,
    coupling: impl Into<Coupling>,
    rng: &mut R,
) -> Result<ParityOutcome> {
    check_pair(state, q1, q2)?;
    state.apply_gate(q1, Gate1::H)?;
    state.apply_gate(q2, Gate1::H)?;
    let outcome = parity_gate(state, q1, q2, probe, coupling, rng, true)?;
    state.apply_gate(q1, Gate1::H)?;
    state.apply_gate(q2, Gate1::H)?;
    Ok(outcome)
}

/// One probe, phases `theta_1, theta_2, theta_3` on three qubits, read out
/// as a modulo-4 syndrome. Code-space states leave no phase and are not
/// disturbed.
pub fn syndrome_gate_mod4<R: Rng + ?Sized>(
    state: &mut HybridState,
    qubits: [usize; 3],
    cfg: &Mod4Config,
    probe: &ProbeMode,
    jitter_sd: f64,
    rng: &mut R,
) -> Result<Mod4Syndrome> {
    let [a, b, c] = qubits;
    if a == b || a == c {
        return Err(Error::RepeatedQubit(a));
    }
    if b == c {
        return Err(Error::RepeatedQubit(b));
    }
    for q in qubits {
        state.check_operable(q)?;
    }
    let id = state.attach_probe(*probe);
    for (q, theta) in qubits.iter().zip(cfg.thetas()) {
        couple(state, *q, id, theta, jitter_sd, rng)?;
    }
    measure_probe_phase_mod4(state, id, cfg, rng)
}
