//! Bell-pair erasure code: `|0>_L = (|00> + |11>)^{⊗n} / 2^{n/2}`,
//! `|1>_L = (|01> + |10>)^{⊗n} / 2^{n/2}`. Loss of one qubit at a known
//! location costs one Bell pair; re-growing restores the original size.

use rand::Rng;

use super::{CodeKind, CodeLayout, ProbeSettings, SyndromeRecord, SyndromeValue};
use crate::error::{Error, Result};
use crate::gates::{parity_gate, symmetrizer_gate};
use crate::state::{Basis, Gate1, HybridState};

fn pair_count(layout: &CodeLayout) -> Result<usize> {
    match layout.kind() {
        CodeKind::Erasure(n) => Ok(n),
        other => Err(Error::InvalidLayout(format!("expected an erasure layout, got {other:?}"))),
    }
}

/// Encode `c0|0> + c1|1>` held on the first qubit of the layout, with the
/// other `2n - 1` qubits in `|0>`.
pub fn erasure_encode<R: Rng + ?Sized>(
    state: &mut HybridState,
    layout: &CodeLayout,
    probes: &ProbeSettings,
    rng: &mut R,
) -> Result<SyndromeRecord> {
    let n = pair_count(layout)?;
    let pairs = layout.pairs();
    let mut record = SyndromeRecord::default();
    let (p0, q0) = pairs[0];
    if n == 1 {
        let out = symmetrizer_gate(state, p0, q0, &probes.probe, probes.coupling, rng)?;
        record.push("symmetrize[0]", SyndromeValue::Parity(out.parity));
        return Ok(record);
    }
    let (p1, q1) = pairs[1];
    // c0|0000> + c1|1010>
    state.apply_gate(p1, Gate1::H)?;
    let out = parity_gate(state, p0, p1, &probes.probe, probes.coupling, rng, true)?;
    record.push("copy[1]", SyndromeValue::Parity(out.parity));
    let out = symmetrizer_gate(state, p0, q0, &probes.probe, probes.coupling, rng)?;
    record.push("symmetrize[0]", SyndromeValue::Parity(out.parity));
    let out = symmetrizer_gate(state, p1, q1, &probes.probe, probes.coupling, rng)?;
    record.push("symmetrize[1]", SyndromeValue::Parity(out.parity));
    for k in 3..=n {
        let sub = CodeLayout::new(CodeKind::Erasure(k), layout.qubits()[..2 * k].to_vec())?;
        record.extend(erasure_grow(state, &sub, probes, rng)?);
    }
    Ok(record)
}

/// Grow an `(n-1)`-pair encoding to `n` pairs. The layout's last pair must
/// be two fresh `|0>` qubits; the other pairs hold the current encoding.
pub fn erasure_grow<R: Rng + ?Sized>(
    state: &mut HybridState,
    layout: &CodeLayout,
    probes: &ProbeSettings,
    rng: &mut R,
) -> Result<SyndromeRecord> {
    let n = pair_count(layout)?;
    if n < 2 {
        return Err(Error::InvalidLayout("growing needs an existing pair and a fresh pair".into()));
    }
    let pairs = layout.pairs();
    let (p, q) = pairs[n - 2];
    let (r, s) = pairs[n - 1];
    let mut record = SyndromeRecord::default();

    // Outcome 0 leaves c0|0>_L^{(n-2)}|00> + c1|1>_L^{(n-2)}|10> on (p, q);
    // outcome 1 gives |11>/|01> and is mapped back by flipping both.
    let m = state.measure(q, Basis::Computational, rng)?;
    record.push(format!("grow[{}]", n - 1), SyndromeValue::Measured(m));
    if m == 1 {
        state.apply_gate(p, Gate1::X)?;
        state.apply_gate(q, Gate1::X)?;
    }
    state.apply_gate(r, Gate1::H)?;
    let out = parity_gate(state, p, r, &probes.probe, probes.coupling, rng, true)?;
    record.push(format!("copy[{}]", n - 1), SyndromeValue::Parity(out.parity));
    let out = symmetrizer_gate(state, p, q, &probes.probe, probes.coupling, rng)?;
    record.push(format!("symmetrize[{}]", n - 2), SyndromeValue::Parity(out.parity));
    let out = symmetrizer_gate(state, r, s, &probes.probe, probes.coupling, rng)?;
    record.push(format!("symmetrize[{}]", n - 1), SyndromeValue::Parity(out.parity));
    Ok(record)
}

/// The pair that carries the logical `Z` (as `Z⊗Z`) for a layout.
pub fn logical_z_pair(layout: &CodeLayout) -> Option<(usize, usize)> {
    layout.pairs().first().copied()
}

/// Recover from the loss of `lost_qubit` (already flagged lost): measure its
/// partner in the `|+>/|->` basis and apply the logical `Z` on `|->`.
///
/// The freed pair is reset to `|00>` (the lost slot stays flagged) and the
/// remaining `n - 1` pairs are returned as the new layout.
pub fn erasure_recover<R: Rng + ?Sized>(
    state: &mut HybridState,
    layout: &CodeLayout,
    lost_qubit: usize,
    rng: &mut R,
) -> Result<(CodeLayout, SyndromeRecord)> {
    let n = pair_count(layout)?;
    let pairs = layout.pairs();
    let k = pairs
        .iter()
        .position(|&(a, b)| a == lost_qubit || b == lost_qubit)
        .ok_or_else(|| Error::InvalidParameter(format!("qubit {lost_qubit} is not part of the code")))?;
    if !state.is_lost(lost_qubit) {
        return Err(Error::NotLost(lost_qubit));
    }
    let (a, b) = pairs[k];
    let partner = if a == lost_qubit { b } else { a };
    if state.is_lost(partner) {
        // The pair's reduced states for |0>_L and |1>_L have orthogonal
        // support, so tracing out both qubits destroys the logical coherence.
        return Err(Error::Unrecoverable(format!("both qubits of Bell pair {k} are lost")));
    }
    if n == 1 {
        return Err(Error::Unrecoverable("a single Bell pair has no redundancy left".into()));
    }
    let mut record = SyndromeRecord::default();
    let m = state.measure(partner, Basis::PlusMinus, rng)?;
    record.push(format!("recover[{k}]"), SyndromeValue::Measured(m));
    let remaining: Vec<usize> = pairs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .flat_map(|(_, &(x, y))| [x, y])
        .collect();
    let reduced = CodeLayout::new(CodeKind::Erasure(n - 1), remaining)?;
    if m == 1 {
        // Prefer an intact pair. On a pair with one qubit already lost, that
        // qubit's bit is the same in both logical branches, so Z on the
        // survivor alone is the logical Z up to a global phase.
        let (x, y) = reduced
            .pairs()
            .into_iter()
            .find(|&(x, y)| !state.is_lost(x) && !state.is_lost(y))
            .or_else(|| logical_z_pair(&reduced))
            .expect("n - 1 >= 1 pairs");
        for q in [x, y] {
            if !state.is_lost(q) {
                state.apply_gate(q, Gate1::Z)?;
            }
        }
    }
    state.reset_qubit(partner, rng)?;
    state.reset_qubit(lost_qubit, rng)?;
    Ok((reduced, record))
}

/// Bring a freed pair back into service (replacing lost qubits with fresh
/// `|0>` ones) and grow the code by one pair.
pub fn erasure_regrow<R: Rng + ?Sized>(
    state: &mut HybridState,
    layout: &CodeLayout,
    pair: (usize, usize),
    probes: &ProbeSettings,
    rng: &mut R,
) -> Result<(CodeLayout, SyndromeRecord)> {
    let n = pair_count(layout)?;
    for q in [pair.0, pair.1] {
        state.reset_qubit(q, rng)?;
        if state.is_lost(q) {
            state.restore_qubit(q)?;
        }
    }
    let mut qubits = layout.qubits().to_vec();
    qubits.extend([pair.0, pair.1]);
    let grown = CodeLayout::new(CodeKind::Erasure(n + 1), qubits)?;
    let record = erasure_grow(state, &grown, probes, rng)?;
    Ok((grown, record))
}
