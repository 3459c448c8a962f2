use rand::Rng;

use super::bitflip::{correct_block, encode_block, phase_correct_block};
use super::{CodeKind, CodeLayout, ProbeSettings, SyndromeMode, SyndromeRecord, SyndromeValue};
use crate::error::Result;
use crate::gates::symmetrizer_gate;
use crate::measurement::Parity;
use crate::state::{Gate1, HybridState};

fn blocks(layout: &CodeLayout) -> [[usize; 3]; 3] {
    let q = layout.qubits();
    [[q[0], q[1], q[2]], [q[3], q[4], q[5]], [q[6], q[7], q[8]]]
}

fn leaders(layout: &CodeLayout) -> [usize; 3] {
    let q = layout.qubits();
    [q[0], q[3], q[6]]
}

/// Second half of the encoder: bit-flip-encode every block whose leader is
/// already part of `c0|+++> + c1|--->` over the leaders. The two partner
/// qubits of a block may be `|+>|+>` or `(|00> + |11>)/√2`.
fn encode_blocks<R: Rng + ?Sized>(
    state: &mut HybridState,
    layout: &CodeLayout,
    mode: SyndromeMode,
    probes: &ProbeSettings,
    rng: &mut R,
    label: &str,
    record: &mut SyndromeRecord,
) -> Result<()> {
    for (k, block) in blocks(layout).into_iter().enumerate() {
        let v = encode_block(state, block, mode, probes, rng)?;
        record.push(format!("{label}[{k}]"), v);
    }
    Ok(())
}

/// `c0|0> + c1|1>` on the first qubit, `|+>` on the other eight →
/// `c0|0>_L + c1|1>_L` with `|0/1>_L = (|000> ± |111>)^{⊗3} / 2√2`.
pub fn shor_encode<R: Rng + ?Sized>(
    state: &mut HybridState,
    layout: &CodeLayout,
    mode: SyndromeMode,
    probes: &ProbeSettings,
    rng: &mut R,
) -> Result<SyndromeRecord> {
    layout.expect(CodeKind::Shor9)?;
    let mut record = SyndromeRecord::default();
    let lead = leaders(layout);
    record.push("outer", encode_block(state, lead, mode, probes, rng)?);
    for q in lead {
        state.apply_gate(q, Gate1::H)?;
    }
    encode_blocks(state, layout, mode, probes, rng, "inner", &mut record)?;
    Ok(record)
}

/// One full correction cycle for a single arbitrary Pauli error:
/// bit-flip correction per block, symmetrizers on the partner pairs
/// (`|000> ± |111> → |±>(|00> + |11>)`), phase-flip correction on the
/// leaders, then re-encoding.
pub fn shor_correct_cycle<R: Rng + ?Sized>(
    state: &mut HybridState,
    layout: &CodeLayout,
    mode: SyndromeMode,
    probes: &ProbeSettings,
    rng: &mut R,
) -> Result<SyndromeRecord> {
    layout.expect(CodeKind::Shor9)?;
    let mut record = SyndromeRecord::default();
    for (k, block) in blocks(layout).into_iter().enumerate() {
        record.push(format!("bitflip[{k}]"), correct_block(state, block, mode, probes, rng)?);
    }
    for (k, [leader, a, b]) in blocks(layout).into_iter().enumerate() {
        let out = symmetrizer_gate(state, a, b, &probes.probe, probes.coupling, rng)?;
        // The odd record multiplies the |111> branch by -1; undo it on the leader.
        if out.parity == Parity::Odd {
            state.apply_gate(leader, Gate1::Z)?;
        }
        record.push(format!("symmetrize[{k}]"), SyndromeValue::Parity(out.parity));
    }
    record.push("phaseflip", phase_correct_block(state, leaders(layout), mode, probes, rng)?);
    encode_blocks(state, layout, mode, probes, rng, "reencode", &mut record)?;
    Ok(record)
}
