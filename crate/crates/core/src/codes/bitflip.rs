use rand::Rng;

use super::{BitFlipSyndrome, CodeKind, CodeLayout, ProbeSettings, SyndromeMode, SyndromeRecord, SyndromeValue};
use crate::error::Result;
use crate::gates::{parity_gate, syndrome_gate_mod4};
use crate::state::{Gate1, HybridState};

/// Read the bit-flip syndrome of one block without disturbing code-space
/// superpositions.
pub(crate) fn extract_block<R: Rng + ?Sized>(
    state: &mut HybridState,
    block: [usize; 3],
    mode: SyndromeMode,
    probes: &ProbeSettings,
    rng: &mut R,
) -> Result<(BitFlipSyndrome, SyndromeValue)> {
    match mode {
        SyndromeMode::TwoProbeBinary => {
            let z12 = parity_gate(state, block[0], block[1], &probes.probe, probes.coupling, rng, false)?;
            let z23 = parity_gate(state, block[1], block[2], &probes.probe, probes.coupling, rng, false)?;
            let syn = BitFlipSyndrome::from_binary(z12.parity, z23.parity);
            Ok((syn, SyndromeValue::Binary { z1z2: z12.parity.sign(), z2z3: z23.parity.sign() }))
        }
        SyndromeMode::OneProbeMod4 => {
            let s = syndrome_gate_mod4(state, block, &probes.mod4, &probes.probe, probes.coupling.jitter, rng)?;
            Ok((BitFlipSyndrome::from_mod4(s), SyndromeValue::Mod4(s.value())))
        }
    }
}

/// Syndrome extraction plus `X` on the implicated qubit.
pub(crate) fn correct_block<R: Rng + ?Sized>(
    state: &mut HybridState,
    block: [usize; 3],
    mode: SyndromeMode,
    probes: &ProbeSettings,
    rng: &mut R,
) -> Result<SyndromeValue> {
    let (syn, value) = extract_block(state, block, mode, probes, rng)?;
    if let Some(i) = syn.position() {
        state.apply_gate(block[i], Gate1::X)?;
    }
    Ok(value)
}

/// Encoding by error correction: with `c0|0> + c1|1>` on the first qubit
/// and `|+>` on the others, every syndrome row is equally likely. A flip
/// reported on the first qubit is undone on the other two instead.
pub(crate) fn encode_block<R: Rng + ?Sized>(
    state: &mut HybridState,
    block: [usize; 3],
    mode: SyndromeMode,
    probes: &ProbeSettings,
    rng: &mut R,
) -> Result<SyndromeValue> {
    let (syn, value) = extract_block(state, block, mode, probes, rng)?;
    match syn {
        BitFlipSyndrome::None => {}
        BitFlipSyndrome::Qubit1 => {
            state.apply_gate(block[1], Gate1::X)?;
            state.apply_gate(block[2], Gate1::X)?;
        }
        BitFlipSyndrome::Qubit2 => state.apply_gate(block[1], Gate1::X)?,
        BitFlipSyndrome::Qubit3 => state.apply_gate(block[2], Gate1::X)?,
    }
    Ok(value)
}

fn hadamard_all(state: &mut HybridState, block: [usize; 3]) -> Result<()> {
    for q in block {
        state.apply_gate(q, Gate1::H)?;
    }
    Ok(())
}

/// `(c0|0> + c1|1>)|+>|+>` → `c0|000> + c1|111>`.
pub fn bitflip3_encode<R: Rng + ?Sized>(
    state: &mut HybridState,
    layout: &CodeLayout,
    mode: SyndromeMode,
    probes: &ProbeSettings,
    rng: &mut R,
) -> Result<SyndromeRecord> {
    layout.expect(CodeKind::BitFlip3)?;
    let mut record = SyndromeRecord::default();
    record.push("encode", encode_block(state, layout.triple(), mode, probes, rng)?);
    Ok(record)
}

/// Detect and undo at most one bit flip.
pub fn bitflip3_correct<R: Rng + ?Sized>(
    state: &mut HybridState,
    layout: &CodeLayout,
    mode: SyndromeMode,
    probes: &ProbeSettings,
    rng: &mut R,
) -> Result<SyndromeRecord> {
    layout.expect(CodeKind::BitFlip3)?;
    let mut record = SyndromeRecord::default();
    record.push("bitflip", correct_block(state, layout.triple(), mode, probes, rng)?);
    Ok(record)
}

/// `(c0|0> + c1|1>)|+>|+>` → `c0|+++> + c1|--->`.
pub fn phaseflip3_encode<R: Rng + ?Sized>(
    state: &mut HybridState,
    layout: &CodeLayout,
    mode: SyndromeMode,
    probes: &ProbeSettings,
    rng: &mut R,
) -> Result<SyndromeRecord> {
    layout.expect(CodeKind::PhaseFlip3)?;
    let block = layout.triple();
    let mut record = SyndromeRecord::default();
    record.push("encode", encode_block(state, block, mode, probes, rng)?);
    hadamard_all(state, block)?;
    Ok(record)
}

/// Detect and undo at most one phase flip (bit-flip correction in the
/// Hadamard-rotated frame).
pub fn phaseflip3_correct<R: Rng + ?Sized>(
    state: &mut HybridState,
    layout: &CodeLayout,
    mode: SyndromeMode,
    probes: &ProbeSettings,
    rng: &mut R,
) -> Result<SyndromeRecord> {
    layout.expect(CodeKind::PhaseFlip3)?;
    let mut record = SyndromeRecord::default();
    record.push("phaseflip", phase_correct_block(state, layout.triple(), mode, probes, rng)?);
    Ok(record)
}

pub(crate) fn phase_correct_block<R: Rng + ?Sized>(
    state: &mut HybridState,
    block: [usize; 3],
    mode: SyndromeMode,
    probes: &ProbeSettings,
    rng: &mut R,
) -> Result<SyndromeValue> {
    hadamard_all(state, block)?;
    let value = correct_block(state, block, mode, probes, rng)?;
    hadamard_all(state, block)?;
    Ok(value)
}
