//! Encoding, syndrome extraction, correction and re-encoding for the
//! 3-qubit bit-flip/phase-flip codes, the 9-qubit Shor code and the
//! Bell-pair erasure code, all driven by probe-mediated gates.

mod bitflip;
mod erasure;
mod shor;

use std::fmt;

pub use bitflip::{bitflip3_correct, bitflip3_encode, phaseflip3_correct, phaseflip3_encode};
pub use erasure::{erasure_encode, erasure_grow, erasure_recover, erasure_regrow, logical_z_pair};
pub use shor::{shor_correct_cycle, shor_encode};

use crate::error::{Error, Result};
use crate::gates::Coupling;
use crate::measurement::{Mod4Config, Mod4Syndrome, Parity};
use crate::state::ProbeMode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodeKind {
    BitFlip3,
    PhaseFlip3,
    Shor9,
    /// Bell-pair erasure code with `n` pairs.
    Erasure(usize),
}

impl CodeKind {
    pub fn num_qubits(self) -> usize {
        match self {
            CodeKind::BitFlip3 | CodeKind::PhaseFlip3 => 3,
            CodeKind::Shor9 => 9,
            CodeKind::Erasure(n) => 2 * n,
        }
    }
}

/// Which physical qubits carry a code block, in code order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeLayout {
    kind: CodeKind,
    qubits: Vec<usize>,
}

impl CodeLayout {
    pub fn new(kind: CodeKind, qubits: Vec<usize>) -> Result<Self> {
        if let CodeKind::Erasure(0) = kind {
            return Err(Error::InvalidLayout("an erasure code needs at least one Bell pair".into()));
        }
        if qubits.len() != kind.num_qubits() {
            return Err(Error::InvalidLayout(format!(
                "{kind:?} needs {} qubits, got {}",
                kind.num_qubits(),
                qubits.len()
            )));
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(Error::InvalidLayout(format!("qubit {q} appears twice")));
            }
        }
        Ok(Self { kind, qubits })
    }

    /// Layout on qubits `0..k` in order.
    pub fn contiguous(kind: CodeKind) -> Result<Self> {
        Self::new(kind, (0..kind.num_qubits()).collect())
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    /// Bell pairs of an erasure layout (empty for other codes).
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        match self.kind {
            CodeKind::Erasure(_) => self.qubits.chunks(2).map(|p| (p[0], p[1])).collect(),
            _ => Vec::new(),
        }
    }

    fn expect(&self, kind: CodeKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::InvalidLayout(format!("expected a {kind:?} layout, got {:?}", self.kind)));
        }
        Ok(())
    }

    fn triple(&self) -> [usize; 3] {
        [self.qubits[0], self.qubits[1], self.qubits[2]]
    }
}

/// How a 3-qubit block's syndrome is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum SyndromeMode {
    /// Two parity gates measuring `Z1Z2` and `Z2Z3`.
    TwoProbeBinary,
    /// One probe with three distinct phases summing to zero.
    #[default]
    OneProbeMod4,
}

impl SyndromeMode {
    pub fn name(self) -> &'static str {
        match self {
            SyndromeMode::TwoProbeBinary => "binary",
            SyndromeMode::OneProbeMod4 => "mod4",
        }
    }
}

/// Probe parameters shared by every gate of a protocol run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeSettings {
    pub probe: ProbeMode,
    pub coupling: Coupling,
    pub mod4: Mod4Config,
}

impl ProbeSettings {
    /// Mod-4 phases default to `theta, 2 theta, -3 theta`.
    pub fn new(probe: ProbeMode, theta: f64) -> Result<Self> {
        Ok(Self { probe, coupling: Coupling::exact(theta), mod4: Mod4Config::from_theta(theta)? })
    }

    pub fn ideal(theta: f64) -> Result<Self> {
        Self::new(ProbeMode::ideal(), theta)
    }

    pub fn with_jitter(mut self, jitter: f64) -> Self {
        self.coupling.jitter = jitter;
        self
    }

    pub fn with_mod4(mut self, mod4: Mod4Config) -> Self {
        self.mod4 = mod4;
        self
    }
}

/// Row of the bit-flip syndrome table: which qubit of a block is flipped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BitFlipSyndrome {
    None,
    Qubit1,
    Qubit2,
    Qubit3,
}

impl BitFlipSyndrome {
    pub const ALL: [BitFlipSyndrome; 4] =
        [BitFlipSyndrome::None, BitFlipSyndrome::Qubit1, BitFlipSyndrome::Qubit2, BitFlipSyndrome::Qubit3];

    /// `(Z1Z2, Z2Z3)` eigenvalues.
    pub fn binary(self) -> (i8, i8) {
        match self {
            BitFlipSyndrome::None => (1, 1),
            BitFlipSyndrome::Qubit1 => (-1, 1),
            BitFlipSyndrome::Qubit2 => (-1, -1),
            BitFlipSyndrome::Qubit3 => (1, -1),
        }
    }

    pub fn mod4(self) -> u8 {
        match self {
            BitFlipSyndrome::None => 0,
            BitFlipSyndrome::Qubit1 => 2,
            BitFlipSyndrome::Qubit2 => 3,
            BitFlipSyndrome::Qubit3 => 1,
        }
    }

    pub fn from_binary(z1z2: Parity, z2z3: Parity) -> Self {
        match (z1z2, z2z3) {
            (Parity::Even, Parity::Even) => BitFlipSyndrome::None,
            (Parity::Odd, Parity::Even) => BitFlipSyndrome::Qubit1,
            (Parity::Odd, Parity::Odd) => BitFlipSyndrome::Qubit2,
            (Parity::Even, Parity::Odd) => BitFlipSyndrome::Qubit3,
        }
    }

    pub fn from_mod4(s: Mod4Syndrome) -> Self {
        match s.value() {
            0 => BitFlipSyndrome::None,
            2 => BitFlipSyndrome::Qubit1,
            3 => BitFlipSyndrome::Qubit2,
            _ => BitFlipSyndrome::Qubit3,
        }
    }

    /// Index within the block of the implicated qubit.
    pub fn position(self) -> Option<usize> {
        match self {
            BitFlipSyndrome::None => None,
            BitFlipSyndrome::Qubit1 => Some(0),
            BitFlipSyndrome::Qubit2 => Some(1),
            BitFlipSyndrome::Qubit3 => Some(2),
        }
    }
}

/// A classical value recorded during a protocol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SyndromeValue {
    Binary { z1z2: i8, z2z3: i8 },
    Mod4(u8),
    Parity(Parity),
    /// Outcome of a direct qubit measurement (0 is `|0>` or `|+>`).
    Measured(u8),
}

impl fmt::Display for SyndromeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyndromeValue::Binary { z1z2, z2z3 } => write!(f, "({z1z2:+},{z2z3:+})"),
            SyndromeValue::Mod4(v) => write!(f, "{v}"),
            SyndromeValue::Parity(Parity::Even) => f.write_str("even"),
            SyndromeValue::Parity(Parity::Odd) => f.write_str("odd"),
            SyndromeValue::Measured(m) => write!(f, "m{m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyndromeEntry {
    pub step: String,
    pub value: SyndromeValue,
}

/// Ordered classical record of one protocol run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SyndromeRecord {
    pub entries: Vec<SyndromeEntry>,
}

impl SyndromeRecord {
    pub fn push(&mut self, step: impl Into<String>, value: SyndromeValue) {
        self.entries.push(SyndromeEntry { step: step.into(), value });
    }

    pub fn extend(&mut self, other: SyndromeRecord) {
        self.entries.extend(other.entries);
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Values only, space separated; used as a histogram key.
    pub fn key(&self) -> String {
        let mut out = String::new();
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&e.value.to_string());
        }
        out
    }

    /// True when every error-detection syndrome (`bitflip…`/`phaseflip…`
    /// steps) reads "no error". Encoding steps are random by construction
    /// and are ignored.
    pub fn all_trivial(&self) -> bool {
        let detecting = |e: &&SyndromeEntry| e.step.starts_with("bitflip") || e.step.starts_with("phaseflip");
        self.entries.iter().filter(detecting).all(|e| match e.value {
            SyndromeValue::Binary { z1z2, z2z3 } => z1z2 == 1 && z2z3 == 1,
            SyndromeValue::Mod4(v) => v == 0,
            _ => true,
        })
    }
}

impl fmt::Display for SyndromeRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}: {}", e.step, e.value)?;
        }
        Ok(())
    }
}
