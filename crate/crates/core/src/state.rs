//! Joint state of a qubit register and the coherent probe modes attached to it.
//!
//! The register is stored as a sparse list of computational-basis branches.
//! Every attached probe is a coherent state `|alpha e^{i phi_b}>` whose phase
//! `phi_b` is tracked per branch; the qubit-probe coupling is diagonal in the
//! computational basis, so a probe never leaves the coherent-state manifold
//! and no Fock-space vector is needed.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};
use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};

/// Largest register representable by the `u64` branch labels.
pub const MAX_QUBITS: usize = 64;

/// Tolerance used for exact (non-statistical) normalization checks.
pub const NORM_TOL: f64 = 1e-10;

/// Branches whose merged amplitude falls below this magnitude are dropped.
const PRUNE_AMPLITUDE: f64 = 1e-14;

/// Two accumulated probe phases closer than this (mod 2π) are the same phase.
pub(crate) const PHASE_TOL: f64 = 1e-9;

/// Handle to a probe mode attached to a [`HybridState`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProbeId(u32);

impl fmt::Display for ProbeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}", self.0)
    }
}

/// Read-out scheme used when a probe is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    /// Perfect projection onto the probe's phase groups.
    Ideal,
    /// Quadrature measurement with Gaussian noise and a midpoint threshold.
    Homodyne,
    /// Displacement by `-alpha` followed by photon counting.
    PhotonNumber,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Ideal => "ideal",
            Backend::Homodyne => "homodyne",
            Backend::PhotonNumber => "photon",
        }
    }
}

/// A coherent probe: amplitude `|alpha|`, photon-loss fraction `eta^2` across
/// one gate, and the read-out back-end.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeMode {
    alpha: f64,
    eta2: f64,
    backend: Backend,
}

impl ProbeMode {
    pub fn new(alpha: f64, eta2: f64, backend: Backend) -> Result<Self> {
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "probe amplitude alpha must be finite and >= 0, got {alpha}"
            )));
        }
        if !(0.0..=1.0).contains(&eta2) {
            return Err(Error::InvalidParameter(format!(
                "probe loss fraction eta2 must lie in [0, 1], got {eta2}"
            )));
        }
        Ok(Self { alpha, eta2, backend })
    }

    /// Lossless probe with a perfect read-out. The amplitude only enters
    /// through loss and probe overlaps, so it is left at zero.
    pub fn ideal() -> Self {
        Self { alpha: 0.0, eta2: 0.0, backend: Backend::Ideal }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn eta2(&self) -> f64 {
        self.eta2
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }
}

/// Initial single-qubit state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum QubitInit {
    Zero,
    One,
    Plus,
    Minus,
    Arbitrary(Complex64, Complex64),
}

impl QubitInit {
    /// Real-amplitude shorthand for `Arbitrary`.
    pub fn real(c0: f64, c1: f64) -> Self {
        QubitInit::Arbitrary(Complex64::new(c0, 0.0), Complex64::new(c1, 0.0))
    }

    pub fn amplitudes(&self) -> Result<(Complex64, Complex64)> {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Ok(match *self {
            QubitInit::Zero => (one, zero),
            QubitInit::One => (zero, one),
            QubitInit::Plus => (h, h),
            QubitInit::Minus => (h, -h),
            QubitInit::Arbitrary(c0, c1) => {
                let n = c0.norm_sqr() + c1.norm_sqr();
                if (n - 1.0).abs() > NORM_TOL || !n.is_finite() {
                    return Err(Error::NotNormalized(n));
                }
                (c0, c1)
            }
        })
    }
}

/// Single-qubit gates used by the protocols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate1 {
    X,
    Z,
    H,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Computational,
    PlusMinus,
}

/// Probe phase carried by one branch.
///
/// `actual` is the physical phase, including any coupling miscalibration.
/// `nominal` is the phase the experimenter believes was applied; read-out
/// footprints and ideal projections are defined on it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbePhase {
    pub actual: f64,
    pub nominal: f64,
}

impl ProbePhase {
    const ZERO: ProbePhase = ProbePhase { actual: 0.0, nominal: 0.0 };

    fn close_to(&self, other: &ProbePhase) -> bool {
        wrapped_distance(self.actual, other.actual) < PHASE_TOL
            && wrapped_distance(self.nominal, other.nominal) < PHASE_TOL
    }
}

/// Distance between two angles on the circle.
pub(crate) fn wrapped_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// One computational-basis component of a [`HybridState`].
#[derive(Clone, Debug, PartialEq)]
pub struct BasisBranch {
    bits: u64,
    amplitude: Complex64,
    phases: Vec<ProbePhase>,
}

impl BasisBranch {
    /// Bit pattern; qubit `i` is bit `i`.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn bit(&self, qubit: usize) -> u8 {
        ((self.bits >> qubit) & 1) as u8
    }

    pub fn amplitude(&self) -> Complex64 {
        self.amplitude
    }

    /// Probe phases in the order of [`HybridState::probe_ids`].
    pub fn phases(&self) -> &[ProbePhase] {
        &self.phases
    }
}

/// A qubit register entangled with zero or more coherent probe modes.
#[derive(Clone, Debug)]
pub struct HybridState {
    num_qubits: usize,
    branches: Vec<BasisBranch>,
    probes: Vec<(ProbeId, ProbeMode)>,
    next_probe: u32,
    lost: u64,
}

impl HybridState {
    /// Product state over the given single-qubit preparations.
    pub fn new(inits: &[QubitInit]) -> Result<Self> {
        if inits.is_empty() {
            return Err(Error::EmptyRegister);
        }
        if inits.len() > MAX_QUBITS {
            return Err(Error::TooManyQubits(inits.len()));
        }
        let mut branches = vec![BasisBranch {
            bits: 0,
            amplitude: Complex64::new(1.0, 0.0),
            phases: Vec::new(),
        }];
        for (q, init) in inits.iter().enumerate() {
            let (c0, c1) = init.amplitudes()?;
            let mut next = Vec::with_capacity(branches.len() * 2);
            for b in &branches {
                for (bit, c) in [(0u64, c0), (1u64, c1)] {
                    if c.norm() > 0.0 {
                        next.push(BasisBranch {
                            bits: b.bits | (bit << q),
                            amplitude: b.amplitude * c,
                            phases: Vec::new(),
                        });
                    }
                }
            }
            branches = next;
        }
        let mut state = Self {
            num_qubits: inits.len(),
            branches,
            probes: Vec::new(),
            next_probe: 0,
            lost: 0,
        };
        state.canonicalize();
        Ok(state)
    }

    /// All qubits in `|0>`.
    pub fn zeros(num_qubits: usize) -> Result<Self> {
        Self::new(&vec![QubitInit::Zero; num_qubits])
    }

    /// Probe-free state from explicit `(bits, amplitude)` pairs. Repeated
    /// labels are summed; the result must be normalized.
    pub fn from_amplitudes(num_qubits: usize, amplitudes: &[(u64, Complex64)]) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::EmptyRegister);
        }
        if num_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits(num_qubits));
        }
        let limit = if num_qubits == 64 { u64::MAX } else { (1u64 << num_qubits) - 1 };
        let mut branches = Vec::with_capacity(amplitudes.len());
        for &(bits, amplitude) in amplitudes {
            if bits > limit {
                return Err(Error::InvalidParameter(format!(
                    "basis label {bits:#b} does not fit {num_qubits} qubits"
                )));
            }
            branches.push(BasisBranch { bits, amplitude, phases: Vec::new() });
        }
        let mut state = Self { num_qubits, branches, probes: Vec::new(), next_probe: 0, lost: 0 };
        state.canonicalize();
        let n = state.norm_sqr();
        if (n - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n));
        }
        Ok(state)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Branches sorted by bit pattern.
    pub fn branches(&self) -> &[BasisBranch] {
        &self.branches
    }

    pub fn probe_ids(&self) -> impl Iterator<Item = ProbeId> + '_ {
        self.probes.iter().map(|(id, _)| *id)
    }

    pub fn probe(&self, id: ProbeId) -> Option<&ProbeMode> {
        self.probes.iter().find(|(p, _)| *p == id).map(|(_, m)| m)
    }

    pub fn has_probes(&self) -> bool {
        !self.probes.is_empty()
    }

    /// Phase of probe `id` on `branch`.
    pub fn phase_of(&self, branch: &BasisBranch, id: ProbeId) -> Option<ProbePhase> {
        let slot = self.probes.iter().position(|(p, _)| *p == id)?;
        branch.phases.get(slot).copied()
    }

    pub fn is_lost(&self, qubit: usize) -> bool {
        qubit < self.num_qubits && (self.lost >> qubit) & 1 == 1
    }

    pub fn lost_qubits(&self) -> Vec<usize> {
        (0..self.num_qubits).filter(|&q| self.is_lost(q)).collect()
    }

    /// Amplitude of a basis label in a probe-free state (zero if absent).
    pub fn amplitude_of(&self, bits: u64) -> Complex64 {
        self.branches
            .iter()
            .filter(|b| b.bits == bits)
            .map(|b| b.amplitude)
            .sum()
    }

    pub fn attach_probe(&mut self, probe: ProbeMode) -> ProbeId {
        let id = ProbeId(self.next_probe);
        self.next_probe += 1;
        self.probes.push((id, probe));
        for b in &mut self.branches {
            b.phases.push(ProbePhase::ZERO);
        }
        id
    }

    /// `|1>|alpha> -> |1>|alpha e^{i theta}>`, `|0>|alpha>` untouched.
    pub fn apply_conditional_phase(&mut self, qubit: usize, probe: ProbeId, theta: f64) -> Result<()> {
        self.apply_conditional_phase_miscalibrated(qubit, probe, theta, theta)
    }

    /// Conditional phase whose physical value `actual` differs from the
    /// `nominal` value assumed by the read-out.
    pub fn apply_conditional_phase_miscalibrated(
        &mut self,
        qubit: usize,
        probe: ProbeId,
        nominal: f64,
        actual: f64,
    ) -> Result<()> {
        self.check_operable(qubit)?;
        let slot = self.probe_slot(probe)?;
        let mask = 1u64 << qubit;
        for b in &mut self.branches {
            if b.bits & mask != 0 {
                b.phases[slot].actual += actual;
                b.phases[slot].nominal += nominal;
            }
        }
        Ok(())
    }

    pub fn apply_gate(&mut self, qubit: usize, gate: Gate1) -> Result<()> {
        self.check_operable(qubit)?;
        self.gate_unchecked(qubit, gate);
        Ok(())
    }

    fn gate_unchecked(&mut self, qubit: usize, gate: Gate1) {
        let mask = 1u64 << qubit;
        match gate {
            Gate1::X => {
                for b in &mut self.branches {
                    b.bits ^= mask;
                }
            }
            Gate1::Z => {
                for b in &mut self.branches {
                    if b.bits & mask != 0 {
                        b.amplitude = -b.amplitude;
                    }
                }
            }
            Gate1::H => {
                let h = FRAC_1_SQRT_2;
                let mut next = Vec::with_capacity(self.branches.len() * 2);
                for b in self.branches.drain(..) {
                    let a = b.amplitude * h;
                    let one = b.bits & mask != 0;
                    next.push(BasisBranch {
                        bits: b.bits & !mask,
                        amplitude: a,
                        phases: b.phases.clone(),
                    });
                    next.push(BasisBranch {
                        bits: b.bits | mask,
                        amplitude: if one { -a } else { a },
                        phases: b.phases,
                    });
                }
                self.branches = next;
            }
        }
        self.canonicalize();
    }

    /// Projective measurement with Born-rule sampling. Lost qubits may be
    /// measured; that is how loss trajectories are realized.
    ///
    /// The measured qubit stays in the register, in `|0>`/`|1>` or
    /// `|+>`/`|->` (outcome 0 is `|+>`).
    pub fn measure<R: Rng + ?Sized>(&mut self, qubit: usize, basis: Basis, rng: &mut R) -> Result<u8> {
        self.check_range(qubit)?;
        Ok(match basis {
            Basis::Computational => self.measure_z(qubit, rng),
            Basis::PlusMinus => {
                self.gate_unchecked(qubit, Gate1::H);
                let m = self.measure_z(qubit, rng);
                self.gate_unchecked(qubit, Gate1::H);
                m
            }
        })
    }

    fn measure_z<R: Rng + ?Sized>(&mut self, qubit: usize, rng: &mut R) -> u8 {
        let p1 = self.probability_one(qubit);
        let r: f64 = rng.random();
        let outcome = u8::from(r < p1);
        let mask = 1u64 << qubit;
        self.branches.retain(|b| u8::from(b.bits & mask != 0) == outcome);
        self.renormalize();
        outcome
    }

    /// Probability of reading `1` on `qubit` in the computational basis.
    pub fn probability_one(&self, qubit: usize) -> f64 {
        let mask = 1u64 << qubit;
        let mut total = 0.0;
        let mut one = 0.0;
        for group in self.bit_groups() {
            let w = self.group_weight(group.clone());
            total += w;
            if self.branches[group.start].bits & mask != 0 {
                one += w;
            }
        }
        if total > 0.0 {
            (one / total).clamp(0.0, 1.0)
        } else {
            0.0
        }
    }

    /// `<psi|psi>`, including probe overlaps between branches that share a
    /// bit pattern but differ in probe phase.
    pub fn norm_sqr(&self) -> f64 {
        self.bit_groups().map(|g| self.group_weight(g)).sum()
    }

    /// `|<reference|self>|^2`. Both states must be probe-free.
    pub fn fidelity(&self, reference: &HybridState) -> Result<f64> {
        if self.num_qubits != reference.num_qubits {
            return Err(Error::SizeMismatch(self.num_qubits, reference.num_qubits));
        }
        if self.has_probes() || reference.has_probes() {
            return Err(Error::ProbeAttached);
        }
        let (a, b) = (&self.branches, &reference.branches);
        let (mut i, mut j) = (0, 0);
        let mut inner = Complex64::new(0.0, 0.0);
        while i < a.len() && j < b.len() {
            match a[i].bits.cmp(&b[j].bits) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    inner += b[j].amplitude.conj() * a[i].amplitude;
                    i += 1;
                    j += 1;
                }
            }
        }
        let norms = self.norm_sqr() * reference.norm_sqr();
        if norms == 0.0 {
            return Ok(0.0);
        }
        Ok((inner.norm_sqr() / norms).clamp(0.0, 1.0))
    }

    /// Trajectory realization of dephasing from photon loss on a probe.
    ///
    /// Every branch picks up `e^{i m phi_b / 2}` with `m = n1 - n2`,
    /// `n1, n2 ~ Poisson(eta^2 |alpha|^2 / 2)`. Averaged over trajectories
    /// the coherence between branches `b, b'` is multiplied by
    /// `exp(-eta^2 |alpha|^2 (1 - cos((phi_b - phi_b') / 2)))`, which for the
    /// odd branches of a parity gate (phases `±theta`) is
    /// `exp(-eta^2 |alpha|^2 theta^2 / 2)` to leading order.
    pub fn apply_probe_dephasing<R: Rng + ?Sized>(&mut self, probe: ProbeId, rng: &mut R) -> Result<()> {
        let slot = self.probe_slot(probe)?;
        let mode = self.probes[slot].1;
        let kappa = mode.eta2 * mode.alpha * mode.alpha;
        if kappa <= 0.0 {
            return Ok(());
        }
        let poisson = Poisson::new(kappa / 2.0)
            .map_err(|e| Error::InvalidParameter(format!("loss rate {kappa}: {e}")))?;
        let m = poisson.sample(rng) - poisson.sample(rng);
        if m == 0.0 {
            return Ok(());
        }
        for b in &mut self.branches {
            b.amplitude *= Complex64::from_polar(1.0, 0.5 * m * b.phases[slot].actual);
        }
        if self.branches.windows(2).any(|w| w[0].bits == w[1].bits) {
            self.renormalize();
        }
        Ok(())
    }

    /// Scale every branch by a real weight computed from its phase on
    /// `probe`, then detach the probe, merge and renormalize. This is the
    /// common collapse step of all probe read-outs.
    pub(crate) fn collapse_probe<F>(&mut self, probe: ProbeId, mut weight: F) -> Result<()>
    where
        F: FnMut(&ProbePhase) -> f64,
    {
        let slot = self.probe_slot(probe)?;
        for b in &mut self.branches {
            b.amplitude *= weight(&b.phases[slot]);
            b.phases.remove(slot);
        }
        self.probes.remove(slot);
        self.canonicalize();
        self.renormalize();
        Ok(())
    }

    /// Flag `qubit` as lost. The caller is responsible for the trajectory
    /// measurement that accompanies the loss.
    pub(crate) fn mark_lost(&mut self, qubit: usize) -> Result<()> {
        self.check_range(qubit)?;
        if self.is_lost(qubit) {
            return Err(Error::AlreadyLost(qubit));
        }
        self.lost |= 1 << qubit;
        Ok(())
    }

    /// Return a lost qubit slot to service, e.g. after a fresh qubit has
    /// been swapped in.
    pub fn restore_qubit(&mut self, qubit: usize) -> Result<()> {
        self.check_range(qubit)?;
        if !self.is_lost(qubit) {
            return Err(Error::NotLost(qubit));
        }
        self.lost &= !(1 << qubit);
        Ok(())
    }

    /// Measure `qubit` in the computational basis and flip it back to `|0>`.
    /// Works on lost qubits too (re-preparing a replacement in the slot).
    pub fn reset_qubit<R: Rng + ?Sized>(&mut self, qubit: usize, rng: &mut R) -> Result<u8> {
        self.check_range(qubit)?;
        let m = self.measure_z(qubit, rng);
        if m == 1 {
            self.gate_unchecked(qubit, Gate1::X);
        }
        Ok(m)
    }

    pub(crate) fn check_range(&self, qubit: usize) -> Result<()> {
        if qubit >= self.num_qubits {
            return Err(Error::QubitOutOfRange { qubit, num_qubits: self.num_qubits });
        }
        Ok(())
    }

    pub(crate) fn check_operable(&self, qubit: usize) -> Result<()> {
        self.check_range(qubit)?;
        if self.is_lost(qubit) {
            return Err(Error::LostQubit(qubit));
        }
        Ok(())
    }

    fn probe_slot(&self, id: ProbeId) -> Result<usize> {
        self.probes
            .iter()
            .position(|(p, _)| *p == id)
            .ok_or(Error::UnknownProbe(id))
    }

    /// Sort by bits (then phases), merge branches with identical bits and
    /// probe phases, drop numerically-zero amplitudes.
    fn canonicalize(&mut self) {
        if self.branches.len() > 1 {
            self.branches.sort_by(|a, b| {
                a.bits.cmp(&b.bits).then_with(|| {
                    a.phases
                        .iter()
                        .zip(&b.phases)
                        .map(|(x, y)| x.actual.total_cmp(&y.actual))
                        .find(|o| o.is_ne())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
            });
            let mut merged: Vec<BasisBranch> = Vec::with_capacity(self.branches.len());
            for b in self.branches.drain(..) {
                match merged.last_mut() {
                    Some(last)
                        if last.bits == b.bits
                            && last.phases.iter().zip(&b.phases).all(|(x, y)| x.close_to(y)) =>
                    {
                        last.amplitude += b.amplitude;
                    }
                    _ => merged.push(b),
                }
            }
            self.branches = merged;
        }
        self.branches.retain(|b| b.amplitude.norm() >= PRUNE_AMPLITUDE);
    }

    fn renormalize(&mut self) {
        let n = self.norm_sqr();
        if n > 0.0 && n.is_finite() {
            let s = 1.0 / n.sqrt();
            for b in &mut self.branches {
                b.amplitude *= s;
            }
        }
    }

    /// Index ranges of branches sharing a bit pattern (branches are sorted).
    fn bit_groups(&self) -> impl Iterator<Item = std::ops::Range<usize>> + '_ {
        let mut start = 0;
        std::iter::from_fn(move || {
            if start >= self.branches.len() {
                return None;
            }
            let bits = self.branches[start].bits;
            let mut end = start + 1;
            while end < self.branches.len() && self.branches[end].bits == bits {
                end += 1;
            }
            let r = start..end;
            start = end;
            Some(r)
        })
    }

    fn group_weight(&self, group: std::ops::Range<usize>) -> f64 {
        let g = &self.branches[group];
        if g.len() == 1 {
            return g[0].amplitude.norm_sqr();
        }
        let mut total = Complex64::new(0.0, 0.0);
        for bra in g {
            for ket in g {
                total += bra.amplitude.conj() * ket.amplitude * self.probe_overlap(bra, ket);
            }
        }
        total.re
    }

    /// Product over attached probes of `<alpha e^{i phi_bra}|alpha e^{i phi_ket}>`.
    fn probe_overlap(&self, bra: &BasisBranch, ket: &BasisBranch) -> Complex64 {
        let mut o = Complex64::new(1.0, 0.0);
        for (slot, (_, mode)) in self.probes.iter().enumerate() {
            let a2 = mode.alpha * mode.alpha;
            let d = ket.phases[slot].actual - bra.phases[slot].actual;
            o *= (Complex64::new(-a2, 0.0) + Complex64::from_polar(a2, d)).exp();
        }
        o
    }
}

impl fmt::Display for HybridState {
    /// One line per branch: amplitude rounded to 6 decimals, then the
    /// register with qubit 0 leftmost, then probe phases in units of π.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.branches.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let bits: String = (0..self.num_qubits)
                .map(|q| if self.is_lost(q) { 'L' } else if b.bit(q) == 1 { '1' } else { '0' })
                .collect();
            write!(f, "{:+.6}{:+.6}i |{}>", b.amplitude.re + 0.0, b.amplitude.im + 0.0, bits)?;
            for (slot, (id, _)) in self.probes.iter().enumerate() {
                write!(f, " {}:{:+.6}π", id, b.phases[slot].actual / PI)?;
            }
        }
        Ok(())
    }
}
