//! Seeded Monte Carlo harness: encode → noise → correct → fidelity, with
//! aggregate statistics, parameter sweeps and CSV rows.
//!
//! Trial `i` draws from its own ChaCha stream `(seed, i)`. Trials are
//! grouped in fixed-size chunks that are reduced in order, so results are
//! bit-identical for any number of worker threads.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::codes::{
    bitflip3_correct, bitflip3_encode, erasure_encode, erasure_recover, erasure_regrow, phaseflip3_correct,
    phaseflip3_encode, shor_correct_cycle, shor_encode, CodeKind, CodeLayout, ProbeSettings, SyndromeMode,
    SyndromeRecord,
};
use crate::error::{Error, Result};
use crate::gates::parity_gate;
use crate::measurement::{Mod4Config, Parity};
use crate::noise::{apply_events, sample_channel, NoiseSpec, NoiseStep};
use crate::state::{Backend, HybridState, ProbeMode, QubitInit, NORM_TOL};

/// Trials whose final fidelity is below `1 - FAILURE_GAP` count as logical
/// failures.
pub const FAILURE_GAP: f64 = 1e-6;

const CHUNK: u64 = 1024;

const WILSON_Z95: f64 = 1.959_963_984_540_054;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodeChoice {
    /// A single parity gate on the odd input `c0|01> + c1|10>`; a trial fails
    /// when the gate declares even parity or disturbs the state.
    Parity,
    BitFlip3,
    PhaseFlip3,
    Shor9,
    Erasure(usize),
}

impl CodeChoice {
    pub fn name(self) -> String {
        match self {
            CodeChoice::Parity => "parity".into(),
            CodeChoice::BitFlip3 => "bitflip3".into(),
            CodeChoice::PhaseFlip3 => "phaseflip3".into(),
            CodeChoice::Shor9 => "shor9".into(),
            CodeChoice::Erasure(n) => format!("erasure:{n}"),
        }
    }

    fn kind(self) -> Option<CodeKind> {
        match self {
            CodeChoice::Parity => None,
            CodeChoice::BitFlip3 => Some(CodeKind::BitFlip3),
            CodeChoice::PhaseFlip3 => Some(CodeKind::PhaseFlip3),
            CodeChoice::Shor9 => Some(CodeKind::Shor9),
            CodeChoice::Erasure(n) => Some(CodeKind::Erasure(n)),
        }
    }

    fn uses_block_syndromes(self) -> bool {
        matches!(self, CodeChoice::BitFlip3 | CodeChoice::PhaseFlip3 | CodeChoice::Shor9)
    }
}

/// Logical input of each trial.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InputMode {
    Fixed(Complex64, Complex64),
    /// Haar-random qubit drawn from the trial's own stream.
    Haar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub code: CodeChoice,
    pub syndrome_mode: SyndromeMode,
    pub probe: ProbeMode,
    pub theta: f64,
    /// `None` uses `theta, 2 theta, -3 theta`.
    pub mod4: Option<Mod4Config>,
    pub noise: NoiseSpec,
    pub trials: u64,
    pub seed: u64,
    pub input: InputMode,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            code: CodeChoice::BitFlip3,
            syndrome_mode: SyndromeMode::OneProbeMod4,
            probe: ProbeMode::ideal(),
            theta: 0.1,
            mod4: None,
            noise: NoiseSpec::noiseless(),
            trials: 1000,
            seed: 0,
            input: InputMode::Fixed(Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)),
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be >= 1".into()));
        }
        self.noise.validate()?;
        // Re-run the probe constructor checks on the stored fields.
        ProbeMode::new(self.probe.alpha(), self.probe.eta2(), self.probe.backend())?;
        if !(self.theta.is_finite() && self.theta > 0.0 && self.theta < std::f64::consts::PI) {
            return Err(Error::InvalidParameter(format!("theta = {} must lie in (0, π)", self.theta)));
        }
        self.settings()?;
        if self.code.uses_block_syndromes()
            && self.syndrome_mode == SyndromeMode::OneProbeMod4
            && self.probe.backend() != Backend::Ideal
        {
            return Err(Error::InvalidParameter(format!(
                "mod4 syndrome read-out supports the ideal back-end only (backend = {})",
                self.probe.backend().name()
            )));
        }
        if self.noise.p_loss > 0.0 && !matches!(self.code, CodeChoice::Erasure(_)) {
            return Err(Error::InvalidParameter(format!(
                "p_loss = {} needs the erasure code; {} cannot recover lost qubits",
                self.noise.p_loss,
                self.code.name()
            )));
        }
        if let CodeChoice::Erasure(n) = self.code {
            if n == 0 || 2 * n > crate::state::MAX_QUBITS {
                return Err(Error::InvalidParameter(format!("erasure pair count n = {n} is out of range")));
            }
        }
        if let InputMode::Fixed(c0, c1) = self.input {
            QubitInit::Arbitrary(c0, c1).amplitudes()?;
        }
        Ok(())
    }

    fn settings(&self) -> Result<ProbeSettings> {
        let mod4 = match self.mod4 {
            Some(m) => m,
            None => Mod4Config::from_theta(self.theta)?,
        };
        Ok(ProbeSettings::new(self.probe, self.theta)?
            .with_mod4(mod4)
            .with_jitter(self.noise.theta_jitter))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialStats {
    pub trials: u64,
    pub failures: u64,
    pub logical_error_rate: f64,
    pub mean_fidelity: f64,
    pub wilson_95: (f64, f64),
    /// Correction-record key → count.
    pub histogram: BTreeMap<String, u64>,
}

/// Wilson score interval for `failures` out of `trials` at normal quantile `z`.
pub fn wilson_interval(failures: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = failures as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if failures == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if failures == trials { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

#[derive(Default)]
struct ChunkStats {
    failures: u64,
    fidelity_sum: f64,
    histogram: BTreeMap<String, u64>,
}

struct TrialOutcome {
    fidelity: f64,
    failed: bool,
    key: String,
}

struct Runner<'a> {
    cfg: &'a ExperimentConfig,
    settings: ProbeSettings,
    layout: Option<CodeLayout>,
    fixed_reference: Option<HybridState>,
}

impl<'a> Runner<'a> {
    fn new(cfg: &'a ExperimentConfig) -> Result<Self> {
        let settings = cfg.settings()?;
        let layout = cfg.code.kind().map(CodeLayout::contiguous).transpose()?;
        let mut runner = Self { cfg, settings, layout, fixed_reference: None };
        if let InputMode::Fixed(c0, c1) = cfg.input {
            runner.fixed_reference = Some(runner.reference(c0, c1)?);
        }
        Ok(runner)
    }

    /// Noiseless encoding of `c0|0> + c1|1>` with ideal probes.
    fn reference(&self, c0: Complex64, c1: Complex64) -> Result<HybridState> {
        let Some(layout) = &self.layout else {
            return parity_input(c0, c1);
        };
        let ideal = ProbeSettings::ideal(self.cfg.theta)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut state = initial_register(layout.kind(), c0, c1)?;
        encode(&mut state, layout, SyndromeMode::OneProbeMod4, &ideal, &mut rng)?;
        Ok(state)
    }

    fn trial(&self, index: u64) -> Result<TrialOutcome> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        rng.set_stream(index);
        let (c0, c1) = match self.cfg.input {
            InputMode::Fixed(c0, c1) => (c0, c1),
            InputMode::Haar => haar_qubit(&mut rng),
        };
        let reference = match &self.fixed_reference {
            Some(r) => r.clone(),
            None => self.reference(c0, c1)?,
        };
        let noise = &self.cfg.noise;
        let settings = &self.settings;

        let Some(layout) = &self.layout else {
            let mut state = parity_input(c0, c1)?;
            inject(&mut state, noise, NoiseStep::AfterEncode, &mut rng)?;
            let out = parity_gate(&mut state, 0, 1, &settings.probe, settings.coupling, &mut rng, false)?;
            inject(&mut state, noise, NoiseStep::AfterCorrect, &mut rng)?;
            let fidelity = state.fidelity(&reference)?;
            let key = if out.parity == Parity::Even { "even" } else { "odd" };
            return Ok(TrialOutcome {
                fidelity,
                failed: out.parity == Parity::Even || fidelity < 1.0 - FAILURE_GAP,
                key: key.into(),
            });
        };

        let mode = self.cfg.syndrome_mode;
        let mut state = initial_register(layout.kind(), c0, c1)?;
        encode(&mut state, layout, mode, settings, &mut rng)?;
        inject(&mut state, noise, NoiseStep::AfterEncode, &mut rng)?;
        let (record, recovered) = correct(&mut state, layout, mode, settings, &mut rng)?;
        inject(&mut state, noise, NoiseStep::AfterCorrect, &mut rng)?;
        let fidelity = state.fidelity(&reference)?;
        let key = if !recovered {
            "unrecoverable".to_string()
        } else if record.is_empty() {
            "none".to_string()
        } else {
            record.key()
        };
        Ok(TrialOutcome { fidelity, failed: !recovered || fidelity < 1.0 - FAILURE_GAP, key })
    }

    fn chunk(&self, chunk: u64) -> Result<ChunkStats> {
        let start = chunk * CHUNK;
        let end = (start + CHUNK).min(self.cfg.trials);
        let mut stats = ChunkStats::default();
        for i in start..end {
            let t = self.trial(i)?;
            stats.failures += u64::from(t.failed);
            stats.fidelity_sum += t.fidelity;
            *stats.histogram.entry(t.key).or_insert(0) += 1;
        }
        Ok(stats)
    }
}

fn parity_input(c0: Complex64, c1: Complex64) -> Result<HybridState> {
    // c0|01> + c1|10>, qubit 0 leftmost
    HybridState::from_amplitudes(2, &[(0b10, c0), (0b01, c1)])
}

fn haar_qubit<R: Rng + ?Sized>(rng: &mut R) -> (Complex64, Complex64) {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            return (Complex64::new(v[0] / n, v[1] / n), Complex64::new(v[2] / n, v[3] / n));
        }
    }
}

/// Register before encoding: the logical input on the first qubit, then
/// `|+>` (3-qubit and Shor codes) or `|0>` (erasure code).
pub fn initial_register(kind: CodeKind, c0: Complex64, c1: Complex64) -> Result<HybridState> {
    let fill = match kind {
        CodeKind::Erasure(_) => QubitInit::Zero,
        _ => QubitInit::Plus,
    };
    let mut inits = vec![fill; kind.num_qubits()];
    inits[0] = QubitInit::Arbitrary(c0, c1);
    HybridState::new(&inits)
}

/// Dispatch to the encoder of the layout's code.
pub fn encode<R: Rng + ?Sized>(
    state: &mut HybridState,
    layout: &CodeLayout,
    mode: SyndromeMode,
    probes: &ProbeSettings,
    rng: &mut R,
) -> Result<SyndromeRecord> {
    match layout.kind() {
        CodeKind::BitFlip3 => bitflip3_encode(state, layout, mode, probes, rng),
        CodeKind::PhaseFlip3 => phaseflip3_encode(state, layout, mode, probes, rng),
        CodeKind::Shor9 => shor_encode(state, layout, mode, probes, rng),
        CodeKind::Erasure(_) => erasure_encode(state, layout, probes, rng),
    }
}

/// One correction cycle. For the erasure code this recovers every lost
/// qubit and re-grows the code; the flag is false when a loss pattern could
/// not be recovered.
pub fn correct<R: Rng + ?Sized>(
    state: &mut HybridState,
    layout: &CodeLayout,
    mode: SyndromeMode,
    probes: &ProbeSettings,
    rng: &mut R,
) -> Result<(SyndromeRecord, bool)> {
    match layout.kind() {
        CodeKind::BitFlip3 => Ok((bitflip3_correct(state, layout, mode, probes, rng)?, true)),
        CodeKind::PhaseFlip3 => Ok((phaseflip3_correct(state, layout, mode, probes, rng)?, true)),
        CodeKind::Shor9 => Ok((shor_correct_cycle(state, layout, mode, probes, rng)?, true)),
        CodeKind::Erasure(_) => {
            let mut record = SyndromeRecord::default();
            let mut current = layout.clone();
            let mut freed = Vec::new();
            for q in state.lost_qubits() {
                if !current.qubits().contains(&q) {
                    continue;
                }
                let pair = current.pairs().into_iter().find(|&(a, b)| a == q || b == q).expect("qubit in layout");
                match erasure_recover(state, &current, q, rng) {
                    Ok((reduced, r)) => {
                        record.extend(r);
                        current = reduced;
                        freed.push(pair);
                    }
                    Err(Error::Unrecoverable(_)) => return Ok((record, false)),
                    Err(e) => return Err(e),
                }
            }
            for pair in freed {
                let (grown, r) = erasure_regrow(state, &current, pair, probes, rng)?;
                record.extend(r);
                current = grown;
            }
            Ok((record, true))
        }
    }
}

fn inject<R: Rng + ?Sized>(state: &mut HybridState, noise: &NoiseSpec, step: NoiseStep, rng: &mut R) -> Result<()> {
    if noise.fires_at(step) && (noise.p_x > 0.0 || noise.p_z > 0.0 || noise.p_loss > 0.0) {
        let events = sample_channel(noise, state.num_qubits(), rng);
        apply_events(state, &events, rng)?;
    }
    Ok(())
}

/// Run `config.trials` independent trials sequentially.
pub fn run_trials(config: &ExperimentConfig) -> Result<TrialStats> {
    run_trials_with_jobs(config, 1)
}

/// As [`run_trials`], spreading chunks of trials over `jobs` threads
/// (`0` = all cores). The result does not depend on `jobs`.
pub fn run_trials_with_jobs(config: &ExperimentConfig, jobs: usize) -> Result<TrialStats> {
    config.validate()?;
    let runner = Runner::new(config)?;
    let chunks = config.trials.div_ceil(CHUNK);
    let parts: Vec<ChunkStats> = if jobs == 1 {
        (0..chunks).map(|c| runner.chunk(c)).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        pool.install(|| (0..chunks).into_par_iter().map(|c| runner.chunk(c)).collect::<Result<_>>())?
    };
    let mut failures = 0;
    let mut fidelity_sum = 0.0;
    let mut histogram = BTreeMap::new();
    for p in parts {
        failures += p.failures;
        fidelity_sum += p.fidelity_sum;
        for (k, v) in p.histogram {
            *histogram.entry(k).or_insert(0) += v;
        }
    }
    let n = config.trials as f64;
    Ok(TrialStats {
        trials: config.trials,
        failures,
        logical_error_rate: failures as f64 / n,
        mean_fidelity: fidelity_sum / n,
        wilson_95: wilson_interval(failures, config.trials, WILSON_Z95),
        histogram,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SweepAxis {
    Alpha,
    Theta,
    Eta2,
    PX,
    PZ,
    PLoss,
    ThetaJitter,
    Trials,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::Alpha => "alpha",
            SweepAxis::Theta => "theta",
            SweepAxis::Eta2 => "eta2",
            SweepAxis::PX => "p_x",
            SweepAxis::PZ => "p_z",
            SweepAxis::PLoss => "p_loss",
            SweepAxis::ThetaJitter => "theta_jitter",
            SweepAxis::Trials => "trials",
        }
    }

    /// Copy of `base` with this parameter set to `value`.
    pub fn apply(self, base: &ExperimentConfig, value: f64) -> Result<ExperimentConfig> {
        let mut cfg = base.clone();
        let p = base.probe;
        match self {
            SweepAxis::Alpha => cfg.probe = ProbeMode::new(value, p.eta2(), p.backend())?,
            SweepAxis::Eta2 => cfg.probe = ProbeMode::new(p.alpha(), value, p.backend())?,
            SweepAxis::Theta => cfg.theta = value,
            SweepAxis::PX => cfg.noise.p_x = value,
            SweepAxis::PZ => cfg.noise.p_z = value,
            SweepAxis::PLoss => cfg.noise.p_loss = value,
            SweepAxis::ThetaJitter => cfg.noise.theta_jitter = value,
            SweepAxis::Trials => {
                if !(value >= 1.0 && value.fract() == 0.0 && value <= u64::MAX as f64) {
                    return Err(Error::InvalidParameter(format!("trials = {value} must be a positive integer")));
                }
                cfg.trials = value as u64;
            }
        }
        Ok(cfg)
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "alpha" => SweepAxis::Alpha,
            "theta" => SweepAxis::Theta,
            "eta2" => SweepAxis::Eta2,
            "p_x" => SweepAxis::PX,
            "p_z" => SweepAxis::PZ,
            "p_loss" => SweepAxis::PLoss,
            "theta_jitter" => SweepAxis::ThetaJitter,
            "trials" => SweepAxis::Trials,
            other => return Err(Error::InvalidParameter(format!("unknown sweep axis {other:?}"))),
        })
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub config: ExperimentConfig,
    pub stats: TrialStats,
}

/// One run per value, in input order. Row `i` uses seed `base.seed + i`.
/// Every row's config is validated before any trial runs.
pub fn sweep(base: &ExperimentConfig, axis: SweepAxis, values: &[f64], jobs: usize) -> Result<Vec<SweepRow>> {
    let configs = values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let mut cfg = axis.apply(base, v)?;
            cfg.seed = base.seed.wrapping_add(i as u64);
            cfg.validate()?;
            Ok(cfg)
        })
        .collect::<Result<Vec<_>>>()?;
    configs
        .into_iter()
        .map(|config| {
            let stats = run_trials_with_jobs(&config, jobs)?;
            Ok(SweepRow { config, stats })
        })
        .collect()
}

pub const CSV_HEADER: &str = "code,syndrome_mode,alpha,theta,eta2,p_x,p_z,p_loss,theta_jitter,trials,seed,failures,logical_error_rate,wilson_lo,wilson_hi,mean_fidelity";

pub fn csv_row(config: &ExperimentConfig, stats: &TrialStats) -> String {
    let mode = if config.code.uses_block_syndromes() { config.syndrome_mode.name() } else { "-" };
    [
        config.code.name(),
        mode.to_string(),
        fmt_sig9(config.probe.alpha()),
        fmt_sig9(config.theta),
        fmt_sig9(config.probe.eta2()),
        fmt_sig9(config.noise.p_x),
        fmt_sig9(config.noise.p_z),
        fmt_sig9(config.noise.p_loss),
        fmt_sig9(config.noise.theta_jitter),
        stats.trials.to_string(),
        config.seed.to_string(),
        stats.failures.to_string(),
        fmt_sig9(stats.logical_error_rate),
        fmt_sig9(stats.wilson_95.0),
        fmt_sig9(stats.wilson_95.1),
        fmt_sig9(stats.mean_fidelity),
    ]
    .join(",")
}

/// Nine significant digits, `%g` style: fixed notation for exponents in
/// `[-5, 9)`, scientific otherwise, trailing zeros trimmed.
pub fn fmt_sig9(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Checks that a fixed logical input is a normalized qubit.
pub fn fixed_input(c0: Complex64, c1: Complex64) -> Result<InputMode> {
    let n = c0.norm_sqr() + c1.norm_sqr();
    if (n - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized(n));
    }
    Ok(InputMode::Fixed(c0, c1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig9_formatting() {
        assert_eq!(fmt_sig9(0.0), "0");
        assert_eq!(fmt_sig9(0.1), "0.1");
        assert_eq!(fmt_sig9(30.9), "30.9");
        assert_eq!(fmt_sig9(1.0 / 3.0), "0.333333333");
        assert_eq!(fmt_sig9(1.0e-3), "0.001");
        assert_eq!(fmt_sig9(1.2345678912e-7), "1.23456789e-7");
        assert_eq!(fmt_sig9(0.001225), "0.001225");
        assert_eq!(fmt_sig9(123456789.0), "123456789");
        assert_eq!(fmt_sig9(1.0e10), "1e10");
        assert_eq!(fmt_sig9(-0.25), "-0.25");
    }

    #[test]
    fn wilson_bounds() {
        let (lo, hi) = wilson_interval(0, 100, WILSON_Z95);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.05);
        let (lo, hi) = wilson_interval(50, 100, WILSON_Z95);
        assert!(lo < 0.5 && hi > 0.5);
        let (lo, hi) = wilson_interval(100, 100, WILSON_Z95);
        assert!(lo > 0.95 && hi == 1.0);
    }

    #[test]
    fn config_validation() {
        let mut cfg = ExperimentConfig { trials: 0, ..Default::default() };
        assert!(cfg.validate().is_err());
        cfg.trials = 10;
        assert!(cfg.validate().is_ok());
        cfg.noise.p_loss = 0.1;
        assert!(cfg.validate().is_err(), "loss needs the erasure code");
        cfg.noise.p_loss = 0.0;
        cfg.probe = ProbeMode::new(10.0, 0.0, Backend::Homodyne).unwrap();
        assert!(cfg.validate().is_err(), "mod4 needs the ideal back-end");
        cfg.syndrome_mode = SyndromeMode::TwoProbeBinary;
        assert!(cfg.validate().is_ok());
        cfg.theta = 4.0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn sweep_axis_names_round_trip() {
        for axis in [
            SweepAxis::Alpha,
            SweepAxis::Theta,
            SweepAxis::Eta2,
            SweepAxis::PX,
            SweepAxis::PZ,
            SweepAxis::PLoss,
            SweepAxis::ThetaJitter,
            SweepAxis::Trials,
        ] {
            assert_eq!(axis.name().parse::<SweepAxis>().unwrap(), axis);
        }
        assert!("gamma".parse::<SweepAxis>().is_err());
    }
}
