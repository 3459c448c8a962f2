//! Probe read-out: ideal parity projection, homodyne with its intrinsic
//! misclassification error, displaced photon counting, and the single-probe
//! modulo-4 syndrome discriminator.

use std::f64::consts::SQRT_2;
use std::fmt;

use rand::Rng;
use rand_distr::{Distribution, Normal, Poisson};

use crate::error::{Error, Result};
use crate::state::{wrapped_distance, Backend, HybridState, ProbeId, ProbePhase, PHASE_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Eigenvalue of `Z_i Z_j`.
    pub fn sign(self) -> i8 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}

/// Raw detector record behind a parity decision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RawReadout {
    Quadrature(f64),
    PhotonCount(u64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParityOutcome {
    pub parity: Parity,
    /// `None` exactly when the back-end is ideal.
    pub raw: Option<RawReadout>,
}

/// Per-qubit phases of the single-probe three-qubit syndrome gate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mod4Config {
    theta1: f64,
    theta2: f64,
    theta3: f64,
}

impl Mod4Config {
    pub fn new(theta1: f64, theta2: f64, theta3: f64) -> Result<Self> {
        let t = [theta1, theta2, theta3];
        if t.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("mod-4 phases must be finite".into()));
        }
        if (theta1 + theta2 + theta3).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "mod-4 phases must sum to zero, got {}",
                theta1 + theta2 + theta3
            )));
        }
        for i in 0..3 {
            for j in i + 1..3 {
                if (t[i].abs() - t[j].abs()).abs() < PHASE_TOL {
                    return Err(Error::InvalidParameter(format!(
                        "mod-4 phases {} and {} are not distinct in magnitude",
                        t[i], t[j]
                    )));
                }
            }
        }
        let cfg = Self { theta1, theta2, theta3 };
        let points = cfg.constellation();
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if wrapped_distance(points[i].0, points[j].0) < PHASE_TOL {
                    return Err(Error::InvalidParameter(format!(
                        "mod-4 constellation phases {} and {} coincide modulo 2π",
                        points[i].0, points[j].0
                    )));
                }
            }
        }
        Ok(cfg)
    }

    /// `theta, 2 theta, -3 theta`.
    pub fn from_theta(theta: f64) -> Result<Self> {
        Self::new(theta, 2.0 * theta, -3.0 * theta)
    }

    pub fn thetas(&self) -> [f64; 3] {
        [self.theta1, self.theta2, self.theta3]
    }

    /// The seven probe phases paired with the group they belong to
    /// (0 for no phase, k for ±theta_k).
    fn constellation(&self) -> [(f64, usize); 7] {
        [
            (0.0, 0),
            (self.theta1, 1),
            (-self.theta1, 1),
            (self.theta2, 2),
            (-self.theta2, 2),
            (self.theta3, 3),
            (-self.theta3, 3),
        ]
    }
}

/// Syndrome value of the single-probe read-out, in `{0, 1, 2, 3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mod4Syndrome(u8);

impl Mod4Syndrome {
    pub fn new(value: u8) -> Result<Self> {
        if value > 3 {
            return Err(Error::InvalidParameter(format!("mod-4 syndrome {value} is not in 0..=3")));
        }
        Ok(Self(value))
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// Phase group ±theta_k → syndrome. A flip on qubit 1 reads 2, on qubit
    /// 2 reads 3, on qubit 3 reads 1; the unshifted group reads 0.
    fn from_group(group: usize) -> Self {
        Self([0, 2, 3, 1][group])
    }
}

impl fmt::Display for Mod4Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Intrinsic misclassification probability of the homodyne parity read-out,
/// `erfc(|alpha| sin(theta) / sqrt 2) / 2`.
pub fn p_err(alpha: f64, theta: f64) -> f64 {
    0.5 * libm::erfc(alpha * theta.sin() / SQRT_2)
}

/// Probability that an odd branch produces zero photons after the `-alpha`
/// displacement, `exp(-4 alpha^2 sin^2(theta / 2))`.
pub fn p_miss_photon(alpha: f64, theta: f64) -> f64 {
    let s = (0.5 * theta).sin();
    (-4.0 * alpha * alpha * s * s).exp()
}

/// Read out the parity footprint `{0, ±theta}` left on a probe by a parity
/// gate, collapse the register accordingly and detach the probe.
///
/// Loss-induced dephasing is applied first when the probe's `eta2 > 0`.
pub fn measure_probe_parity<R: Rng + ?Sized>(
    state: &mut HybridState,
    probe: ProbeId,
    theta: f64,
    rng: &mut R,
) -> Result<ParityOutcome> {
    let mode = *state.probe(probe).ok_or(Error::UnknownProbe(probe))?;
    let footprint = [(0.0, Parity::Even), (theta, Parity::Odd), (-theta, Parity::Odd)];
    for b in state.branches() {
        let phase = state.phase_of(b, probe).expect("probe attached");
        classify(phase.nominal, &footprint)?;
    }
    state.apply_probe_dephasing(probe, rng)?;

    let alpha = mode.alpha();
    match mode.backend() {
        Backend::Ideal => {
            let (even, total) = group_weights(state, probe, |p| {
                classify(p.nominal, &footprint).map(|g| g == Parity::Even).unwrap_or(false)
            });
            let r: f64 = rng.random();
            let parity = if r * total < even { Parity::Even } else { Parity::Odd };
            state.collapse_probe(probe, |p| {
                let g = classify(p.nominal, &footprint).unwrap_or(Parity::Odd);
                if g == parity {
                    1.0
                } else {
                    0.0
                }
            })?;
            Ok(ParityOutcome { parity, raw: None })
        }
        Backend::Homodyne => {
            let phase = sample_branch_phase(state, probe, rng);
            let unit = Normal::new(0.0, 1.0).expect("unit normal");
            let x = 2.0 * alpha * phase.actual.sin() + unit.sample(rng);
            let threshold = alpha * theta.sin().abs();
            let parity = if x.abs() < threshold { Parity::Even } else { Parity::Odd };
            // Only |x| is recorded, so the Kraus weight is the square root of
            // the likelihood of |x| folded over both signs; it cannot tell
            // +theta from -theta. Residual phases are taken as corrected by
            // feed-forward.
            let ax = x.abs();
            let log_w = |p: &ProbePhase| {
                let m = 2.0 * alpha * p.actual.sin();
                let a = -0.5 * (ax - m) * (ax - m);
                let b = -0.5 * (ax + m) * (ax + m);
                let hi = a.max(b);
                0.5 * (hi + ((a - hi).exp() + (b - hi).exp()).ln())
            };
            let max = max_log_weight(state, probe, log_w);
            state.collapse_probe(probe, |p| (log_w(p) - max).exp())?;
            Ok(ParityOutcome { parity, raw: Some(RawReadout::Quadrature(x)) })
        }
        Backend::PhotonNumber => {
            let phase = sample_branch_phase(state, probe, rng);
            let mean = displaced_mean(alpha, phase.actual);
            let n = if mean > 0.0 {
                Poisson::new(mean).expect("positive mean").sample(rng) as u64
            } else {
                0
            };
            let parity = if n == 0 { Parity::Even } else { Parity::Odd };
            // |<n|beta>| with |beta|^2 = mean, in log form.
            let log_w = |p: &ProbePhase| {
                let m = displaced_mean(alpha, p.actual);
                if m <= 0.0 {
                    if n == 0 {
                        0.0
                    } else {
                        f64::NEG_INFINITY
                    }
                } else {
                    -0.5 * m + 0.5 * n as f64 * m.ln() - 0.5 * ln_factorial(n)
                }
            };
            let max = max_log_weight(state, probe, log_w);
            state.collapse_probe(probe, |p| (log_w(p) - max).exp())?;
            Ok(ParityOutcome { parity, raw: Some(RawReadout::PhotonCount(n)) })
        }
    }
}

/// Single-probe syndrome read-out distinguishing the phase groups `{0}`,
/// `{±theta_1}`, `{±theta_2}`, `{±theta_3}`. Only the ideal back-end is
/// supported.
pub fn measure_probe_phase_mod4<R: Rng + ?Sized>(
    state: &mut HybridState,
    probe: ProbeId,
    cfg: &Mod4Config,
    rng: &mut R,
) -> Result<Mod4Syndrome> {
    let mode = *state.probe(probe).ok_or(Error::UnknownProbe(probe))?;
    if mode.backend() != Backend::Ideal {
        return Err(Error::UnsupportedBackend(mode.backend()));
    }
    let points = cfg.constellation();
    for b in state.branches() {
        let phase = state.phase_of(b, probe).expect("probe attached");
        classify(phase.nominal, &points)?;
    }
    state.apply_probe_dephasing(probe, rng)?;

    let mut weights = [0.0f64; 4];
    let mut total = 0.0;
    for b in state.branches() {
        let phase = state.phase_of(b, probe).expect("probe attached");
        let g = classify(phase.nominal, &points)?;
        let w = b.amplitude().norm_sqr();
        weights[g] += w;
        total += w;
    }
    let r: f64 = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut group = 3;
    for (g, w) in weights.iter().enumerate() {
        acc += w;
        if r < acc && *w > 0.0 {
            group = g;
            break;
        }
    }
    if weights[group] == 0.0 {
        group = weights.iter().rposition(|w| *w > 0.0).unwrap_or(0);
    }
    state.collapse_probe(probe, |p| {
        if classify(p.nominal, &points).ok() == Some(group) {
            1.0
        } else {
            0.0
        }
    })?;
    Ok(Mod4Syndrome::from_group(group))
}

fn classify<T: Copy>(phase: f64, footprint: &[(f64, T)]) -> Result<T> {
    footprint
        .iter()
        .find(|(p, _)| wrapped_distance(phase, *p) < PHASE_TOL)
        .map(|(_, g)| *g)
        .ok_or(Error::WrongFootprint { phase })
}

fn group_weights<F>(state: &HybridState, probe: ProbeId, mut in_group: F) -> (f64, f64)
where
    F: FnMut(&ProbePhase) -> bool,
{
    let mut hit = 0.0;
    let mut total = 0.0;
    for b in state.branches() {
        let w = b.amplitude().norm_sqr();
        total += w;
        if in_group(&state.phase_of(b, probe).expect("probe attached")) {
            hit += w;
        }
    }
    (hit, total)
}

/// Draw a branch with probability `|a_b|^2` and return its probe phase; the
/// detector record is then drawn from that branch's distribution.
fn sample_branch_phase<R: Rng + ?Sized>(state: &HybridState, probe: ProbeId, rng: &mut R) -> ProbePhase {
    let total: f64 = state.branches().iter().map(|b| b.amplitude().norm_sqr()).sum();
    let r = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut chosen = state.branches().last().expect("non-empty state");
    for b in state.branches() {
        acc += b.amplitude().norm_sqr();
        if r < acc {
            chosen = b;
            break;
        }
    }
    state.phase_of(chosen, probe).expect("probe attached")
}

fn max_log_weight<F>(state: &HybridState, probe: ProbeId, log_w: F) -> f64
where
    F: Fn(&ProbePhase) -> f64,
{
    state
        .branches()
        .iter()
        .map(|b| log_w(&state.phase_of(b, probe).expect("probe attached")))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Mean photon number `|alpha (e^{i phi} - 1)|^2` after displacing by `-alpha`.
fn displaced_mean(alpha: f64, phase: f64) -> f64 {
    let s = (0.5 * phase).sin();
    4.0 * alpha * alpha * s * s
}

fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}
