//! Experiment configuration files.
//!
//! The format is TOML restricted to four tables:
//!
//! ```toml
//! [experiment]
//! code = "bitflip3"        # parity | bitflip3 | phaseflip3 | shor9 | erasure
//! pairs = 2                # erasure only
//! syndrome_mode = "mod4"   # mod4 | binary
//! trials = 100
//! seed = 42
//! input = "fixed"          # fixed | haar
//! c0 = 0.6
//! c1 = 0.8
//!
//! [probe]
//! alpha = 0.0
//! theta = 0.1
//! eta2 = 0.0
//! backend = "ideal"        # ideal | homodyne | photon
//! mod4_thetas = [0.1, 0.2, -0.3]
//!
//! [noise]
//! p_x = 0.0
//! p_z = 0.0
//! p_loss = 0.0
//! theta_jitter = 0.0
//! schedule = ["after_encode"]
//!
//! [sweep]
//! axis = "eta2"
//! values = [0.0, 0.001225, 0.01]
//! ```
//!
//! Every key is optional; omitted keys take the defaults of
//! [`ExperimentConfig::default`]. Errors carry the 1-based line of the
//! offending key.

use std::fmt;

use num_complex::Complex64;
use serde::Deserialize;
use toml::Spanned;

use crate::codes::SyndromeMode;
use crate::experiments::{
    csv_row, run_trials_with_jobs, sweep, CodeChoice, ExperimentConfig, InputMode, SweepAxis, CSV_HEADER,
};
use crate::measurement::Mod4Config;
use crate::noise::NoiseStep;
use crate::state::{Backend, ProbeMode};

/// A parsed config file: one run, or one sweep over `axis`.
#[derive(Clone, Debug, PartialEq)]
pub struct RunPlan {
    pub config: ExperimentConfig,
    pub sweep: Option<(SweepAxis, Vec<f64>)>,
    /// Whether the file sets `experiment.seed`.
    pub seed_set: bool,
}

impl RunPlan {
    /// Run the plan on `jobs` threads (0 = all cores) and render the CSV
    /// table, header included.
    pub fn csv(&self, jobs: usize) -> crate::Result<String> {
        let rows = match &self.sweep {
            None => vec![csv_row(&self.config, &run_trials_with_jobs(&self.config, jobs)?)],
            Some((axis, values)) => {
                sweep(&self.config, *axis, values, jobs)?.iter().map(|r| csv_row(&r.config, &r.stats)).collect()
            }
        };
        let mut csv = String::with_capacity(64 * (rows.len() + 1));
        csv.push_str(CSV_HEADER);
        csv.push('\n');
        for r in rows {
            csv.push_str(&r);
            csv.push('\n');
        }
        Ok(csv)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    /// 1-based line, when the error can be tied to one.
    pub line: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}: ")?;
        }
        if let Some(field) = &self.field {
            write!(f, "{field}: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileDoc {
    #[serde(default)]
    experiment: ExperimentTable,
    #[serde(default)]
    probe: ProbeTable,
    #[serde(default)]
    noise: NoiseTable,
    sweep: Option<Spanned<SweepTable>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ExperimentTable {
    code: Option<Spanned<String>>,
    pairs: Option<Spanned<i64>>,
    syndrome_mode: Option<Spanned<String>>,
    trials: Option<Spanned<i64>>,
    seed: Option<Spanned<u64>>,
    input: Option<Spanned<String>>,
    c0: Option<Spanned<f64>>,
    c1: Option<Spanned<f64>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ProbeTable {
    alpha: Option<Spanned<f64>>,
    theta: Option<Spanned<f64>>,
    eta2: Option<Spanned<f64>>,
    backend: Option<Spanned<String>>,
    mod4_thetas: Option<Spanned<Vec<f64>>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct NoiseTable {
    p_x: Option<Spanned<f64>>,
    p_z: Option<Spanned<f64>>,
    p_loss: Option<Spanned<f64>>,
    theta_jitter: Option<Spanned<f64>>,
    schedule: Option<Spanned<Vec<String>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepTable {
    axis: Spanned<String>,
    values: Spanned<Vec<f64>>,
}

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn line_of(&self, offset: usize) -> usize {
        let end = offset.min(self.text.len());
        self.text.as_bytes()[..end].iter().filter(|&&b| b == b'\n').count() + 1
    }

    fn err<T>(&self, field: &str, value: &Spanned<T>, message: impl Into<String>) -> ConfigError {
        ConfigError {
            line: Some(self.line_of(value.span().start)),
            field: Some(field.to_string()),
            message: message.into(),
        }
    }

    fn probability(&self, field: &str, value: &Option<Spanned<f64>>, default: f64) -> Result<f64, ConfigError> {
        match value {
            None => Ok(default),
            Some(v) if (0.0..=1.0).contains(v.get_ref()) => Ok(*v.get_ref()),
            Some(v) => Err(self.err(field, v, format!("{} is not a probability in [0, 1]", v.get_ref()))),
        }
    }

    fn non_negative(&self, field: &str, value: &Option<Spanned<f64>>, default: f64) -> Result<f64, ConfigError> {
        match value {
            None => Ok(default),
            Some(v) if v.get_ref().is_finite() && *v.get_ref() >= 0.0 => Ok(*v.get_ref()),
            Some(v) => Err(self.err(field, v, format!("{} must be finite and >= 0", v.get_ref()))),
        }
    }
}

/// Parse and validate a config file's contents.
pub fn parse_config(text: &str) -> Result<RunPlan, ConfigError> {
    let ctx = Ctx { text };
    let doc: FileDoc = toml::from_str(text).map_err(|e| ConfigError {
        line: e.span().map(|s| ctx.line_of(s.start)),
        field: None,
        message: e.message().to_string(),
    })?;
    let mut cfg = ExperimentConfig::default();
    let exp = &doc.experiment;

    let code_name = exp.code.as_ref().map(|s| s.get_ref().as_str()).unwrap_or("bitflip3");
    cfg.code = match code_name {
        "parity" => CodeChoice::Parity,
        "bitflip3" => CodeChoice::BitFlip3,
        "phaseflip3" => CodeChoice::PhaseFlip3,
        "shor9" => CodeChoice::Shor9,
        "erasure" => {
            let n = match &exp.pairs {
                None => 2,
                Some(p) if (1..=32).contains(p.get_ref()) => *p.get_ref() as usize,
                Some(p) => return Err(ctx.err("experiment.pairs", p, "must be an integer in 1..=32")),
            };
            CodeChoice::Erasure(n)
        }
        other => {
            let span = exp.code.as_ref().expect("non-default code is spanned");
            return Err(ctx.err(
                "experiment.code",
                span,
                format!("unknown code {other:?} (expected parity, bitflip3, phaseflip3, shor9 or erasure)"),
            ));
        }
    };
    if let (Some(p), false) = (&exp.pairs, matches!(cfg.code, CodeChoice::Erasure(_))) {
        return Err(ctx.err("experiment.pairs", p, "only applies to the erasure code"));
    }
    if let Some(m) = &exp.syndrome_mode {
        cfg.syndrome_mode = match m.get_ref().as_str() {
            "mod4" => SyndromeMode::OneProbeMod4,
            "binary" => SyndromeMode::TwoProbeBinary,
            other => {
                return Err(ctx.err("experiment.syndrome_mode", m, format!("unknown mode {other:?} (mod4 or binary)")))
            }
        };
    }
    if let Some(t) = &exp.trials {
        if *t.get_ref() < 1 {
            return Err(ctx.err("experiment.trials", t, "must be >= 1"));
        }
        cfg.trials = *t.get_ref() as u64;
    }
    if let Some(s) = &exp.seed {
        cfg.seed = *s.get_ref();
    }
    let input = exp.input.as_ref().map(|s| s.get_ref().as_str()).unwrap_or("fixed");
    cfg.input = match input {
        "haar" => {
            if let Some(c) = exp.c0.as_ref().or(exp.c1.as_ref()) {
                return Err(ctx.err("experiment.c0", c, "amplitudes only apply to input = \"fixed\""));
            }
            InputMode::Haar
        }
        "fixed" => {
            let c0 = exp.c0.as_ref().map_or(0.6, |c| *c.get_ref());
            let c1 = exp.c1.as_ref().map_or(0.8, |c| *c.get_ref());
            let n = c0 * c0 + c1 * c1;
            if (n - 1.0).abs() > 1e-10 {
                let anchor = exp.c0.as_ref().or(exp.c1.as_ref()).expect("defaults are normalized");
                return Err(ctx.err("experiment.c0", anchor, format!("c0^2 + c1^2 = {n} is not 1")));
            }
            InputMode::Fixed(Complex64::new(c0, 0.0), Complex64::new(c1, 0.0))
        }
        other => {
            let span = exp.input.as_ref().expect("non-default input is spanned");
            return Err(ctx.err("experiment.input", span, format!("unknown input {other:?} (fixed or haar)")));
        }
    };

    let pr = &doc.probe;
    let alpha = ctx.non_negative("probe.alpha", &pr.alpha, cfg.probe.alpha())?;
    let eta2 = ctx.probability("probe.eta2", &pr.eta2, cfg.probe.eta2())?;
    let backend = match &pr.backend {
        None => Backend::Ideal,
        Some(b) => match b.get_ref().as_str() {
            "ideal" => Backend::Ideal,
            "homodyne" => Backend::Homodyne,
            "photon" => Backend::PhotonNumber,
            other => {
                return Err(ctx.err("probe.backend", b, format!("unknown backend {other:?} (ideal, homodyne or photon)")))
            }
        },
    };
    cfg.probe = ProbeMode::new(alpha, eta2, backend).map_err(|e| ConfigError {
        line: pr.alpha.as_ref().map(|a| ctx.line_of(a.span().start)),
        field: Some("probe".into()),
        message: e.to_string(),
    })?;
    if let Some(t) = &pr.theta {
        let v = *t.get_ref();
        if !(v.is_finite() && v > 0.0 && v < std::f64::consts::PI) {
            return Err(ctx.err("probe.theta", t, format!("{v} must lie in (0, pi)")));
        }
        cfg.theta = v;
    }
    if let Some(m) = &pr.mod4_thetas {
        let v = m.get_ref();
        if v.len() != 3 {
            return Err(ctx.err("probe.mod4_thetas", m, format!("needs exactly 3 phases, got {}", v.len())));
        }
        cfg.mod4 = Some(Mod4Config::new(v[0], v[1], v[2]).map_err(|e| ctx.err("probe.mod4_thetas", m, e.to_string()))?);
    }

    let nz = &doc.noise;
    cfg.noise.p_x = ctx.probability("noise.p_x", &nz.p_x, 0.0)?;
    cfg.noise.p_z = ctx.probability("noise.p_z", &nz.p_z, 0.0)?;
    cfg.noise.p_loss = ctx.probability("noise.p_loss", &nz.p_loss, 0.0)?;
    cfg.noise.theta_jitter = ctx.non_negative("noise.theta_jitter", &nz.theta_jitter, 0.0)?;
    if let Some(s) = &nz.schedule {
        let mut steps = Vec::new();
        for name in s.get_ref() {
            let step: NoiseStep = name.parse().map_err(|e: crate::Error| ctx.err("noise.schedule", s, e.to_string()))?;
            if !steps.contains(&step) {
                steps.push(step);
            }
        }
        cfg.noise.schedule = steps;
    }

    // Cross-field rules, anchored to the key most likely at fault.
    if let Err(e) = cfg.validate() {
        let (field, line) = if cfg.noise.p_loss > 0.0 && !matches!(cfg.code, CodeChoice::Erasure(_)) {
            ("noise.p_loss", nz.p_loss.as_ref().map(|v| ctx.line_of(v.span().start)))
        } else if cfg.probe.backend() != Backend::Ideal && cfg.syndrome_mode == SyndromeMode::OneProbeMod4 {
            ("experiment.syndrome_mode", line_of_opt(&ctx, &exp.syndrome_mode).or(line_of_opt(&ctx, &pr.backend)))
        } else {
            ("experiment", None)
        };
        return Err(ConfigError { line, field: Some(field.into()), message: e.to_string() });
    }

    let sweep = match &doc.sweep {
        None => None,
        Some(table) => {
            let t = table.get_ref();
            let axis: SweepAxis =
                t.axis.get_ref().parse().map_err(|e: crate::Error| ctx.err("sweep.axis", &t.axis, e.to_string()))?;
            if t.values.get_ref().is_empty() {
                return Err(ctx.err("sweep.values", &t.values, "needs at least one value"));
            }
            for &v in t.values.get_ref() {
                axis.apply(&cfg, v)
                    .and_then(|c| c.validate())
                    .map_err(|e| ctx.err("sweep.values", &t.values, format!("{axis} = {v}: {e}")))?;
            }
            Some((axis, t.values.get_ref().clone()))
        }
    };
    Ok(RunPlan { config: cfg, sweep, seed_set: exp.seed.is_some() })
}

fn line_of_opt<T>(ctx: &Ctx<'_>, v: &Option<Spanned<T>>) -> Option<usize> {
    v.as_ref().map(|s| ctx.line_of(s.span().start))
}
