mod common;

use common::{erfc_oracle, within_sigma};
use num_complex::Complex64;
use probeqec::codes::{CodeKind, CodeLayout, SyndromeMode};
use probeqec::experiments::{
    correct, encode, initial_register, run_trials, run_trials_with_jobs, sweep, wilson_interval, CodeChoice,
    ExperimentConfig, InputMode, SweepAxis,
};
use probeqec::noise::{inject_pauli, NoiseSpec, Pauli};
use probeqec::state::{Backend, ProbeMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MODES: [SyndromeMode; 2] = [SyndromeMode::TwoProbeBinary, SyndromeMode::OneProbeMod4];

fn base(code: CodeChoice) -> ExperimentConfig {
    ExperimentConfig { code, ..ExperimentConfig::default() }
}

fn homodyne(alpha: f64) -> ProbeMode {
    ProbeMode::new(alpha, 0.0, Backend::Homodyne).unwrap()
}

#[test]
fn noiseless_runs_never_fail() {
    let codes = [
        CodeChoice::Parity,
        CodeChoice::BitFlip3,
        CodeChoice::PhaseFlip3,
        CodeChoice::Shor9,
        CodeChoice::Erasure(1),
        CodeChoice::Erasure(2),
        CodeChoice::Erasure(3),
    ];
    for code in codes {
        for mode in MODES {
            for input in [InputMode::Fixed(Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)), InputMode::Haar] {
                let cfg = ExperimentConfig { syndrome_mode: mode, input, trials: 1000, ..base(code) };
                let stats = run_trials(&cfg).unwrap();
                assert_eq!(stats.failures, 0, "{code:?} {mode:?}");
                assert_eq!(stats.logical_error_rate, 0.0);
                assert!((stats.mean_fidelity - 1.0).abs() < 1e-10);
                assert_eq!(stats.wilson_95.0, 0.0);
                assert_eq!(stats.histogram.values().sum::<u64>(), 1000);
            }
        }
    }
}

#[test]
fn exactly_one_flip_per_trial_is_always_corrected() {
    let layout = CodeLayout::contiguous(CodeKind::BitFlip3).unwrap();
    let cfg = base(CodeChoice::BitFlip3);
    let settings = probeqec::codes::ProbeSettings::ideal(cfg.theta).unwrap();
    let mut r = ChaCha8Rng::seed_from_u64(3);
    for mode in MODES {
        for _ in 0..300 {
            let (c0, c1) = (Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0));
            let mut reference = initial_register(CodeKind::BitFlip3, c0, c1).unwrap();
            encode(&mut reference, &layout, mode, &settings, &mut r).unwrap();
            let mut s = initial_register(CodeKind::BitFlip3, c0, c1).unwrap();
            encode(&mut s, &layout, mode, &settings, &mut r).unwrap();
            inject_pauli(&mut s, r.random_range(0..3), Pauli::X).unwrap();
            let (_, ok) = correct(&mut s, &layout, mode, &settings, &mut r).unwrap();
            assert!(ok);
            assert!(s.fidelity(&reference).unwrap() > 1.0 - 1e-10);
        }
    }
}

#[test]
fn bitflip_rate_matches_two_flip_probability() {
    // a cycle fails iff at least two of the three qubits flip
    let p = 0.1;
    let trials = 20_000;
    let expected = 3.0 * p * p * (1.0 - p) + p * p * p;
    for mode in MODES {
        let cfg = ExperimentConfig {
            syndrome_mode: mode,
            noise: NoiseSpec { p_x: p, ..NoiseSpec::noiseless() },
            trials,
            seed: 5,
            ..base(CodeChoice::BitFlip3)
        };
        let stats = run_trials(&cfg).unwrap();
        assert!(within_sigma(stats.failures, trials, expected, 3.0), "{} vs {expected}", stats.logical_error_rate);
    }
}

#[test]
fn shor_rate_matches_block_oracle() {
    // Z errors only. An even number of Z in a block is a stabilizer, an odd
    // number flips that block's sign; the outer code fails when two or more
    // blocks are flipped
    let p: f64 = 0.05;
    let trials = 20_000;
    let block_odd = 3.0 * p * (1.0 - p).powi(2) + p.powi(3);
    let expected = 3.0 * block_odd.powi(2) * (1.0 - block_odd) + block_odd.powi(3);
    let cfg = ExperimentConfig {
        noise: NoiseSpec { p_z: p, ..NoiseSpec::noiseless() },
        trials,
        seed: 6,
        ..base(CodeChoice::Shor9)
    };
    let stats = run_trials_with_jobs(&cfg, 0).unwrap();
    assert!(within_sigma(stats.failures, trials, expected, 3.0), "{} vs {expected}", stats.logical_error_rate);
}

#[test]
fn erasure_rate_matches_loss_pattern_oracle() {
    // recoverable iff every lost qubit sits in a distinct pair and at least
    // one pair is untouched
    let p: f64 = 0.1;
    let trials = 20_000;
    let q = 1.0 - p;
    let ok2 = q.powi(4) + 4.0 * p * q.powi(3);
    let ok3 = q.powi(6) + 6.0 * p * q.powi(5) + 12.0 * p * p * q.powi(4);
    for (n, ok) in [(2, ok2), (3, ok3)] {
        let cfg = ExperimentConfig {
            noise: NoiseSpec { p_loss: p, ..NoiseSpec::noiseless() },
            trials,
            seed: 7,
            ..base(CodeChoice::Erasure(n))
        };
        let stats = run_trials_with_jobs(&cfg, 0).unwrap();
        assert!(within_sigma(stats.failures, trials, 1.0 - ok, 3.0), "n={n}: {} vs {}", stats.logical_error_rate, 1.0 - ok);
        let unrecoverable = stats.histogram.get("unrecoverable").copied().unwrap_or(0);
        assert_eq!(unrecoverable, stats.failures, "every recovered trial has fidelity 1");
    }
}

#[test]
fn results_do_not_depend_on_jobs() {
    let cfg = ExperimentConfig {
        noise: NoiseSpec { p_x: 0.05, p_z: 0.05, ..NoiseSpec::noiseless() },
        trials: 3000,
        seed: 99,
        input: InputMode::Haar,
        ..base(CodeChoice::Shor9)
    };
    let one = run_trials_with_jobs(&cfg, 1).unwrap();
    for jobs in [2, 4, 0] {
        assert_eq!(run_trials_with_jobs(&cfg, jobs).unwrap(), one);
    }
    let other_seed = ExperimentConfig { seed: 100, ..cfg };
    assert_ne!(run_trials(&other_seed).unwrap().histogram, one.histogram);
}

#[test]
fn homodyne_alpha_sweep_follows_error_curve() {
    let theta: f64 = 0.1;
    let targets = [1.0, 1.5, 2.0, 2.5];
    let alphas: Vec<f64> = targets.iter().map(|a| a / theta.sin()).collect();
    let cfg = ExperimentConfig {
        syndrome_mode: SyndromeMode::TwoProbeBinary,
        probe: homodyne(alphas[0]),
        theta,
        trials: 100_000,
        seed: 21,
        ..base(CodeChoice::Parity)
    };
    let rows = sweep(&cfg, SweepAxis::Alpha, &alphas, 0).unwrap();
    let mut last = 1.0;
    for (row, a) in rows.iter().zip(targets) {
        // odd branch at ±2a, declared even when |x| < a
        let exact = 0.5 * (erfc_oracle(a / 2f64.sqrt()) - erfc_oracle(3.0 * a / 2f64.sqrt()));
        assert!(
            within_sigma(row.stats.failures, row.stats.trials, exact, 3.0),
            "a = {a}: {} vs {exact}",
            row.stats.logical_error_rate
        );
        assert!(row.stats.logical_error_rate < last);
        last = row.stats.logical_error_rate;
    }
}

#[test]
fn eta2_sweep_is_monotone() {
    let theta: f64 = 0.1;
    let alpha = 3.09 / theta;
    let cfg = ExperimentConfig {
        syndrome_mode: SyndromeMode::TwoProbeBinary,
        probe: ProbeMode::new(alpha, 0.0, Backend::Ideal).unwrap(),
        theta,
        trials: 20_000,
        seed: 31,
        ..base(CodeChoice::Parity)
    };
    let rows = sweep(&cfg, SweepAxis::Eta2, &[0.0, 0.035 * 0.035, 0.1 * 0.1], 0).unwrap();
    let rates: Vec<f64> = rows.iter().map(|r| r.stats.logical_error_rate).collect();
    assert_eq!(rates[0], 0.0);
    assert!(rates[0] < rates[1] && rates[1] < rates[2], "{rates:?}");
}

#[test]
fn trials_sweep_shrinks_interval_like_inverse_sqrt() {
    let cfg = ExperimentConfig {
        noise: NoiseSpec { p_x: 0.2, ..NoiseSpec::noiseless() },
        seed: 41,
        ..base(CodeChoice::BitFlip3)
    };
    let rows = sweep(&cfg, SweepAxis::Trials, &[1000.0, 4000.0, 16000.0], 0).unwrap();
    let widths: Vec<f64> = rows.iter().map(|r| r.stats.wilson_95.1 - r.stats.wilson_95.0).collect();
    for w in widths.windows(2) {
        // quadrupling n halves the width, up to sampling noise in p
        let ratio = w[0] / w[1];
        assert!((ratio - 2.0).abs() < 0.2, "{widths:?}");
    }
}

#[test]
fn sweep_rows_keep_input_order_and_offset_seeds() {
    let cfg = ExperimentConfig { trials: 50, seed: 1000, ..base(CodeChoice::BitFlip3) };
    let values = [0.3, 0.0, 0.1];
    let rows = sweep(&cfg, SweepAxis::PX, &values, 1).unwrap();
    assert_eq!(rows.len(), 3);
    for (i, (row, v)) in rows.iter().zip(values).enumerate() {
        assert_eq!(row.config.noise.p_x, v);
        assert_eq!(row.config.seed, 1000 + i as u64);
    }
    assert!("bogus".parse::<SweepAxis>().is_err());
    for name in ["alpha", "theta", "eta2", "p_x", "p_z", "p_loss", "theta_jitter", "trials"] {
        assert_eq!(name.parse::<SweepAxis>().unwrap().name(), name);
    }
    // every row is validated before any trial runs
    assert!(sweep(&cfg, SweepAxis::PX, &[0.1, 1.5], 1).is_err());
}

#[test]
fn invalid_configs_are_rejected() {
    let ok = base(CodeChoice::BitFlip3);
    assert!(ok.validate().is_ok());
    assert!(ExperimentConfig { trials: 0, ..ok.clone() }.validate().is_err());
    assert!(ExperimentConfig { theta: 0.0, ..ok.clone() }.validate().is_err());
    assert!(ExperimentConfig { theta: std::f64::consts::PI, ..ok.clone() }.validate().is_err());
    assert!(ExperimentConfig { probe: homodyne(10.0), ..ok.clone() }.validate().is_err(), "mod4 needs ideal probes");
    assert!(ExperimentConfig {
        probe: homodyne(10.0),
        syndrome_mode: SyndromeMode::TwoProbeBinary,
        ..ok.clone()
    }
    .validate()
    .is_ok());
    let lossy = NoiseSpec { p_loss: 0.1, ..NoiseSpec::noiseless() };
    assert!(ExperimentConfig { noise: lossy.clone(), ..ok.clone() }.validate().is_err());
    assert!(ExperimentConfig { noise: lossy, ..base(CodeChoice::Erasure(2)) }.validate().is_ok());
    assert!(ExperimentConfig { code: CodeChoice::Erasure(40), ..ok.clone() }.validate().is_err());
    assert!(run_trials(&ExperimentConfig { trials: 0, ..ok }).is_err());
}

#[test]
fn wilson_coverage_on_half_rate_channel() {
    // two-qubit parity input under X noise fails unless neither qubit flips:
    // 1 - (1-p)^2 = 1/2 at p = 1 - 1/√2
    let p = 1.0 - std::f64::consts::FRAC_1_SQRT_2;
    let mut covered = 0;
    for run in 0..100 {
        let cfg = ExperimentConfig {
            noise: NoiseSpec { p_x: p, ..NoiseSpec::noiseless() },
            trials: 100,
            seed: 500 + run,
            ..base(CodeChoice::Parity)
        };
        let (lo, hi) = run_trials(&cfg).unwrap().wilson_95;
        covered += u32::from(lo <= 0.5 && 0.5 <= hi);
    }
    assert!(covered >= 90, "coverage {covered}/100");
}

#[test]
fn wilson_interval_reference_values() {
    // closed form for 10/100 at z = 1.96
    let (lo, hi) = wilson_interval(10, 100, 1.96);
    let (n, p, z) = (100.0f64, 0.1f64, 1.96f64);
    let centre = (p + z * z / (2.0 * n)) / (1.0 + z * z / n);
    let half = z / (1.0 + z * z / n) * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt();
    assert!((lo - (centre - half)).abs() < 1e-15 && (hi - (centre + half)).abs() < 1e-15);
    assert_eq!(wilson_interval(0, 10, 1.96).0, 0.0);
    assert_eq!(wilson_interval(10, 10, 1.96).1, 1.0);
}
