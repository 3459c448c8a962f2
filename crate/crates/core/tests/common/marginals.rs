//! Ensemble marginals of trajectory qubit loss against the partial trace.

use super::Dense;
use num_complex::Complex64;
use probeqec::noise::lose_qubit;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rho = [[Complex64; 2]; 2];

/// Average per-trajectory reduced density matrices of `survivors`, with the
/// per-element standard error.
pub fn ensemble_marginals(initial: &Dense, lost: usize, survivors: &[usize], runs: usize, seed: u64) -> Vec<(Rho, [[f64; 2]; 2])> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = vec![[[Complex64::new(0.0, 0.0); 2]; 2]; survivors.len()];
    let mut sum_sq = vec![[[0.0f64; 2]; 2]; survivors.len()];
    for _ in 0..runs {
        let mut s = initial.to_state();
        lose_qubit(&mut s, lost, &mut r).unwrap();
        let d = Dense::from_state(&s);
        for (k, &q) in survivors.iter().enumerate() {
            let rho = d.reduced(q);
            for i in 0..2 {
                for j in 0..2 {
                    sum[k][i][j] += rho[i][j];
                    // real and imaginary parts scatter independently; bound by |.|²
                    sum_sq[k][i][j] += rho[i][j].norm_sqr();
                }
            }
        }
    }
    let n = runs as f64;
    sum.into_iter()
        .zip(sum_sq)
        .map(|(s, sq)| {
            let mut mean = [[Complex64::new(0.0, 0.0); 2]; 2];
            let mut se = [[0.0; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    mean[i][j] = s[i][j] / n;
                    se[i][j] = ((sq[i][j] / n - mean[i][j].norm_sqr()).max(0.0) / n).sqrt();
                }
            }
            (mean, se)
        })
        .collect()
}

/// Compare trajectory marginals after losing `lost` with the exact partial
/// trace, element by element within 3 standard errors.
pub fn marginals_match(initial: &Dense, lost: usize, runs: usize, seed: u64) -> Result<(), String> {
    let survivors: Vec<usize> = (0..initial.n).filter(|&q| q != lost).collect();
    let got = ensemble_marginals(initial, lost, &survivors, runs, seed);
    for (k, &q) in survivors.iter().enumerate() {
        // exact partial trace over everything but q
        let oracle = initial.reduced(q);
        let (mean, se) = got[k];
        for i in 0..2 {
            for j in 0..2 {
                let diff = (mean[i][j] - oracle[i][j]).norm();
                if diff > 3.0 * se[i][j] + 1e-12 {
                    return Err(format!(
                        "qubit {q} rho[{i}][{j}]: {} vs {} (se {})",
                        mean[i][j], oracle[i][j], se[i][j]
                    ));
                }
            }
        }
    }
    Ok(())
}
