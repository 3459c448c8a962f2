//! Truncated Fock-space propagation of `exp(+i theta |1><1|_q ⊗ n)` on a
//! register coupled to one probe mode.

use num_complex::Complex64;
use probeqec::state::{Gate1, HybridState};
use rand::Rng;

pub fn fock_dim(alpha: f64) -> usize {
    (alpha * alpha + 10.0 * alpha + 20.0).ceil() as usize
}

/// Coherent-state coefficients `e^{-|a|²/2} a^n / sqrt(n!)` for real `a`.
pub fn coherent(alpha: f64, dim: usize) -> Vec<Complex64> {
    let mut v = Vec::with_capacity(dim);
    let mut c = (-0.5 * alpha * alpha).exp();
    for n in 0..dim {
        if n > 0 {
            c *= alpha / (n as f64).sqrt();
        }
        v.push(Complex64::new(c, 0.0));
    }
    v
}

/// Joint register ⊗ probe vector, index `bits * dim + n`.
pub struct Joint {
    pub dim: usize,
    pub amps: Vec<Complex64>,
}

impl Joint {
    pub fn new(register: &[Complex64], alpha: f64, dim: usize) -> Self {
        let probe = coherent(alpha, dim);
        let mut amps = Vec::with_capacity(register.len() * dim);
        for a in register {
            amps.extend(probe.iter().map(|p| a * p));
        }
        Self { dim, amps }
    }

    pub fn conditional_phase(&mut self, qubit: usize, theta: f64) {
        for (idx, a) in self.amps.iter_mut().enumerate() {
            let (bits, n) = (idx / self.dim, idx % self.dim);
            if bits >> qubit & 1 == 1 {
                *a *= Complex64::from_polar(1.0, theta * n as f64);
            }
        }
    }

    pub fn gate(&mut self, qubit: usize, gate: Gate1) {
        let blocks = self.amps.len() / self.dim;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for b in 0..blocks {
            if b >> qubit & 1 == 1 {
                continue;
            }
            let b1 = b | (1 << qubit);
            for n in 0..self.dim {
                let (i, j) = (b * self.dim + n, b1 * self.dim + n);
                let (x, y) = (self.amps[i], self.amps[j]);
                match gate {
                    Gate1::X => {
                        self.amps[i] = y;
                        self.amps[j] = x;
                    }
                    Gate1::Z => self.amps[j] = -y,
                    Gate1::H => {
                        self.amps[i] = (x + y) * s;
                        self.amps[j] = (x - y) * s;
                    }
                }
            }
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Expand the simulator's analytic branches into the same truncated basis.
pub fn expand(state: &HybridState, alpha: f64, dim: usize) -> Vec<Complex64> {
    let probe = state.probe_ids().next().expect("one probe");
    let mut v = vec![Complex64::new(0.0, 0.0); (1 << state.num_qubits()) * dim];
    let base = coherent(alpha, dim);
    for b in state.branches() {
        let phi = state.phase_of(b, probe).unwrap().actual;
        for n in 0..dim {
            v[b.bits() as usize * dim + n] += b.amplitude() * base[n] * Complex64::from_polar(1.0, phi * n as f64);
        }
    }
    v
}

pub fn overlap(a: &[Complex64], b: &[Complex64]) -> f64 {
    let ip: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    let na: f64 = a.iter().map(|x| x.norm_sqr()).sum();
    let nb: f64 = b.iter().map(|x| x.norm_sqr()).sum();
    ip.norm_sqr() / (na * nb)
}

pub fn random_register<R: Rng>(n: usize, r: &mut R) -> Vec<Complex64> {
    let v: Vec<Complex64> =
        (0..1usize << n).map(|_| Complex64::new(r.random::<f64>() - 0.5, r.random::<f64>() - 0.5)).collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|a| a / norm).collect()
}

pub fn to_state(register: &[Complex64], n: usize) -> HybridState {
    let terms: Vec<(u64, Complex64)> = register.iter().enumerate().map(|(i, a)| (i as u64, *a)).collect();
    HybridState::from_amplitudes(n, &terms).unwrap()
}
