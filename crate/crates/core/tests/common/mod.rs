//! Independent oracles shared by the integration tests. Nothing here calls
//! into the simulator except to read a finished state out.

#![allow(dead_code)]

pub mod fock;
pub mod marginals;

use num_complex::Complex64;
use probeqec::HybridState;

pub const TOL: f64 = 1e-10;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Dense `2^n` state vector; index bit `i` is qubit `i`.
#[derive(Clone, Debug)]
pub struct Dense {
    pub n: usize,
    pub amps: Vec<Complex64>,
}

impl Dense {
    pub fn zero(n: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[0] = c(1.0);
        Self { n, amps }
    }

    pub fn basis(n: usize, bits: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[bits] = c(1.0);
        Self { n, amps }
    }

    /// `bits` given as a string with qubit 0 leftmost, e.g. "010".
    pub fn ket(s: &str) -> Self {
        Self::basis(s.len(), bits_of(s))
    }

    pub fn from_terms(n: usize, terms: &[(&str, Complex64)]) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        for (s, a) in terms {
            assert_eq!(s.len(), n);
            amps[bits_of(s)] += *a;
        }
        Self { n, amps }.normalized()
    }

    /// Single-qubit product state.
    pub fn product(qubits: &[(Complex64, Complex64)]) -> Self {
        let n = qubits.len();
        let amps = (0..1usize << n)
            .map(|idx| {
                qubits
                    .iter()
                    .enumerate()
                    .map(|(q, (a0, a1))| if idx >> q & 1 == 1 { *a1 } else { *a0 })
                    .product()
            })
            .collect();
        Self { n, amps }
    }

    /// `self ⊗ other` with `self` on the low qubits.
    pub fn tensor(&self, other: &Dense) -> Dense {
        let n = self.n + other.n;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        for (i, a) in self.amps.iter().enumerate() {
            for (j, b) in other.amps.iter().enumerate() {
                amps[i | (j << self.n)] = a * b;
            }
        }
        Dense { n, amps }
    }

    pub fn add(&self, other: &Dense, a: Complex64, b: Complex64) -> Dense {
        assert_eq!(self.n, other.n);
        let amps = self.amps.iter().zip(&other.amps).map(|(x, y)| a * x + b * y).collect();
        Dense { n: self.n, amps }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalized(mut self) -> Self {
        let n = self.norm_sqr().sqrt();
        for a in &mut self.amps {
            *a /= n;
        }
        self
    }

    pub fn x(&mut self, q: usize) {
        for i in 0..self.amps.len() {
            let j = i ^ (1 << q);
            if i < j {
                self.amps.swap(i, j);
            }
        }
    }

    pub fn z(&mut self, q: usize) {
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i >> q & 1 == 1 {
                *a = -*a;
            }
        }
    }

    pub fn h(&mut self, q: usize) {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for i in 0..self.amps.len() {
            if i >> q & 1 == 0 {
                let j = i | (1 << q);
                let (a, b) = (self.amps[i], self.amps[j]);
                self.amps[i] = (a + b) * s;
                self.amps[j] = (a - b) * s;
            }
        }
    }

    /// Keep only the indices where `keep` holds (no renormalization).
    pub fn project(&self, keep: impl Fn(usize) -> bool) -> Dense {
        let amps = self.amps.iter().enumerate().map(|(i, a)| if keep(i) { *a } else { Complex64::new(0.0, 0.0) }).collect();
        Dense { n: self.n, amps }
    }

    pub fn inner(&self, other: &Dense) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn fidelity(&self, other: &Dense) -> f64 {
        self.inner(other).norm_sqr() / (self.norm_sqr() * other.norm_sqr())
    }

    /// Read a probe-free simulator state.
    pub fn from_state(s: &HybridState) -> Dense {
        assert!(!s.has_probes(), "oracle comparison needs a probe-free state");
        let n = s.num_qubits();
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        for b in s.branches() {
            amps[b.bits() as usize] += b.amplitude();
        }
        Dense { n, amps }
    }

    /// Write into a simulator state.
    pub fn to_state(&self) -> HybridState {
        let terms: Vec<(u64, Complex64)> = self
            .amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > 0.0)
            .map(|(i, a)| (i as u64, *a))
            .collect();
        HybridState::from_amplitudes(self.n, &terms).unwrap()
    }

    /// Reduced density matrix (2x2) of qubit `q`.
    pub fn reduced(&self, q: usize) -> [[Complex64; 2]; 2] {
        let mut rho = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..self.amps.len() {
            if i >> q & 1 == 0 {
                let j = i | (1 << q);
                let (a0, a1) = (self.amps[i], self.amps[j]);
                rho[0][0] += a0 * a0.conj();
                rho[0][1] += a0 * a1.conj();
                rho[1][0] += a1 * a0.conj();
                rho[1][1] += a1 * a1.conj();
            }
        }
        rho
    }
}

pub fn bits_of(s: &str) -> usize {
    s.chars().enumerate().fold(0, |acc, (i, ch)| match ch {
        '0' => acc,
        '1' => acc | (1 << i),
        other => panic!("bad bit {other:?}"),
    })
}

pub fn fid(state: &HybridState, oracle: &Dense) -> f64 {
    Dense::from_state(state).fidelity(oracle)
}

/// `c0|000> + c1|111>`.
pub fn bitflip_logical(c0: Complex64, c1: Complex64) -> Dense {
    Dense::ket("000").add(&Dense::ket("111"), c0, c1)
}

/// `c0|+++> + c1|--->`.
pub fn phaseflip_logical(c0: Complex64, c1: Complex64) -> Dense {
    let mut d = bitflip_logical(c0, c1);
    for q in 0..3 {
        d.h(q);
    }
    d
}

/// `c0 (|000>+|111>)^{⊗3}/2√2 + c1 (|000>-|111>)^{⊗3}/2√2`.
pub fn shor_logical(c0: Complex64, c1: Complex64) -> Dense {
    let plus = Dense::from_terms(3, &[("000", c(1.0)), ("111", c(1.0))]);
    let minus = Dense::from_terms(3, &[("000", c(1.0)), ("111", c(-1.0))]);
    let zero = plus.tensor(&plus).tensor(&plus);
    let one = minus.tensor(&minus).tensor(&minus);
    zero.add(&one, c0, c1)
}

/// `c0 (|00>+|11>)^{⊗n}/2^{n/2} + c1 (|01>+|10>)^{⊗n}/2^{n/2}`.
pub fn erasure_logical(n: usize, c0: Complex64, c1: Complex64) -> Dense {
    let even = Dense::from_terms(2, &[("00", c(1.0)), ("11", c(1.0))]);
    let odd = Dense::from_terms(2, &[("01", c(1.0)), ("10", c(1.0))]);
    let mut zero = even.clone();
    let mut one = odd.clone();
    for _ in 1..n {
        zero = zero.tensor(&even);
        one = one.tensor(&odd);
    }
    zero.add(&one, c0, c1)
}

/// `erfc` from the all-positive series
/// `erf x = 2/√π e^{-x²} Σ 2^k x^{2k+1} / (2k+1)!!` for `x < 2`, and a
/// Lentz-evaluated continued fraction above.
pub fn erfc_oracle(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 - erfc_oracle(-x);
    }
    if x < 2.0 {
        let x2 = x * x;
        let mut term = x;
        let mut sum = x;
        for k in 1..500 {
            term *= 2.0 * x2 / (2 * k + 1) as f64;
            sum += term;
            if term < 1e-18 * sum {
                break;
            }
        }
        1.0 - 2.0 / std::f64::consts::PI.sqrt() * (-x2).exp() * sum
    } else {
        // erfc x = e^{-x²}/√π / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
        let tiny = 1e-300;
        let mut f = x;
        let mut cc = f;
        let mut d = 0.0;
        for k in 1..5000 {
            let a = k as f64 / 2.0;
            d = x + a * d;
            d = if d.abs() < tiny { tiny } else { d };
            cc = x + a / cc;
            cc = if cc.abs() < tiny { tiny } else { cc };
            d = 1.0 / d;
            let delta = cc * d;
            f *= delta;
            if (delta - 1.0).abs() < 1e-17 {
                break;
            }
        }
        (-x * x).exp() / std::f64::consts::PI.sqrt() / f
    }
}

/// Bounds `|observed - expected| <= k σ` for a binomial proportion.
pub fn within_sigma(hits: u64, trials: u64, p: f64, k: f64) -> bool {
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    let obs = hits as f64 / trials as f64;
    (obs - p).abs() <= k * sigma
}
