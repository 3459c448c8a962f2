//! C ABI over the `probeqec` simulator.
//!
//! Registers and random streams are opaque heap handles owned by the caller
//! and released with their `*_free` function. Fallible calls return a
//! [`PqStatus`]; on failure a message is kept per thread and can be read with
//! [`pq_last_error`]. Enum-valued arguments are passed as `int32_t` and
//! validated, so out-of-range values are reported rather than trusted.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use probeqec::config::parse_config;
use probeqec::gates::{parity_gate, symmetrizer_gate};
use probeqec::measurement::p_err;
use probeqec::noise::{inject_pauli, lose_qubit, Pauli};
use probeqec::{Backend, Basis, Error, Gate1, HybridState, ProbeMode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Opaque qubit register.
pub struct PqState(HybridState);

/// Opaque seeded random stream (ChaCha8).
pub struct PqRng(ChaCha8Rng);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    QubitOutOfRange = 3,
    LostQubit = 4,
    Unrecoverable = 5,
    Config = 6,
    /// A Rust panic was caught at the boundary; the handle involved should
    /// be considered unusable.
    Internal = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PqGate {
    X = 0,
    Z = 1,
    H = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PqBasis {
    Computational = 0,
    PlusMinus = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PqBackend {
    Ideal = 0,
    Homodyne = 1,
    PhotonNumber = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PqPauli {
    X = 0,
    Y = 1,
    Z = 2,
}

/// Probe used by the two-qubit gates. `backend` takes a `PqBackend` value.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct PqProbe {
    pub alpha: f64,
    pub eta2: f64,
    pub backend: i32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(PqStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::QubitOutOfRange { .. } | Error::TooManyQubits(_) | Error::EmptyRegister => PqStatus::QubitOutOfRange,
            Error::LostQubit(_) | Error::AlreadyLost(_) | Error::NotLost(_) => PqStatus::LostQubit,
            Error::Unrecoverable(_) => PqStatus::Unrecoverable,
            _ => PqStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(PqStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(PqStatus::InvalidArgument, msg.into())
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Run `f`, record any failure or panic, and translate it into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PqStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            PqStatus::Internal
        }
    }
}

unsafe fn state_mut<'a>(p: *mut PqState) -> Result<&'a mut HybridState, Failure> {
    p.as_mut().map(|s| &mut s.0).ok_or_else(|| null("state"))
}

unsafe fn state_ref<'a>(p: *const PqState) -> Result<&'a HybridState, Failure> {
    p.as_ref().map(|s| &s.0).ok_or_else(|| null("state"))
}

unsafe fn rng_mut<'a>(p: *mut PqRng) -> Result<&'a mut ChaCha8Rng, Failure> {
    p.as_mut().map(|r| &mut r.0).ok_or_else(|| null("rng"))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

fn gate(v: i32) -> Result<Gate1, Failure> {
    match v {
        0 => Ok(Gate1::X),
        1 => Ok(Gate1::Z),
        2 => Ok(Gate1::H),
        _ => Err(invalid(format!("unknown gate {v}"))),
    }
}

fn basis(v: i32) -> Result<Basis, Failure> {
    match v {
        0 => Ok(Basis::Computational),
        1 => Ok(Basis::PlusMinus),
        _ => Err(invalid(format!("unknown basis {v}"))),
    }
}

fn pauli(v: i32) -> Result<Pauli, Failure> {
    match v {
        0 => Ok(Pauli::X),
        1 => Ok(Pauli::Y),
        2 => Ok(Pauli::Z),
        _ => Err(invalid(format!("unknown Pauli {v}"))),
    }
}

unsafe fn probe_mode(p: *const PqProbe) -> Result<ProbeMode, Failure> {
    let p = p.as_ref().ok_or_else(|| null("probe"))?;
    let backend = match p.backend {
        0 => Backend::Ideal,
        1 => Backend::Homodyne,
        2 => Backend::PhotonNumber,
        v => return Err(invalid(format!("unknown backend {v}"))),
    };
    Ok(ProbeMode::new(p.alpha, p.eta2, backend)?)
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// New random stream. Never returns NULL.
#[no_mangle]
pub extern "C" fn pq_rng_new(seed: u64) -> *mut PqRng {
    boxed(PqRng(ChaCha8Rng::seed_from_u64(seed)))
}

/// # Safety
/// `rng` must be NULL or a handle from `pq_rng_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pq_rng_free(rng: *mut PqRng) {
    if !rng.is_null() {
        drop(Box::from_raw(rng));
    }
}

/// Register of `num_qubits` qubits in `|0...0>`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pq_state_new(num_qubits: usize, out: *mut *mut PqState) -> PqStatus {
    guard(|| {
        let out = self::out(out, "out")?;
        *out = boxed(PqState(HybridState::zeros(num_qubits)?));
        Ok(())
    })
}

/// Register with amplitude `re[k] + i im[k]` on basis state `bits[k]`
/// (qubit `i` is bit `i`). Repeated labels are summed; the result must be
/// normalized.
///
/// # Safety
/// `bits`, `re` and `im` must each point to `len` readable elements; `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pq_state_from_amplitudes(
    num_qubits: usize,
    bits: *const u64,
    re: *const f64,
    im: *const f64,
    len: usize,
    out: *mut *mut PqState,
) -> PqStatus {
    guard(|| {
        let out = self::out(out, "out")?;
        if len == 0 {
            return Err(invalid("no amplitudes given"));
        }
        if bits.is_null() || re.is_null() || im.is_null() {
            return Err(null("amplitude array"));
        }
        let (bits, re, im) = (
            std::slice::from_raw_parts(bits, len),
            std::slice::from_raw_parts(re, len),
            std::slice::from_raw_parts(im, len),
        );
        let terms: Vec<(u64, Complex64)> =
            (0..len).map(|k| (bits[k], Complex64::new(re[k], im[k]))).collect();
        *out = boxed(PqState(HybridState::from_amplitudes(num_qubits, &terms)?));
        Ok(())
    })
}

/// # Safety
/// `state` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pq_state_clone(state: *const PqState, out: *mut *mut PqState) -> PqStatus {
    guard(|| {
        let s = state_ref(state)?.clone();
        *self::out(out, "out")? = boxed(PqState(s));
        Ok(())
    })
}

/// # Safety
/// `state` must be NULL or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pq_state_free(state: *mut PqState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Number of qubits, or 0 for NULL.
///
/// # Safety
/// `state` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pq_state_num_qubits(state: *const PqState) -> usize {
    state.as_ref().map_or(0, |s| s.0.num_qubits())
}

/// Number of stored basis branches, or 0 for NULL.
///
/// # Safety
/// `state` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pq_state_branch_count(state: *const PqState) -> usize {
    state.as_ref().map_or(0, |s| s.0.branches().len())
}

/// Bits and amplitude of branch `index` (branches are sorted by bits).
///
/// # Safety
/// `state` must be a live handle and the out pointers valid.
#[no_mangle]
pub unsafe extern "C" fn pq_state_branch(
    state: *const PqState,
    index: usize,
    bits: *mut u64,
    re: *mut f64,
    im: *mut f64,
) -> PqStatus {
    guard(|| {
        let s = state_ref(state)?;
        let b = s.branches().get(index).ok_or_else(|| invalid(format!("branch {index} out of range")))?;
        let (bits, re, im) = (out(bits, "bits")?, out(re, "re")?, out(im, "im")?);
        *bits = b.bits();
        *re = b.amplitude().re;
        *im = b.amplitude().im;
        Ok(())
    })
}

/// # Safety
/// `state` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pq_state_apply_gate(state: *mut PqState, qubit: usize, gate: i32) -> PqStatus {
    guard(|| Ok(state_mut(state)?.apply_gate(qubit, self::gate(gate)?)?))
}

/// # Safety
/// `state` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pq_state_inject_pauli(state: *mut PqState, qubit: usize, pauli: i32) -> PqStatus {
    guard(|| Ok(inject_pauli(state_mut(state)?, qubit, self::pauli(pauli)?)?))
}

/// Projective measurement; `outcome` receives 0 or 1 (`|+>` is 0 in the
/// `PlusMinus` basis).
///
/// # Safety
/// All handles must be live and `outcome` valid.
#[no_mangle]
pub unsafe extern "C" fn pq_state_measure(
    state: *mut PqState,
    qubit: usize,
    basis: i32,
    rng: *mut PqRng,
    outcome: *mut u8,
) -> PqStatus {
    guard(|| {
        let (s, r, o) = (state_mut(state)?, rng_mut(rng)?, out(outcome, "outcome")?);
        *o = s.measure(qubit, self::basis(basis)?, r)?;
        Ok(())
    })
}

/// Lose `qubit`: it is measured in the computational basis (the outcome is
/// written to `outcome`) and flagged as lost.
///
/// # Safety
/// All handles must be live and `outcome` valid.
#[no_mangle]
pub unsafe extern "C" fn pq_state_lose_qubit(
    state: *mut PqState,
    qubit: usize,
    rng: *mut PqRng,
    outcome: *mut u8,
) -> PqStatus {
    guard(|| {
        let (s, r, o) = (state_mut(state)?, rng_mut(rng)?, out(outcome, "outcome")?);
        *o = lose_qubit(s, qubit, r)?;
        Ok(())
    })
}

/// Fidelity `|<a|b>|^2` between two registers of equal size.
///
/// # Safety
/// Both handles must be live and `fidelity` valid.
#[no_mangle]
pub unsafe extern "C" fn pq_state_fidelity(a: *const PqState, b: *const PqState, fidelity: *mut f64) -> PqStatus {
    guard(|| {
        *out(fidelity, "fidelity")? = state_ref(a)?.fidelity(state_ref(b)?)?;
        Ok(())
    })
}

/// Parity gate on `q1, q2`; `parity` receives the `Z_1 Z_2` eigenvalue
/// (+1 even, -1 odd). With `convert_to_even` an odd outcome is followed by
/// X on `q2`.
///
/// # Safety
/// All handles and pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pq_parity_gate(
    state: *mut PqState,
    q1: usize,
    q2: usize,
    probe: *const PqProbe,
    theta: f64,
    convert_to_even: bool,
    rng: *mut PqRng,
    parity: *mut i32,
) -> PqStatus {
    guard(|| {
        let (s, r, p) = (state_mut(state)?, rng_mut(rng)?, out(parity, "parity")?);
        let mode = probe_mode(probe)?;
        let outcome = parity_gate(s, q1, q2, &mode, theta, r, convert_to_even)?;
        *p = i32::from(outcome.parity.sign());
        Ok(())
    })
}

/// Symmetrizer on `q1, q2`: projects onto `X_1 X_2 = +1`. `parity` receives
/// the underlying parity record (+1 even, -1 odd).
///
/// # Safety
/// All handles and pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pq_symmetrizer_gate(
    state: *mut PqState,
    q1: usize,
    q2: usize,
    probe: *const PqProbe,
    theta: f64,
    rng: *mut PqRng,
    parity: *mut i32,
) -> PqStatus {
    guard(|| {
        let (s, r, p) = (state_mut(state)?, rng_mut(rng)?, out(parity, "parity")?);
        let mode = probe_mode(probe)?;
        let outcome = symmetrizer_gate(s, q1, q2, &mode, theta, r)?;
        *p = i32::from(outcome.parity.sign());
        Ok(())
    })
}

/// Intrinsic homodyne error `erfc(alpha sin(theta) / sqrt 2) / 2`.
#[no_mangle]
pub extern "C" fn pq_p_err(alpha: f64, theta: f64) -> f64 {
    p_err(alpha, theta)
}

/// Run an experiment config (TOML text) on `jobs` threads (0 = all cores)
/// and return the CSV table in `csv`, to be released with `pq_string_free`.
///
/// # Safety
/// `config` must be a NUL-terminated string and `csv` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pq_run_config(config: *const c_char, jobs: usize, csv: *mut *mut c_char) -> PqStatus {
    guard(|| {
        let csv = out(csv, "csv")?;
        if config.is_null() {
            return Err(null("config"));
        }
        let text = CStr::from_ptr(config).to_str().map_err(|e| Failure(PqStatus::Config, e.to_string()))?;
        let plan = parse_config(text).map_err(|e| Failure(PqStatus::Config, e.to_string()))?;
        let table = plan.csv(jobs)?;
        *csv = CString::new(table).expect("CSV has no NULs").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
