#ifndef PROBEQEC_H
#define PROBEQEC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PqStatus {
  PQ_STATUS_OK = 0,
  PQ_STATUS_NULL_POINTER = 1,
  PQ_STATUS_INVALID_ARGUMENT = 2,
  PQ_STATUS_QUBIT_OUT_OF_RANGE = 3,
  PQ_STATUS_LOST_QUBIT = 4,
  PQ_STATUS_UNRECOVERABLE = 5,
  PQ_STATUS_CONFIG = 6,
  // A Rust panic was caught at the boundary; the handle involved should
  // be considered unusable.
  PQ_STATUS_INTERNAL = 7,
} PqStatus;

typedef enum PqGate {
  PQ_GATE_X = 0,
  PQ_GATE_Z = 1,
  PQ_GATE_H = 2,
} PqGate;

typedef enum PqBasis {
  PQ_BASIS_COMPUTATIONAL = 0,
  PQ_BASIS_PLUS_MINUS = 1,
} PqBasis;

typedef enum PqBackend {
  PQ_BACKEND_IDEAL = 0,
  PQ_BACKEND_HOMODYNE = 1,
  PQ_BACKEND_PHOTON_NUMBER = 2,
} PqBackend;

typedef enum PqPauli {
  PQ_PAULI_X = 0,
  PQ_PAULI_Y = 1,
  PQ_PAULI_Z = 2,
} PqPauli;

// Opaque seeded random stream (ChaCha8).
typedef struct PqRng PqRng;

// Opaque qubit register.
typedef struct PqState PqState;

// Probe used by the two-qubit gates. `backend` takes a `PqBackend` value.
typedef struct PqProbe {
  double alpha;
  double eta2;
  int32_t backend;
} PqProbe;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *pq_version(void);

// Message of the last failed call on this thread, or NULL if none. The
// pointer stays valid until the next failing call on the same thread.
const char *pq_last_error(void);

// New random stream. Never returns NULL.
struct PqRng *pq_rng_new(uint64_t seed);

// # Safety
// `rng` must be NULL or a handle from `pq_rng_new` not yet freed.
void pq_rng_free(struct PqRng *rng);

// Register of `num_qubits` qubits in `|0...0>`.
//
// # Safety
// `out` must be a valid pointer.
enum PqStatus pq_state_new(size_t num_qubits, struct PqState **out);

// Register with amplitude `re[k] + i im[k]` on basis state `bits[k]`
// (qubit `i` is bit `i`). Repeated labels are summed; the result must be
// normalized.
//
// # Safety
// `bits`, `re` and `im` must each point to `len` readable elements; `out`
// must be a valid pointer.
enum PqStatus pq_state_from_amplitudes(size_t num_qubits,
                                       const uint64_t *bits,
                                       const double *re,
                                       const double *im,
                                       size_t len,
                                       struct PqState **out);

// # Safety
// `state` must be a live handle; `out` must be a valid pointer.
enum PqStatus pq_state_clone(const struct PqState *state, struct PqState **out);

// # Safety
// `state` must be NULL or a live handle, not used afterwards.
void pq_state_free(struct PqState *state);

// Number of qubits, or 0 for NULL.
//
// # Safety
// `state` must be NULL or a live handle.
size_t pq_state_num_qubits(const struct PqState *state);

// Number of stored basis branches, or 0 for NULL.
//
// # Safety
// `state` must be NULL or a live handle.
size_t pq_state_branch_count(const struct PqState *state);

// Bits and amplitude of branch `index` (branches are sorted by bits).
//
// # Safety
// `state` must be a live handle and the out pointers valid.
enum PqStatus pq_state_branch(const struct PqState *state,
                              size_t index,
                              uint64_t *bits,
                              double *re,
                              double *im);

// # Safety
// `state` must be a live handle.
enum PqStatus pq_state_apply_gate(struct PqState *state, size_t qubit, int32_t gate);

// # Safety
// `state` must be a live handle.
enum PqStatus pq_state_inject_pauli(struct PqState *state, size_t qubit, int32_t pauli);

// Projective measurement; `outcome` receives 0 or 1 (`|+>` is 0 in the
// `PlusMinus` basis).
//
// # Safety
// All handles must be live and `outcome` valid.
enum PqStatus pq_state_measure(struct PqState *state,
                               size_t qubit,
                               int32_t basis,
                               struct PqRng *rng,
                               uint8_t *outcome);

// Lose `qubit`: it is measured in the computational basis (the outcome is
// written to `outcome`) and flagged as lost.
//
// # Safety
// All handles must be live and `outcome` valid.
enum PqStatus pq_state_lose_qubit(struct PqState *state,
                                  size_t qubit,
                                  struct PqRng *rng,
                                  uint8_t *outcome);

// Fidelity `|<a|b>|^2` between two registers of equal size.
//
// # Safety
// Both handles must be live and `fidelity` valid.
enum PqStatus pq_state_fidelity(const struct PqState *a, const struct PqState *b, double *fidelity);

// Parity gate on `q1, q2`; `parity` receives the `Z_1 Z_2` eigenvalue
// (+1 even, -1 odd). With `convert_to_even` an odd outcome is followed by
// X on `q2`.
//
// # Safety
// All handles and pointers must be valid.
enum PqStatus pq_parity_gate(struct PqState *state,
                             size_t q1,
                             size_t q2,
                             const struct PqProbe *probe,
                             double theta,
                             bool convert_to_even,
                             struct PqRng *rng,
                             int32_t *parity);

// Symmetrizer on `q1, q2`: projects onto `X_1 X_2 = +1`. `parity` receives
// the underlying parity record (+1 even, -1 odd).
//
// # Safety
// All handles and pointers must be valid.
enum PqStatus pq_symmetrizer_gate(struct PqState *state,
                                  size_t q1,
                                  size_t q2,
                                  const struct PqProbe *probe,
                                  double theta,
                                  struct PqRng *rng,
                                  int32_t *parity);

// Intrinsic homodyne error `erfc(alpha sin(theta) / sqrt 2) / 2`.
double pq_p_err(double alpha, double theta);

// Run an experiment config (TOML text) on `jobs` threads (0 = all cores)
// and return the CSV table in `csv`, to be released with `pq_string_free`.
//
// # Safety
// `config` must be a NUL-terminated string and `csv` a valid pointer.
enum PqStatus pq_run_config(const char *config, size_t jobs, char **csv);

// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void pq_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PROBEQEC_H */
