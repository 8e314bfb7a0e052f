#ifndef GATEFORGE_H
#define GATEFORGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every `gf_*` call.
 */
typedef enum GfStatus {
  GF_STATUS_OK = 0,
  GF_STATUS_NULL_POINTER = 1,
  /**
   * Malformed JSON, wrong shape, non-finite entries or invalid UTF-8.
   */
  GF_STATUS_PARSE_ERROR = 2,
  GF_STATUS_NON_UNITARY = 3,
  GF_STATUS_PRIMITIVE_LOCAL = 4,
  GF_STATUS_PRIMITIVE_SWAP = 5,
  GF_STATUS_VERIFICATION_FAILED = 6,
  GF_STATUS_INTERNAL = 7,
  GF_STATUS_PANIC = 8,
} GfStatus;

typedef enum GfGateClass {
  GF_GATE_CLASS_PRIMITIVE_LOCAL = 0,
  GF_GATE_CLASS_PRIMITIVE_SWAP = 1,
  GF_GATE_CLASS_IMPRIMITIVE = 2,
} GfGateClass;

typedef enum GfCaseTag {
  GF_CASE_TAG_DIRECT_ZZ = 0,
  GF_CASE_TAG_GENERAL_DOUBLING = 1,
  GF_CASE_TAG_SINGLE_PI_OVER4 = 2,
  GF_CASE_TAG_DOUBLE_PI_OVER4 = 3,
  GF_CASE_TAG_RELABELED_BOUNDARY = 4,
} GfCaseTag;

/**
 * Validated two-qubit unitary.
 */
typedef struct GfGate GfGate;

/**
 * Compiled or parsed gate program.
 */
typedef struct GfProgram GfProgram;

typedef struct GfDecomposition {
  /**
   * `[θx, θy, θz]`.
   */
  double theta[3];
  double global_phase;
} GfDecomposition;

/**
 * Tolerances; a non-positive field selects the library default.
 */
typedef struct GfTolerances {
  double unitary;
  double classify;
  double verify;
} GfTolerances;

typedef struct GfReport {
  double theta[3];
  double phi;
  enum GfCaseTag case_tag;
  uint64_t q;
  uint64_t uses_of_u;
  uint64_t one_qubit_gates;
  double lower_bound;
  double ratio;
  double residual;
} GfReport;

/**
 * Message for the last failed call on this thread; empty after a success. Valid until
 * the next `gf_*` call on the same thread.
 */
const char *gf_last_error_message(void);

/**
 * Static version string.
 */
const char *gf_version(void);

/**
 * Builds a gate from 16 row-major real and 16 imaginary parts.
 *
 * # Safety
 * `re` and `im` must point to 16 doubles each; `out` must be writable.
 */
enum GfStatus gf_gate_from_entries(const double *re,
                                   const double *im,
                                   double tol_unitary,
                                   struct GfGate **out);

/**
 * Parses a `gateforge-gate/1` document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum GfStatus gf_gate_from_json(const char *json, double tol_unitary, struct GfGate **out);

/**
 * # Safety
 * `gate` must be null or a handle from this library not yet freed.
 */
void gf_gate_free(struct GfGate *gate);

/**
 * # Safety
 * `gate` must be a live handle; `out` must be writable.
 */
enum GfStatus gf_decompose(const struct GfGate *gate, struct GfDecomposition *out);

/**
 * # Safety
 * `gate` must be a live handle; `out` must be writable.
 */
enum GfStatus gf_classify(const struct GfGate *gate, double tol_classify, enum GfGateClass *out);

/**
 * Compiles `gate` into a CNOT program. `tol` may be null. `out_report` may be null.
 *
 * # Safety
 * `gate` must be a live handle; `out_program` must be writable.
 */
enum GfStatus gf_compile(const struct GfGate *gate,
                         const struct GfTolerances *tol,
                         struct GfProgram **out_program,
                         struct GfReport *out_report);

/**
 * # Safety
 * `program` must be null or a handle from this library not yet freed.
 */
void gf_program_free(struct GfProgram *program);

/**
 * Number of `U` applications, or 0 for a null handle.
 *
 * # Safety
 * `program` must be null or a live handle.
 */
uint64_t gf_program_uses_of_u(const struct GfProgram *program);

/**
 * Serializes to `gateforge-program/1`; free the string with [`gf_string_free`].
 *
 * # Safety
 * `program` must be a live handle; `out` must be writable.
 */
enum GfStatus gf_program_to_json(const struct GfProgram *program, char **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum GfStatus gf_program_from_json(const char *json, struct GfProgram **out);

/**
 * Writes the phase-blind distance of `program(gate)` from CNOT to `out_residual` and
 * returns `VerificationFailed` when it exceeds `tol_verify` (non-positive: default).
 *
 * # Safety
 * Handles must be live; `out_residual` may be null.
 */
enum GfStatus gf_verify(const struct GfProgram *program,
                        const struct GfGate *gate,
                        double tol_verify,
                        double *out_residual);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void gf_string_free(char *s);

#endif  /* GATEFORGE_H */
