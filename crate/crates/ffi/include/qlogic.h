#ifndef QLOGIC_H
#define QLOGIC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Structural checks available through [`ql_lattice_check`].
typedef enum QlCheck {
  QL_CHECK_ORTHOMODULAR = 0,
  QL_CHECK_ATOMISTIC = 1,
  QL_CHECK_COVERING = 2,
  QL_CHECK_FRAME = 3,
  QL_CHECK_MODULAR = 4,
  QL_CHECK_SASAKI_ADJUNCTION = 5,
  QL_CHECK_SASAKI_JOINS = 6,
} QlCheck;

// Result of every call.
typedef enum QlStatus {
  QL_STATUS_OK = 0,
  // The requested law fails; the message holds the witness.
  QL_STATUS_VIOLATION = 1,
  QL_STATUS_INVALID_INPUT = 2,
  QL_STATUS_NULL_ARGUMENT = 3,
  // A size guard or search bound was exceeded.
  QL_STATUS_GUARD_EXCEEDED = 4,
  // An internal panic was caught at the boundary.
  QL_STATUS_PANIC = 5,
} QlStatus;

// The distributive hull of a lattice.
typedef struct QlHull QlHull;

// A finite lattice, possibly with an orthocomplement.
typedef struct QlLattice QlLattice;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a lattice document. On success `*out` owns a new handle.
enum QlStatus ql_lattice_from_json(const char *json, struct QlLattice **out);

// Builds a catalog lattice from a spec such as `"mo:2"` or `"o6"`.
enum QlStatus ql_lattice_from_catalog(const char *spec, struct QlLattice **out);

// Releases a lattice. Null is ignored.
void ql_lattice_free(struct QlLattice *lattice);

enum QlStatus ql_lattice_size(const struct QlLattice *lattice, size_t *out);

// Index of the element labelled `label`.
enum QlStatus ql_lattice_index_of(const struct QlLattice *lattice, const char *label, size_t *out);

// Label of element `index`; free the result with [`ql_string_free`].
enum QlStatus ql_lattice_label(const struct QlLattice *lattice, size_t index, char **out);

enum QlStatus ql_lattice_meet(const struct QlLattice *lattice, size_t a, size_t b, size_t *out);

enum QlStatus ql_lattice_join(const struct QlLattice *lattice, size_t a, size_t b, size_t *out);

// `Ok` if the law holds, `Violation` with a witness message if not.
enum QlStatus ql_lattice_check(const struct QlLattice *lattice, enum QlCheck check);

// `φ_b(a) = b ∧ (a ∨ b')`.
enum QlStatus ql_sasaki_projection(const struct QlLattice *lattice,
                                   size_t b,
                                   size_t a,
                                   size_t *out);

// `b' ∨ (b ∧ c)`.
enum QlStatus ql_sasaki_hook(const struct QlLattice *lattice, size_t b, size_t c, size_t *out);

// The lattice as a JSON document.
enum QlStatus ql_lattice_to_json(const struct QlLattice *lattice, char **out);

// The Hasse diagram in DOT.
enum QlStatus ql_lattice_to_dot(const struct QlLattice *lattice, char **out);

// The structure-flag report as JSON.
enum QlStatus ql_lattice_report_json(const struct QlLattice *lattice, char **out);

// Enumerates the distributive hull, refusing lattices above `max_size`.
enum QlStatus ql_hull_new(const struct QlLattice *lattice, size_t max_size, struct QlHull **out);

// Releases a hull. Null is ignored.
void ql_hull_free(struct QlHull *hull);

// Number of distributive ideals.
enum QlStatus ql_hull_count(const struct QlHull *hull, size_t *out);

// Checks the three squares for the measurement with eigenproperty `b`.
enum QlStatus ql_verify_pm_diagrams(const struct QlLattice *lattice, size_t b, size_t max_size);

// Searches the DCHeyt endomorphisms of `hull` for pairs collapsed by `G`.
// `*witnesses` receives the number of collapsed images found; the status is
// `GuardExceeded` if `bound` candidates did not cover the space.
enum QlStatus ql_nonfaithful_search(const struct QlHull *hull, size_t bound, size_t *witnesses);

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *ql_last_error_message(void);

// Releases a string returned by the library. Null is ignored.
void ql_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QLOGIC_H */
