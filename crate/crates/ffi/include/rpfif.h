#ifndef RPFIF_H
#define RPFIF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  RPFIF_STATUS_OK = 0,
  RPFIF_STATUS_VALIDATION = 1,
  RPFIF_STATUS_NON_CONVERGENCE = 2,
  RPFIF_STATUS_IO = 3,
  RPFIF_STATUS_NULL_POINTER = 4,
  RPFIF_STATUS_BUFFER_TOO_SMALL = 5,
  RPFIF_STATUS_PANIC = 6,
} RpfifStatus;

/**
 * A function sampled on a grid, in canonical coordinates.
 */
typedef struct RpfifGraph RpfifGraph;

/**
 * A projective IFS built from interpolation data and scale factors.
 */
typedef struct RpfifIfs RpfifIfs;

typedef struct {
  double a;
  double b;
  double c;
  double d;
  double f;
} RpfifCoefficients;

/**
 * `theta_used` is NaN when no admissible theta exists.
 */
typedef struct {
  double theta_max;
  double theta_used;
  double a_bound;
  double d_bound;
  double c_bound;
  bool sufficient;
} RpfifCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call into this library on the same thread.
 */
const char *rpfif_last_error_message(void);

/**
 * Builds an IFS from `n_points` homogeneous triples (`3 * n_points`
 * doubles, row-major) and `n_points - 1` scale factors.
 *
 * # Safety
 * `triples` and `scales` must point to the stated number of doubles and
 * `out` must be writable.
 */
RpfifStatus rpfif_ifs_new(const double *triples,
                          size_t n_points,
                          const double *scales,
                          size_t n_scales,
                          bool allow_degenerate,
                          RpfifIfs **out);

/**
 * # Safety
 * `ifs` must come from [`rpfif_ifs_new`] and not be used afterwards. Null is ignored.
 */
void rpfif_ifs_free(RpfifIfs *ifs);

/**
 * # Safety
 * Pointers must be valid.
 */
RpfifStatus rpfif_ifs_map_count(const RpfifIfs *ifs, size_t *out);

/**
 * Coefficients of map `n` (0-based).
 *
 * # Safety
 * Pointers must be valid.
 */
RpfifStatus rpfif_ifs_coefficients(const RpfifIfs *ifs, size_t n, RpfifCoefficients *out);

/**
 * Applies map `n` (0-based) to the homogeneous point `input[0..3]`;
 * writes the canonical image to `output[0..3]`.
 *
 * # Safety
 * `input` and `output` must each hold 3 doubles.
 */
RpfifStatus rpfif_ifs_apply_w(const RpfifIfs *ifs, size_t n, const double *input, double *output);

/**
 * Contraction certificate; pass a non-positive or NaN `theta` to let the
 * library choose one.
 *
 * # Safety
 * Pointers must be valid.
 */
RpfifStatus rpfif_ifs_certificate(const RpfifIfs *ifs, double theta, RpfifCertificate *out);

/**
 * Fixed point on a `grid_m`-node grid. On non-convergence the last iterate
 * is still returned in `out` together with `RPFIF_STATUS_NON_CONVERGENCE`.
 *
 * # Safety
 * `out` must be writable; `iterations` may be null.
 */
RpfifStatus rpfif_fixed_point(const RpfifIfs *ifs,
                              size_t grid_m,
                              double tol,
                              size_t max_iter,
                              RpfifGraph **out,
                              size_t *iterations);

/**
 * # Safety
 * `graph` must come from this library and not be used afterwards. Null is ignored.
 */
void rpfif_graph_free(RpfifGraph *graph);

/**
 * # Safety
 * Pointers must be valid.
 */
RpfifStatus rpfif_graph_len(const RpfifGraph *graph, size_t *out);

/**
 * Copies the canonical nodes into `us` and `vs`, each of `capacity` doubles.
 *
 * # Safety
 * `us` and `vs` must hold `capacity` doubles.
 */
RpfifStatus rpfif_graph_nodes(const RpfifGraph *graph, double *us, double *vs, size_t capacity);

/**
 * Value of the interpolation function at the point `(x : z)`.
 *
 * # Safety
 * Pointers must be valid.
 */
RpfifStatus rpfif_evaluate(const RpfifIfs *ifs, double x, double z, size_t depth, double *out_v);

/**
 * Random-iteration attractor: writes `n_points` canonical `(u, v)` pairs
 * to `out_uv`, which must hold `capacity >= 2 * n_points` doubles.
 *
 * # Safety
 * `out_uv` must hold `capacity` doubles.
 */
RpfifStatus rpfif_chaos_game(const RpfifIfs *ifs,
                             size_t n_points,
                             size_t burn_in,
                             uint64_t seed,
                             double *out_uv,
                             size_t capacity);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RPFIF_H */
