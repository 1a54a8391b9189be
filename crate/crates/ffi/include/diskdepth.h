#ifndef DISKDEPTH_H
#define DISKDEPTH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Colour codes for [`dd_point_set_new`].
#define DD_COLOUR_NONE 0

#define DD_COLOUR_RED 1

#define DD_COLOUR_BLUE 2

typedef enum DdStatus {
  DD_STATUS_OK = 0,
  DD_STATUS_INVALID_INPUT = 1,
  DD_STATUS_DEGENERATE = 2,
  DD_STATUS_CONSISTENCY = 3,
  DD_STATUS_IO = 4,
  DD_STATUS_NULL_POINTER = 5,
  DD_STATUS_PANIC = 6,
} DdStatus;

typedef enum DdTarget {
  DD_TARGET_C = 0,
  DD_TARGET_C_TILDE = 1,
} DdTarget;

typedef struct DdPointSet DdPointSet;

typedef struct DdPolygon DdPolygon;

typedef struct DdPairStats {
  size_t c;
  size_t c_tilde;
} DdPairStats;

typedef struct DdSearchReport {
  size_t p;
  size_t q;
  struct DdPairStats stats;
  size_t attempts;
  size_t threshold_used;
  bool accepted;
  bool certified;
} DdSearchReport;

typedef struct DdSearchConfig {
  double alpha;
  enum DdTarget target;
  bool bichromatic;
  // Stop after the high-probability budget instead of the expected one.
  bool high_probability;
  uint64_t seed;
  // 0 keeps the default budget.
  size_t max_attempts;
} DdSearchConfig;

typedef struct DdDiametral {
  size_t p;
  size_t q;
  size_t count;
} DdDiametral;

typedef struct DdGeodesicEstimate {
  size_t upper_bound;
  // `SIZE_MAX` when no bisector sample was found.
  size_t upper_bound_tilde;
  size_t samples_evaluated;
  double witness_x;
  double witness_y;
  double witness_radius;
} DdGeodesicEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. Valid until
// the next call into this library on the same thread.
const char *dd_last_error_message(void);

// Builds a point set from `n` interleaved `x, y` pairs. `colours` may be
// NULL or hold `n` colour codes.
//
// # Safety
// `xy` must point to `2 * n` doubles, `colours` (if not NULL) to `n` ints.
enum DdStatus dd_point_set_new(const double *xy,
                               const int32_t *colours,
                               size_t n,
                               struct DdPointSet **out);

// # Safety
// `set` must come from [`dd_point_set_new`] and not be used afterwards.
void dd_point_set_free(struct DdPointSet *set);

// # Safety
// `set` must be a live handle or NULL.
size_t dd_point_set_len(const struct DdPointSet *set);

// Depth of the pair `(p, q)` by the bisector sweep, or by the brute-force
// oracle when `oracle` is set.
//
// # Safety
// `set` must be a live handle and `out` writable.
enum DdStatus dd_c_pair(const struct DdPointSet *set,
                        size_t p,
                        size_t q,
                        bool oracle,
                        struct DdPairStats *out);

// # Safety
// `set` must be a live handle and `out` writable.
enum DdStatus dd_maximize(const struct DdPointSet *set,
                          enum DdTarget target,
                          bool bichromatic,
                          struct DdSearchReport *out);

// Writes a pair of depth at least `k` and sets `*found`, or clears it.
//
// # Safety
// `set` must be a live handle; `found` and `out` writable.
enum DdStatus dd_decide_k(const struct DdPointSet *set,
                          size_t k,
                          enum DdTarget target,
                          bool bichromatic,
                          bool *found,
                          size_t *p,
                          size_t *q);

// Randomized planar search.
//
// # Safety
// `set` and `cfg` must be valid; `out` writable.
enum DdStatus dd_random_pair_search(const struct DdPointSet *set,
                                    const struct DdSearchConfig *cfg,
                                    struct DdSearchReport *out);

// Pair for points given in counterclockwise convex position.
//
// # Safety
// `set` must be a live handle and `out` writable.
enum DdStatus dd_convex_pair(const struct DdPointSet *set, struct DdSearchReport *out);

// # Safety
// `set` must be a live handle and `out` writable.
enum DdStatus dd_diametral_pair(const struct DdPointSet *set,
                                uint64_t seed,
                                struct DdDiametral *out);

// Polygon from `m` interleaved counterclockwise vertices.
//
// # Safety
// `xy` must point to `2 * m` doubles; `out` writable.
enum DdStatus dd_polygon_new(const double *xy, size_t m, struct DdPolygon **out);

// # Safety
// `poly` must come from [`dd_polygon_new`] and not be used afterwards.
void dd_polygon_free(struct DdPolygon *poly);

// # Safety
// `poly` must be a live handle and `out` writable.
enum DdStatus dd_geodesic_distance(const struct DdPolygon *poly,
                                   double ax,
                                   double ay,
                                   double bx,
                                   double by,
                                   double *out);

// Upper bound on the geodesic depth of `(p, q)` at grid resolution `h`.
//
// # Safety
// `poly` and `set` must be live handles and `out` writable.
enum DdStatus dd_geodesic_c_pair_upper(const struct DdPolygon *poly,
                                       const struct DdPointSet *set,
                                       size_t p,
                                       size_t q,
                                       double h,
                                       struct DdGeodesicEstimate *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DISKDEPTH_H */
