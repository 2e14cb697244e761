#ifndef MANNHEIM_MANNHEIM_H
#define MANNHEIM_MANNHEIM_H

/* Ruled surfaces in Minkowski 3-space and their Mannheim offsets: C interface.
 *
 * Every function returning mh_status sets a thread-local message readable with
 * mh_last_error() when it fails. Strings returned through char** are owned by
 * the caller and released with mh_string_free(). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MANNHEIM_BUILDING)
#    define MH_API __declspec(dllexport)
#  else
#    define MH_API __declspec(dllimport)
#  endif
#else
#  define MH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mh_status {
  MH_OK = 0,
  MH_ERR_INVALID_ARGUMENT = 1,
  MH_ERR_PARSE = 2,
  MH_ERR_DOMAIN = 3,
  MH_ERR_NULL_VECTOR = 4,
  MH_ERR_DEGENERATE = 5,
  MH_ERR_PAIRING_MISMATCH = 6,
  MH_ERR_NO_REAL_SOLUTION = 7,
  MH_ERR_DIVISION_BY_ZERO = 8,
  MH_ERR_CONVERGENCE = 9,
  MH_ERR_IO = 10,
  MH_ERR_INTERNAL = 11
} mh_status;

typedef enum mh_surface_type {
  MH_TYPE_M1_MINUS = 0, /* timelike ruling, spacelike central normal */
  MH_TYPE_M1_PLUS = 1,  /* spacelike ruling, spacelike central normal */
  MH_TYPE_M2_PLUS = 2,  /* spacelike ruling, timelike central normal */
  MH_TYPE_DEGENERATE = 3
} mh_surface_type;

typedef enum mh_format { MH_FORMAT_CSV = 0, MH_FORMAT_JSON = 1 } mh_format;

typedef struct mh_surface mh_surface;
typedef struct mh_offset mh_offset;

MH_API const char* mh_version(void);
MH_API const char* mh_status_name(mh_status s);
/* Message of the last failed call on this thread ("" if none). Parse errors
 * read "line L, column C: ...". */
MH_API const char* mh_last_error(void);
MH_API void mh_string_free(char* s);

/* ---- surfaces ---------------------------------------------------------- */

MH_API mh_status mh_surface_load(const char* path, mh_surface** out);
MH_API mh_status mh_surface_parse(const char* text, mh_surface** out);
MH_API void mh_surface_free(mh_surface* s);

MH_API mh_status mh_surface_domain(const mh_surface* s, double* lo, double* hi);

typedef struct mh_classification {
  mh_surface_type type;
  int eps1; /* <h,h> */
  int eps2; /* <q,q> */
  int developable;
  double max_abs_drall;
  double kappa_min; /* over the surface's sample grid */
  double kappa_max;
} mh_classification;

/* MH_ERR_DEGENERATE (with type = MH_TYPE_DEGENERATE and the reason in
 * mh_last_error) when no frame type applies. */
MH_API mh_status mh_surface_classify(const mh_surface* s, mh_classification* out);

/* Frame grid of n >= 1 uniform points, columns
 * s,q1,q2,q3,h1,h2,h3,a1,a2,a3,ds1_ds,kappa,drall. */
MH_API mh_status mh_surface_frame_export(const mh_surface* s, int n, mh_format fmt, char** out);
/* Same grid as raw doubles: rows must hold 13 * n values. */
MH_API mh_status mh_surface_frame_rows(const mh_surface* s, int n, double* rows);

/* Arclength reparametrisation of the striction curve on n >= 2 knots: t,s CSV. */
MH_API mh_status mh_surface_reparam_csv(const mh_surface* s, int n, char** out);

/* ---- offsets ----------------------------------------------------------- */

/* R and theta are expressions in s; theta == NULL solves the developability
 * equation pointwise. pairing is "eq11", "eq12" or "eq13". */
MH_API mh_status mh_offset_build(const mh_surface* base, const char* R, const char* theta, const char* pairing,
                                 mh_offset** out);
MH_API void mh_offset_free(mh_offset* o);

typedef struct mh_offset_summary {
  int mannheim_ok;
  double max_h_deviation;
  mh_surface_type offset_type;
  double max_offset_drall;
  int has_argmax;
  double argmax_s;
  size_t excluded_count;
  int grid_points;
} mh_offset_summary;

MH_API mh_status mh_offset_summarize(const mh_offset* o, int n, mh_offset_summary* out);
/* i-th s-interval without a real theta. */
MH_API mh_status mh_offset_excluded(const mh_offset* o, size_t i, double* lo, double* hi);
MH_API mh_status mh_offset_summary_text(const mh_offset* o, int n, char** out);
/* s,c1,c2,c3,q1,q2,q3 rows on n grid points outside excluded intervals. */
MH_API mh_status mh_offset_export_csv(const mh_offset* o, int n, char** out);

/* ---- theorem suite ----------------------------------------------------- */

/* Newline-separated registry ids. */
MH_API mh_status mh_theorem_ids(char** out);
/* Runs the listed ids (all when count == 0) and returns the JSON report.
 * all_pass may be NULL. Unknown ids give MH_ERR_INVALID_ARGUMENT. */
MH_API mh_status mh_run_theorems(const char* const* ids, size_t count, uint64_t seed, char** report_json,
                                 int* all_pass);
MH_API uint64_t mh_default_seed(void);

#ifdef __cplusplus
}
#endif

#endif
