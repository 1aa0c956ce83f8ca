/* akweak: simultaneous weak position/momentum measurement toolkit.
 *
 * C interface to the simulation core: opaque handles, status codes, and a
 * thread-local error message.  Every *_free takes ownership back; strings
 * returned through char** are released with akw_string_free.
 */
#ifndef AKWEAK_H
#define AKWEAK_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef AKW_API
#define AKW_API __attribute__((visibility("default")))
#endif

typedef enum akw_status {
    AKW_OK = 0,
    AKW_EINVAL = 1,   /* bad arguments or preconditions */
    AKW_EIO = 2,      /* file errors */
    AKW_ECHECK = 3,   /* a verification check failed */
    AKW_ERESOURCE = 4 /* refused: over the memory budget */
} akw_status;

typedef struct akw_state akw_state; /* 1D wavefunction on a uniform grid */
typedef struct akw_field akw_field; /* complex field over phase space */
typedef struct akw_dist akw_dist;   /* joint outcome density */

AKW_API const char* akw_version(void);

/* Message for the most recent failing call on this thread. */
AKW_API const char* akw_last_error(void);

/* Truncation and soft-validity warnings accumulated on this thread, joined
 * by newlines; NULL when there are none.  Clears the list. */
AKW_API char* akw_take_warnings(void);

AKW_API void akw_string_free(char* s);

/* --- states -------------------------------------------------------------- */

typedef struct akw_state_info {
    int n;
    double x_min, x_max;
    int dimensioned;  /* 0: dimensionless units */
    double b;         /* NaN when unset */
    int momentum_rep; /* 0: position representation */
} akw_state_info;

/* Coherent state centered at (a1, a2), dimensionless units. */
AKW_API akw_status akw_state_coherent(double a1, double a2, double x_min, double x_max,
                                      int n, akw_state** out);

/* kind: "gaussian" (center, width), "two-peak" (sep), "hermite1". */
AKW_API akw_status akw_state_test(const char* kind, double center, double width, double sep,
                                  int dimensioned, double b, double x_min, double x_max,
                                  int n, akw_state** out);

/* Detector wavefunctions, dimensioned units; d2 is returned in its momentum
 * representation on the conjugate grid. */
AKW_API akw_status akw_state_detector_d1(double b1, double x_min, double x_max, int n,
                                         akw_state** out);
AKW_API akw_status akw_state_detector_d2(double b2, double x_min, double x_max, int n,
                                         akw_state** out);

AKW_API akw_status akw_state_load(const char* csv_path, akw_state** out);
AKW_API akw_status akw_state_save(const akw_state* s, const char* csv_path);
AKW_API void akw_state_free(akw_state* s);

AKW_API akw_status akw_state_get_info(const akw_state* s, akw_state_info* out);
AKW_API akw_status akw_state_norm(const akw_state* s, double* out);
/* obs: 'x' or 'p'; order 1 or 2. */
AKW_API akw_status akw_state_moment(const akw_state* s, char obs, int order, double* out);
AKW_API akw_status akw_state_fidelity(const akw_state* a, const akw_state* b, double* out);
AKW_API akw_status akw_state_convert_units(const akw_state* s, int to_dimensioned, double b,
                                           akw_state** out);

/* --- measurement ----------------------------------------------------------- */

/* Strongest simultaneous measurement: post is the outcome coherent state,
 * prob_density per d(xm)d(pm).  Dimensionless input. */
AKW_API akw_status akw_measure_strong(const akw_state* psi, double xm, double pm,
                                      akw_state** post, double* prob_density);

/* Weak simultaneous measurement of strength lambda; post is normalized. */
AKW_API akw_status akw_measure_weak(const akw_state* psi, double xm, double pm, double lambda,
                                    akw_state** post, double* prob_density);

AKW_API akw_status akw_weak_normalization(double lambda, double* out);

/* --- outcome distributions --------------------------------------------------- */

typedef struct akw_phase_window {
    double a1_min, a1_max;
    int n1;
    double a2_min, a2_max;
    int n2;
} akw_phase_window;

/* mode: "strong" or "weak".  window NULL sizes the grid from the variance
 * laws.  The distribution is over dimensioned outcomes. */
AKW_API akw_status akw_dist_compute(const akw_state* psi, const char* mode, double b,
                                    double lambda, const akw_phase_window* window,
                                    akw_dist** out);
AKW_API akw_status akw_dist_total_mass(const akw_dist* d, double* out);
AKW_API akw_status akw_dist_moments(const akw_dist* d, double* mean_x, double* mean_p,
                                    double* var_x, double* var_p);
AKW_API akw_status akw_dist_window(const akw_dist* d, akw_phase_window* out);
AKW_API akw_status akw_dist_save(const akw_dist* d, const char* csv_path);
AKW_API akw_status akw_dist_sample_csv(const akw_dist* d, long count, unsigned long long seed,
                                       const char* csv_path);
AKW_API void akw_dist_free(akw_dist* d);

/* --- phase-space transform ----------------------------------------------------- */

AKW_API akw_status akw_gabor_forward(const akw_state* psi, const akw_phase_window* window,
                                     akw_field** out);
AKW_API akw_status akw_gabor_inverse(const akw_field* f, double x_min, double x_max, int n,
                                     akw_state** out);
AKW_API akw_status akw_gabor_project(const akw_field* f, akw_field** out);
AKW_API akw_status akw_field_norm(const akw_field* f, double* out);
AKW_API akw_status akw_field_save(const akw_field* f, const char* csv_path, int as_density);
AKW_API akw_status akw_field_load(const char* csv_path, akw_field** out);
AKW_API void akw_field_free(akw_field* f);

/* --- two-detector protocol ------------------------------------------------------ */

typedef struct akw_ak_params {
    double b;
    double b1, b2;        /* <= 0: derive from lambda, or equal-width fallback */
    double lambda;        /* > 0: detector widths from the weakness mapping */
    double tau;           /* interaction K*t */
    int n1, n2;           /* detector grid sizes, powers of two */
    int oracle_steps;     /* > 0: add the split-step comparison */
    int short_time;       /* nonzero: add the short-time comparison */
    int have_outcome;     /* nonzero: read out at (xm, pm) */
    double xm, pm;
    double mem_budget_mb; /* <= 0: default 2048 */
} akw_ak_params;

AKW_API akw_ak_params akw_ak_params_default(void);

/* psi_b must be dimensioned.  Any of dist_out, post_out, report_json may be
 * NULL; post_out is only produced when have_outcome is set. */
AKW_API akw_status akw_ak_run(const akw_state* psi_b, const akw_ak_params* params,
                              akw_dist** dist_out, akw_state** post_out, char** report_json);

/* --- verification ----------------------------------------------------------------- */

/* suite: all, gabor, povm, limits, variance, ak-equivalence, short-time,
 * sampling.  lambda > 0 restricts the swept checks to that value.  The
 * report is one JSON object per line: {check, value, tolerance, pass,
 * detail}.  Returns AKW_OK whether or not the checks pass; *all_passed
 * carries the verdict. */
AKW_API akw_status akw_verify(const char* suite, double b, double lambda, int quick,
                              char** report_jsonl, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* AKWEAK_H */
