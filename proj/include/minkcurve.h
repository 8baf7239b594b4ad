/*
 * minkcurve: Frenet/Cartan analysis and synthesis of curves in Minkowski
 * 3-space, behind a C interface.
 *
 * Conventions:
 *   - metric diag(-1, +1, +1); vector components ordered (x0, x1, x2) with x0
 *     the timelike coordinate
 *   - every function returns a mink_status; MINK_OK is 0
 *   - on failure, mink_last_error() returns a thread-local message
 *   - objects behind opaque handles are immutable once created and must be
 *     released with their matching *_free
 *   - char** outputs are heap strings; release with mink_string_free
 */
#ifndef MINKCURVE_H
#define MINKCURVE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mink_status {
    MINK_OK = 0,
    MINK_ERR_PARSE,
    MINK_ERR_UNKNOWN_FUNCTION,
    MINK_ERR_UNBOUND_VARIABLE,
    MINK_ERR_DOMAIN,
    MINK_ERR_POLE,
    MINK_ERR_DEGENERATE_CURVATURE,
    MINK_ERR_LIGHTLIKE_NORMAL,
    MINK_ERR_STRAIGHT_NULL_LINE,
    MINK_ERR_DEGENERATE_FRAME,
    MINK_ERR_NOT_NORMALIZED,
    MINK_ERR_PRECONDITION,
    MINK_ERR_KAPPA_NOT_ONE,
    MINK_ERR_SIGMA_SINGULAR,
    MINK_ERR_RANGE,
    MINK_ERR_EMPTY_GRID,
    MINK_ERR_INSUFFICIENT_SAMPLES,
    MINK_ERR_NO_CONVERGENCE,
    MINK_ERR_FRAME_BLOWUP,
    MINK_ERR_INVALID_ARGUMENT,
    MINK_ERR_INTERNAL
} mink_status;

const char* mink_status_name(mink_status status);
const char* mink_last_error(void);
const char* mink_version(void);
void mink_string_free(char* s);

/* ------------------------------------------------------------------ curves */

typedef struct mink_curve mink_curve;

/* Parse "(expr, expr, expr)" over the parameter s on [s_min, s_max].
 * excluded lists declared pole locations (may be NULL when n_excluded = 0). */
mink_status mink_curve_parse(const char* text, double s_min, double s_max, const double* excluded,
                             size_t n_excluded, mink_curve** out);
void mink_curve_free(mink_curve* curve);

/* Canonical printed form of the parsed curve. */
mink_status mink_curve_print(const mink_curve* curve, char** out);

/* out[k][i]: i-th component of the k-th derivative, k = 0..k_max (k_max <= 9). */
mink_status mink_curve_derivatives(const mink_curve* curve, double s, int k_max,
                                   double (*out)[3]);

/* -------------------------------------------------------- classification */

typedef enum mink_curve_class {
    MINK_CLASS_NONNULL_UNIT_SPEED = 0,
    MINK_CLASS_NULL_PSEUDO_ARC,
    MINK_CLASS_SPACELIKE_LIGHTLIKE_NORMAL,
    MINK_CLASS_NOT_NORMALIZED
} mink_curve_class;

typedef struct mink_classification {
    mink_curve_class curve_class;
    double g_tangent;          /* measured g(alpha', alpha') */
    double g_accel;            /* measured g(alpha'', alpha'') */
    int eps_T;                 /* +-1, meaningful for NONNULL_UNIT_SPEED */
    int degenerate_curvature;  /* 1 when ||alpha''|| vanishes */
} mink_classification;

mink_status mink_classify(const mink_curve* curve, double s, mink_classification* out);
const char* mink_curve_class_name(mink_curve_class c);

/* ------------------------------------------------------------------ frames */

typedef struct mink_frenet_apparatus {
    double T[3], N[3], B[3];
    double kappa, tau;
    int eps_T, eps_N, eps_B;
} mink_frenet_apparatus;

typedef struct mink_cartan_apparatus {
    double T[3], N[3], B[3];
    double kappa, tau; /* kappa is 1 for every non-degenerate null curve */
} mink_cartan_apparatus;

mink_status mink_frenet(const mink_curve* curve, double s, mink_frenet_apparatus* out);
mink_status mink_cartan(const mink_curve* curve, double s, mink_cartan_apparatus* out);

/* --------------------------------------------------------------- detectors */

typedef enum mink_verdict {
    MINK_VERDICT_VANISHES = 0,
    MINK_VERDICT_NON_VANISHING,
    MINK_VERDICT_INCONCLUSIVE
} mink_verdict;

typedef enum mink_constancy {
    MINK_CONSTANCY_CONSTANT = 0,
    MINK_CONSTANCY_NON_CONSTANT,
    MINK_CONSTANCY_INCONCLUSIVE
} mink_constancy;

typedef struct mink_report mink_report;

/* det3(alpha^(k), alpha^(k+1), alpha^(k+2)) over the grid, k in {0..3}. */
mink_status mink_detect_det(const mink_curve* curve, int k, const double* grid, size_t n,
                            mink_report** out);

/* Slant indicator sigma over the grid with a constancy verdict. */
mink_status mink_slant_sigma(const mink_curve* curve, const double* grid, size_t n,
                             mink_report** out);

mink_verdict mink_report_verdict(const mink_report* report);
mink_constancy mink_report_constancy(const mink_report* report);
size_t mink_report_size(const mink_report* report);
int mink_report_dropped(const mink_report* report);
/* JSON rendering; the string is owned by the report. */
const char* mink_report_json(const mink_report* report);
void mink_report_free(mink_report* report);

/* -------------------------------------------------------- torsion families */

typedef enum mink_family_case {
    MINK_FAMILY_SPACELIKE_SN_OR_TIMELIKE = 0,
    MINK_FAMILY_SPACELIKE_TN,
    MINK_FAMILY_NULL_SLANT,
    MINK_FAMILY_SALKOWSKI_I,
    MINK_FAMILY_SALKOWSKI_II,
    MINK_FAMILY_SALKOWSKI_III
} mink_family_case;

typedef struct mink_torsion_family {
    mink_family_case family_case;
    double a;       /* NULL_SLANT: tau = a / (b s + c)^2 */
    double b, c;
    double phi;     /* Salkowski cases */
    int sign;       /* overall +-1 */
    int inner_sign; /* the +-1 inside the SN-or-timelike bracket */
} mink_torsion_family;

mink_status mink_family_eval(const mink_torsion_family* family, double s, double* out);

/* Residual of the family's governing torsion ODE over the grid. */
mink_status mink_family_residual(const mink_torsion_family* family, const double* grid, size_t n,
                                 mink_report** out);

typedef struct mink_fit_result {
    mink_torsion_family family;
    double rms;
    int iterations;
} mink_fit_result;

/* Least-squares fit of a family to (s, tau) samples. */
mink_status mink_fit_family(const double* s, const double* tau, size_t n,
                            mink_family_case family_case, mink_fit_result* out);

/* ---------------------------------------------------------------- synthesis */

typedef enum mink_signature {
    MINK_SIG_TIMELIKE = 0,
    MINK_SIG_SPACELIKE_SN, /* spacelike curve, spacelike normal */
    MINK_SIG_SPACELIKE_TN, /* spacelike curve, timelike normal */
    MINK_SIG_NULL
} mink_signature;

typedef struct mink_frame_state {
    double s;
    double position[3], T[3], N[3], B[3];
} mink_frame_state;

typedef struct mink_samples mink_samples;

mink_status mink_canonical_frame(mink_signature sig, double s0, mink_frame_state* out);

/* Integrate the frame system with kappa = 1 from `initial` to s_end (either
 * direction) at the given positive step. */
mink_status mink_integrate_family(mink_signature sig, const mink_torsion_family* family,
                                  const mink_frame_state* initial, double s_end, double step,
                                  mink_samples** out);
mink_status mink_integrate_expr(mink_signature sig, const char* tau_expr,
                                const mink_frame_state* initial, double s_end, double step,
                                mink_samples** out);

/* Salkowski curve of the given case (1, 2 or 3) from the canonical frame. */
mink_status mink_make_salkowski(int salkowski_case, double phi, double s_lo, double s_hi,
                                double step, mink_samples** out);

size_t mink_samples_count(const mink_samples* samples);
mink_status mink_samples_get(const mink_samples* samples, size_t index, mink_frame_state* out);
double mink_samples_gram_drift(const mink_samples* samples);
mink_status mink_samples_csv(const mink_samples* samples, int with_frames, char** out);
mink_status mink_samples_json(const mink_samples* samples, int with_frames, char** out);
void mink_samples_free(mink_samples* samples);

/* ------------------------------------------------------------ verification */

typedef struct mink_check_result {
    char name[64];
    int passed;
    double worst; /* worst error as a fraction of its allowance */
    char detail[192];
} mink_check_result;

/* Run the built-in verification suite. Returns MINK_OK even when individual
 * checks fail; inspect the results. */
mink_status mink_run_verification(mink_check_result* results, size_t capacity, size_t* count);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MINKCURVE_H */
