/* This file is part of chdet.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the chdet library: design and evaluation of correlation
 * and correlation+energy detectors for known discrete-time signals in
 * additive white non-Gaussian noise, using Chernoff-bound error exponents.
 *
 * Conventions:
 *  - Every fallible call returns a chdet_status; outputs are written through
 *    pointers only on CHDET_OK.
 *  - chdet_last_error() returns a thread-local message for the most recent
 *    failing call on the calling thread.
 *  - chdet_noise objects are immutable and freed with chdet_noise_free().
 *    All other types are plain structs owned by the caller.
 */

#ifndef CHDET_H
#define CHDET_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum chdet_status {
  CHDET_OK = 0,
  CHDET_ERR_DOMAIN = 1,           /* argument outside a CGF's finite strip */
  CHDET_ERR_OVERFLOW = 2,         /* evaluation would overflow/underflow */
  CHDET_ERR_OUT_OF_RANGE = 3,     /* target unreachable by a monotone map */
  CHDET_ERR_INFEASIBLE = 4,       /* constraints admit no design */
  CHDET_ERR_ARRANGEMENT = 5,      /* frequencies don't fit the block length */
  CHDET_ERR_INVALID_ARGUMENT = 6, /* malformed input */
  CHDET_ERR_INTERNAL = 7          /* unexpected failure; see last_error */
} chdet_status;

/* Library version, "major.minor.patch". */
const char* chdet_version(void);

/* Message describing this thread's most recent failure ("" if none). The
 * pointer stays valid until the next failing call on the same thread. */
const char* chdet_last_error(void);

/* ---------------------------------------------------------------- noise */

/* Opaque zero-mean white-noise model. */
typedef struct chdet_noise chdet_noise;

chdet_status chdet_noise_gaussian(double variance, chdet_noise** out);
/* Double-exponential density q/2 * exp(-q|x|). */
chdet_status chdet_noise_laplace(double scale_q, chdet_noise** out);
/* Uniform on [-half_width, half_width]. */
chdet_status chdet_noise_uniform(double half_width, chdet_noise** out);
/* Equiprobable two-point distribution on {-magnitude, +magnitude}. */
chdet_status chdet_noise_binary(double magnitude, chdet_noise** out);
/* Independent sum of two component models. */
chdet_status chdet_noise_sum(const chdet_noise* left,
                             const chdet_noise* right, chdet_noise** out);
void chdet_noise_free(chdet_noise* noise);

/* ln E[exp(v X)]. */
chdet_status chdet_noise_cgf(const chdet_noise* noise, double v,
                             double* out);
/* ln E[exp(x X + y X^2)]. */
chdet_status chdet_noise_joint_cgf(const chdet_noise* noise, double x,
                                   double y, double* out);
/* Variance of the model. */
chdet_status chdet_noise_variance(const chdet_noise* noise, double* out);

/* -------------------------------------------------------------- designs */

/* Hard cap on the number of (weight, signal) atoms in a flat design. */
#define CHDET_MAX_ATOMS 64

/* One joint (weight, signal) level with its relative frequency. */
typedef struct chdet_atom {
  double w;
  double s;
  double prob;
} chdet_atom;

/* A detector: per-sample statistic w_t y_t + gamma y_t^2 summed over the
 * block and compared against n * theta. */
typedef struct chdet_design {
  chdet_atom atoms[CHDET_MAX_ATOMS];
  size_t n_atoms;
  double gamma;
  double theta;
} chdet_design;

/* Error exponents of a design together with the optimizing parameters. */
typedef struct chdet_point {
  double e0;          /* false-alarm exponent budget */
  double e_fa;        /* achieved false-alarm exponent */
  double e_md;        /* achieved missed-detection exponent */
  double alpha_star;  /* false-alarm Chernoff parameter */
  double lambda_star; /* missed-detection Chernoff parameter */
  double gamma_star;  /* energy coefficient at the optimum */
  double theta_star;  /* per-sample threshold */
} chdet_point;

/* Smallest threshold whose false-alarm exponent meets the budget e0; also
 * reports the optimizing Chernoff parameter. */
chdet_status chdet_threshold_for_budget(const chdet_design* design,
                                        const chdet_noise* noise_n,
                                        double e0, double* theta,
                                        double* alpha_star);

/* Chernoff exponents of a fully specified design. noise_v drives the
 * signal-present hypothesis, noise_n the noise-only one. Exponents can be
 * +infinity when an error event is impossible at this threshold. */
chdet_status chdet_evaluate(const chdet_design* design,
                            const chdet_noise* noise_v,
                            const chdet_noise* noise_n, chdet_point* out);

/* Best correlator weights for a fixed signal profile under a false-alarm
 * budget: atoms supply (s, prob) pairs (w ignored on input) and gamma fixes
 * the energy coefficient (0 for a plain correlator). On success *out holds
 * the weighted design with its threshold and *point the exponents. */
chdet_status chdet_optimal_weights(const chdet_atom* signal_atoms,
                                   size_t n_atoms, double gamma, double e0,
                                   const chdet_noise* noise_v,
                                   const chdet_noise* noise_n,
                                   chdet_design* out, chdet_point* point);

/* ------------------------------------------------------- example curves */

/* Families of trade-off curves from the standard worked examples. */
typedef enum chdet_curve_mode {
  CHDET_CURVE_LINEAR_FIXED = 0,  /* four-level signal, free weights */
  CHDET_CURVE_LINEAR_JOINT = 1,  /* ternary signal+weights, power budget */
  CHDET_CURVE_ENERGY_FIXED = 2,  /* ternary signal, weights + energy term */
  CHDET_CURVE_ENERGY_JOINT = 3,  /* everything free under the power budget */
  CHDET_CURVE_CLASSICAL = 4      /* weights pinned proportional to signal */
} chdet_curve_mode;

/* Scenario constants; see chdet_config_defaults. Laplace-noise modes use
 * (a, q, z0, Ps); uniform-noise modes use (a, B, z0, Ps). */
typedef struct chdet_config {
  double a;  /* signal amplitude unit */
  double q;  /* Laplace scale */
  double z0; /* binary component magnitude */
  double B;  /* uniform half-width */
  double Ps; /* signal power budget for joint modes */
} chdet_config;

/* Fills the standard scenario constants: a=4, q=4, z0=7 for the
 * Laplace-noise examples; B=5 (with a=6) for the uniform-noise ones;
 * Ps = 80 for the linear joint mode and 16 for the energy joint mode.
 * The mode argument selects which defaults land in `a` and `Ps`. */
void chdet_config_defaults(chdet_curve_mode mode, chdet_config* out);

/* Solves one trade-off point at budget e0. design/point may be NULL when
 * the caller does not need them. */
chdet_status chdet_solve_point(chdet_curve_mode mode, double e0,
                               const chdet_config* config,
                               chdet_design* design, chdet_point* point);

/* Threshold of the unit-weight half-duty plain correlator at budget e0 for
 * uniform noise of the given half-width (saturates at half_width/2). */
chdet_status chdet_threshold_point(double e0, double half_width,
                                   double* theta);

/* ----------------------------------------------------------- simulation */

typedef struct chdet_sim_report {
  uint64_t n;
  uint64_t trials;
  double p_fa_hat;
  double p_fa_stderr;
  double p_md_hat;
  double p_md_stderr;
  double empirical_efa; /* -ln(p_fa_hat)/n; +inf when no events */
  double empirical_emd;
  int fa_insufficient_hits; /* fewer than 10 events observed */
  int md_insufficient_hits;
} chdet_sim_report;

/* Monte Carlo estimate of both error probabilities at block length n.
 * Deterministic for a given seed, independent of threading. */
chdet_status chdet_simulate(const chdet_design* design,
                            const chdet_noise* noise_v,
                            const chdet_noise* noise_n, uint64_t n,
                            uint64_t trials, uint64_t seed,
                            chdet_sim_report* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CHDET_H */
