#ifndef SHARPGAP_H
#define SHARPGAP_H

/*
 * C interface to the sharpgap library.
 *
 * Every fallible call returns an sg_status. On failure a thread-local
 * message describing the error is available from sg_last_error() until the
 * next failing call on the same thread. Objects returned through an
 * out-pointer are owned by the caller and released with the matching
 * *_free function; passing NULL to a *_free function is a no-op.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SHARPGAP_BUILDING)
#    define SG_API __declspec(dllexport)
#  else
#    define SG_API __declspec(dllimport)
#  endif
#else
#  define SG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sg_status {
  SG_OK = 0,
  SG_ERR_IO = 1,
  SG_ERR_INVALID_PARAMS = 2,
  SG_ERR_NONCONVERGENCE = 3,
  SG_ERR_POLE = 4,
  SG_ERR_CFL = 5,
  SG_ERR_DEGENERATE = 6,
  SG_ERR_MISMATCH = 7,
  SG_ERR_NULL_ARGUMENT = 8,
  SG_ERR_INTERNAL = 9
} sg_status;

SG_API const char* sg_last_error(void);
SG_API const char* sg_status_name(sg_status status);
SG_API const char* sg_version(void);

/* Dimension n, Ricci bound Ric >= (n-1) kappa, diameter D. */
typedef struct sg_model {
  int n;
  double kappa;
  double diameter;
} sg_model;

SG_API sg_status sg_model_validate(const sg_model* model);

/* ---- curvature-adapted trigonometric functions ------------------------ */

SG_API double sg_ck(double kappa, double tau);
SG_API double sg_sk(double kappa, double tau);
SG_API sg_status sg_tk(double kappa, double s, double* out);

/* ---- first eigenvalue --------------------------------------------------- */

typedef struct sg_eigen sg_eigen;

SG_API sg_status sg_eigen_solve(const sg_model* model, double tol, sg_eigen** out);
SG_API double sg_eigen_mu(const sg_eigen* eigen);
SG_API void sg_eigen_bracket(const sg_eigen* eigen, double* lo, double* hi);
SG_API int sg_eigen_iterations(const sg_eigen* eigen);
SG_API size_t sg_eigen_steps(const sg_eigen* eigen);
/* Eigenfunction samples at sigma = bracket_lo; returns the sample count. */
SG_API size_t sg_eigen_trajectory(const sg_eigen* eigen, const double** s, const double** phi,
                                  const double** dphi);
SG_API void sg_eigen_free(sg_eigen* eigen);

/* Shooting solution on steps + 1 nodes of [0, D/2]. `s`, `phi`, `dphi`
 * must each hold steps + 1 values (any may be NULL). first_zero receives
 * the first zero of Phi' or -1 when Phi' > 0 throughout. */
SG_API sg_status sg_integrate_phi(const sg_model* model, double sigma, size_t steps, double* s, double* phi,
                                  double* dphi, double* first_zero);

SG_API sg_status sg_sphere_limit(int n, double kappa, double* out);
SG_API sg_status sg_fd_oracle(const sg_model* model, size_t cells, double* out);
SG_API sg_status sg_fd_oracle_extrapolated(const sg_model* model, size_t cells, double* out);

/* ---- classical bounds --------------------------------------------------- */

typedef struct sg_bounds {
  double sharp_mu;
  int has_lichnerowicz;
  double lichnerowicz;
  double zhong_yang;
  double li_conjecture;
  double shi_zhang;
  double shi_zhang_s;
  int li_violated;
} sg_bounds;

SG_API sg_status sg_classical_bounds(const sg_model* model, double tol, sg_bounds* out);
SG_API sg_status sg_asymptotic_slope(int n, double h, double tol, double* out);

/* ---- flux and evolution ------------------------------------------------- */

typedef enum sg_flux_kind { SG_FLUX_HEAT = 0, SG_FLUX_PLAPLACIAN = 1 } sg_flux_kind;

typedef struct sg_flux {
  sg_flux_kind kind;
  double p;
  int has_epsilon; /* 0: regularisation chosen from the initial data */
  double epsilon;
} sg_flux;

/* Parses "heat", "plap:P" or "plap:P:EPS". */
SG_API sg_status sg_flux_parse(const char* spec, sg_flux* out);
SG_API sg_status sg_flux_eval(const sg_flux* flux, double q, double* alpha, double* beta);

typedef enum sg_boundary_kind { SG_BOUNDARY_NEUMANN = 0, SG_BOUNDARY_ROBIN = 1 } sg_boundary_kind;

typedef struct sg_controls {
  double cfl;
  const double* output_times;
  size_t output_count;
  sg_boundary_kind boundary;
  double robin;
  size_t max_steps;
} sg_controls;

SG_API void sg_controls_default(sg_controls* controls);

/* Time-indexed grid functions on nodes origin + j * spacing. */
typedef struct sg_series sg_series;

SG_API size_t sg_series_count(const sg_series* series);
SG_API double sg_series_time(const sg_series* series, size_t index);
SG_API size_t sg_series_values(const sg_series* series, size_t index, const double** values);
SG_API double sg_series_origin(const sg_series* series);
SG_API double sg_series_spacing(const sg_series* series);
SG_API double sg_series_oscillation(const sg_series* series, size_t index);
SG_API void sg_series_free(sg_series* series);

/* Comparison equation on [0, D/2]; phi0 holds cells + 1 samples. */
SG_API sg_status sg_evolve(const sg_flux* flux, const sg_model* model, const double* phi0, size_t count,
                           double t_end, const sg_controls* controls, sg_series** out);

/* ---- warped product ----------------------------------------------------- */

typedef struct sg_ricci_report {
  double radial;
  double tangential_min;
  int admissible;
} sg_ricci_report;

SG_API sg_status sg_ricci_bounds(int n, double kappa, double a, double diameter, sg_ricci_report* out);
SG_API double sg_default_warp(double kappa);

/* Radial flow on [-D/2, D/2]; u0 holds 2 m + 1 samples. */
SG_API sg_status sg_radial_flow(const sg_model* model, double a, const sg_flux* flux, const double* u0,
                                size_t count, double t_end, const sg_controls* controls, sg_series** out);

typedef struct sg_violation_report {
  size_t violations;
  size_t pairs_checked;
  size_t time_stamps;
  double worst_margin;
  double antipodal_defect;
} sg_violation_report;

/* `radial` from sg_radial_flow, `phi` from sg_evolve on the matching grid. */
SG_API sg_status sg_verify_moc(const sg_series* radial, const sg_series* phi, double tol,
                               sg_violation_report* out);

SG_API sg_status sg_fit_decay(const double* t, const double* osc, size_t count, double window, double* rate);

/* Seeded initial data: 2 m + 1 odd samples, or m + 1 concave samples. */
SG_API sg_status sg_seeded_odd_data(const sg_model* model, size_t cells_per_side, uint64_t seed, double* out);
SG_API sg_status sg_seeded_concave_profile(const sg_model* model, size_t cells, uint64_t seed, double* out);

/* ---- composite runs ----------------------------------------------------- */

typedef struct sg_decay_run sg_decay_run;

/* t_end <= 0 selects 6 / mu. */
SG_API sg_status sg_decay_run_execute(const sg_model* model, const sg_flux* flux, size_t cells_per_side,
                                      uint64_t seed, double t_end, double cfl, size_t samples, double window,
                                      double tol, sg_decay_run** out);
SG_API double sg_decay_run_mu(const sg_decay_run* run);
SG_API double sg_decay_run_rate(const sg_decay_run* run);
SG_API double sg_decay_run_t_end(const sg_decay_run* run);
SG_API size_t sg_decay_run_series(const sg_decay_run* run, const double** t, const double** osc);
SG_API void sg_decay_run_free(sg_decay_run* run);

typedef struct sg_moc_run_summary {
  double tolerance;
  double a;
  double epsilon; /* regularisation used (0 for heat) */
  sg_violation_report report;
} sg_moc_run_summary;

/* a <= 0 selects sg_default_warp(kappa). */
SG_API sg_status sg_moc_run(const sg_model* model, const sg_flux* flux, size_t cells, uint64_t seed,
                            double t_end, double a, double cfl, size_t samples, sg_moc_run_summary* out);

#ifdef __cplusplus
}
#endif

#endif /* SHARPGAP_H */
