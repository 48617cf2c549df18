/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

/* xfl: millimeter-wave piezoelectric acoustic filter design toolkit.
 *
 * C API over the C++ core. Every function returns XFL_OK (0) on success
 * or a negative error code; xfl_last_error() describes the most recent
 * failure on the calling thread. Objects returned through ** out
 * parameters are owned by the caller and released with the matching
 * *_free function. Borrowed strings stay valid while their parent
 * object lives.
 */
#ifndef XFL_H
#define XFL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define XFL_OK 0
#define XFL_ERR_INVALID_ARGUMENT (-1)
#define XFL_ERR_INFEASIBLE (-2)
#define XFL_ERR_PARSE (-3)
#define XFL_ERR_IO (-4)
#define XFL_ERR_NUMERIC (-5)
#define XFL_ERR_UNSUPPORTED (-6)
#define XFL_ERR_INTERNAL (-99)

/* k2 conventions for xfl_k2_from_fs_fp */
#define XFL_K2_CAPACITANCE_RATIO 0
#define XFL_K2_PI2_OVER_8 1

/* coupling classes reported by xfl_stack_coupled_orders */
#define XFL_COUPLING_STRONG 0
#define XFL_COUPLING_PARTIAL 1
#define XFL_COUPLING_WEAK 2

typedef struct xfl_config xfl_config;
typedef struct xfl_stack xfl_stack;
typedef struct xfl_mbvd xfl_mbvd;
typedef struct xfl_admittance xfl_admittance;
typedef struct xfl_sweep xfl_sweep;
typedef struct xfl_metrics xfl_metrics;
typedef struct xfl_fit_result xfl_fit_result;
typedef struct xfl_opt_result xfl_opt_result;
typedef struct xfl_tol_report xfl_tol_report;

const char* xfl_version(void);

/* Message for the most recent error on this thread. */
const char* xfl_last_error(void);

/* ---------- configuration ---------- */

int xfl_config_load(const char* path, xfl_config** out);
int xfl_config_parse(const char* json_text, xfl_config** out);
void xfl_config_free(xfl_config* cfg);

int xfl_config_seed(const xfl_config* cfg, uint64_t* out);
/* Calibrated acoustic velocities (from the config's calibration points). */
int xfl_config_velocity(const xfl_config* cfg, double* v_thickness, double* v_lateral);
/* Load-time lint notes, one per index; count via n_out. */
int xfl_config_warning(const xfl_config* cfg, size_t index, const char** out);
int xfl_config_warning_count(const xfl_config* cfg, size_t* n_out);

int xfl_config_stack_count(const xfl_config* cfg, size_t* n_out);
int xfl_config_stack_name(const xfl_config* cfg, size_t index, const char** out);
int xfl_config_stack_open(const xfl_config* cfg, const char* name, xfl_stack** out);

int xfl_config_resonator_count(const xfl_config* cfg, size_t* n_out);
int xfl_config_resonator_name(const xfl_config* cfg, size_t index, const char** out);
int xfl_config_resonator_spec(const xfl_config* cfg, const char* name, double* fs_ghz,
                              double* k2, double* q, double* c0_ff, size_t* n_spurs);
int xfl_config_resonator_open(const xfl_config* cfg, const char* name, xfl_mbvd** out);

/* Spur windows declared on the filter, flattened [start0, stop0, start1, ...]. */
int xfl_config_spur_windows(const xfl_config* cfg, double* buf, size_t cap, size_t* n_windows);
/* Main sweep grid of the config. */
int xfl_config_sweep(const xfl_config* cfg, double* f_start_ghz, double* f_stop_ghz,
                     int* n_points);
/* Nominal series/shunt detuning of the filter template, GHz. */
int xfl_config_delta_f(const xfl_config* cfg, double* out);

/* ---------- stack dispersion ---------- */

int xfl_stack_create(const double* thickness_nm, const int* orientation, size_t n_layers,
                     double v_thickness, double v_lateral, int order, double lambda_um,
                     xfl_stack** out);
void xfl_stack_free(xfl_stack* stack);

int xfl_stack_total_thickness(const xfl_stack* stack, double* h_nm);
int xfl_stack_mode(const xfl_stack* stack, int* order, double* lambda_um);
int xfl_stack_mode_frequency(const xfl_stack* stack, double* f_ghz);
int xfl_stack_sensitivity(const xfl_stack* stack, double* dfdh_ghz_per_nm);
int xfl_stack_trim_depth(const xfl_stack* stack, double delta_f_ghz, double electrode_offset_nm,
                         double* trim_nm);
int xfl_stack_coupled_orders(const xfl_stack* stack, int max_order, int* orders, int* classes,
                             size_t cap, size_t* n_out);

/* Pure dispersion helpers (no stack handle needed). */
int xfl_mode_frequency(double h_nm, int order, double lambda_um, double v_thickness,
                       double v_lateral, double* f_ghz);
int xfl_thickness_for_frequency(double f_ghz, int order, double lambda_um, double v_thickness,
                                double v_lateral, double* h_nm);
/* Least-squares v_thickness from (h, order, lambda, f) rows, v_lateral fixed. */
int xfl_calibrate_vh(const double* h_nm, const int* orders, const double* lambda_um,
                     const double* f_ghz, size_t n_points, double v_lateral,
                     double* v_thickness);

/* Dispersion curves (thickness_nm,order,frequency_ghz) per the config. */
int xfl_dispersion_write_csv(const xfl_config* cfg, const char* path);

/* ---------- mBVD resonator ---------- */

/* spur arrays may be NULL when n_spurs is 0 */
int xfl_mbvd_create(double fs_ghz, double k2, double q, double c0_ff, double rs_ohm,
                    double r0_ohm, const double* spur_fs_ghz, const double* spur_k2,
                    const double* spur_q, size_t n_spurs, xfl_mbvd** out);
void xfl_mbvd_free(xfl_mbvd* m);

int xfl_mbvd_branch_count(const xfl_mbvd* m, size_t* n_out);
int xfl_mbvd_branch(const xfl_mbvd* m, size_t index, double* rm_ohm, double* lm_nh,
                    double* cm_ff);
int xfl_mbvd_statics(const xfl_mbvd* m, double* rs_ohm, double* r0_ohm, double* c0_ff);
int xfl_mbvd_admittance(const xfl_mbvd* m, double f_ghz, double* re_s, double* im_s);
int xfl_mbvd_resonances(const xfl_mbvd* m, double* fs_ghz, double* fp_ghz);
int xfl_mbvd_quality_factor(const xfl_mbvd* m, double* q);
int xfl_mbvd_sweep(const xfl_mbvd* m, double f_start_ghz, double f_stop_ghz, int n_points,
                   xfl_admittance** out);

int xfl_k2_from_fs_fp(double fs_ghz, double fp_ghz, int convention, double* k2);

/* ---------- one-port data ---------- */

void xfl_admittance_free(xfl_admittance* a);
int xfl_admittance_size(const xfl_admittance* a, size_t* n_out);
int xfl_admittance_point(const xfl_admittance* a, size_t index, double* f_ghz, double* re_s,
                         double* im_s);
/* Reads .s1p (S11 against the file's reference impedance) or CSV. */
int xfl_admittance_load(const char* path, xfl_admittance** out);
int xfl_admittance_write_s1p(const xfl_admittance* a, const char* path, double z0_ohm);
int xfl_admittance_write_csv(const xfl_admittance* a, const char* path);

/* ---------- ladder filter ---------- */

/* Simulates the config's ladder over its sweep grid. */
int xfl_filter_simulate(const xfl_config* cfg, xfl_sweep** out);
void xfl_sweep_free(xfl_sweep* s);
int xfl_sweep_size(const xfl_sweep* s, size_t* n_out);
/* s11..s22 are (re, im) pairs; pass NULL for values not needed. */
int xfl_sweep_point(const xfl_sweep* s, size_t index, double* f_ghz, double s11[2],
                    double s21[2], double s12[2], double s22[2]);
int xfl_sweep_write_s2p(const xfl_sweep* s, const char* path, double z0_ohm);
int xfl_sweep_write_csv(const xfl_sweep* s, const char* path);
int xfl_sweep_load_s2p(const char* path, xfl_sweep** out);

/* ---------- response metrics ---------- */

/* windows: flattened [start0, stop0, ...] GHz pairs, may be NULL. */
int xfl_metrics_extract(const xfl_sweep* s, const double* windows, size_t n_windows,
                        xfl_metrics** out);
void xfl_metrics_free(xfl_metrics* m);
/* Any output may be NULL. Missing OoB regions report as +infinity. */
int xfl_metrics_values(const xfl_metrics* m, double* f_center_ghz, double* il_db,
                       double* fbw_pct, double* oob_db, double* oob_excl_db, double* f_lo_ghz,
                       double* f_hi_ghz);
int xfl_metrics_write_json(const xfl_metrics* m, const char* path);
/* Metrics joined against the bundled published-filter table. */
int xfl_report_write_json(const xfl_metrics* m, const char* path);

/* ---------- mBVD parameter extraction ---------- */

/* f_min/f_max mask the fitted span; pass 0, 0 to use everything. */
int xfl_fit_run(const xfl_admittance* a, int n_spurs, uint64_t seed, double f_min_ghz,
                double f_max_ghz, xfl_fit_result** out);
void xfl_fit_free(xfl_fit_result* r);
int xfl_fit_values(const xfl_fit_result* r, double* fs_ghz, double* k2, double* q, double* c0_ff,
                   double* residual, int* converged);
int xfl_fit_mbvd(const xfl_fit_result* r, xfl_mbvd** out);
int xfl_fit_write_json(const xfl_fit_result* r, const char* path);

/* ---------- design optimization ---------- */

int xfl_optimize_run(const xfl_config* cfg, uint64_t seed, xfl_opt_result** out);
void xfl_opt_free(xfl_opt_result* r);
int xfl_opt_values(const xfl_opt_result* r, double* best_cost, double* delta_f_ghz,
                   int* best_start);
int xfl_opt_sweep(const xfl_opt_result* r, xfl_sweep** out);
int xfl_opt_metrics(const xfl_opt_result* r, xfl_metrics** out);
int xfl_opt_write_json(const xfl_opt_result* r, const char* path);

/* ---------- fabrication tolerance ---------- */

/* with_filter: 1 = propagate into the configured ladder, 0 = stack only,
 * -1 = whatever the config says. */
int xfl_tolerance_run(const xfl_config* cfg, uint64_t seed, int with_filter,
                      xfl_tol_report** out);
void xfl_tol_free(xfl_tol_report* r);
int xfl_tol_values(const xfl_tol_report* r, double* shift_mean_ghz, double* shift_std_ghz,
                   double* shift_p5_ghz, double* shift_p95_ghz, double* pass_rate);
int xfl_tol_write_json(const xfl_tol_report* r, const char* path);
int xfl_tol_write_csv(const xfl_tol_report* r, const char* path);

/* Thickness margin producing a frequency budget, nm. */
int xfl_stack_required_margin(const xfl_stack* stack, double delta_f_budget_ghz, double* nm);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* XFL_H */
