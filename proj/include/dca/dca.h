/*
 * dca.h - C interface to the density-classification automata library.
 *
 * Objects are opaque handles created by dca_*_create / dca_*_new style calls and released with
 * the matching dca_*_free. Every fallible call returns a dca_status; on failure a description
 * is available from dca_last_error() on the calling thread until the next failing call there.
 * Strings returned through char** are owned by the caller and released with dca_string_free.
 */
#ifndef DCA_DCA_H
#define DCA_DCA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(DCA_BUILDING_LIBRARY)
#    define DCA_API __declspec(dllexport)
#  else
#    define DCA_API __declspec(dllimport)
#  endif
#else
#  define DCA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dca_status {
  DCA_OK = 0,
  DCA_ERR_INVALID_ARGUMENT = 1,
  DCA_ERR_NON_FIXED_BACKGROUND = 2,
  DCA_ERR_DOMAIN_MISMATCH = 3,
  DCA_ERR_OVERLAPPING_ISLANDS = 4,
  DCA_ERR_WINDOW_TOO_LARGE = 5,
  DCA_ERR_TOO_LARGE = 6,
  DCA_ERR_ALPHA_NOT_LESS_THAN_ONE = 7,
  DCA_ERR_IO = 8,
  DCA_ERR_PARSE = 9,
  DCA_ERR_INTERNAL = 100
} dca_status;

typedef enum dca_outside_mode { DCA_OUTSIDE_EMPTY = 0, DCA_OUTSIDE_UNKNOWN = 1 } dca_outside_mode;

typedef enum dca_verdict { DCA_FIXED_TO_0 = 0, DCA_FIXED_TO_1 = 1, DCA_UNRESOLVED = 2 } dca_verdict;

typedef struct dca_rule dca_rule;
typedef struct dca_ring dca_ring;
typedef struct dca_window dca_window;
typedef struct dca_diagram dca_diagram;
typedef struct dca_eroder_report dca_eroder_report;
typedef struct dca_siteset dca_siteset;
typedef struct dca_trace dca_trace;
typedef struct dca_sweep dca_sweep;

/* ---- library ---------------------------------------------------------------------------- */

DCA_API const char* dca_version(void);
/* Identifier of the sampling and seed-splitting scheme, for output metadata. */
DCA_API const char* dca_prng_id(void);
DCA_API const char* dca_status_name(dca_status status);
DCA_API const char* dca_last_error(void);
DCA_API void dca_string_free(char* s);

/* ---- rules -------------------------------------------------------------------------------- */

/* gkl, traffic, smoothing, modified_traffic, and_erosion, or_erosion */
DCA_API dca_status dca_rule_builtin(const char* name, dca_rule** out);
/* table holds 2^(2*radius+1) entries of 0/1, indexed with x_{i-r} as the most significant bit. */
DCA_API dca_status dca_rule_from_table(int radius, const uint8_t* table, size_t table_len, const char* name,
                                       dca_rule** out);
DCA_API dca_status dca_rule_conjugate(const dca_rule* rule, dca_rule** out);
DCA_API void dca_rule_free(dca_rule* rule);
DCA_API int dca_rule_radius(const dca_rule* rule);
DCA_API const char* dca_rule_name(const dca_rule* rule);
DCA_API dca_status dca_rule_output(const dca_rule* rule, uint32_t neighborhood, int* out);
/* 1 if the tables are identical, 0 otherwise. */
DCA_API int dca_rule_equal(const dca_rule* a, const dca_rule* b);
/* 1 if the uniform configuration of the given symbol is a fixed point. */
DCA_API int dca_rule_fixes(const dca_rule* rule, int symbol);

/* ---- ring configurations ------------------------------------------------------------------ */

DCA_API dca_status dca_ring_from_string(const char* bits, dca_ring** out);
DCA_API dca_status dca_ring_sample(size_t n, double p, uint64_t seed, dca_ring** out);
DCA_API void dca_ring_free(dca_ring* ring);
DCA_API size_t dca_ring_length(const dca_ring* ring);
DCA_API dca_status dca_ring_to_string(const dca_ring* ring, char** out);
/* Exact density num/den, reduced. */
DCA_API dca_status dca_ring_density(const dca_ring* ring, uint64_t* num, uint64_t* den);
DCA_API dca_status dca_ring_evolve(const dca_rule* rule, const dca_ring* ring, uint64_t steps, dca_ring** out);
/* Disagreement sites, ascending; *sites is freed with dca_sites_free. */
DCA_API dca_status dca_ring_diff(const dca_ring* x, const dca_ring* y, int64_t** sites, size_t* count);
DCA_API void dca_sites_free(int64_t* sites);

/* ---- window configurations ---------------------------------------------------------------- */

/* Background symbol 0/1; bits give the cells on [start, start + strlen(bits) - 1]. */
DCA_API dca_status dca_window_create(int background, int64_t start, const char* bits, dca_window** out);
DCA_API void dca_window_free(dca_window* window);
DCA_API int64_t dca_window_start(const dca_window* window);
DCA_API dca_status dca_window_to_string(const dca_window* window, char** out);
DCA_API dca_status dca_window_evolve(const dca_rule* rule, const dca_window* window, uint64_t steps,
                                     dca_window** out);
/* *washed is set to 1 and *time to the washout time, or *washed to 0 if none within t_max. */
DCA_API dca_status dca_washout_time(const dca_rule* rule, const dca_window* window, uint64_t t_max, int* washed,
                                    uint64_t* time);

/* ---- space-time diagrams ------------------------------------------------------------------ */

DCA_API dca_status dca_diagram_from_ring(const dca_rule* rule, const dca_ring* initial, uint64_t steps,
                                         dca_diagram** out);
DCA_API dca_status dca_diagram_from_window(const dca_rule* rule, const dca_window* initial, uint64_t steps,
                                           dca_diagram** out);
/* Samples a Bernoulli ring of odd length n and records t_max steps. */
DCA_API dca_status dca_diagram_render(const dca_rule* rule, size_t n, double p, uint64_t seed, uint64_t t_max,
                                      dca_diagram** out);
DCA_API void dca_diagram_free(dca_diagram* diagram);
DCA_API size_t dca_diagram_width(const dca_diagram* diagram);
DCA_API size_t dca_diagram_rows(const dca_diagram* diagram);
/* Final row as a 0/1 string. */
DCA_API dca_status dca_diagram_final_row(const dca_diagram* diagram, char** out);
/* Plain PBM; comments is a NULL-terminated list written as "# ..." lines, may be NULL. */
DCA_API dca_status dca_diagram_write_pbm(const dca_diagram* diagram, const char* path, const char* const* comments);
DCA_API dca_status dca_diagram_pbm_string(const dca_diagram* diagram, const char* const* comments, char** out);

/* ---- eroder verification ------------------------------------------------------------------ */

/* slack < 0 selects the default of 4r extra steps; threads == 0 uses all cores. */
DCA_API dca_status dca_eroder_verify(const dca_rule* rule, int background, int m, int n_max, int slack,
                                     unsigned threads, dca_eroder_report** out);
DCA_API void dca_eroder_report_free(dca_eroder_report* report);
DCA_API int dca_eroder_report_pass(const dca_eroder_report* report);
DCA_API dca_status dca_eroder_report_csv(const dca_eroder_report* report, char** out);

/* ---- sparseness --------------------------------------------------------------------------- */

/* Members are the '1' positions of bits, position 0 at site origin. */
DCA_API dca_status dca_siteset_from_string(const char* bits, int64_t origin, dca_outside_mode outside,
                                           dca_siteset** out);
/* Bernoulli(p) members on [0, window_size - 1]. */
DCA_API dca_status dca_siteset_sample(int64_t window_size, double p, uint64_t seed, dca_outside_mode outside,
                                      dca_siteset** out);
DCA_API void dca_siteset_free(dca_siteset* set);
DCA_API size_t dca_siteset_size(const dca_siteset* set);

DCA_API dca_status dca_erase_up_to(const dca_siteset* set, int64_t k, int64_t l_max, dca_trace** out);
DCA_API void dca_trace_free(dca_trace* trace);
DCA_API size_t dca_trace_residual_count(const dca_trace* trace, int64_t l);
/* Stage CSV; with_certificate adds the max_territory_multiplicity column. */
DCA_API dca_status dca_trace_csv(const dca_trace* trace, int with_certificate, char** out);

typedef struct dca_certificate_summary {
  size_t islands;
  int separation_ok;
  size_t residual;
  uint32_t max_territory_multiplicity;
  size_t contained_pairs;    /* pairs where one island lies inside another */
  size_t outer_islands;      /* islands not contained in another */
  int outer_separation_ok;   /* the outer islands are disjoint and pairwise well separated */
} dca_certificate_summary;

DCA_API dca_status dca_trace_certificate(const dca_trace* trace, dca_certificate_summary* out);

/* ---- bounds ------------------------------------------------------------------------------- */

/* p is an exact rational such as "1/576" or "0.001". csv != 0 selects CSV, otherwise aligned text. */
DCA_API dca_status dca_bounds_table(uint32_t k, const char* p, uint32_t n, int csv, char** out);
/* Sign of alpha - 1 with alpha = p (2k)^2: -1, 0 or 1. */
DCA_API dca_status dca_bounds_alpha_compare_one(uint32_t k, const char* p, int* cmp);
/* alpha and the threshold (2k)^-2 as exact "a/b" strings. */
DCA_API dca_status dca_bounds_alpha(uint32_t k, const char* p, char** out);
DCA_API dca_status dca_bounds_p_threshold(uint32_t k, char** out);

/* ---- Monte Carlo -------------------------------------------------------------------------- */

typedef struct dca_trial_record {
  double p;
  uint64_t seed;
  uint64_t density_num;
  uint64_t density_den;
  dca_verdict verdict;
  int fixed;             /* 1 if fixation_time is meaningful */
  uint64_t fixation_time;
  int correct;           /* 1 if the verdict matches the strict initial majority */
} dca_trial_record;

/* Odd ring length n. */
DCA_API dca_status dca_trial_run_ring(const dca_rule* rule, size_t n, double p, uint64_t t_max, uint64_t seed,
                                      dca_trial_record* out);
DCA_API dca_status dca_sweep_ring(const dca_rule* rule, size_t n, const double* p_list, size_t p_count,
                                  uint64_t trials_per_p, uint64_t t_max, uint64_t base_seed, unsigned threads,
                                  dca_sweep** out);
DCA_API void dca_sweep_free(dca_sweep* sweep);
DCA_API size_t dca_sweep_rows(const dca_sweep* sweep);
DCA_API dca_status dca_sweep_row_counts(const dca_sweep* sweep, size_t row, uint64_t* fixed0, uint64_t* fixed1,
                                        uint64_t* unresolved);
DCA_API dca_status dca_sweep_csv(const dca_sweep* sweep, char** out);
/* One line per trial: rule,topology,n,background,p,t_max,seed,initial_density,verdict,fixation_time,correct */
DCA_API dca_status dca_sweep_trials_csv(const dca_sweep* sweep, char** out);

#ifdef __cplusplus
}
#endif

#endif /* DCA_DCA_H */
