#ifndef TORI_TORI_H
#define TORI_TORI_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define TORI_API __attribute__((visibility("default")))
#else
#define TORI_API
#endif

typedef enum tori_status {
    TORI_OK = 0,
    TORI_E_USAGE = 1,
    TORI_E_NON_UNIMODULAR,
    TORI_E_NOT_FINITE,
    TORI_E_TRIVIAL_GROUP,
    TORI_E_UNRECOGNIZED,
    TORI_E_BOUND_EXCEEDED,
    TORI_E_SCHEMA_MISMATCH,
    TORI_E_INVALID_DISCRIMINANT,
    TORI_E_MISSING_ROLE,
    TORI_E_NON_INTEGRAL_QUOTIENT,
    TORI_E_DEGENERATE,
    TORI_E_CYCLIC_INPUT,
    TORI_E_INCONSISTENT_PAIR,
    TORI_E_WILD_PRIME,
    TORI_E_REDUCIBLE,
    TORI_E_HEIGHT_EXCEEDED,
    TORI_E_OVERLAPPING_PREDICATES,
    TORI_E_DEGENERATE_GRID,
    TORI_E_UNIMPLEMENTED,
    TORI_E_IO,
    TORI_E_INTERNAL
} tori_status;

/* Strings returned through char** are malloc'd; release them with tori_free. */
TORI_API const char* tori_version(void);
TORI_API const char* tori_status_name(tori_status status);
/* Message of the last failing call on this thread ("" if none). */
TORI_API const char* tori_last_error(void);
TORI_API void tori_free(void* p);

/* Family labels may be given as H_{4,e} or H_4_e. */

/* CSV with header label,order,iso,a,b; one row per nontrivial class. */
TORI_API tori_status tori_groups_table(char** csv);
TORI_API tori_status tori_group_invariants(const char* label, int* order, int* a, int* b);

/* kind: quad, c3, s3, c4. CSV in the lmfdb-nf-v1 layout. */
TORI_API tori_status tori_fields_enum(const char* kind, int64_t bound, int workers, char** csv);
/* Validates an lmfdb-nf-v1 file and reports its row count. */
TORI_API tori_status tori_fields_import(const char* path, size_t* rows);
TORI_API tori_status tori_class_group(int64_t d, int64_t* h, int64_t* h2, int64_t* h3);

/* lemma: 22a 22b 22c 22d 3.2 3.3 3.4 3.5. Bundle CSV columns are role names. */
TORI_API tori_status tori_verify_identities(const char* lemma, const char* bundles_path, char** report_json);
TORI_API tori_status tori_conductor(const char* label, const char* roles, char** value);

typedef struct tori_series tori_series;
/* name: g1 g2 g3 h lemma42 lemma25 */
TORI_API tori_status tori_series_expand(const char* name, uint64_t n_max, tori_series** out);
TORI_API void tori_series_free(tori_series* s);
TORI_API uint64_t tori_series_length(const tori_series* s);
TORI_API int64_t tori_series_denominator(const tori_series* s);
TORI_API tori_status tori_series_coefficient(const tori_series* s, uint64_t n, int64_t* numerator);
/* "# series=<name> N=<n>" then n,a rows for the nonzero coefficients. */
TORI_API tori_status tori_series_csv(const tori_series* s, char** csv);
/* Fits the partial sums of a coefficient file written by tori_series_csv. */
TORI_API tori_status tori_series_fit(const char* coeffs_path, char** report_json);

typedef struct tori_census tori_census;
/* s3_bound <= 0 keeps the default. */
TORI_API tori_status tori_census_new(int workers, int64_t s3_bound, tori_census** out);
TORI_API void tori_census_free(tori_census* c);
TORI_API tori_status tori_census_import(tori_census* c, const char* path);
TORI_API tori_status tori_census_count(tori_census* c, const char* label, uint64_t x, int64_t* count);
/* Largest X the census covers for the family. */
TORI_API tori_status tori_census_max_x(tori_census* c, const char* label, uint64_t* x);
/* JSON {label, grid, counts, a_hat, w_hat, a_conj, b_conj, ...}; fit = 0 skips the regression. */
TORI_API tori_status tori_census_report(tori_census* c, const char* label, const uint64_t* grid, size_t n, int fit,
                                        char** report_json);
/* Newline-separated labels of the families counted in-house or from imports. */
TORI_API tori_status tori_census_families(char** labels);
/* X = 10^(k/2) for k_lo <= k <= k_hi. *n receives the count; grid may be NULL to query it. */
TORI_API tori_status tori_half_decade_grid(int k_lo, int k_hi, uint64_t* grid, size_t* n);

/* Runs the acceptance criteria (quick: 1, 2, 5, 8). */
TORI_API tori_status tori_accept(int quick, int workers, char** report_json, int* unexpected_failures);

#ifdef __cplusplus
}
#endif

#endif
