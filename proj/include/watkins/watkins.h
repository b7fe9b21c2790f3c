/* C interface to the watkins library.
 *
 * Handles are opaque and owned by the caller; release them with the matching
 * *_free function. Strings returned through char** are heap allocated and
 * released with wk_string_free. Arbitrary precision integers cross the
 * boundary as decimal strings. On failure a function returns a status other
 * than WK_OK and wk_last_error() describes it (per thread). */
#ifndef WATKINS_H
#define WATKINS_H

#include <stddef.h>
#include <stdint.h>

#if defined(WK_BUILDING_LIBRARY)
#define WK_API __attribute__((visibility("default")))
#else
#define WK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wk_status {
    WK_OK = 0,
    WK_E_INVALID_ARGUMENT = 1,
    WK_E_SINGULAR = 2,
    WK_E_UNKNOWN_LABEL = 3,
    WK_E_PRECONDITION = 4,
    WK_E_PARSE = 5,
    WK_E_IO = 6,
    WK_E_OUT_OF_RANGE = 7,
    WK_E_INTERNAL = 8
} wk_status;

typedef struct wk_bundle wk_bundle;
typedef struct wk_curve wk_curve;
typedef struct wk_coeffs wk_coeffs;

WK_API const char* wk_version(void);
WK_API const char* wk_status_name(wk_status status);
WK_API const char* wk_last_error(void);
WK_API void wk_string_free(char* s);

/* Curve data: the file named by WATKINS_DATA, otherwise the bundled table. */
WK_API wk_status wk_bundle_load_default(wk_bundle** out);
WK_API wk_status wk_bundle_load_file(const char* path, wk_bundle** out);
WK_API void wk_bundle_free(wk_bundle* bundle);
WK_API size_t wk_bundle_size(const wk_bundle* bundle);
WK_API wk_status wk_bundle_record_json(const wk_bundle* bundle, size_t index, char** json);

/* "a1,a2,a3,a4,a6", optionally in brackets. */
WK_API wk_status wk_curve_from_literal(const char* literal, wk_curve** out);
WK_API wk_status wk_curve_from_label(const wk_bundle* bundle, const char* label, wk_curve** out);
WK_API void wk_curve_free(wk_curve* curve);
WK_API wk_status wk_curve_literal(const wk_curve* curve, char** literal);
WK_API wk_status wk_curve_minimal(const wk_curve* curve, wk_curve** out);
WK_API wk_status wk_curve_twist(const wk_curve* curve, const char* d, wk_curve** out);
WK_API wk_status wk_curve_two_torsion(const wk_curve* curve, int* has_two_torsion);

WK_API wk_status wk_curve_invariants_json(const wk_curve* curve, char** json);
WK_API wk_status wk_curve_signature_json(const wk_curve* curve, const char* p, char** json);
WK_API wk_status wk_curve_local_json(const wk_curve* curve, const char* p, char** json);
WK_API wk_status wk_curve_conductor_json(const wk_curve* curve, char** json);

WK_API wk_status wk_curve_ap(const wk_curve* curve, int64_t q, int64_t* a_q);

/* threads = 0 uses the hardware concurrency. */
WK_API wk_status wk_coeffs_expand(const wk_curve* curve, int64_t bound, unsigned threads, wk_coeffs** out);
WK_API void wk_coeffs_free(wk_coeffs* coeffs);
WK_API int64_t wk_coeffs_bound(const wk_coeffs* coeffs);
WK_API wk_status wk_coeffs_get(const wk_coeffs* coeffs, int64_t n, int64_t* a_n);
/* "n,a_n" lines with a header row. */
WK_API wk_status wk_coeffs_csv(const wk_coeffs* coeffs, char** csv);

/* Twist bounds for a curve in one of the classified families. */
WK_API wk_status wk_watkins_verdict_json(const wk_bundle* bundle, const wk_curve* curve, const char* d, char** json);
WK_API wk_status wk_petersson_json(const wk_bundle* bundle, const wk_curve* curve, const char* d, int refined,
                                   char** json);
WK_API wk_status wk_rank_upper_dx(const char* d, long* bound);

/* Verification runs. *ok is set to 1 when every check passed. */
WK_API wk_status wk_verify_tables_json(const wk_bundle* bundle, const char* setzer_limit, char** json, int* ok);
WK_API wk_status wk_verify_congruence_json(const char* d, int64_t bound, unsigned threads, char** json, int* ok);
WK_API wk_status wk_verify_lemmas_json(const char* const* ds, size_t count, int64_t q_max, char** json, int* ok);
WK_API wk_status wk_verify_conductor_family_json(const char* d, char** json, int* ok);
WK_API wk_status wk_watkins_sweep_json(const wk_bundle* bundle, long max_abs_d, unsigned threads, char** json,
                                       int* ok);
WK_API wk_status wk_corollary_json(const char* p, int64_t bound, char** json, int* ok);

WK_API wk_status wk_setzer_pair_json(const char* p, char** json);
/* JSON array of the primes u^2 + 64 below limit. */
WK_API wk_status wk_setzer_primes_json(const char* limit, char** json);

#ifdef __cplusplus
}
#endif

#endif
