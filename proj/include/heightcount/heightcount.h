#ifndef HEIGHTCOUNT_H
#define HEIGHTCOUNT_H

#include <stddef.h>
#include <stdint.h>

#if defined(HC_BUILDING_LIBRARY)
#define HC_API __attribute__((visibility("default")))
#else
#define HC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hc_status {
  HC_OK = 0,
  HC_E_INVALID_ARGUMENT = 1,
  HC_E_PARSE = 2,
  HC_E_PRECISION_EXHAUSTED = 3,
  HC_E_TIE_UNRESOLVED = 4,
  HC_E_UNSUPPORTED = 5,
  HC_E_BUDGET_EXHAUSTED = 6,
  HC_E_NOT_APPLICABLE = 7,
  HC_E_DOMAIN = 8,
  HC_E_INTERNAL = 9
} hc_status;

typedef enum hc_format { HC_FORMAT_JSONL = 0, HC_FORMAT_CSV = 1, HC_FORMAT_PRETTY = 2 } hc_format;

/* Opaque session: configuration, the last rendered output and the last error. */
typedef struct hc_session hc_session;

HC_API const char* hc_version(void);
HC_API const char* hc_status_name(hc_status s);

HC_API hc_status hc_session_new(hc_session** out);
HC_API void hc_session_free(hc_session* s);

/* Working precision of certified comparisons, in bits (start <= cap). */
HC_API hc_status hc_set_precision(hc_session* s, long start_bits, long cap_bits);
/* Enumeration budget in candidate points. */
HC_API hc_status hc_set_budget(hc_session* s, uint64_t budget);
HC_API hc_status hc_set_jobs(hc_session* s, unsigned jobs);
HC_API hc_status hc_set_seed(hc_session* s, uint32_t seed);
HC_API hc_status hc_set_format(hc_session* s, hc_format f);
/* Parses "jsonl", "csv" or "pretty". */
HC_API hc_status hc_set_format_name(hc_session* s, const char* name);
/* Bits used when serialising balls. */
HC_API hc_status hc_set_report_precision(hc_session* s, long bits);
/* Inconclusive records tolerated before a run counts as failed. */
HC_API hc_status hc_set_inconclusive_tolerance(hc_session* s, size_t n);

/* Heights of the height / quat_height instances in a YAML document. */
HC_API hc_status hc_height(hc_session* s, const char* yaml, const char* source_name);
/* Bound reports for the countable instances of a YAML document. radius may
   be NULL; otherwise it overrides R or B of every instance. */
HC_API hc_status hc_count(hc_session* s, const char* yaml, const char* source_name, const char* radius,
                          int* exit_code);
/* Runs a named suite (cnt-lem, thm1, main1, main2, sunits, ffield, all). */
HC_API hc_status hc_verify(hc_session* s, const char* suite, int* exit_code);
/* Runs the instances of a YAML document as a suite. */
HC_API hc_status hc_verify_document(hc_session* s, const char* yaml, const char* source_name, int* exit_code);

/* Views into the session; valid until the next call on it. */
HC_API const char* hc_output(const hc_session* s);
/* CSV summary of the last run: one row per suite. */
HC_API const char* hc_summary(const hc_session* s);
HC_API const char* hc_last_error(const hc_session* s);

#ifdef __cplusplus
}
#endif

#endif
