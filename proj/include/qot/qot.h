/* C interface to the oblivious-transfer simulator.
 *
 * Every call returns a qot_status. On failure, qot_last_error() describes
 * the problem for the calling thread until its next call into the library.
 * Objects handed out through an out-pointer are owned by the caller and
 * released with the matching *_free function.
 */
#ifndef QOT_QOT_H
#define QOT_QOT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QOT_BUILDING_LIBRARY)
#    define QOT_API __declspec(dllexport)
#  else
#    define QOT_API __declspec(dllimport)
#  endif
#else
#  define QOT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qot_status {
  QOT_OK = 0,
  QOT_ERR_INVALID_ARGUMENT = 1, /* bad parameters, names, or null pointers */
  QOT_ERR_OUT_OF_RANGE = 2,     /* a size limit, e.g. dense oracle beyond n = 7 */
  QOT_ERR_CHECK_FAILED = 3,     /* a verification suite found a violation */
  QOT_ERR_INTERNAL = 4
} qot_status;

typedef enum qot_alice_strategy {
  QOT_ALICE_HONEST = 0,
  QOT_ALICE_INVARIANT_CHEAT = 1,
  QOT_ALICE_MIXED_CHEAT = 2
} qot_alice_strategy;

typedef enum qot_bob_strategy {
  QOT_BOB_HONEST = 0,
  QOT_BOB_PREMEASURE = 1
} qot_bob_strategy;

typedef struct qot_params {
  int n;                   /* group degree, 2(2m+1) with m >= 1 */
  int ell;                 /* message bits, even, >= 8 */
  double threshold_sigmas; /* recheck window half-width in standard deviations */
  int copies;              /* samples per message bit */
} qot_params;

typedef struct qot_text qot_text;
typedef struct qot_session qot_session;
typedef struct qot_stats qot_stats;

QOT_API const char* qot_version(void);
QOT_API const char* qot_last_error(void);
QOT_API const char* qot_status_name(qot_status status);

/* n = 6, ell = 32, threshold 3.0, one copy. */
QOT_API void qot_params_default(qot_params* params);
QOT_API qot_status qot_params_validate(const qot_params* params);

QOT_API qot_status qot_alice_strategy_parse(const char* name, qot_alice_strategy* out);
QOT_API qot_status qot_bob_strategy_parse(const char* name, qot_bob_strategy* out);

/* Immutable UTF-8 text owned by the caller. */
QOT_API const char* qot_text_data(const qot_text* text);
QOT_API size_t qot_text_size(const qot_text* text);
QOT_API void qot_text_free(qot_text* text);

/* One protocol run, deterministic in seed. */
QOT_API qot_status qot_session_run(const qot_params* params, qot_alice_strategy alice,
                                   qot_bob_strategy bob, uint64_t seed, qot_session** out);
QOT_API void qot_session_free(qot_session* session);
/* JSON lines, one event per line, header first. */
QOT_API qot_status qot_session_transcript(const qot_session* session, qot_text** out);
/* The events a single party can see: 0 for Alice, 1 for Bob. */
QOT_API qot_status qot_session_party_view(const qot_session* session, int party, qot_text** out);
QOT_API qot_status qot_session_summary(const qot_session* session, uint64_t session_id,
                                       qot_text** out);
QOT_API qot_status qot_session_dump_states(const qot_session* session, qot_text** out);
/* JSON array of inspector findings; empty for an honest run. */
QOT_API qot_status qot_session_inspect(const qot_session* session, qot_text** out);
QOT_API qot_status qot_session_outcome(const qot_session* session, int* bob_received,
                                       int* aborted, int* gamma_equals_pi);

/* Many sessions with seeds derived from base_seed. parallelism 0 uses all
 * cores; results do not depend on it. */
QOT_API qot_status qot_experiment_run(const qot_params* params, qot_alice_strategy alice,
                                      qot_bob_strategy bob, uint64_t sessions, uint64_t base_seed,
                                      unsigned parallelism, qot_stats** out);
QOT_API void qot_stats_free(qot_stats* stats);
QOT_API qot_status qot_stats_json(const qot_stats* stats, qot_text** out);
/* Header line plus one row. */
QOT_API qot_status qot_stats_csv(const qot_stats* stats, qot_text** out);

/* Correct- and wrong-key distinguishing statistics as JSON. */
QOT_API qot_status qot_distinguish(int n, uint64_t trials, uint64_t seed, qot_text** out);

/* Dense verification suite. Writes the report even when a check fails, in
 * which case the status is QOT_ERR_CHECK_FAILED. format: 0 text, 1 JSON. */
QOT_API qot_status qot_oracle_report(int n, uint64_t seed, int format, qot_text** out);

/* Exhaustive fixed-point-free involutions of S_n as JSON, n <= 10. */
QOT_API qot_status qot_enumerate_k(int n, qot_text** out);

#ifdef __cplusplus
}
#endif

#endif /* QOT_QOT_H */
