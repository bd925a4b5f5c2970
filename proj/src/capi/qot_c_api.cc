#include "qot/qot.h"

#include <exception>
#include <new>
#include <stdexcept>
#include <string>

#include "qot/experiment.h"
#include "qot/protocol.h"
#include "qot/reports.h"
#include "qot/session.h"

struct qot_text {
  std::string data;
};

struct qot_session {
  qot::SessionResult result;
};

struct qot_stats {
  qot::ExperimentStats stats;
};

namespace {

thread_local std::string last_error;

qot::ProtocolParams to_params(const qot_params* p) {
  if (!p) throw std::invalid_argument("params is null");
  qot::ProtocolParams out;
  out.n = p->n;
  out.ell = p->ell;
  out.threshold_sigmas = p->threshold_sigmas;
  out.copies = p->copies;
  return out;
}

qot::AliceStrategy to_alice(qot_alice_strategy s) {
  switch (s) {
    case QOT_ALICE_HONEST: return qot::AliceStrategy::kHonest;
    case QOT_ALICE_INVARIANT_CHEAT: return qot::AliceStrategy::kInvariantCheat;
    case QOT_ALICE_MIXED_CHEAT: return qot::AliceStrategy::kMixedCheat;
  }
  throw std::invalid_argument("unknown Alice strategy value");
}

qot::BobStrategy to_bob(qot_bob_strategy s) {
  switch (s) {
    case QOT_BOB_HONEST: return qot::BobStrategy::kHonest;
    case QOT_BOB_PREMEASURE: return qot::BobStrategy::kPremeasure;
  }
  throw std::invalid_argument("unknown Bob strategy value");
}

template <typename T>
void require(const T* p, const char* what) {
  if (!p) throw std::invalid_argument(std::string(what) + " is null");
}

qot_status emit_text(std::string s, qot_text** out) {
  require(out, "out");
  *out = new qot_text{std::move(s)};
  return QOT_OK;
}

// Maps exceptions thrown by the core onto status codes.
template <typename F>
qot_status guarded(F&& f) noexcept {
  last_error.clear();
  try {
    return f();
  } catch (const std::out_of_range& e) {
    last_error = e.what();
    return QOT_ERR_OUT_OF_RANGE;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return QOT_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return QOT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return QOT_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return QOT_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* qot_version(void) { return "1.0.0"; }

const char* qot_last_error(void) { return last_error.c_str(); }

const char* qot_status_name(qot_status status) {
  switch (status) {
    case QOT_OK: return "ok";
    case QOT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QOT_ERR_OUT_OF_RANGE: return "out of range";
    case QOT_ERR_CHECK_FAILED: return "check failed";
    case QOT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void qot_params_default(qot_params* params) {
  if (!params) return;
  const qot::ProtocolParams d;
  params->n = d.n;
  params->ell = d.ell;
  params->threshold_sigmas = d.threshold_sigmas;
  params->copies = d.copies;
}

qot_status qot_params_validate(const qot_params* params) {
  return guarded([&] {
    to_params(params).validate();
    return QOT_OK;
  });
}

qot_status qot_alice_strategy_parse(const char* name, qot_alice_strategy* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    switch (qot::parse_alice_strategy(name)) {
      case qot::AliceStrategy::kHonest: *out = QOT_ALICE_HONEST; break;
      case qot::AliceStrategy::kInvariantCheat: *out = QOT_ALICE_INVARIANT_CHEAT; break;
      case qot::AliceStrategy::kMixedCheat: *out = QOT_ALICE_MIXED_CHEAT; break;
    }
    return QOT_OK;
  });
}

qot_status qot_bob_strategy_parse(const char* name, qot_bob_strategy* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = qot::parse_bob_strategy(name) == qot::BobStrategy::kHonest ? QOT_BOB_HONEST
                                                                       : QOT_BOB_PREMEASURE;
    return QOT_OK;
  });
}

const char* qot_text_data(const qot_text* text) { return text ? text->data.c_str() : ""; }

size_t qot_text_size(const qot_text* text) { return text ? text->data.size() : 0; }

void qot_text_free(qot_text* text) { delete text; }

qot_status qot_session_run(const qot_params* params, qot_alice_strategy alice, qot_bob_strategy bob,
                           uint64_t seed, qot_session** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    auto result = qot::run_session(to_params(params), to_alice(alice), to_bob(bob), seed);
    *out = new qot_session{std::move(result)};
    return QOT_OK;
  });
}

void qot_session_free(qot_session* session) { delete session; }

qot_status qot_session_transcript(const qot_session* session, qot_text** out) {
  return guarded([&] {
    require(session, "session");
    return emit_text(session->result.transcript.to_jsonl(), out);
  });
}

qot_status qot_session_party_view(const qot_session* session, int party, qot_text** out) {
  return guarded([&] {
    require(session, "session");
    if (party != 0 && party != 1) throw std::invalid_argument("party must be 0 (Alice) or 1 (Bob)");
    return emit_text(session->result.transcript.view_of(party == 0 ? qot::Party::kAlice
                                                                   : qot::Party::kBob),
                     out);
  });
}

qot_status qot_session_summary(const qot_session* session, uint64_t session_id, qot_text** out) {
  return guarded([&] {
    require(session, "session");
    return emit_text(qot::session_summary_json(session->result, session_id).dump(), out);
  });
}

qot_status qot_session_dump_states(const qot_session* session, qot_text** out) {
  return guarded([&] {
    require(session, "session");
    return emit_text(qot::dump_transmitted_states(session->result), out);
  });
}

qot_status qot_session_inspect(const qot_session* session, qot_text** out) {
  return guarded([&] {
    require(session, "session");
    return emit_text(qot::Json(qot::inspector_verify(session->result)).dump(), out);
  });
}

qot_status qot_session_outcome(const qot_session* session, int* bob_received, int* aborted,
                               int* gamma_equals_pi) {
  return guarded([&] {
    require(session, "session");
    if (bob_received) *bob_received = session->result.bob_received;
    if (aborted) *aborted = session->result.aborted();
    if (gamma_equals_pi) *gamma_equals_pi = session->result.gamma_equals_pi();
    return QOT_OK;
  });
}

qot_status qot_experiment_run(const qot_params* params, qot_alice_strategy alice, qot_bob_strategy bob,
                              uint64_t sessions, uint64_t base_seed, unsigned parallelism,
                              qot_stats** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    auto stats = qot::run_experiment(to_params(params), to_alice(alice), to_bob(bob), sessions,
                                     base_seed, parallelism);
    *out = new qot_stats{stats};
    return QOT_OK;
  });
}

void qot_stats_free(qot_stats* stats) { delete stats; }

qot_status qot_stats_json(const qot_stats* stats, qot_text** out) {
  return guarded([&] {
    require(stats, "stats");
    return emit_text(qot::stats_json(stats->stats).dump(2) + "\n", out);
  });
}

qot_status qot_stats_csv(const qot_stats* stats, qot_text** out) {
  return guarded([&] {
    require(stats, "stats");
    return emit_text(qot::stats_csv_header() + qot::stats_csv_row(stats->stats), out);
  });
}

qot_status qot_distinguish(int n, uint64_t trials, uint64_t seed, qot_text** out) {
  return guarded([&] {
    qot::ProtocolParams p;
    p.n = n;
    p.validate();
    return emit_text(qot::distinguish_report(n, trials, seed).dump(2) + "\n", out);
  });
}

qot_status qot_oracle_report(int n, uint64_t seed, int format, qot_text** out) {
  return guarded([&] {
    require(out, "out");
    if (format != 0 && format != 1) throw std::invalid_argument("format must be 0 (text) or 1 (json)");
    if (n > 7) throw std::out_of_range("dense oracle supports n <= 7");
    const qot::OracleReport report = qot::oracle_report(n, seed);
    emit_text(format == 1 ? report.to_json().dump(2) + "\n" : report.to_text(), out);
    return report.all_passed() ? QOT_OK : QOT_ERR_CHECK_FAILED;
  });
}

qot_status qot_enumerate_k(int n, qot_text** out) {
  return guarded([&] {
    if (n > 10) throw std::out_of_range("enumeration supports n <= 10");
    return emit_text(qot::enumerate_k_report(n).dump(2) + "\n", out);
  });
}

}  // extern "C"
