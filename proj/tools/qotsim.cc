// Command-line driver for the oblivious-transfer simulator. Talks to the
// library only through the C interface.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qot/qot.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Options {
  int n = 6;
  int ell = 32;
  std::uint64_t sessions = 10000;
  std::uint64_t seed = 1;
  std::string alice = "honest";
  std::string bob = "honest";
  double threshold_sigmas = 3.0;
  int copies = 1;
  std::string output;
  std::string format = "json";
  unsigned parallelism = 0;
  std::uint64_t trials = 10000;
  bool dump_states = false;
  bool summary = false;
};

// Owns a qot_text.
class Text {
 public:
  Text() = default;
  Text(const Text&) = delete;
  Text& operator=(const Text&) = delete;
  ~Text() { qot_text_free(text_); }

  qot_text** out() { return &text_; }
  std::string str() const { return std::string(qot_text_data(text_), qot_text_size(text_)); }

 private:
  qot_text* text_ = nullptr;
};

int report_failure(qot_status status) {
  std::cerr << "qotsim: " << qot_status_name(status) << ": " << qot_last_error() << "\n";
  return status == QOT_ERR_INVALID_ARGUMENT || status == QOT_ERR_OUT_OF_RANGE ? kExitUsage
                                                                              : kExitCheckFailed;
}

std::string resolve_output(const std::string& path) {
  if (path.empty()) return path;
  const char* dir = std::getenv("QOT_OUTPUT_DIR");
  if (dir && *dir && std::filesystem::path(path).is_relative()) {
    return (std::filesystem::path(dir) / path).string();
  }
  return path;
}

// Writes to the resolved output path, or stdout when none was given.
int emit(const Options& opt, const std::string& content) {
  const std::string path = resolve_output(opt.output);
  if (path.empty()) {
    std::cout << content;
    return kExitOk;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "qotsim: cannot open " << path << " for writing\n";
    return kExitUsage;
  }
  out << content;
  std::cerr << "wrote " << path << "\n";
  return kExitOk;
}

qot_status make_params(const Options& opt, qot_params* params) {
  qot_params_default(params);
  params->n = opt.n;
  params->ell = opt.ell;
  params->threshold_sigmas = opt.threshold_sigmas;
  params->copies = opt.copies;
  return qot_params_validate(params);
}

int cmd_session(const Options& opt) {
  qot_params params;
  qot_alice_strategy alice;
  qot_bob_strategy bob;
  qot_status st;
  if ((st = make_params(opt, &params)) != QOT_OK) return report_failure(st);
  if ((st = qot_alice_strategy_parse(opt.alice.c_str(), &alice)) != QOT_OK) return report_failure(st);
  if ((st = qot_bob_strategy_parse(opt.bob.c_str(), &bob)) != QOT_OK) return report_failure(st);

  qot_session* session = nullptr;
  if ((st = qot_session_run(&params, alice, bob, opt.seed, &session)) != QOT_OK) {
    return report_failure(st);
  }
  Text transcript, summary, states;
  st = qot_session_transcript(session, transcript.out());
  if (st == QOT_OK) st = qot_session_summary(session, 0, summary.out());
  if (st == QOT_OK && opt.dump_states) st = qot_session_dump_states(session, states.out());
  qot_session_free(session);
  if (st != QOT_OK) return report_failure(st);

  if (opt.summary) std::cerr << summary.str() << "\n";
  if (opt.dump_states) std::cerr << states.str();
  return emit(opt, transcript.str());
}

int cmd_experiment(const Options& opt) {
  qot_params params;
  qot_alice_strategy alice;
  qot_bob_strategy bob;
  qot_status st;
  if ((st = make_params(opt, &params)) != QOT_OK) return report_failure(st);
  if ((st = qot_alice_strategy_parse(opt.alice.c_str(), &alice)) != QOT_OK) return report_failure(st);
  if ((st = qot_bob_strategy_parse(opt.bob.c_str(), &bob)) != QOT_OK) return report_failure(st);

  qot_stats* stats = nullptr;
  if ((st = qot_experiment_run(&params, alice, bob, opt.sessions, opt.seed, opt.parallelism,
                               &stats)) != QOT_OK) {
    return report_failure(st);
  }
  Text text;
  st = opt.format == "csv" ? qot_stats_csv(stats, text.out()) : qot_stats_json(stats, text.out());
  qot_stats_free(stats);
  if (st != QOT_OK) return report_failure(st);
  return emit(opt, text.str());
}

int cmd_distinguish(const Options& opt) {
  Text text;
  const qot_status st = qot_distinguish(opt.n, opt.trials, opt.seed, text.out());
  if (st != QOT_OK) return report_failure(st);
  return emit(opt, text.str());
}

int cmd_oracle(const Options& opt) {
  qot_params params;
  qot_status st = make_params(opt, &params);
  if (st != QOT_OK) return report_failure(st);
  Text text;
  st = qot_oracle_report(opt.n, opt.seed, opt.format == "json" && !opt.output.empty() ? 1 : 0,
                         text.out());
  if (st != QOT_OK && st != QOT_ERR_CHECK_FAILED) return report_failure(st);
  const int written = emit(opt, text.str());
  if (st == QOT_ERR_CHECK_FAILED) {
    std::cerr << "qotsim: oracle suite reported failures\n";
    return kExitCheckFailed;
  }
  return written;
}

int cmd_enumerate_k(const Options& opt) {
  Text text;
  const qot_status st = qot_enumerate_k(opt.n, text.out());
  if (st != QOT_OK) return report_failure(st);
  return emit(opt, text.str());
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Oblivious transfer simulator over the QSCD_ff trapdoor"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qot_version()));

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--n", opt.n, "Group degree, of the form 2(2m+1)");
    cmd->add_option("--seed", opt.seed, "Base seed");
    cmd->add_option("-o,--output", opt.output,
                    "Output file (relative paths resolve under $QOT_OUTPUT_DIR); stdout if absent");
  };
  auto add_protocol = [&](CLI::App* cmd) {
    cmd->add_option("--ell", opt.ell, "Message length in bits (even, >= 8)");
    cmd->add_option("--alice", opt.alice, "Alice strategy: honest, invariant-cheat, mixed-cheat");
    cmd->add_option("--bob", opt.bob, "Bob strategy: honest, premeasure");
    cmd->add_option("--threshold-sigmas", opt.threshold_sigmas, "Recheck window in standard deviations");
    cmd->add_option("--copies", opt.copies, "Samples per message bit");
  };

  auto* session = app.add_subcommand("session", "Run one protocol session and write its transcript");
  add_common(session);
  add_protocol(session);
  session->add_flag("--dump-states", opt.dump_states, "Print transmitted states to stderr");
  session->add_flag("--summary", opt.summary, "Print the session summary to stderr");

  auto* experiment = app.add_subcommand("experiment", "Run many sessions and write statistics");
  add_common(experiment);
  add_protocol(experiment);
  experiment->add_option("--sessions", opt.sessions, "Number of sessions")->check(CLI::PositiveNumber);
  experiment->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  experiment->add_option("--parallelism", opt.parallelism, "Worker threads (0 = all cores)");

  auto* distinguish = app.add_subcommand("distinguish", "Trapdoor versus wrong-key distinguishing");
  add_common(distinguish);
  distinguish->add_option("--trials", opt.trials, "Trials per branch")->check(CLI::PositiveNumber);

  auto* oracle = app.add_subcommand("oracle", "Dense-matrix verification suite (n <= 7)");
  add_common(oracle);
  oracle->add_option("--format", opt.format, "json or text (JSON applies to --output)")
      ->check(CLI::IsMember({"json", "text"}));

  auto* enumerate = app.add_subcommand("enumerate-k", "List all fixed-point-free involutions of S_n");
  add_common(enumerate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (session->parsed()) return cmd_session(opt);
  if (experiment->parsed()) return cmd_experiment(opt);
  if (distinguish->parsed()) return cmd_distinguish(opt);
  if (oracle->parsed()) return cmd_oracle(opt);
  return cmd_enumerate_k(opt);
}
