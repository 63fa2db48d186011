#include "cqkd/cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <deque>
#include <tuple>
#include <utility>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cqkd/attacks/analysis.hpp"
#include "cqkd/cli/attack_spec.hpp"
#include "cqkd/keyrate/keyrate.hpp"
#include "cqkd/protocol/protocol.hpp"
#include "cqkd/protocol/transcript.hpp"

namespace cqkd::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr const char* kToolVersion = CQKD_VERSION;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Buffers every output in memory; nothing touches the disk until commit().
class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}

  std::ostringstream& add(const std::string& name) {
    files_.emplace_back(std::piecewise_construct, std::forward_as_tuple(name), std::forward_as_tuple());
    return files_.back().second;
  }

  /// Writes the files plus manifest.json describing them.
  void commit(ordered_json manifest) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir_.string());
    ordered_json outputs = ordered_json::array();
    for (const auto& [name, _] : files_) outputs.push_back((dir_ / name).string());
    outputs.push_back((dir_ / "manifest.json").string());
    manifest["outputs"] = outputs;
    manifest["tool_version"] = kToolVersion;
    write(dir_ / "manifest.json", manifest.dump(2) + "\n");
    for (const auto& [name, buffer] : files_) write(dir_ / name, buffer.str());
  }

 private:
  static void write(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << content;
    if (!f) throw std::runtime_error("cannot write " + path.string());
  }

  fs::path dir_;
  std::deque<std::pair<std::string, std::ostringstream>> files_;
};

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

ordered_json config_json(const protocol::ProtocolConfig& c) {
  ordered_json j;
  j["n"] = c.n;
  j["epsilon"] = c.epsilon;
  j["check_fraction"] = c.check_fraction;
  j["error_threshold"] = c.error_threshold;
  j["seed"] = c.seed;
  j["rounds"] = c.rounds();
  return j;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::uint64_t n = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::string attack = "none";
  double check_fraction = 0.5;
  double threshold = 0.05;
  std::string out;
  unsigned workers = 1;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  protocol::ProtocolConfig config{a.n, a.epsilon, a.check_fraction, a.threshold, a.seed};
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  attacks::AttackModel model;
  try {
    model = parse_attack_spec(a.attack);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const protocol::ProtocolRun run = protocol::run_protocol(config, model, a.workers);
  const ordered_json summary = protocol::summary_json(run.outcome, config);

  OutputSet files(a.out);
  protocol::write_transcript(files.add("transcript.jsonl"), run.records);
  protocol::write_check_report(files.add("check_report.jsonl"), run.records);
  files.add("summary.json") << summary.dump(2) << '\n';

  ordered_json manifest;
  manifest["command"] = "simulate";
  manifest["config"] = config_json(config);
  manifest["attack"] = a.attack;
  files.commit(std::move(manifest));

  out << summary.dump(2) << '\n';
  return run.outcome.aborted ? kExitAbort : kExitOk;
}

// ---------------------------------------------------------------- keyrate

struct KeyrateArgs {
  double qmin = 0.0;
  double qmax = 0.12;
  std::size_t steps = 241;
  std::string out;
  bool threshold_only = false;
};

ordered_json threshold_json(const keyrate::ThresholdResult& t) {
  ordered_json j;
  j["threshold"] = t.threshold;
  j["bracket_width"] = t.bracket_width;
  j["iterations"] = t.iterations;
  return j;
}

int cmd_keyrate(const KeyrateArgs& a, std::ostream& out) {
  const keyrate::ThresholdResult threshold = keyrate::noise_threshold();
  if (a.threshold_only) {
    out << fixed(threshold.threshold, 6) << '\n';
    if (!a.out.empty()) {
      OutputSet files(a.out);
      files.add("threshold.json") << threshold_json(threshold).dump(2) << '\n';
      ordered_json manifest;
      manifest["command"] = "keyrate";
      manifest["threshold_only"] = true;
      files.commit(std::move(manifest));
    }
    return kExitOk;
  }

  std::vector<keyrate::CurvePoint> curve;
  try {
    curve = keyrate::key_rate_curve(a.qmin, a.qmax, a.steps);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::ostringstream csv;
  csv << "Q,r_lower\n";
  for (const auto& p : curve) csv << fixed(p.q, 6) << ',' << fixed(p.r_lower, 9) << '\n';

  if (a.out.empty()) {
    out << csv.str();
    return kExitOk;
  }
  OutputSet files(a.out);
  files.add("keyrate_curve.csv") << csv.str();
  files.add("threshold.json") << threshold_json(threshold).dump(2) << '\n';
  ordered_json manifest;
  manifest["command"] = "keyrate";
  manifest["config"] = {{"qmin", a.qmin}, {"qmax", a.qmax}, {"steps", a.steps}};
  files.commit(std::move(manifest));
  out << "threshold " << fixed(threshold.threshold, 6) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- detect

struct DetectArgs {
  std::string attack;
  unsigned positions = 1;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_detect(const DetectArgs& a, std::ostream& out) {
  if (a.attack != "intercept-resend" && a.attack != "measure-resend" &&
      a.attack != "measure-resend-bell") {
    throw UsageError("detect: --attack must be intercept-resend, measure-resend or measure-resend-bell");
  }
  const attacks::AttackModel model = parse_attack_spec(a.attack);
  const attacks::DetectionEstimate est =
      attacks::detection_monte_carlo(model, a.positions, a.trials, a.seed);

  ordered_json report;
  report["attack"] = a.attack;
  report["positions"] = a.positions;
  report["analytic"] = est.analytic;
  report["trials"] = est.trials;
  report["detected"] = est.detected;
  report["estimate"] = est.estimate;
  report["ci95_low"] = est.ci_low;
  report["ci95_high"] = est.ci_high;
  report["seed"] = a.seed;

  if (!a.out.empty()) {
    OutputSet files(a.out);
    files.add("detection.json") << report.dump(2) << '\n';
    ordered_json manifest;
    manifest["command"] = "detect";
    manifest["config"] = {{"positions", a.positions}, {"trials", a.trials}, {"seed", a.seed}};
    manifest["attack"] = a.attack;
    files.commit(std::move(manifest));
  }
  out << report.dump(2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- efficiency

struct EfficiencyArgs {
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  bool empirical = false;
  std::string out;
};

int cmd_efficiency(const EfficiencyArgs& a, std::ostream& out) {
  protocol::ProtocolConfig config;
  config.n = a.n;
  config.seed = a.seed;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const protocol::Rational eta = protocol::qubit_efficiency(config);
  ordered_json report;
  report["n"] = a.n;
  report["eta"] = std::to_string(eta.num) + "/" + std::to_string(eta.den);
  report["eta_value"] = eta.value();
  report["qubits_charlie"] = 16 * a.n;
  report["qubits_classical"] = 0;
  if (a.empirical) {
    const protocol::ProtocolRun run = protocol::run_protocol(config, attacks::no_attack());
    const std::size_t bits = run.outcome.raw_key_CA.size() + run.outcome.raw_key_CB.size();
    ordered_json emp;
    emp["seed"] = a.seed;
    emp["key_length_CA"] = run.outcome.raw_key_CA.size();
    emp["key_length_CB"] = run.outcome.raw_key_CB.size();
    emp["eta"] = static_cast<double>(bits) / static_cast<double>(16 * a.n);
    report["empirical"] = emp;
  }
  if (!a.out.empty()) {
    OutputSet files(a.out);
    files.add("efficiency.json") << report.dump(2) << '\n';
    ordered_json manifest;
    manifest["command"] = "efficiency";
    manifest["config"] = config_json(config);
    files.commit(std::move(manifest));
  }
  out << report.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cluster-state three-party key distribution: simulator and key-rate toolkit", "cqkd"};
  app.set_version_flag("--version", std::string("cqkd ") + kToolVersion);
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run the protocol and write transcript + summary");
  simulate->add_option("--n", sim.n, "Batch scale n (N = 4n(1+epsilon) rounds)")->required();
  simulate->add_option("--epsilon", sim.epsilon, "Oversampling parameter")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Random seed")->envname("QKD_SEED");
  simulate->add_option("--attack", sim.attack, "Attack spec, e.g. depolarizing:0.05")->capture_default_str();
  simulate->add_option("--check-fraction", sim.check_fraction, "Fraction of Case 1-3 rounds checked")
      ->capture_default_str();
  simulate->add_option("--threshold", sim.threshold, "Per-case abort threshold")->capture_default_str();
  simulate->add_option("--out", sim.out, "Output directory")->required();
  simulate->add_option("--workers", sim.workers, "Threads used to simulate rounds")->capture_default_str();

  KeyrateArgs kr;
  auto* keyrate_cmd = app.add_subcommand("keyrate", "Key-rate curve r(Q) and noise threshold");
  keyrate_cmd->add_option("--qmin", kr.qmin)->capture_default_str();
  keyrate_cmd->add_option("--qmax", kr.qmax)->capture_default_str();
  keyrate_cmd->add_option("--steps", kr.steps)->capture_default_str();
  keyrate_cmd->add_option("--out", kr.out, "Output directory");
  keyrate_cmd->add_flag("--threshold-only", kr.threshold_only, "Only solve for the threshold");

  DetectArgs det;
  auto* detect = app.add_subcommand("detect", "Detection probability of a discrete attack");
  detect->add_option("--attack", det.attack)->required();
  detect->add_option("--positions", det.positions, "Checked positions M")->capture_default_str();
  detect->add_option("--trials", det.trials, "Monte-Carlo trials")->capture_default_str();
  detect->add_option("--seed", det.seed)->envname("QKD_SEED");
  detect->add_option("--out", det.out, "Output directory");

  EfficiencyArgs eff;
  auto* efficiency = app.add_subcommand("efficiency", "Qubit efficiency c/(q+b)");
  efficiency->add_option("--n", eff.n)->required();
  efficiency->add_option("--seed", eff.seed)->envname("QKD_SEED");
  efficiency->add_flag("--empirical", eff.empirical, "Also measure it on a seeded run");
  efficiency->add_option("--out", eff.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*simulate) return cmd_simulate(sim, out);
    if (*keyrate_cmd) return cmd_keyrate(kr, out);
    if (*detect) return cmd_detect(det, out);
    if (*efficiency) return cmd_efficiency(eff, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace cqkd::cli
