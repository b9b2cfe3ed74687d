#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "aris/config.hpp"
#include "aris/harness.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format = "csv";
  int trials = 0;
  int slots = 0;
  int eval_slots = 0;
  unsigned parallel = 0;
  std::string slot_log;
};

void add_common_options(CLI::App* cmd, CliOptions& opts) {
  cmd->add_option("--config", opts.config_path, "JSON configuration file");
  cmd->add_option("--seed", opts.seed, "master seed");
  cmd->add_option("--out", opts.out_path, "result file path");
  cmd->add_option("--format", opts.format, "result format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--trials", opts.trials, "independent trials");
  cmd->add_option("--slots", opts.slots, "slots per trial (robust, sweep)");
  cmd->add_option("--eval-slots", opts.eval_slots,
                  "evaluation slots per deployment (deploy)");
  cmd->add_option("--parallel", opts.parallel, "worker threads");
  cmd->add_option("--slot-log", opts.slot_log, "per-slot JSONL log path");
}

int run(aris::ExperimentKind kind, const CLI::App* cmd, const CliOptions& opts) {
  aris::LoadedConfig config;
  if (cmd->count("--config") > 0) {
    config = aris::load_config(opts.config_path);
  } else {
    config.system = aris::default_config();
  }
  config.experiment.kind = kind;
  if (cmd->count("--seed") > 0) config.experiment.master_seed = opts.seed;
  if (cmd->count("--trials") > 0) config.experiment.trials = opts.trials;
  if (cmd->count("--slots") > 0) config.experiment.slots = opts.slots;
  if (cmd->count("--eval-slots") > 0) config.experiment.eval_slots = opts.eval_slots;
  if (cmd->count("--parallel") > 0) config.experiment.parallel = opts.parallel;
  if (cmd->count("--slot-log") > 0) config.experiment.slot_log = opts.slot_log;

  aris::OutputFormat format = opts.format == "json" ? aris::OutputFormat::json
                                                    : aris::OutputFormat::csv;
  std::string out_path = opts.out_path;
  if (cmd->count("--out") == 0) {
    out_path = opts.format == "json" ? "results.json" : "results.csv";
  }

  auto start = std::chrono::steady_clock::now();
  aris::ExperimentOutput output = aris::run_experiment(config);
  double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  aris::emit_results(output.table, format, out_path);
  aris::write_manifest(out_path, config, wall);
  if (!output.candidate_table.empty()) {
    std::string path = out_path + ".candidates.csv";
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + path);
    file << output.candidate_table;
  }
  if (!config.experiment.slot_log.empty()) {
    std::ofstream file(config.experiment.slot_log, std::ios::binary);
    if (!file) {
      throw std::runtime_error("cannot write " + config.experiment.slot_log);
    }
    for (const auto& line : output.slot_log) file << line << "\n";
  }

  if (kind == aris::ExperimentKind::selftest) {
    bool all_pass = true;
    for (const auto& row : output.table.rows) {
      std::cout << (row.value == 1.0 ? "[PASS] " : "[FAIL] ") << row.statistic
                << "\n";
      all_pass = all_pass && row.value == 1.0;
    }
    if (!all_pass) return 2;
  }
  std::cout << "wrote " << out_path << " (" << output.table.rows.size()
            << " rows)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte-Carlo simulator for aerial-RIS secure beamforming"};
  app.require_subcommand(1);

  CliOptions opts;
  CLI::App* deploy =
      app.add_subcommand("deploy", "two-stage deployment selection experiment");
  CLI::App* robust =
      app.add_subcommand("robust", "per-slot beamformer comparison experiment");
  CLI::App* sweep =
      app.add_subcommand("sweep", "uncertainty sweep experiment");
  CLI::App* selftest =
      app.add_subcommand("selftest", "built-in invariant checks");
  for (CLI::App* cmd : {deploy, robust, sweep, selftest}) {
    add_common_options(cmd, opts);
  }

  CLI11_PARSE(app, argc, argv);

  aris::ExperimentKind kind = aris::ExperimentKind::robust;
  const CLI::App* cmd = robust;
  if (deploy->parsed()) {
    kind = aris::ExperimentKind::deploy;
    cmd = deploy;
  } else if (sweep->parsed()) {
    kind = aris::ExperimentKind::sweep;
    cmd = sweep;
  } else if (selftest->parsed()) {
    kind = aris::ExperimentKind::selftest;
    cmd = selftest;
  }

  try {
    return run(kind, cmd, opts);
  } catch (const aris::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
