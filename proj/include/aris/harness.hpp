#pragma once

#include <string>
#include <vector>

#include "aris/config.hpp"

namespace aris {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct ResultRow {
  std::string scheme;
  std::string sweep;  // empty when the experiment has no sweep axis
  int trial = 0;      // -1 pools every trial's slots
  std::string statistic;
  double value = 0.0;
};

bool operator==(const ResultRow& a, const ResultRow& b);

struct ResultTable {
  int schema_version = kSchemaVersion;
  std::vector<ResultRow> rows;
};

bool operator==(const ResultTable& a, const ResultTable& b);

// Statistics emitted for every (scheme, sweep, trial) cell, in order.
const std::vector<std::string>& statistic_names();

struct ExperimentOutput {
  ResultTable table;
  std::string candidate_table;        // deployment runs: per-candidate scores
  std::vector<std::string> slot_log;  // JSONL lines when a log was requested
};

// Runs the configured experiment end to end. Deterministic in (config,
// master seed) regardless of the worker count; every scheme compared within
// a trial consumes identical environment draws.
ExperimentOutput run_experiment(const LoadedConfig& config);

std::string render_results(const ResultTable& table, OutputFormat format);
ResultTable parse_results(const std::string& text, OutputFormat format);
void emit_results(const ResultTable& table, OutputFormat format,
                  const std::string& path);

// Companion metadata written next to a result file: config hash, seed,
// versions, wall time.
void write_manifest(const std::string& result_path, const LoadedConfig& config,
                    double wall_seconds);

}  // namespace aris
