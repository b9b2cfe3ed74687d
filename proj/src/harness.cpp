#include "aris/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "aris/deployment.hpp"
#include "aris/parallel.hpp"
#include "aris/schemes.hpp"
#include "aris/textio.hpp"

namespace aris {

using nlohmann::json;

bool operator==(const ResultRow& a, const ResultRow& b) {
  bool value_equal =
      (a.value == b.value) || (std::isnan(a.value) && std::isnan(b.value));
  return a.scheme == b.scheme && a.sweep == b.sweep && a.trial == b.trial &&
         a.statistic == b.statistic && value_equal;
}

bool operator==(const ResultTable& a, const ResultTable& b) {
  return a.schema_version == b.schema_version && a.rows == b.rows;
}

const std::vector<std::string>& statistic_names() {
  static const std::vector<std::string> names = {
      "mean",          "cv",
      "p10",           "p20",
      "p50",           "cvar",
      "outage",        "slots",
      "min_trace_step", "infeasible_slots",
      "mean_solve_ms", "mean_iterations"};
  return names;
}

namespace {

// Accumulated per-slot records for one (scheme, sweep point, trial) cell.
struct CellLog {
  std::vector<double> sse;
  double min_trace_step = 0.0;
  long infeasible = 0;
  double total_ms = 0.0;
  long total_iterations = 0;
};

void append_cell_rows(ResultTable& table, const std::string& scheme,
                      const std::string& sweep, int trial, const CellLog& cell,
                      double alpha, double outage_threshold) {
  const auto n = static_cast<double>(cell.sse.size());
  double mean = 0.0;
  for (double v : cell.sse) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : cell.sse) var += (v - mean) * (v - mean);
  double sd = std::sqrt(var / n);
  double cv = std::abs(mean) > 1e-300 ? sd / mean : 0.0;
  long outage_count = 0;
  for (double v : cell.sse) outage_count += v < outage_threshold ? 1 : 0;

  const std::vector<double> values = {
      mean,
      cv,
      percentile(cell.sse, 0.10),
      percentile(cell.sse, 0.20),
      percentile(cell.sse, 0.50),
      cvar(cell.sse, alpha),
      static_cast<double>(outage_count) / n,
      n,
      cell.min_trace_step,
      static_cast<double>(cell.infeasible),
      cell.total_ms / n,
      static_cast<double>(cell.total_iterations) / n};
  const auto& names = statistic_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    table.rows.push_back(ResultRow{scheme, sweep, trial, names[i], values[i]});
  }
}

CellLog pool_cells(const std::vector<CellLog>& cells) {
  CellLog pooled;
  for (const auto& cell : cells) {
    pooled.sse.insert(pooled.sse.end(), cell.sse.begin(), cell.sse.end());
    pooled.min_trace_step = std::min(pooled.min_trace_step, cell.min_trace_step);
    pooled.infeasible += cell.infeasible;
    pooled.total_ms += cell.total_ms;
    pooled.total_iterations += cell.total_iterations;
  }
  return pooled;
}

std::string slot_log_line(const std::string& experiment, std::uint64_t trial,
                          std::uint64_t slot, const char* scheme,
                          const SchemeSlotResult& result) {
  json j;
  j["experiment"] = experiment;
  j["trial"] = trial;
  j["slot"] = slot;
  j["scheme"] = scheme;
  j["objective"] = result.objective;
  j["nominal_sse"] = result.nominal_sse;
  j["worst_sample_sse"] = result.worst_sample_sse;
  j["realized_sse"] = result.realized_sse;
  j["iterations"] = result.iterations;
  j["ms"] = result.solve_ms;
  return j.dump();
}

struct TrialOutput {
  std::vector<CellLog> cells;  // one per scheme
  std::vector<std::string> slot_lines;
};

// One trial of head-to-head beamformer schemes at a shared platform position
// chosen by the geometry baseline, all warm-started from the same probe.
TrialOutput run_schemes_trial(const SystemConfig& cfg, const ExperimentSpec& spec,
                              const std::vector<SchemeId>& schemes,
                              const std::string& experiment, std::uint64_t trial) {
  Layout layout = init_layout(cfg, spec.master_seed, trial);
  std::vector<Candidate> grid = make_candidate_grid(cfg, spec.master_seed);
  std::vector<Position3> user_positions;
  user_positions.reserve(layout.users.size());
  for (const auto& user : layout.users) user_positions.push_back(user.position);
  Candidate site = deploy_geo_center(grid, user_positions, layout.bs, cfg);

  Rng probe_rng(derive_seed(spec.master_seed, StreamId::probe, trial,
                            static_cast<std::uint64_t>(site.id)));
  ProbeResult probe = probe_candidate(site.position, layout, cfg, probe_rng);

  Environment env(cfg, spec.master_seed, trial, site.position);
  std::vector<SchemeState> states(schemes.size());
  for (auto& state : states) state.phases = probe.phases;

  TrialOutput out;
  out.cells.resize(schemes.size());
  for (auto& cell : out.cells) {
    cell.sse.reserve(static_cast<std::size_t>(spec.slots));
  }
  const bool log = !spec.slot_log.empty();

  for (int s = 0; s < spec.slots; ++s) {
    SlotEnvironment slot = env.step();
    for (std::size_t i = 0; i < schemes.size(); ++i) {
      Rng rng(derive_seed(spec.master_seed, StreamId::scheme, trial,
                          static_cast<std::uint64_t>(s), i));
      SchemeSlotResult result;
      try {
        result = run_scheme_slot(schemes[i], slot, cfg, states[i], rng);
      } catch (const std::exception& e) {
        throw std::runtime_error(std::string(scheme_name(schemes[i])) + " trial " +
                                 std::to_string(trial) + " slot " +
                                 std::to_string(s) + ": " + e.what());
      }
      CellLog& cell = out.cells[i];
      cell.sse.push_back(result.realized_sse);
      cell.min_trace_step = std::min(cell.min_trace_step, result.min_trace_step);
      cell.infeasible += result.feasible ? 0 : 1;
      cell.total_ms += result.solve_ms;
      cell.total_iterations += result.iterations;
      if (log) {
        out.slot_lines.push_back(slot_log_line(
            experiment, trial, static_cast<std::uint64_t>(s),
            scheme_name(schemes[i]), result));
      }
    }
  }
  return out;
}

void append_experiment_rows(ResultTable& table,
                            const std::vector<SchemeId>& schemes,
                            const std::string& sweep,
                            const std::vector<TrialOutput>& trials, double alpha,
                            double outage_threshold) {
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    std::vector<CellLog> per_trial;
    per_trial.reserve(trials.size());
    for (const auto& trial : trials) per_trial.push_back(trial.cells[i]);
    for (std::size_t t = 0; t < per_trial.size(); ++t) {
      append_cell_rows(table, scheme_name(schemes[i]), sweep, static_cast<int>(t),
                       per_trial[t], alpha, outage_threshold);
    }
    append_cell_rows(table, scheme_name(schemes[i]), sweep, -1,
                     pool_cells(per_trial), alpha, outage_threshold);
  }
}

ExperimentOutput run_robust(const LoadedConfig& lc) {
  const std::vector<SchemeId> schemes = {
      SchemeId::dro_cvar, SchemeId::bf_sca_nominal, SchemeId::bf_saa_plain,
      SchemeId::bf_mrt_random_phase};
  std::vector<TrialOutput> trials(static_cast<std::size_t>(lc.experiment.trials));
  parallel_for(trials.size(), lc.experiment.parallel, [&](std::size_t t) {
    trials[t] = run_schemes_trial(lc.system, lc.experiment, schemes, "robust",
                                  static_cast<std::uint64_t>(t));
  });

  ExperimentOutput out;
  append_experiment_rows(out.table, schemes, "", trials, lc.system.risk.alpha,
                         lc.experiment.outage_threshold);
  for (auto& trial : trials) {
    out.slot_log.insert(out.slot_log.end(), trial.slot_lines.begin(),
                        trial.slot_lines.end());
  }
  return out;
}

ExperimentOutput run_sweep(const LoadedConfig& lc) {
  struct Point {
    double jitter;
    double correlation;
    std::string label;
  };
  std::vector<Point> points;
  for (double jitter : lc.experiment.sweep_jitter) {
    for (double correlation : lc.experiment.sweep_correlation) {
      points.push_back(Point{jitter, correlation,
                             "kappa=" + format_double(jitter) +
                                 ",rho=" + format_double(correlation)});
    }
  }
  const std::vector<SchemeId> schemes = {SchemeId::dro_cvar,
                                         SchemeId::bf_sca_nominal};
  const auto n_trials = static_cast<std::size_t>(lc.experiment.trials);
  std::vector<std::vector<TrialOutput>> results(points.size());
  for (auto& point_trials : results) point_trials.resize(n_trials);

  parallel_for(points.size() * n_trials, lc.experiment.parallel,
               [&](std::size_t cell) {
                 std::size_t p = cell / n_trials;
                 std::size_t t = cell % n_trials;
                 SystemConfig cfg = lc.system;
                 cfg.impairments.jitter_concentration = points[p].jitter;
                 cfg.csi.correlation = points[p].correlation;
                 results[p][t] =
                     run_schemes_trial(cfg, lc.experiment, schemes, "sweep",
                                       static_cast<std::uint64_t>(t));
               });

  ExperimentOutput out;
  for (std::size_t p = 0; p < points.size(); ++p) {
    append_experiment_rows(out.table, schemes, points[p].label, results[p],
                           lc.system.risk.alpha, lc.experiment.outage_threshold);
    for (auto& trial : results[p]) {
      out.slot_log.insert(out.slot_log.end(), trial.slot_lines.begin(),
                          trial.slot_lines.end());
    }
  }
  return out;
}

// Evaluation phase of the deployment experiment: the platform sits at a
// chosen position, the risk-averse beamformer runs, and slots are scored
// after a fast-forward past the window the fine stage consumed.
CellLog evaluate_deployment(const SystemConfig& cfg, const ExperimentSpec& spec,
                            const Candidate& site, std::uint64_t trial,
                            const std::string& scheme_label,
                            std::vector<std::string>* slot_lines) {
  Layout layout = init_layout(cfg, spec.master_seed, trial);
  Rng probe_rng(derive_seed(spec.master_seed, StreamId::probe, trial,
                            static_cast<std::uint64_t>(site.id)));
  ProbeResult probe = probe_candidate(site.position, layout, cfg, probe_rng);

  Environment env(cfg, spec.master_seed, trial, site.position);
  for (int s = 0; s < cfg.stage1.fine_slots; ++s) env.step();

  SchemeState state;
  state.phases = probe.phases;
  CellLog cell;
  cell.sse.reserve(static_cast<std::size_t>(spec.eval_slots));
  for (int s = 0; s < spec.eval_slots; ++s) {
    SlotEnvironment slot = env.step();
    const auto slot_key = static_cast<std::uint64_t>(cfg.stage1.fine_slots + s);
    Rng rng(derive_seed(spec.master_seed, StreamId::scheme, trial, slot_key, 0));
    SchemeSlotResult result;
    try {
      result = run_scheme_slot(SchemeId::dro_cvar, slot, cfg, state, rng);
    } catch (const std::exception& e) {
      throw std::runtime_error(scheme_label + " trial " + std::to_string(trial) +
                               " slot " + std::to_string(s) + ": " + e.what());
    }
    cell.sse.push_back(result.realized_sse);
    cell.min_trace_step = std::min(cell.min_trace_step, result.min_trace_step);
    cell.infeasible += result.feasible ? 0 : 1;
    cell.total_ms += result.solve_ms;
    cell.total_iterations += result.iterations;
    if (slot_lines) {
      slot_lines->push_back(slot_log_line("deploy", trial,
                                          static_cast<std::uint64_t>(s),
                                          scheme_label.c_str(), result));
    }
  }
  return cell;
}

ExperimentOutput run_deploy(const LoadedConfig& lc) {
  const SystemConfig& cfg = lc.system;
  const ExperimentSpec& spec = lc.experiment;
  const std::vector<SchemeId> schemes = {SchemeId::dro_cvar,
                                         SchemeId::deploy_avg_sse,
                                         SchemeId::deploy_geo_center};
  const auto n_trials = static_cast<std::size_t>(spec.trials);

  std::vector<std::vector<CellLog>> cells(
      schemes.size(), std::vector<CellLog>(n_trials));
  ExperimentOutput out;

  for (std::size_t t = 0; t < n_trials; ++t) {
    DeploymentResult deployment =
        select_deployment(cfg, spec.master_seed, t, spec.parallel);

    std::vector<Candidate> grid = make_candidate_grid(cfg, spec.master_seed);
    Layout layout = init_layout(cfg, spec.master_seed, t);
    std::vector<Position3> user_positions;
    user_positions.reserve(layout.users.size());
    for (const auto& user : layout.users) user_positions.push_back(user.position);
    Candidate geo = deploy_geo_center(grid, user_positions, layout.bs, cfg);

    const std::array<Candidate, 3> sites = {deployment.pick_cvar,
                                            deployment.pick_mean, geo};
    std::vector<std::string>* log =
        spec.slot_log.empty() ? nullptr : &out.slot_log;
    for (std::size_t i = 0; i < schemes.size(); ++i) {
      cells[i][t] = evaluate_deployment(cfg, spec, sites[i], t,
                                        scheme_name(schemes[i]), log);
    }

    std::string rendered = render_candidate_table(deployment.scores);
    std::istringstream lines(rendered);
    std::string line;
    bool header = true;
    while (std::getline(lines, line)) {
      if (header) {
        if (t == 0) out.candidate_table = "trial," + line + "\n";
        header = false;
        continue;
      }
      out.candidate_table += std::to_string(t) + "," + line + "\n";
    }
  }

  for (std::size_t i = 0; i < schemes.size(); ++i) {
    for (std::size_t t = 0; t < n_trials; ++t) {
      append_cell_rows(out.table, scheme_name(schemes[i]), "",
                       static_cast<int>(t), cells[i][t], cfg.risk.alpha,
                       spec.outage_threshold);
    }
    append_cell_rows(out.table, scheme_name(schemes[i]), "", -1,
                     pool_cells(cells[i]), cfg.risk.alpha,
                     spec.outage_threshold);
  }
  return out;
}

// Synthetic slot problem for the built-in checks: random cascades, estimates
// consistent with the reference reflection, moderate noise.
SlotProblem random_problem(int n_bs, int n_ris, int k_users, Rng& rng) {
  SlotProblem prob;
  prob.codebook = RisCodebook{2};
  prob.ref_phases = Eigen::VectorXd(n_ris);
  for (int n = 0; n < n_ris; ++n) {
    prob.ref_phases(n) = prob.codebook.phase(
        static_cast<int>(rng.index(static_cast<std::uint64_t>(prob.codebook.size()))));
  }
  Eigen::VectorXcd v0(n_ris);
  for (int n = 0; n < n_ris; ++n) v0(n) = std::polar(1.0, prob.ref_phases(n));

  auto random_matrix = [&](int rows, int cols) {
    Eigen::MatrixXcd m(rows, cols);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) m(r, c) = rng.cnormal();
    }
    return m;
  };
  prob.user_cascade.resize(static_cast<std::size_t>(k_users));
  prob.user_estimate.resize(static_cast<std::size_t>(k_users));
  for (int k = 0; k < k_users; ++k) {
    prob.user_cascade[static_cast<std::size_t>(k)] = random_matrix(n_ris, n_bs);
    prob.user_estimate[static_cast<std::size_t>(k)] =
        prob.user_cascade[static_cast<std::size_t>(k)].adjoint() * v0.conjugate();
  }
  prob.eve_cascade = random_matrix(n_ris, n_bs);
  prob.eve_estimate = prob.eve_cascade.adjoint() * v0.conjugate();
  prob.noise_var = 1.0;
  prob.distortion_coeff = 0.0164;
  prob.power = PowerLimits{2.0, 0.5};
  prob.n_samples = 6;
  return prob;
}

ExperimentOutput run_selftest(const LoadedConfig& lc) {
  ExperimentOutput out;
  auto add = [&](const std::string& check, bool pass) {
    out.table.rows.push_back(ResultRow{"SELFTEST", "", 0, check, pass ? 1.0 : 0.0});
  };
  Rng rng(derive_seed(lc.experiment.master_seed, StreamId::selftest));

  {
    bool pass = true;
    for (int trial = 0; trial < 60 && pass; ++trial) {
      std::size_t n = 1 + rng.index(12);
      std::vector<double> x(n);
      for (auto& v : x) v = rng.uniform(0.0, 5.0);
      double alpha = rng.uniform(0.05, 0.95);
      double closed = cvar(x, alpha);
      // The maximizer of tau - mean([tau - x]+)/alpha sits at a sample point,
      // so scanning samples and midpoints finds the exact optimum.
      std::vector<double> grid = x;
      std::sort(grid.begin(), grid.end());
      const std::size_t base = grid.size();
      for (std::size_t i = 0; i + 1 < base; ++i) {
        grid.push_back(0.5 * (grid[i] + grid[i + 1]));
      }
      double best = -1e300;
      for (double tau : grid) {
        double acc = 0.0;
        for (double v : x) acc += std::max(0.0, tau - v);
        best = std::max(best, tau - acc / (alpha * static_cast<double>(n)));
      }
      pass = std::abs(closed - best) < 1e-9;
    }
    add("cvar_oracle", pass);
  }

  {
    bool pass = true;
    for (int trial = 0; trial < 60 && pass; ++trial) {
      std::size_t n = 1 + rng.index(16);
      std::vector<double> x(n);
      for (auto& v : x) v = rng.uniform(-1.0, 6.0);
      double alpha = rng.uniform(0.05, 0.95);
      EpigraphState state = epigraph_update(x, alpha);
      pass = std::abs(epigraph_objective(state, alpha) - cvar(x, alpha)) < 1e-9;
    }
    add("epigraph_consistency", pass);
  }

  {
    bool pass = true;
    for (int trial = 0; trial < 5 && pass; ++trial) {
      SlotProblem prob = random_problem(8, 16, 2, rng);
      Eigen::MatrixXcd w = mrt_precoder(prob.user_estimate, prob.power);
      std::vector<UncertaintySample> samples = isotropic_samples(prob, rng);
      SampledObjective objective(prob, samples);
      objective.set_precoder(w);
      double tau = epigraph_update(objective.sample_sse(prob.ref_phases),
                                   prob.alpha).tau;
      Eigen::VectorXd grad = objective.phase_gradient(prob.ref_phases, tau);
      const double h = 1e-6;
      double scale = std::max(grad.cwiseAbs().maxCoeff(), 1e-8);
      for (int n = 0; n < 8 && pass; ++n) {
        Eigen::VectorXd hi = prob.ref_phases;
        Eigen::VectorXd lo = prob.ref_phases;
        hi(n) += h;
        lo(n) -= h;
        double fd = (objective.smoothed_objective(hi, tau) -
                     objective.smoothed_objective(lo, tau)) /
                    (2.0 * h);
        pass = std::abs(fd - grad(n)) / scale < 1e-4;
      }
    }
    add("gradient_check", pass);
  }

  {
    LoadedConfig mini = lc;
    mini.experiment.kind = ExperimentKind::robust;
    mini.experiment.trials = 1;
    mini.experiment.slots = 12;
    mini.experiment.slot_log.clear();
    const std::vector<SchemeId> schemes = {SchemeId::dro_cvar,
                                           SchemeId::bf_saa_plain};
    TrialOutput trial =
        run_schemes_trial(mini.system, mini.experiment, schemes, "selftest", 0);
    bool monotone = true;
    bool feasible = true;
    for (const auto& cell : trial.cells) {
      monotone = monotone && cell.min_trace_step >= -1e-9;
      feasible = feasible && cell.infeasible == 0;
    }
    add("monotone_ascent", monotone);
    add("feasibility", feasible);

    mini.experiment.slots = 5;
    TrialOutput a =
        run_schemes_trial(mini.system, mini.experiment, schemes, "selftest", 0);
    TrialOutput b =
        run_schemes_trial(mini.system, mini.experiment, schemes, "selftest", 0);
    bool deterministic = a.cells.size() == b.cells.size();
    for (std::size_t i = 0; deterministic && i < a.cells.size(); ++i) {
      deterministic = a.cells[i].sse == b.cells[i].sse;
    }
    add("determinism", deterministic);
  }
  return out;
}

}  // namespace

ExperimentOutput run_experiment(const LoadedConfig& config) {
  validate(config.system);
  validate(config.experiment);
  switch (config.experiment.kind) {
    case ExperimentKind::robust: return run_robust(config);
    case ExperimentKind::deploy: return run_deploy(config);
    case ExperimentKind::sweep: return run_sweep(config);
    case ExperimentKind::selftest: return run_selftest(config);
  }
  throw std::logic_error("run_experiment: unknown experiment kind");
}

std::string render_results(const ResultTable& table, OutputFormat format) {
  if (format == OutputFormat::csv) {
    std::string out = "schema_version,scheme,sweep,trial,statistic,value\n";
    for (const auto& row : table.rows) {
      out += std::to_string(table.schema_version);
      out += ',';
      out += csv_field(row.scheme);
      out += ',';
      out += csv_field(row.sweep);
      out += ',';
      out += std::to_string(row.trial);
      out += ',';
      out += csv_field(row.statistic);
      out += ',';
      out += format_double(row.value);
      out += '\n';
    }
    return out;
  }
  json j;
  j["schema_version"] = table.schema_version;
  j["rows"] = json::array();
  for (const auto& row : table.rows) {
    json r;
    r["scheme"] = row.scheme;
    r["sweep"] = row.sweep;
    r["trial"] = row.trial;
    r["statistic"] = row.statistic;
    r["value"] = row.value;
    j["rows"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

ResultTable parse_results(const std::string& text, OutputFormat format) {
  ResultTable table;
  if (format == OutputFormat::csv) {
    std::istringstream lines(text);
    std::string line;
    bool header = true;
    while (std::getline(lines, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (header) {
        header = false;
        continue;
      }
      std::vector<std::string> fields = split_csv_line(line);
      if (fields.size() != 6) {
        throw std::runtime_error("parse_results: malformed CSV row");
      }
      table.schema_version = std::stoi(fields[0]);
      table.rows.push_back(ResultRow{fields[1], fields[2], std::stoi(fields[3]),
                                     fields[4], std::stod(fields[5])});
    }
    return table;
  }
  json j = json::parse(text);
  table.schema_version = j.at("schema_version").get<int>();
  for (const auto& r : j.at("rows")) {
    table.rows.push_back(ResultRow{
        r.at("scheme").get<std::string>(), r.at("sweep").get<std::string>(),
        r.at("trial").get<int>(), r.at("statistic").get<std::string>(),
        r.at("value").get<double>()});
  }
  return table;
}

void emit_results(const ResultTable& table, OutputFormat format,
                  const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_results: cannot write " + path);
  out << render_results(table, format);
  if (!out) throw std::runtime_error("emit_results: write failed for " + path);
}

namespace {

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  static const char digits[] = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[15 - i] = digits[(hash >> (4 * i)) & 0xF];
  }
  buf[16] = '\0';
  return buf;
}

const char* kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::deploy: return "deploy";
    case ExperimentKind::robust: return "robust";
    case ExperimentKind::sweep: return "sweep";
    case ExperimentKind::selftest: return "selftest";
  }
  return "unknown";
}

}  // namespace

void write_manifest(const std::string& result_path, const LoadedConfig& config,
                    double wall_seconds) {
  std::string config_text = config_to_json(config.system, config.experiment);
  json manifest;
  manifest["result"] = result_path;
  manifest["experiment"] = kind_name(config.experiment.kind);
  manifest["schema_version"] = kSchemaVersion;
  manifest["tool_version"] = kToolVersion;
  manifest["master_seed"] = config.experiment.master_seed;
  manifest["config_hash"] = "fnv1a64:" + fnv1a_hex(config_text);
  manifest["config"] = json::parse(config_text);
  manifest["wall_seconds"] = wall_seconds;

  std::string path = result_path + ".manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_manifest: cannot write " + path);
  out << manifest.dump(2) << "\n";
}

}  // namespace aris
