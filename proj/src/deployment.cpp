#include "aris/deployment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "aris/parallel.hpp"
#include "aris/schemes.hpp"
#include "aris/textio.hpp"

namespace aris {

namespace {

Eigen::VectorXd conjugation_phases(const Eigen::VectorXcd& toward,
                                   const Eigen::MatrixXcd& feed,
                                   const RisCodebook& codebook) {
  // Aligns the reflect-side path with the feed path element by element; a
  // common offset is irrelevant, so the feed phase is read off one column.
  Eigen::VectorXd phases(toward.size());
  for (Eigen::Index n = 0; n < toward.size(); ++n) {
    phases(n) =
        quantize_phase(std::arg(toward(n)) - std::arg(feed(n, 0)), codebook);
  }
  return phases;
}

double probe_score(const ChannelSet& channels, const Eigen::VectorXd& phases,
                   const SystemConfig& config) {
  Eigen::VectorXcd v(phases.size());
  for (Eigen::Index n = 0; n < phases.size(); ++n) v(n) = std::polar(1.0, phases(n));

  const auto n_users = channels.ris_user.size();
  std::vector<Eigen::VectorXcd> cascades(n_users);
  for (std::size_t k = 0; k < n_users; ++k) {
    cascades[k] = cascaded_channel(channels, v, static_cast<int>(k));
  }
  Eigen::MatrixXcd w = mrt_precoder(cascades, config.power_limits());

  const double noise = config.radio.noise_power_w();
  const double coeff = config.radio.distortion_coeff();
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n_users; ++k) {
    worst = std::min(worst, sinr(cascades[k], w, static_cast<int>(k), noise, coeff));
  }
  return worst;
}

}  // namespace

std::vector<Candidate> make_candidate_grid(const SystemConfig& config,
                                           std::uint64_t master_seed) {
  Rng rng(derive_seed(master_seed, StreamId::grid));
  const LayoutConfig& lc = config.layout;
  std::vector<Candidate> grid(static_cast<std::size_t>(config.stage1.candidates));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i].id = static_cast<int>(i);
    grid[i].position = {rng.uniform(lc.area.lo, lc.area.hi),
                        rng.uniform(lc.area.lo, lc.area.hi),
                        rng.uniform(lc.uav_alt_min, lc.uav_alt_max)};
  }
  return grid;
}

ProbeResult probe_candidate(const Position3& position, const Layout& layout,
                            const SystemConfig& config, Rng& rng) {
  ChannelGeometry geo;
  geo.bs = layout.bs;
  geo.ris = position;
  geo.users.reserve(layout.users.size());
  for (const auto& user : layout.users) geo.users.push_back(user.position);
  geo.eve = layout.eve.position;
  geo.bs_array = ArrayGeometry{ArrayKind::linear, config.arrays.bs_antennas, 1,
                               config.arrays.spacing};
  geo.ris_array = ArrayGeometry{ArrayKind::planar, config.arrays.ris_x,
                                config.arrays.ris_y, config.arrays.spacing};
  ChannelSet channels = draw_channels(geo, config.channel_model(), rng);

  RisCodebook codebook = config.codebook();
  std::vector<Eigen::VectorXd> probes;
  probes.reserve(layout.users.size() + 1 +
                 static_cast<std::size_t>(config.stage1.random_probes));
  for (std::size_t k = 0; k < layout.users.size(); ++k) {
    probes.push_back(
        conjugation_phases(channels.ris_user[k], channels.bs_ris, codebook));
  }
  {
    double cx = 0.0;
    double cy = 0.0;
    for (const auto& user : layout.users) {
      cx += user.position.x;
      cy += user.position.y;
    }
    cx /= std::max<std::size_t>(1, layout.users.size());
    cy /= std::max<std::size_t>(1, layout.users.size());
    PointingAngles to_centroid = angles_between(position, Position3{cx, cy, 0.0});
    Eigen::VectorXcd steer =
        steering_upa(to_centroid.azimuth, to_centroid.elevation, config.arrays.ris_x,
                     config.arrays.ris_y, config.arrays.spacing);
    probes.push_back(conjugation_phases(steer, channels.bs_ris, codebook));
  }
  const int n_ris = config.arrays.ris_elements();
  for (int q = 0; q < config.stage1.random_probes; ++q) {
    Eigen::VectorXd draw(n_ris);
    for (int n = 0; n < n_ris; ++n) {
      draw(n) = codebook.phase(
          static_cast<int>(rng.index(static_cast<std::uint64_t>(codebook.size()))));
    }
    probes.push_back(std::move(draw));
  }

  ProbeResult best;
  double best_sinr = -1.0;
  for (const auto& phases : probes) {
    double s = probe_score(channels, phases, config);
    if (s > best_sinr) {
      best_sinr = s;
      best.phases = phases;
    }
  }
  best.min_sinr_db = 10.0 * std::log10(std::max(best_sinr, 1e-300));
  return best;
}

double surrogate_cvar(const Position3& position,
                      const Eigen::VectorXd& probe_phases,
                      const SystemConfig& config, std::uint64_t master_seed,
                      std::uint64_t trial) {
  Environment env(config, master_seed, trial, position);
  PowerLimits limits = config.power_limits();
  std::vector<double> sse(static_cast<std::size_t>(config.stage1.presample_slots));
  for (auto& value : sse) {
    SlotEnvironment slot = env.step();
    EstimateSet est = estimate_channels(slot, probe_phases, config);
    Eigen::MatrixXcd w = mrt_precoder(est.user_estimate, limits);
    value = realize_slot(slot, w, probe_phases, config).sse;
  }
  return cvar(sse, config.risk.alpha);
}

std::vector<CandidateScore> score_candidates(const std::vector<Candidate>& grid,
                                             const SystemConfig& config,
                                             std::uint64_t master_seed,
                                             std::uint64_t trial,
                                             unsigned parallel) {
  std::vector<CandidateScore> scores(grid.size());
  Layout layout = init_layout(config, master_seed, trial);
  parallel_for(grid.size(), parallel, [&](std::size_t i) {
    CandidateScore& score = scores[i];
    score.candidate = grid[i];
    Rng rng(derive_seed(master_seed, StreamId::probe, trial,
                        static_cast<std::uint64_t>(grid[i].id)));
    ProbeResult probe = probe_candidate(grid[i].position, layout, config, rng);
    score.warm_phases = probe.phases;
    score.probe_db = probe.min_sinr_db;
    score.presample_cvar = surrogate_cvar(grid[i].position, probe.phases, config,
                                          master_seed, trial);
  });

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& score : scores) {
    lo = std::min(lo, score.probe_db);
    hi = std::max(hi, score.probe_db);
  }
  const double spread = hi - lo;
  const double w = config.stage1.probe_weight;
  for (auto& score : scores) {
    score.probe_norm = spread > 1e-12 ? (score.probe_db - lo) / spread : 0.5;
    score.blended = (1.0 - w) * score.presample_cvar + w * score.probe_norm;
  }
  return scores;
}

std::vector<std::size_t> coarse_screen(const std::vector<CandidateScore>& scores,
                                       int keep) {
  if (keep <= 0 || static_cast<std::size_t>(keep) > scores.size()) {
    throw std::invalid_argument("coarse_screen: keep count exceeds the grid");
  }
  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a].blended != scores[b].blended) {
      return scores[a].blended > scores[b].blended;
    }
    return scores[a].candidate.id < scores[b].candidate.id;
  });
  order.resize(static_cast<std::size_t>(keep));
  return order;
}

FineScore fine_evaluate(const Candidate& candidate,
                        const Eigen::VectorXd& warm_phases,
                        const SystemConfig& config, std::uint64_t master_seed,
                        std::uint64_t trial) {
  Environment env(config, master_seed, trial, candidate.position);
  SchemeState state;
  state.phases = warm_phases;

  FineScore out;
  out.sse.reserve(static_cast<std::size_t>(
      std::max(0, config.stage1.fine_slots - config.stage1.warm_slots)));
  for (int s = 0; s < config.stage1.fine_slots; ++s) {
    SlotEnvironment slot = env.step();
    Rng rng(derive_seed(master_seed, StreamId::scheme, trial,
                        static_cast<std::uint64_t>(s), 0));
    SchemeSlotResult result =
        run_scheme_slot(SchemeId::dro_cvar, slot, config, state, rng);
    if (s >= config.stage1.warm_slots) out.sse.push_back(result.realized_sse);
  }
  out.cvar_value = cvar(out.sse, config.risk.alpha);
  double sum = 0.0;
  for (double v : out.sse) sum += v;
  out.mean = sum / static_cast<double>(out.sse.size());
  return out;
}

DeploymentResult select_deployment(const SystemConfig& config,
                                   std::uint64_t master_seed,
                                   std::uint64_t trial, unsigned parallel) {
  std::vector<Candidate> grid = make_candidate_grid(config, master_seed);
  DeploymentResult result;
  result.scores = score_candidates(grid, config, master_seed, trial, parallel);
  std::vector<std::size_t> survivors =
      coarse_screen(result.scores, config.stage1.coarse_keep);

  parallel_for(survivors.size(), parallel, [&](std::size_t i) {
    CandidateScore& score = result.scores[survivors[i]];
    FineScore fine = fine_evaluate(score.candidate, score.warm_phases, config,
                                   master_seed, trial);
    score.fine_evaluated = true;
    score.fine_cvar = fine.cvar_value;
    score.fine_mean = fine.mean;
  });
  result.fine_count = static_cast<int>(survivors.size());
  result.skipped = static_cast<int>(grid.size() - survivors.size());

  const CandidateScore* best_cvar = nullptr;
  const CandidateScore* best_mean = nullptr;
  for (const auto& score : result.scores) {
    if (!score.fine_evaluated) continue;
    if (!best_cvar || score.fine_cvar > best_cvar->fine_cvar) best_cvar = &score;
    if (!best_mean || score.fine_mean > best_mean->fine_mean) best_mean = &score;
  }
  if (!best_cvar) throw std::runtime_error("select_deployment: no fine evaluations");
  result.pick_cvar = best_cvar->candidate;
  result.pick_mean = best_mean->candidate;
  return result;
}

Candidate deploy_geo_center(const std::vector<Candidate>& grid,
                            const std::vector<Position3>& users,
                            const Position3& bs, const SystemConfig& config) {
  if (grid.empty()) throw std::invalid_argument("deploy_geo_center: empty grid");
  if (users.empty()) throw std::invalid_argument("deploy_geo_center: no users");
  double cx = 0.0;
  double cy = 0.0;
  for (const auto& user : users) {
    cx += user.x;
    cy += user.y;
  }
  cx /= static_cast<double>(users.size());
  cy /= static_cast<double>(users.size());
  Position3 target{(bs.x + cx) / 2.0, (bs.y + cy) / 2.0,
                   (config.layout.uav_alt_min + config.layout.uav_alt_max) / 2.0};

  const Candidate* best = &grid[0];
  double best_d = distance(grid[0].position, target);
  for (const auto& candidate : grid) {
    double d = distance(candidate.position, target);
    if (d < best_d) {
      best_d = d;
      best = &candidate;
    }
  }
  return *best;
}

std::string render_candidate_table(const std::vector<CandidateScore>& scores) {
  std::string out =
      "candidate,x,y,z,probe_db,probe_norm,presample_cvar,blended,fine_cvar,"
      "fine_mean\n";
  for (const auto& score : scores) {
    out += std::to_string(score.candidate.id);
    out += ',';
    out += format_double(score.candidate.position.x);
    out += ',';
    out += format_double(score.candidate.position.y);
    out += ',';
    out += format_double(score.candidate.position.z);
    out += ',';
    out += format_double(score.probe_db);
    out += ',';
    out += format_double(score.probe_norm);
    out += ',';
    out += format_double(score.presample_cvar);
    out += ',';
    out += format_double(score.blended);
    out += ',';
    if (score.fine_evaluated) out += format_double(score.fine_cvar);
    out += ',';
    if (score.fine_evaluated) out += format_double(score.fine_mean);
    out += '\n';
  }
  return out;
}

}  // namespace aris
