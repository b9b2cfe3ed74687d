#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aris/simulation.hpp"

namespace aris {

struct Candidate {
  int id = 0;
  Position3 position;
};

// Uniform random candidate positions over the feasible box (area footprint,
// altitude band). Keyed by the master seed only, so every trial screens the
// same grid.
std::vector<Candidate> make_candidate_grid(const SystemConfig& config,
                                           std::uint64_t master_seed);

struct ProbeResult {
  Eigen::VectorXd phases;
  double min_sinr_db = 0.0;
};

// Cheap one-shot probe of a platform position: reflection patterns that
// phase-align the platform-to-user path with the feed path for each user and
// for the user centroid, plus a handful of random codebook draws. Each is
// scored by the minimum user SINR under plain matched beams on a fresh
// channel draw; the best pattern and its score (dB) come back.
ProbeResult probe_candidate(const Position3& position, const Layout& layout,
                            const SystemConfig& config, Rng& rng);

// Lower-tail mean of realized secrecy rates over the presample window, with
// the probe reflection held fixed and matched beams re-aimed every slot under
// the full impairment stack.
double surrogate_cvar(const Position3& position,
                      const Eigen::VectorXd& probe_phases,
                      const SystemConfig& config, std::uint64_t master_seed,
                      std::uint64_t trial);

struct CandidateScore {
  Candidate candidate;
  Eigen::VectorXd warm_phases;
  double probe_db = 0.0;
  double probe_norm = 0.0;     // min-max normalized across the grid
  double presample_cvar = 0.0;
  double blended = 0.0;        // (1 - w) * presample_cvar + w * probe_norm
  bool fine_evaluated = false;
  double fine_cvar = 0.0;
  double fine_mean = 0.0;
};

// Probe and presample every candidate (parallel over candidates, one keyed
// stream each), then normalize probe scores across the grid and blend.
std::vector<CandidateScore> score_candidates(const std::vector<Candidate>& grid,
                                             const SystemConfig& config,
                                             std::uint64_t master_seed,
                                             std::uint64_t trial,
                                             unsigned parallel);

// Indices of the `keep` highest blended scores, ordered best-first, ties
// broken toward the smaller candidate id. Throws when keep exceeds the grid.
std::vector<std::size_t> coarse_screen(const std::vector<CandidateScore>& scores,
                                       int keep);

struct FineScore {
  std::vector<double> sse;  // realized rates in the scoring window
  double cvar_value = 0.0;
  double mean = 0.0;
};

// Full per-slot pipeline at one candidate: the risk-averse beamformer with
// warm-start chaining, probe phases seeding the first slot. The leading
// warm_slots are run but excluded from scoring.
FineScore fine_evaluate(const Candidate& candidate,
                        const Eigen::VectorXd& warm_phases,
                        const SystemConfig& config, std::uint64_t master_seed,
                        std::uint64_t trial);

struct DeploymentResult {
  std::vector<CandidateScore> scores;  // fine fields filled for survivors
  int fine_count = 0;
  int skipped = 0;  // grid size minus fine evaluations
  Candidate pick_cvar;
  Candidate pick_mean;
};

// The two-stage screening pipeline. Both selection rules are scored from the
// same fine evaluations: the tail rule picks by CVaR, the risk-neutral rule
// by the mean.
DeploymentResult select_deployment(const SystemConfig& config,
                                   std::uint64_t master_seed,
                                   std::uint64_t trial, unsigned parallel);

// Candidate nearest the midpoint between the BS and the user centroid at the
// middle of the altitude band; ties broken by candidate id.
Candidate deploy_geo_center(const std::vector<Candidate>& grid,
                            const std::vector<Position3>& users,
                            const Position3& bs, const SystemConfig& config);

// CSV score table: one row per candidate, fine columns blank when skipped.
std::string render_candidate_table(const std::vector<CandidateScore>& scores);

}  // namespace aris
