#pragma once

#include <string>

#include "aris/simulation.hpp"

namespace aris {

// Compared controllers. The first three are deployment policies (they differ
// in where the aerial platform goes); the last four are per-slot beamformers
// (they differ in how W and the reflection are chosen at a fixed platform).
enum class SchemeId {
  dro_cvar,
  deploy_avg_sse,
  deploy_geo_center,
  bf_sca_nominal,
  bf_saa_plain,
  bf_mrt_random_phase,
};

const char* scheme_name(SchemeId id);

// Applies a beamforming scheme's algorithm knobs on top of a baseline slot
// problem. Deployment schemes reuse the risk-averse beamformer unchanged.
void configure_problem(SlotProblem& problem, SchemeId id);

// Warm-start state carried across a trial's slots, one per scheme.
struct SchemeState {
  Eigen::MatrixXcd precoder;  // empty until the first solved slot
  Eigen::VectorXd phases;     // commanded reflection, must be initialized
};

// Everything recorded about one scheme-slot: the on-air secrecy rate plus
// solver diagnostics and the feasibility/monotonicity audit.
struct SchemeSlotResult {
  double realized_sse = 0.0;
  double objective = 0.0;
  double nominal_sse = 0.0;
  double worst_sample_sse = 0.0;
  double solve_ms = 0.0;
  int iterations = 0;
  double min_trace_step = 0.0;  // most negative objective increment, >= -1e-9
  bool feasible = true;         // power, codebook, and sample-ball audit
};

// Runs one scheme for one slot against a fixed environment draw and chains
// the warm start. The rng must be scheme-keyed; environment randomness is
// already baked into the slot draw.
SchemeSlotResult run_scheme_slot(SchemeId id, const SlotEnvironment& env,
                                 const SystemConfig& config, SchemeState& state,
                                 Rng& rng);

}  // namespace aris
