#include "aris/schemes.hpp"

#include <cmath>
#include <stdexcept>

#include "aris/metrics.hpp"

namespace aris {

const char* scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::dro_cvar: return "DRO_CVAR";
    case SchemeId::deploy_avg_sse: return "DEPLOY_AVG_SSE";
    case SchemeId::deploy_geo_center: return "DEPLOY_GEO_CENTER";
    case SchemeId::bf_sca_nominal: return "BF_SCA_NOMINAL";
    case SchemeId::bf_saa_plain: return "BF_SAA_PLAIN";
    case SchemeId::bf_mrt_random_phase: return "BF_MRT_RANDOM_PHASE";
  }
  return "UNKNOWN";
}

void configure_problem(SlotProblem& problem, SchemeId id) {
  switch (id) {
    case SchemeId::bf_sca_nominal:
      problem.n_samples = 1;
      problem.adversarial = false;
      problem.objective = ObjectiveMode::mean;
      break;
    case SchemeId::bf_saa_plain:
      problem.adversarial = false;
      problem.objective = ObjectiveMode::mean;
      break;
    default:
      problem.adversarial = true;
      problem.objective = ObjectiveMode::cvar;
      break;
  }
}

namespace {

bool phases_in_codebook(const Eigen::VectorXd& phases, const RisCodebook& codebook) {
  for (Eigen::Index n = 0; n < phases.size(); ++n) {
    if (!in_codebook(phases(n), codebook)) return false;
  }
  return true;
}

bool samples_in_balls(const SlotProblem& prob,
                      const std::vector<UncertaintySample>& samples) {
  for (const auto& sample : samples) {
    for (std::size_t k = 0; k < prob.user_estimate.size(); ++k) {
      double radius = std::sqrt(prob.sigma2_user) * prob.user_estimate[k].norm();
      if (sample.user_error[k].norm() > radius * (1.0 + 1e-9)) return false;
    }
    double radius = std::sqrt(prob.sigma2_eve) * prob.eve_estimate.norm();
    if (sample.eve_error.norm() > radius * (1.0 + 1e-9)) return false;
  }
  return true;
}

SchemeSlotResult run_random_phase_slot(const SlotEnvironment& env,
                                       const SystemConfig& config,
                                       SchemeState& state, Rng& rng) {
  RisCodebook codebook = config.codebook();
  const int n_ris = config.arrays.ris_elements();
  Eigen::VectorXd phases(n_ris);
  for (int n = 0; n < n_ris; ++n) {
    phases(n) = codebook.phase(static_cast<int>(rng.index(
        static_cast<std::uint64_t>(codebook.size()))));
  }

  EstimateSet est = estimate_channels(env, phases, config);
  Eigen::MatrixXcd w = mrt_precoder(est.user_estimate, config.power_limits());

  SchemeSlotResult result;
  const double noise = config.radio.noise_power_w();
  const double coeff = config.radio.distortion_coeff();
  std::vector<double> user_sinrs(est.user_estimate.size());
  std::vector<double> eve_sinrs(est.user_estimate.size());
  for (std::size_t k = 0; k < est.user_estimate.size(); ++k) {
    user_sinrs[k] =
        sinr(est.user_estimate[k], w, static_cast<int>(k), noise, coeff);
    eve_sinrs[k] = sinr(est.eve_estimate, w, static_cast<int>(k), noise, coeff);
  }
  result.nominal_sse = secrecy_sse(user_sinrs, eve_sinrs);
  result.objective = result.nominal_sse;
  result.worst_sample_sse = result.nominal_sse;
  result.feasible = precoder_feasible(w, config.power_limits()) &&
                    phases_in_codebook(phases, codebook);

  RealizedSlot realized = realize_slot(env, w, phases, config);
  result.realized_sse = realized.sse;

  state.precoder = std::move(w);
  state.phases = std::move(phases);
  return result;
}

}  // namespace

SchemeSlotResult run_scheme_slot(SchemeId id, const SlotEnvironment& env,
                                 const SystemConfig& config, SchemeState& state,
                                 Rng& rng) {
  if (state.phases.size() != config.arrays.ris_elements()) {
    throw std::invalid_argument("run_scheme_slot: uninitialized warm phases");
  }
  if (id == SchemeId::bf_mrt_random_phase) {
    return run_random_phase_slot(env, config, state, rng);
  }

  SlotProblem prob = make_slot_problem(env, state.phases, config);
  configure_problem(prob, id);
  SlotOutcome outcome = solve_slot(prob, state.precoder, state.phases, rng);

  SchemeSlotResult result;
  result.objective = outcome.objective;
  result.nominal_sse = outcome.nominal_sse;
  result.worst_sample_sse = outcome.worst_sample_sse;
  result.solve_ms = outcome.solve_ms;
  result.iterations = outcome.trace.iterations;

  result.min_trace_step = 0.0;
  for (std::size_t i = 1; i < outcome.trace.objective.size(); ++i) {
    result.min_trace_step =
        std::min(result.min_trace_step,
                 outcome.trace.objective[i] - outcome.trace.objective[i - 1]);
  }

  result.feasible = precoder_feasible(outcome.precoder, prob.power) &&
                    phases_in_codebook(outcome.phases, prob.codebook) &&
                    samples_in_balls(prob, outcome.samples);

  RealizedSlot realized = realize_slot(env, outcome.precoder, outcome.phases, config);
  result.realized_sse = realized.sse;

  state.precoder = std::move(outcome.precoder);
  state.phases = std::move(outcome.phases);
  return result;
}

}  // namespace aris
