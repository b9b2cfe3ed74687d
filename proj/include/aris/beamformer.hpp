#pragma once

#include <vector>

#include <Eigen/Dense>

#include "aris/impairments.hpp"
#include "aris/metrics.hpp"
#include "aris/rng.hpp"

namespace aris {

// Risk-averse (lower-tail mean) or risk-neutral (plain mean) aggregation of
// the per-sample secrecy rates.
enum class ObjectiveMode { cvar, mean };

// One slot's optimization inputs: channel estimates anchored at the
// reference reflection, cascade matrices for the reflection dependence, the
// uncertainty geometry, and algorithm knobs.
struct SlotProblem {
  std::vector<Eigen::VectorXcd> user_estimate;  // estimates at ref_phases
  Eigen::VectorXcd eve_estimate;
  std::vector<Eigen::MatrixXcd> user_cascade;   // N_R x N per user
  Eigen::MatrixXcd eve_cascade;
  Eigen::VectorXd ref_phases;                   // reflection the estimates were taken at
  double sigma2_user = 0.15;  // squared error-ball radius, fraction of ||g||^2
  double sigma2_eve = 0.17;
  double noise_var = 1.0;
  double distortion_coeff = 0.0;
  PowerLimits power;
  RisCodebook codebook;

  double alpha = 0.2;
  int n_samples = 10;
  double wasserstein_radius = 0.03;
  int adversary_steps = 3;
  std::vector<double> zeta_grid{0.0, 0.25, 0.5, 0.75, 1.0};
  double softplus_sharpness = 50.0;
  int max_iterations = 15;
  double tolerance = 1e-4;
  int backtrack_limit = 20;
  // Initial line-search step, in units of pi / max|gradient|. Values above 1
  // let the search test far points (phases wrap), which is what gives the
  // elementwise quantizer a chance to cross bin boundaries.
  double ris_step_scale = 1.0;
  // Relative improvement a projected step must clear before it is accepted.
  // Nonzero values keep sampled objectives from accepting flips whose gain is
  // below the sample-noise floor.
  double ris_accept_margin = 0.0;
  ObjectiveMode objective = ObjectiveMode::cvar;
  bool adversarial = true;

  int users() const { return static_cast<int>(user_estimate.size()); }
  int bs_antennas() const { return static_cast<int>(eve_cascade.cols()); }
  int ris_elements() const { return static_cast<int>(eve_cascade.rows()); }
};

// Epigraph variables for the sampled tail objective.
struct EpigraphState {
  double tau = 0.0;
  std::vector<double> slack;
};

// Closed-form optimal epigraph point for fixed per-sample rates: tau is the
// lower alpha-quantile and slack_s = [tau - R_s]^+.
EpigraphState epigraph_update(const std::vector<double>& sample_sse, double alpha);

// tau - sum(slack) / (alpha * L); equals cvar(sample_sse, alpha) at the
// output of epigraph_update.
double epigraph_objective(const EpigraphState& state, double alpha);

// Per-iteration record of the outer loop.
struct AoTrace {
  std::vector<double> objective;  // objective after each iteration, [0] = start
  std::vector<char> precoder_accepted;
  std::vector<char> ris_accepted;
  std::vector<double> ris_step;   // accepted line-search step, 0 when rejected
  int iterations = 0;
};

// Sampled secrecy objective for fixed uncertainty samples. Evaluation treats
// the channel estimate as an affine function of the reflection vector;
// beam-side quantities are cached per precoder so phase sweeps are cheap.
class SampledObjective {
 public:
  SampledObjective(const SlotProblem& problem,
                   std::vector<UncertaintySample> samples);

  void set_precoder(const Eigen::MatrixXcd& precoder);
  const Eigen::MatrixXcd& precoder() const { return precoder_; }
  const std::vector<UncertaintySample>& samples() const { return samples_; }

  // Channel estimate for a receiver (users 0..K-1, K = eavesdropper) at an
  // arbitrary reflection, zero perturbation.
  Eigen::VectorXcd estimate_at(int receiver, const Eigen::VectorXd& phases) const;

  // Exact clipped secrecy rate per sample.
  std::vector<double> sample_sse(const Eigen::VectorXd& phases) const;

  // Mode-dependent aggregation (tail mean or mean) of sample_sse.
  double objective(const Eigen::VectorXd& phases) const;
  double aggregate(const std::vector<double>& sample_sse) const;

  // Softplus-smoothed objective at fixed tau and its analytic phase gradient.
  // In mean mode tau is ignored.
  double smoothed_objective(const Eigen::VectorXd& phases, double tau) const;
  Eigen::VectorXd phase_gradient(const Eigen::VectorXd& phases, double tau) const;

  // Zero-perturbation secrecy rate at the current precoder.
  double nominal_sse(const Eigen::VectorXd& phases) const;

 private:
  const SlotProblem* prob_;
  std::vector<UncertaintySample> samples_;
  Eigen::MatrixXcd precoder_;
  std::vector<Eigen::VectorXcd> anchor_;       // estimate minus cascade at ref
  std::vector<Eigen::MatrixXcd> beam_mix_;     // per receiver: cascade * W
  std::vector<Eigen::MatrixXcd> sample_bias_;  // per sample: (K+1) x K inner products
  Eigen::MatrixXcd nominal_bias_;              // anchor-only inner products
};

// Draws the slot's uncertainty set. Sample 0 is the zero perturbation; the
// rest start as isotropic draws at the transport-radius scale and take
// adversary_steps normalized descent steps on the smoothed secrecy rate,
// each followed by projection onto the error ball.
std::vector<UncertaintySample> adversarial_sample(const SlotProblem& problem,
                                                  const Eigen::MatrixXcd& precoder,
                                                  const Eigen::VectorXd& phases,
                                                  Rng& rng);

// Non-adversarial variant: isotropic draws only, no descent, same projection.
std::vector<UncertaintySample> isotropic_samples(const SlotProblem& problem,
                                                 Rng& rng);

// Equal-power beams along the estimated user channels with an eavesdropper
// null blended in by zeta; scanned over the zeta grid and accepted only when
// the sampled objective improves. Throws on an all-zero estimate.
Eigen::MatrixXcd threat_aware_mrt(const SlotProblem& problem,
                                  SampledObjective& objective,
                                  const Eigen::VectorXd& phases,
                                  const Eigen::MatrixXcd& current,
                                  bool& accepted);

// Plain zeta=0 construction from explicit estimates (warm starts, baselines).
Eigen::MatrixXcd mrt_precoder(const std::vector<Eigen::VectorXcd>& user_estimates,
                              const PowerLimits& limits);

struct RisStepResult {
  Eigen::VectorXd phases;
  bool accepted = false;
  double step = 0.0;
};

// One projected gradient step on the intended phases: analytic gradient of
// the smoothed objective, backtracking line search on the continuous
// relaxation, elementwise codebook projection, and an accept-if-improve test
// on the exact discrete objective. A fully rejected step returns the input.
RisStepResult ris_wirtinger_step(const SlotProblem& problem,
                                 SampledObjective& objective,
                                 const Eigen::VectorXd& phases, double tau);

struct SlotOutcome {
  Eigen::MatrixXcd precoder;
  Eigen::VectorXd phases;
  Eigen::VectorXcd reflection;  // unit-modulus intended vector
  double objective = 0.0;
  double nominal_sse = 0.0;
  double worst_sample_sse = 0.0;
  AoTrace trace;
  std::vector<UncertaintySample> samples;
  double solve_ms = 0.0;
};

// Full per-slot routine: draw samples once, then alternate precoder update,
// reflection update and epigraph update until the objective stalls or the
// iteration cap. Throws std::invalid_argument on an infeasible warm start.
SlotOutcome solve_slot(const SlotProblem& problem,
                       const Eigen::MatrixXcd& warm_precoder,
                       const Eigen::VectorXd& warm_phases, Rng& rng);

}  // namespace aris
