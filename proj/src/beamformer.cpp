#include "aris/beamformer.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aris {

namespace {

constexpr double kLn2 = std::numbers::ln2;

double softplus(double x, double sharpness) {
  // max(x, 0) + log(1 + exp(-sharpness*|x|)) / sharpness, which is the
  // overflow-safe form of log(1 + exp(sharpness*x)) / sharpness.
  return std::max(x, 0.0) + std::log1p(std::exp(-sharpness * std::abs(x))) / sharpness;
}

double logistic(double x, double sharpness) {
  double t = sharpness * x;
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  double e = std::exp(t);
  return e / (1.0 + e);
}

Eigen::VectorXcd unit_reflection(const Eigen::VectorXd& phases) {
  Eigen::VectorXcd v(phases.size());
  for (Eigen::Index n = 0; n < phases.size(); ++n) v(n) = std::polar(1.0, phases(n));
  return v;
}

struct SseEval {
  double exact = 0.0;
  double smoothed = 0.0;
};

// Secrecy rate from the (K+1) x K power grid (receiver-major, eavesdropper
// last). When weights is non-null it receives d(smoothed)/d p(j, m).
SseEval evaluate_sse(const Eigen::MatrixXd& p, const SlotProblem& prob,
                     Eigen::MatrixXd* weights) {
  const int k_users = prob.users();
  const int eve = k_users;
  const double noise = prob.noise_var;
  const double c = prob.distortion_coeff;
  const double sharp = prob.softplus_sharpness;
  if (weights) weights->setZero(k_users + 1, k_users);

  SseEval out;
  const double t_eve = p.row(eve).sum();
  for (int k = 0; k < k_users; ++k) {
    const double t_user = p.row(k).sum();
    const double s_user = p(k, k);
    const double d_user = noise + (1.0 + c) * t_user - s_user;
    const double g_user = s_user / d_user;

    const double s_eve = p(eve, k);
    const double d_eve = noise + (1.0 + c) * t_eve - s_eve;
    const double g_eve = s_eve / d_eve;

    const double delta =
        (std::log1p(g_user) - std::log1p(g_eve)) / kLn2;
    out.exact += std::max(0.0, delta);
    out.smoothed += softplus(delta, sharp);

    if (weights) {
      const double clip_w = logistic(delta, sharp);
      const double fu = clip_w / ((1.0 + g_user) * kLn2);
      const double fe = clip_w / ((1.0 + g_eve) * kLn2);
      const double du2 = d_user * d_user;
      const double de2 = d_eve * d_eve;
      for (int m = 0; m < k_users; ++m) {
        const double dg_user = (m == k) ? (d_user - c * s_user) / du2
                                        : -s_user * (1.0 + c) / du2;
        (*weights)(k, m) += fu * dg_user;
        const double dg_eve = (m == k) ? (d_eve - c * s_eve) / de2
                                       : -s_eve * (1.0 + c) / de2;
        (*weights)(eve, m) -= fe * dg_eve;
      }
    }
  }
  return out;
}

}  // namespace

EpigraphState epigraph_update(const std::vector<double>& sample_sse, double alpha) {
  EpigraphState state;
  state.tau = lower_quantile(sample_sse, alpha);
  state.slack.resize(sample_sse.size());
  for (std::size_t s = 0; s < sample_sse.size(); ++s) {
    state.slack[s] = std::max(0.0, state.tau - sample_sse[s]);
  }
  return state;
}

double epigraph_objective(const EpigraphState& state, double alpha) {
  double sum = 0.0;
  for (double s : state.slack) sum += s;
  return state.tau - sum / (alpha * static_cast<double>(state.slack.size()));
}

SampledObjective::SampledObjective(const SlotProblem& problem,
                                   std::vector<UncertaintySample> samples)
    : prob_(&problem), samples_(std::move(samples)) {
  if (samples_.empty()) {
    throw std::invalid_argument("SampledObjective: empty sample set");
  }
  const int k_users = problem.users();
  Eigen::VectorXcd v0 = unit_reflection(problem.ref_phases);
  anchor_.resize(static_cast<std::size_t>(k_users) + 1);
  for (int k = 0; k < k_users; ++k) {
    anchor_[static_cast<std::size_t>(k)] =
        problem.user_estimate[static_cast<std::size_t>(k)] -
        problem.user_cascade[static_cast<std::size_t>(k)].adjoint() * v0.conjugate();
  }
  anchor_[static_cast<std::size_t>(k_users)] =
      problem.eve_estimate - problem.eve_cascade.adjoint() * v0.conjugate();
}

void SampledObjective::set_precoder(const Eigen::MatrixXcd& precoder) {
  precoder_ = precoder;
  const int k_users = prob_->users();
  const std::size_t n_recv = static_cast<std::size_t>(k_users) + 1;
  beam_mix_.resize(n_recv);
  for (int k = 0; k < k_users; ++k) {
    beam_mix_[static_cast<std::size_t>(k)] =
        prob_->user_cascade[static_cast<std::size_t>(k)] * precoder_;
  }
  beam_mix_[static_cast<std::size_t>(k_users)] = prob_->eve_cascade * precoder_;

  sample_bias_.assign(samples_.size(), Eigen::MatrixXcd(n_recv, k_users));
  for (std::size_t s = 0; s < samples_.size(); ++s) {
    for (std::size_t j = 0; j < n_recv; ++j) {
      const Eigen::VectorXcd& err = (j < static_cast<std::size_t>(k_users))
                                        ? samples_[s].user_error[j]
                                        : samples_[s].eve_error;
      sample_bias_[s].row(static_cast<Eigen::Index>(j)) =
          (anchor_[j] + err).adjoint() * precoder_;
    }
  }
  nominal_bias_.resize(static_cast<Eigen::Index>(n_recv), k_users);
  for (std::size_t j = 0; j < n_recv; ++j) {
    nominal_bias_.row(static_cast<Eigen::Index>(j)) = anchor_[j].adjoint() * precoder_;
  }
}

Eigen::VectorXcd SampledObjective::estimate_at(int receiver,
                                               const Eigen::VectorXd& phases) const {
  const int k_users = prob_->users();
  Eigen::VectorXcd v = unit_reflection(phases);
  const Eigen::MatrixXcd& cascade =
      (receiver < k_users) ? prob_->user_cascade[static_cast<std::size_t>(receiver)]
                           : prob_->eve_cascade;
  return anchor_[static_cast<std::size_t>(receiver)] + cascade.adjoint() * v.conjugate();
}

namespace {

// Base inner products: row j, column m holds sum_n v_n (C_j W)(n, m).
Eigen::MatrixXcd base_sums(const std::vector<Eigen::MatrixXcd>& beam_mix,
                           const Eigen::VectorXcd& v) {
  const auto n_recv = static_cast<Eigen::Index>(beam_mix.size());
  const Eigen::Index k_streams = beam_mix.empty() ? 0 : beam_mix[0].cols();
  Eigen::MatrixXcd base(n_recv, k_streams);
  for (Eigen::Index j = 0; j < n_recv; ++j) {
    base.row(j) = (beam_mix[static_cast<std::size_t>(j)].transpose() * v).transpose();
  }
  return base;
}

}  // namespace

std::vector<double> SampledObjective::sample_sse(const Eigen::VectorXd& phases) const {
  Eigen::VectorXcd v = unit_reflection(phases);
  Eigen::MatrixXcd base = base_sums(beam_mix_, v);
  std::vector<double> out(samples_.size());
  for (std::size_t s = 0; s < samples_.size(); ++s) {
    Eigen::MatrixXd p = (base + sample_bias_[s]).cwiseAbs2();
    out[s] = evaluate_sse(p, *prob_, nullptr).exact;
  }
  return out;
}

double SampledObjective::aggregate(const std::vector<double>& sample_sse) const {
  if (prob_->objective == ObjectiveMode::mean) {
    double sum = 0.0;
    for (double r : sample_sse) sum += r;
    return sum / static_cast<double>(sample_sse.size());
  }
  return cvar(sample_sse, prob_->alpha);
}

double SampledObjective::objective(const Eigen::VectorXd& phases) const {
  return aggregate(sample_sse(phases));
}

double SampledObjective::smoothed_objective(const Eigen::VectorXd& phases,
                                            double tau) const {
  Eigen::VectorXcd v = unit_reflection(phases);
  Eigen::MatrixXcd base = base_sums(beam_mix_, v);
  const double sharp = prob_->softplus_sharpness;
  const auto count = static_cast<double>(samples_.size());
  double acc = 0.0;
  for (std::size_t s = 0; s < samples_.size(); ++s) {
    Eigen::MatrixXd p = (base + sample_bias_[s]).cwiseAbs2();
    double smoothed = evaluate_sse(p, *prob_, nullptr).smoothed;
    if (prob_->objective == ObjectiveMode::mean) {
      acc += smoothed / count;
    } else {
      acc += softplus(tau - smoothed, sharp);
    }
  }
  if (prob_->objective == ObjectiveMode::mean) return acc;
  return tau - acc / (prob_->alpha * count);
}

Eigen::VectorXd SampledObjective::phase_gradient(const Eigen::VectorXd& phases,
                                                 double tau) const {
  const int k_users = prob_->users();
  const auto n_recv = static_cast<Eigen::Index>(k_users) + 1;
  const auto n_ris = static_cast<Eigen::Index>(prob_->ris_elements());
  const double sharp = prob_->softplus_sharpness;
  const auto count = static_cast<double>(samples_.size());

  Eigen::VectorXcd v = unit_reflection(phases);
  Eigen::MatrixXcd base = base_sums(beam_mix_, v);

  // Accumulate per-(receiver, stream) complex coefficients over samples; the
  // reflection-side factors are sample-independent so the expensive length-N_R
  // combination happens once per (receiver, stream).
  Eigen::MatrixXcd coeff = Eigen::MatrixXcd::Zero(n_recv, k_users);
  Eigen::MatrixXd weights;
  for (std::size_t s = 0; s < samples_.size(); ++s) {
    Eigen::MatrixXcd t = base + sample_bias_[s];
    Eigen::MatrixXd p = t.cwiseAbs2();
    SseEval eval = evaluate_sse(p, *prob_, &weights);
    double q = (prob_->objective == ObjectiveMode::mean)
                   ? 1.0 / count
                   : logistic(tau - eval.smoothed, sharp) / (prob_->alpha * count);
    coeff += q * weights.cast<std::complex<double>>().cwiseProduct(t);
  }

  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(n_ris);
  for (Eigen::Index j = 0; j < n_recv; ++j) {
    for (Eigen::Index m = 0; m < k_users; ++m) {
      acc += coeff(j, m) * beam_mix_[static_cast<std::size_t>(j)].col(m).conjugate();
    }
  }
  Eigen::VectorXd grad(n_ris);
  for (Eigen::Index n = 0; n < n_ris; ++n) {
    grad(n) = 2.0 * std::imag(acc(n) * std::conj(v(n)));
  }
  return grad;
}

double SampledObjective::nominal_sse(const Eigen::VectorXd& phases) const {
  Eigen::VectorXcd v = unit_reflection(phases);
  Eigen::MatrixXcd base = base_sums(beam_mix_, v);
  Eigen::MatrixXd p = (base + nominal_bias_).cwiseAbs2();
  return evaluate_sse(p, *prob_, nullptr).exact;
}

namespace {

Eigen::VectorXcd isotropic_error(double scale, Eigen::Index dim, Rng& rng) {
  Eigen::VectorXcd z(dim);
  for (Eigen::Index i = 0; i < dim; ++i) z(i) = rng.cnormal();
  return (scale / std::sqrt(static_cast<double>(dim))) * z;
}

void project_to_ball(Eigen::VectorXcd& x, double radius) {
  double n = x.norm();
  if (n > radius && n > 0.0) x *= radius / n;
}

// Channel estimates at an arbitrary reflection, zero perturbation.
struct EstimateSnapshot {
  std::vector<Eigen::VectorXcd> user;
  Eigen::VectorXcd eve;
};

EstimateSnapshot estimates_at(const SlotProblem& prob,
                              const Eigen::VectorXd& phases) {
  Eigen::VectorXcd dv =
      unit_reflection(phases).conjugate() - unit_reflection(prob.ref_phases).conjugate();
  EstimateSnapshot snap;
  snap.user.resize(prob.user_estimate.size());
  for (std::size_t k = 0; k < prob.user_estimate.size(); ++k) {
    snap.user[k] = prob.user_estimate[k] + prob.user_cascade[k].adjoint() * dv;
  }
  snap.eve = prob.eve_estimate + prob.eve_cascade.adjoint() * dv;
  return snap;
}

}  // namespace

std::vector<UncertaintySample> adversarial_sample(const SlotProblem& problem,
                                                  const Eigen::MatrixXcd& precoder,
                                                  const Eigen::VectorXd& phases,
                                                  Rng& rng) {
  const int k_users = problem.users();
  const auto dim = static_cast<Eigen::Index>(problem.bs_antennas());
  EstimateSnapshot snap = estimates_at(problem, phases);

  std::vector<double> scale(static_cast<std::size_t>(k_users) + 1);
  std::vector<double> radius(static_cast<std::size_t>(k_users) + 1);
  for (int j = 0; j <= k_users; ++j) {
    double norm = (j < k_users) ? snap.user[static_cast<std::size_t>(j)].norm()
                                : snap.eve.norm();
    double sigma2 = (j < k_users) ? problem.sigma2_user : problem.sigma2_eve;
    scale[static_cast<std::size_t>(j)] = problem.wasserstein_radius * norm;
    radius[static_cast<std::size_t>(j)] = std::sqrt(sigma2) * norm;
  }

  std::vector<UncertaintySample> samples(static_cast<std::size_t>(problem.n_samples));
  for (auto& sample : samples) {
    sample.user_error.assign(static_cast<std::size_t>(k_users),
                             Eigen::VectorXcd::Zero(dim));
    sample.eve_error = Eigen::VectorXcd::Zero(dim);
  }

  Eigen::MatrixXd weights;
  for (int s = 1; s < problem.n_samples; ++s) {
    UncertaintySample& sample = samples[static_cast<std::size_t>(s)];
    for (int j = 0; j <= k_users; ++j) {
      // Draws follow the estimation-error law; the ascent below then spends
      // the transport budget moving each draw toward its worst case.
      Eigen::VectorXcd draw =
          isotropic_error(radius[static_cast<std::size_t>(j)], dim, rng);
      if (j < k_users) {
        sample.user_error[static_cast<std::size_t>(j)] = draw;
      } else {
        sample.eve_error = draw;
      }
    }
    for (int step = 0; step < problem.adversary_steps; ++step) {
      // Powers and smoothed-rate weights at the current perturbation.
      Eigen::MatrixXcd t(k_users + 1, k_users);
      for (int j = 0; j <= k_users; ++j) {
        Eigen::VectorXcd e =
            (j < k_users)
                ? (snap.user[static_cast<std::size_t>(j)] +
                   sample.user_error[static_cast<std::size_t>(j)])
                    .eval()
                : (snap.eve + sample.eve_error).eval();
        t.row(j) = e.adjoint() * precoder;
      }
      Eigen::MatrixXd p = t.cwiseAbs2();
      evaluate_sse(p, problem, &weights);
      for (int j = 0; j <= k_users; ++j) {
        if (j < k_users) continue;  // TEMP: no user push
        Eigen::VectorXcd grad = Eigen::VectorXcd::Zero(dim);
        for (int m = 0; m < k_users; ++m) {
          grad += weights(j, m) * std::conj(t(j, m)) * precoder.col(m);
        }
        double gn = grad.norm();
        if (gn < 1e-18) continue;
        double eta = scale[static_cast<std::size_t>(j)] /
                     std::max(1, problem.adversary_steps);
        Eigen::VectorXcd& target = (j < k_users)
                                       ? sample.user_error[static_cast<std::size_t>(j)]
                                       : sample.eve_error;
        target -= (eta / gn) * grad;
        project_to_ball(target, radius[static_cast<std::size_t>(j)]);
      }
    }
    for (int j = 0; j <= k_users; ++j) {
      Eigen::VectorXcd& target = (j < k_users)
                                     ? sample.user_error[static_cast<std::size_t>(j)]
                                     : sample.eve_error;
      project_to_ball(target, radius[static_cast<std::size_t>(j)]);
    }
  }
  return samples;
}

std::vector<UncertaintySample> isotropic_samples(const SlotProblem& problem,
                                                 Rng& rng) {
  const int k_users = problem.users();
  const auto dim = static_cast<Eigen::Index>(problem.bs_antennas());
  std::vector<UncertaintySample> samples(static_cast<std::size_t>(problem.n_samples));
  for (auto& sample : samples) {
    sample.user_error.resize(static_cast<std::size_t>(k_users));
    for (int j = 0; j <= k_users; ++j) {
      double norm = (j < k_users)
                        ? problem.user_estimate[static_cast<std::size_t>(j)].norm()
                        : problem.eve_estimate.norm();
      double sigma2 = (j < k_users) ? problem.sigma2_user : problem.sigma2_eve;
      Eigen::VectorXcd draw = isotropic_error(std::sqrt(sigma2) * norm, dim, rng);
      project_to_ball(draw, std::sqrt(sigma2) * norm);
      if (j < k_users) {
        sample.user_error[static_cast<std::size_t>(j)] = draw;
      } else {
        sample.eve_error = draw;
      }
    }
  }
  return samples;
}

Eigen::MatrixXcd mrt_precoder(const std::vector<Eigen::VectorXcd>& user_estimates,
                              const PowerLimits& limits) {
  if (user_estimates.empty()) {
    throw std::invalid_argument("mrt_precoder: no user estimates");
  }
  const auto dim = user_estimates[0].size();
  const auto k_users = static_cast<int>(user_estimates.size());
  Eigen::MatrixXcd w(dim, k_users);
  double per_user = limits.total / static_cast<double>(k_users);
  for (int k = 0; k < k_users; ++k) {
    double n = user_estimates[static_cast<std::size_t>(k)].norm();
    if (n < 1e-300) throw std::invalid_argument("mrt_precoder: degenerate channel");
    w.col(k) = std::sqrt(per_user) / n * user_estimates[static_cast<std::size_t>(k)];
  }
  return cap_precoder_power(w, limits);
}

Eigen::MatrixXcd threat_aware_mrt(const SlotProblem& problem,
                                  SampledObjective& objective,
                                  const Eigen::VectorXd& phases,
                                  const Eigen::MatrixXcd& current,
                                  bool& accepted) {
  const int k_users = problem.users();
  std::vector<Eigen::VectorXcd> users(static_cast<std::size_t>(k_users));
  double max_norm = 0.0;
  for (int k = 0; k < k_users; ++k) {
    users[static_cast<std::size_t>(k)] = objective.estimate_at(k, phases);
    max_norm = std::max(max_norm, users[static_cast<std::size_t>(k)].norm());
  }
  if (max_norm < 1e-300) {
    throw std::invalid_argument("threat_aware_mrt: degenerate channel");
  }
  Eigen::VectorXcd eve = objective.estimate_at(k_users, phases);
  double eve_norm2 = eve.squaredNorm();

  double best_objective = objective.objective(phases);
  Eigen::MatrixXcd best = current;
  accepted = false;

  double per_user = problem.power.total / static_cast<double>(k_users);
  for (double zeta : problem.zeta_grid) {
    Eigen::MatrixXcd w(users[0].size(), k_users);
    bool degenerate = false;
    for (int k = 0; k < k_users; ++k) {
      const Eigen::VectorXcd& g = users[static_cast<std::size_t>(k)];
      Eigen::VectorXcd d = g;
      if (eve_norm2 > 0.0) d -= zeta * (eve.dot(g) / eve_norm2) * eve;
      double n = d.norm();
      if (n < 1e-12 * std::max(1e-300, g.norm())) {
        degenerate = true;
        break;
      }
      w.col(k) = std::sqrt(per_user) / n * d;
    }
    if (degenerate) continue;
    w = cap_precoder_power(w, problem.power);
    objective.set_precoder(w);
    double j = objective.objective(phases);
    if (j > best_objective) {
      best_objective = j;
      best = w;
      accepted = true;
    }
  }
  objective.set_precoder(best);
  return best;
}

RisStepResult ris_wirtinger_step(const SlotProblem& problem,
                                 SampledObjective& objective,
                                 const Eigen::VectorXd& phases, double tau) {
  RisStepResult result;
  result.phases = phases;

  Eigen::VectorXd grad = objective.phase_gradient(phases, tau);
  double gmax = grad.cwiseAbs().maxCoeff();
  if (gmax < 1e-14) return result;

  const double j_current = objective.objective(phases);
  const double j_floor =
      j_current + problem.ris_accept_margin * (std::abs(j_current) + 1e-9);
  double step = problem.ris_step_scale * std::numbers::pi / gmax;
  // Backtracking on the projected point: the codebook is coarse enough that
  // testing the continuous point first would reject every step whose
  // projection actually moves, so each halving level is quantized and judged
  // on the true discrete objective directly.
  Eigen::VectorXd projected(phases.size());
  for (int it = 0; it < problem.backtrack_limit; ++it) {
    Eigen::VectorXd relaxed = phases + step * grad;
    bool moved = false;
    for (Eigen::Index n = 0; n < phases.size(); ++n) {
      projected(n) = quantize_phase(relaxed(n), problem.codebook);
      if (projected(n) != phases(n)) moved = true;
    }
    if (moved && objective.objective(projected) > j_floor) {
      result.phases = projected;
      result.accepted = true;
      result.step = step;
      return result;
    }
    step *= 0.5;
  }
  return result;
}

SlotOutcome solve_slot(const SlotProblem& problem,
                       const Eigen::MatrixXcd& warm_precoder,
                       const Eigen::VectorXd& warm_phases, Rng& rng) {
  const auto start = std::chrono::steady_clock::now();
  const int k_users = problem.users();
  const auto n_ris = static_cast<Eigen::Index>(problem.ris_elements());

  if (warm_phases.size() != n_ris) {
    throw std::invalid_argument("solve_slot: infeasible warm start (phase count)");
  }
  for (Eigen::Index n = 0; n < n_ris; ++n) {
    if (!in_codebook(warm_phases(n), problem.codebook)) {
      throw std::invalid_argument("solve_slot: infeasible warm start (phase set)");
    }
  }
  Eigen::MatrixXcd w0 = warm_precoder;
  if (w0.size() == 0) {
    w0 = mrt_precoder(problem.user_estimate, problem.power);
  } else {
    if (w0.rows() != problem.bs_antennas() || w0.cols() != k_users ||
        !precoder_feasible(w0, problem.power)) {
      throw std::invalid_argument("solve_slot: infeasible warm start (precoder)");
    }
  }

  std::vector<UncertaintySample> samples =
      problem.adversarial ? adversarial_sample(problem, w0, warm_phases, rng)
                          : (problem.n_samples > 1
                                 ? isotropic_samples(problem, rng)
                                 : std::vector<UncertaintySample>{UncertaintySample{
                                       std::vector<Eigen::VectorXcd>(
                                           static_cast<std::size_t>(k_users),
                                           Eigen::VectorXcd::Zero(problem.bs_antennas())),
                                       Eigen::VectorXcd::Zero(problem.bs_antennas())}});

  SampledObjective objective(problem, samples);
  objective.set_precoder(w0);

  Eigen::VectorXd phases = warm_phases;
  std::vector<double> rates = objective.sample_sse(phases);
  EpigraphState epigraph = epigraph_update(rates, problem.alpha);
  double j = objective.aggregate(rates);

  SlotOutcome out;
  out.trace.objective.push_back(j);

  for (int it = 0; it < problem.max_iterations; ++it) {
    bool w_accepted = false;
    threat_aware_mrt(problem, objective, phases, objective.precoder(), w_accepted);

    RisStepResult ris = ris_wirtinger_step(problem, objective, phases, epigraph.tau);
    phases = ris.phases;

    rates = objective.sample_sse(phases);
    epigraph = epigraph_update(rates, problem.alpha);
    double j_next = objective.aggregate(rates);

    out.trace.objective.push_back(j_next);
    out.trace.precoder_accepted.push_back(w_accepted ? 1 : 0);
    out.trace.ris_accepted.push_back(ris.accepted ? 1 : 0);
    out.trace.ris_step.push_back(ris.accepted ? ris.step : 0.0);
    out.trace.iterations = it + 1;

    bool converged = std::abs(j_next - j) < problem.tolerance;
    j = j_next;
    if (converged) break;
  }

  out.precoder = objective.precoder();
  out.phases = phases;
  out.reflection = Eigen::VectorXcd(n_ris);
  for (Eigen::Index n = 0; n < n_ris; ++n) {
    out.reflection(n) = std::polar(1.0, phases(n));
  }
  out.objective = j;
  out.nominal_sse = objective.nominal_sse(phases);
  double worst = rates.empty() ? 0.0 : rates[0];
  for (double r : rates) worst = std::min(worst, r);
  out.worst_sample_sse = worst;
  out.samples = std::move(samples);
  out.solve_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return out;
}

}  // namespace aris
