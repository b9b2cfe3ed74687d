#include "aris/impairments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aris {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Wraps an angle to (-pi, pi].
double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  if (a > kPi) a -= kTwoPi;
  return a;
}

// Wraps to [0, 2*pi).
double wrap_positive(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

}  // namespace

double RisCodebook::phase(int index) const {
  return kTwoPi * static_cast<double>(index) / static_cast<double>(size());
}

double RisCodebook::step() const { return kTwoPi / static_cast<double>(size()); }

int quantize_index(double phase, const RisCodebook& codebook) {
  const int n = codebook.size();
  double best_dist = 1e300;
  int best = 0;
  for (int m = 0; m < n; ++m) {
    double d = std::abs(wrap_angle(phase - codebook.phase(m)));
    // Strict inequality keeps ties at the smaller index.
    if (d < best_dist - 1e-15) {
      best_dist = d;
      best = m;
    }
  }
  return best;
}

double quantize_phase(double phase, const RisCodebook& codebook) {
  return codebook.phase(quantize_index(phase, codebook));
}

bool in_codebook(double phase, const RisCodebook& codebook, double tol) {
  double q = quantize_phase(phase, codebook);
  return std::abs(wrap_angle(phase - q)) <= tol;
}

double sample_von_mises(double mean, double concentration, Rng& rng) {
  if (concentration < 0.0) {
    throw std::invalid_argument("sample_von_mises: concentration must be >= 0");
  }
  if (concentration < 1e-12) {
    double u = rng.uniform();
    return wrap_angle(mean + kTwoPi * u - kPi);
  }
  // Best & Fisher (1979) wrapped-Cauchy envelope rejection.
  const double kappa = concentration;
  const double a = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double b = (a - std::sqrt(2.0 * a)) / (2.0 * kappa);
  const double r = (1.0 + b * b) / (2.0 * b);
  for (;;) {
    double u1 = rng.uniform();
    double z = std::cos(kPi * u1);
    double f = (1.0 + r * z) / (r + z);
    double c = kappa * (r - f);
    double u2 = rng.uniform();
    if (u2 < 1e-300) continue;
    if (c * (2.0 - c) - u2 > 0.0 || std::log(c / u2) + 1.0 - c >= 0.0) {
      double u3 = rng.uniform();
      double theta = (u3 < 0.5 ? -1.0 : 1.0) * std::acos(std::clamp(f, -1.0, 1.0));
      return wrap_angle(mean + theta);
    }
  }
}

double pda_amplitude(double phase, const RisImpairmentParams& params) {
  double s = (std::sin(phase - params.amp_phase_offset) + 1.0) / 2.0;
  return params.beta_min +
         (params.beta_max - params.beta_min) * std::pow(s, params.amp_shape);
}

ReflectionNoise draw_reflection_noise(int n_elements,
                                      const RisImpairmentParams& params,
                                      Rng& rng) {
  ReflectionNoise noise;
  noise.phase.resize(n_elements);
  noise.amplitude.resize(n_elements);
  double common = 0.0;
  if (params.common_mode_jitter) {
    common = sample_von_mises(0.0, params.jitter_concentration, rng);
  }
  for (int n = 0; n < n_elements; ++n) {
    double jitter = params.common_mode_jitter
                        ? common
                        : sample_von_mises(0.0, params.jitter_concentration, rng);
    double extra = params.extra_phase_std * rng.normal();
    noise.phase(n) = wrap_angle(jitter + extra);
    noise.amplitude(n) = params.amp_error_std * rng.normal();
  }
  return noise;
}

ReflectionState apply_reflection_noise(const Eigen::VectorXd& intended_phases,
                                       const ReflectionNoise& noise,
                                       const RisImpairmentParams& params,
                                       const RisCodebook& codebook) {
  const int n = static_cast<int>(intended_phases.size());
  if (noise.phase.size() != n || noise.amplitude.size() != n) {
    throw std::invalid_argument("apply_reflection_noise: size mismatch");
  }
  ReflectionState state;
  state.intended_phases.resize(n);
  state.intended.resize(n);
  state.realized.resize(n);
  for (int i = 0; i < n; ++i) {
    double phi_hat = intended_phases(i);
    if (!in_codebook(phi_hat, codebook)) {
      throw std::invalid_argument(
          "apply_reflection_noise: commanded phase outside the codebook");
    }
    state.intended_phases(i) = wrap_positive(phi_hat);
    state.intended(i) = std::polar(1.0, phi_hat);
    double phi = phi_hat + noise.phase(i);
    double amp = std::clamp(pda_amplitude(phi, params) + noise.amplitude(i), 0.0, 1.0);
    state.realized(i) = std::polar(amp, phi);
  }
  return state;
}

ReflectionState realize_reflection(const Eigen::VectorXd& intended_phases,
                                   const RisImpairmentParams& params,
                                   const RisCodebook& codebook, Rng& rng) {
  ReflectionNoise noise =
      draw_reflection_noise(static_cast<int>(intended_phases.size()), params, rng);
  return apply_reflection_noise(intended_phases, noise, params, codebook);
}

void advance_csi_state(CsiErrorState& state, int dim,
                       const CsiErrorParams& params, Rng& rng) {
  // Fresh draw with expected squared norm fresh_fill^2 (relative units).
  Eigen::VectorXcd fresh(dim);
  double per_entry = params.fresh_fill / std::sqrt(static_cast<double>(dim));
  for (int i = 0; i < dim; ++i) fresh(i) = per_entry * rng.cnormal();

  if (state.state.size() != dim) {
    state.state = fresh;
    return;
  }
  double rho = params.correlation;
  state.state = rho * state.state + std::sqrt(std::max(0.0, 1.0 - rho * rho)) * fresh;
}

CsiEstimate apply_csi_error(const CsiErrorState& state,
                            const Eigen::VectorXcd& true_channel,
                            double error_var) {
  if (true_channel.norm() <= 0.0) {
    throw std::invalid_argument("apply_csi_error: zero channel");
  }
  CsiEstimate out;
  if (error_var <= 0.0 || state.state.size() == 0) {
    out.estimate = true_channel;
    out.error = Eigen::VectorXcd::Zero(true_channel.size());
    return out;
  }
  if (state.state.size() != true_channel.size()) {
    throw std::invalid_argument("apply_csi_error: state dimension mismatch");
  }
  double radius = std::sqrt(error_var) * true_channel.norm();
  double n = state.state.norm();
  // Hard ball projection: scale into the radius when the state norm exceeds 1.
  double scale = radius / std::max(1.0, n);
  out.error = scale * state.state;
  out.estimate = true_channel - out.error;
  return out;
}

CsiEstimate estimate_csi(const Eigen::VectorXcd& true_channel, double error_var,
                         const CsiErrorParams& params, CsiErrorState& state,
                         Rng& rng) {
  advance_csi_state(state, static_cast<int>(true_channel.size()), params, rng);
  return apply_csi_error(state, true_channel, error_var);
}

}  // namespace aris
