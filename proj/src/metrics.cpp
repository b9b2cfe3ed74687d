#include "aris/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aris {

bool precoder_feasible(const Eigen::MatrixXcd& precoder,
                       const PowerLimits& limits, double tol) {
  if (precoder.squaredNorm() > limits.total + tol) return false;
  for (int r = 0; r < precoder.rows(); ++r) {
    if (precoder.row(r).squaredNorm() > limits.per_antenna + tol) return false;
  }
  return true;
}

Eigen::MatrixXcd cap_precoder_power(const Eigen::MatrixXcd& precoder,
                                    const PowerLimits& limits) {
  double total = precoder.squaredNorm();
  double scale2 = 1.0;
  if (total > limits.total && total > 0.0) scale2 = limits.total / total;
  double max_row = 0.0;
  for (int r = 0; r < precoder.rows(); ++r) {
    max_row = std::max(max_row, precoder.row(r).squaredNorm());
  }
  if (max_row * scale2 > limits.per_antenna && max_row > 0.0) {
    scale2 = limits.per_antenna / max_row;
  }
  return precoder * std::sqrt(std::min(1.0, scale2));
}

double sinr(const Eigen::VectorXcd& channel, const Eigen::MatrixXcd& precoder,
            int stream, double noise_var, double distortion_coeff) {
  if (noise_var <= 0.0) {
    throw std::invalid_argument("sinr: noise variance must be positive");
  }
  if (stream < 0 || stream >= precoder.cols()) {
    throw std::invalid_argument("sinr: stream index out of range");
  }
  double signal = 0.0;
  double incident = 0.0;
  for (int m = 0; m < precoder.cols(); ++m) {
    double p = std::norm(channel.dot(precoder.col(m)));
    incident += p;
    if (m == stream) signal = p;
  }
  double denom = (incident - signal) + distortion_coeff * incident + noise_var;
  return signal / denom;
}

std::vector<double> receiver_sinrs(const Eigen::VectorXcd& channel,
                                   const Eigen::MatrixXcd& precoder,
                                   double noise_var, double distortion_coeff) {
  std::vector<double> out(static_cast<std::size_t>(precoder.cols()));
  for (int m = 0; m < precoder.cols(); ++m) {
    out[static_cast<std::size_t>(m)] =
        sinr(channel, precoder, m, noise_var, distortion_coeff);
  }
  return out;
}

double secrecy_sse(const std::vector<double>& user_sinrs,
                   const std::vector<double>& eve_sinrs) {
  if (user_sinrs.size() != eve_sinrs.size()) {
    throw std::invalid_argument("secrecy_sse: per-user SINR lists must match");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < user_sinrs.size(); ++k) {
    double delta = std::log2(1.0 + user_sinrs[k]) - std::log2(1.0 + eve_sinrs[k]);
    sum += std::max(0.0, delta);
  }
  return sum;
}

double worst_case_sse(const Eigen::MatrixXcd& precoder,
                      const std::vector<Eigen::VectorXcd>& user_estimates,
                      const Eigen::VectorXcd& eve_estimate,
                      const std::vector<UncertaintySample>& samples,
                      double noise_var, double distortion_coeff) {
  if (samples.empty()) {
    throw std::invalid_argument("worst_case_sse: empty sample set");
  }
  const std::size_t k_users = user_estimates.size();
  double worst = 1e300;
  for (const UncertaintySample& sample : samples) {
    if (sample.user_error.size() != k_users) {
      throw std::invalid_argument("worst_case_sse: sample user count mismatch");
    }
    std::vector<double> user_s(k_users), eve_s(k_users);
    Eigen::VectorXcd eve = eve_estimate + sample.eve_error;
    for (std::size_t k = 0; k < k_users; ++k) {
      Eigen::VectorXcd g = user_estimates[k] + sample.user_error[k];
      int stream = static_cast<int>(k);
      user_s[k] = sinr(g, precoder, stream, noise_var, distortion_coeff);
      eve_s[k] = sinr(eve, precoder, stream, noise_var, distortion_coeff);
    }
    worst = std::min(worst, secrecy_sse(user_s, eve_s));
  }
  return worst;
}

namespace {

// Count of tail samples m = ceil(alpha*L), guarded against the exact-integer
// boundary drifting up from rounding.
std::size_t tail_count(std::size_t n, double alpha) {
  double x = alpha * static_cast<double>(n);
  auto m = static_cast<std::size_t>(std::ceil(x - 1e-12));
  if (m < 1) m = 1;
  if (m > n) m = n;
  return m;
}

void check_cvar_args(const std::vector<double>& samples, double alpha) {
  if (samples.empty()) throw std::invalid_argument("cvar: empty sample set");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("cvar: risk level must lie in (0, 1)");
  }
}

}  // namespace

double cvar(const std::vector<double>& samples, double alpha) {
  check_cvar_args(samples, alpha);
  std::vector<double> sorted(samples);
  std::sort(sorted.begin(), sorted.end());
  const double al = alpha * static_cast<double>(sorted.size());
  const std::size_t m = tail_count(sorted.size(), alpha);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) acc += sorted[i];
  acc += (al - static_cast<double>(m - 1)) * sorted[m - 1];
  return acc / al;
}

double lower_quantile(const std::vector<double>& samples, double alpha) {
  check_cvar_args(samples, alpha);
  std::vector<double> sorted(samples);
  std::sort(sorted.begin(), sorted.end());
  return sorted[tail_count(sorted.size(), alpha) - 1];
}

double percentile(std::vector<double> samples, double q) {
  if (samples.empty()) throw std::invalid_argument("percentile: empty sample set");
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("percentile: q must lie in [0, 1]");
  }
  std::sort(samples.begin(), samples.end());
  double rank = q * static_cast<double>(samples.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(rank));
  auto hi = static_cast<std::size_t>(std::ceil(rank));
  double frac = rank - static_cast<double>(lo);
  return samples[lo] + frac * (samples[hi] - samples[lo]);
}

SummaryStats summary_stats(const std::vector<double>& samples, double alpha,
                           double outage_threshold) {
  if (samples.size() < 2) {
    throw std::invalid_argument("summary_stats: need at least two samples");
  }
  SummaryStats s;
  s.count = samples.size();
  double sum = 0.0;
  std::size_t below = 0;
  for (double x : samples) {
    sum += x;
    if (x < outage_threshold) ++below;
  }
  s.mean = sum / static_cast<double>(samples.size());
  double var = 0.0;
  for (double x : samples) var += (x - s.mean) * (x - s.mean);
  s.std_dev = std::sqrt(var / static_cast<double>(samples.size()));
  if (s.mean == 0.0) {
    throw std::invalid_argument("summary_stats: CV undefined for zero mean");
  }
  s.cv = s.std_dev / s.mean;
  s.p10 = percentile(samples, 0.10);
  s.p20 = percentile(samples, 0.20);
  s.p50 = percentile(samples, 0.50);
  s.cvar = cvar(samples, alpha);
  s.outage = static_cast<double>(below) / static_cast<double>(samples.size());
  return s;
}

}  // namespace aris
