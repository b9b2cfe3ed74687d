#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace aris {

struct PowerLimits {
  double total = 2.0;        // W, Frobenius budget
  double per_antenna = 0.1;  // W, per-row budget
};

bool precoder_feasible(const Eigen::MatrixXcd& precoder,
                       const PowerLimits& limits, double tol = 1e-9);

// Scales the whole precoder down (never up) until both power limits hold.
Eigen::MatrixXcd cap_precoder_power(const Eigen::MatrixXcd& precoder,
                                    const PowerLimits& limits);

// SINR of one stream at a receiver with effective channel g:
//   |g^H w_k|^2 / (inter-stream power + distortion_coeff*incident + noise).
// distortion_coeff is the aggregate transceiver distortion variance per unit
// incident signal power.
double sinr(const Eigen::VectorXcd& channel, const Eigen::MatrixXcd& precoder,
            int stream, double noise_var, double distortion_coeff = 0.0);

// SINR of every stream at one receiver.
std::vector<double> receiver_sinrs(const Eigen::VectorXcd& channel,
                                   const Eigen::MatrixXcd& precoder,
                                   double noise_var,
                                   double distortion_coeff = 0.0);

// Sum over users of the clipped per-user rate difference, bit/s/Hz.
double secrecy_sse(const std::vector<double>& user_sinrs,
                   const std::vector<double>& eve_sinrs);

// One draw of cascaded-channel errors, one vector per receiver.
struct UncertaintySample {
  std::vector<Eigen::VectorXcd> user_error;
  Eigen::VectorXcd eve_error;
};

// Smallest secrecy SSE over the sample set, evaluated at perturbed channels
// (estimate plus error). Throws on an empty sample set.
double worst_case_sse(const Eigen::MatrixXcd& precoder,
                      const std::vector<Eigen::VectorXcd>& user_estimates,
                      const Eigen::VectorXcd& eve_estimate,
                      const std::vector<UncertaintySample>& samples,
                      double noise_var, double distortion_coeff = 0.0);

// Mean of the worst alpha-fraction of the samples, with fractional weighting
// of the boundary order statistic:
//   cvar = [sum_{i<m} x_(i) + (alpha*L - m + 1)*x_(m)] / (alpha*L),
// where m = ceil(alpha*L). Equals the maximizer value of
// max_tau { tau - mean([tau - x]^+) / alpha }.
double cvar(const std::vector<double>& samples, double alpha);

// Empirical alpha-quantile used by the epigraph update: the m-th smallest
// sample with m = ceil(alpha*L).
double lower_quantile(const std::vector<double>& samples, double alpha);

// Linear interpolation between order statistics (rank = q*(n-1)).
double percentile(std::vector<double> samples, double q);

struct SummaryStats {
  double mean = 0.0;
  double std_dev = 0.0;  // population convention
  double cv = 0.0;
  double p10 = 0.0;
  double p20 = 0.0;
  double p50 = 0.0;
  double cvar = 0.0;
  double outage = 0.0;  // fraction strictly below the threshold
  std::size_t count = 0;
};

// Throws on fewer than two samples or on zero mean (CV undefined).
SummaryStats summary_stats(const std::vector<double>& samples, double alpha,
                           double outage_threshold);

}  // namespace aris
