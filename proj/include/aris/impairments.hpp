#pragma once

#include <Eigen/Dense>

#include "aris/rng.hpp"

namespace aris {

// Discrete phase set {2*pi*m / 2^bits}.
struct RisCodebook {
  int bits = 2;

  int size() const { return 1 << bits; }
  double phase(int index) const;
  double step() const;
};

// Nearest codebook phase by circular distance; ties go to the smaller index.
double quantize_phase(double phase, const RisCodebook& codebook);
int quantize_index(double phase, const RisCodebook& codebook);

// True when the phase coincides with a codebook entry (within tol).
bool in_codebook(double phase, const RisCodebook& codebook, double tol = 1e-9);

struct RisImpairmentParams {
  double jitter_concentration = 5.0;  // von Mises kappa; 0 gives uniform jitter
  double extra_phase_std = 0.3;       // rad, independent wrapped-Gaussian term
  double beta_min = 0.4;              // amplitude floor of the phase-amplitude curve
  double beta_max = 0.8;
  double amp_shape = 1.6;             // curve exponent
  double amp_phase_offset = -1.5707963267948966;  // curve minimum location
  double amp_error_std = 0.15;
  bool common_mode_jitter = false;    // one shared jitter draw per slot
};

// Sampled via the Best-Fisher rejection method; concentration 0 degenerates
// to the uniform distribution on (-pi, pi].
double sample_von_mises(double mean, double concentration, Rng& rng);

// Phase-dependent reflection amplitude beta(phase), in [beta_min, beta_max].
double pda_amplitude(double phase, const RisImpairmentParams& params);

// One slot's hardware randomness, drawn independently of the commanded phases
// so competing controllers can be scored against identical disturbances.
struct ReflectionNoise {
  Eigen::VectorXd phase;      // von Mises jitter plus extra phase noise
  Eigen::VectorXd amplitude;  // additive amplitude error
};

ReflectionNoise draw_reflection_noise(int n_elements,
                                      const RisImpairmentParams& params,
                                      Rng& rng);

struct ReflectionState {
  Eigen::VectorXd intended_phases;  // each in the codebook
  Eigen::VectorXcd intended;        // unit-modulus e^{j phase}
  Eigen::VectorXcd realized;        // impaired coefficients, |entry| <= 1
};

// Applies a fixed noise draw to commanded phases: realized phase is the sum,
// realized amplitude is beta(realized phase) plus the amplitude error,
// clamped to [0, 1]. Throws if any commanded phase is outside the codebook.
ReflectionState apply_reflection_noise(const Eigen::VectorXd& intended_phases,
                                       const ReflectionNoise& noise,
                                       const RisImpairmentParams& params,
                                       const RisCodebook& codebook);

// Convenience wrapper: draw noise and apply it in one call.
ReflectionState realize_reflection(const Eigen::VectorXd& intended_phases,
                                   const RisImpairmentParams& params,
                                   const RisCodebook& codebook, Rng& rng);

struct CsiErrorParams {
  double var_user = 0.10;    // squared error radius, fraction of ||g||^2
  double var_eve = 0.12;
  double var_bs_ris = 0.05;  // folded into both cascaded radii
  double correlation = 0.75; // slot-to-slot error correlation
  double fresh_fill = 0.8;   // stationary error norm as a fraction of the radius

  // Cascaded-channel radii absorb the BS-RIS term in root-sum-square fashion.
  double effective_var_user() const { return var_user + var_bs_ris; }
  double effective_var_eve() const { return var_eve + var_bs_ris; }
};

// Scale-free autoregressive error state, one per receiver. The state evolves
// independently of channel magnitudes so the identical disturbance process
// can be replayed against different reflection configurations.
struct CsiErrorState {
  Eigen::VectorXcd state;  // empty until the first advance
};

// One AR step: state' = rho*state + sqrt(1-rho^2)*fresh, with the fresh draw
// sized so the stationary norm is fresh_fill (relative units).
void advance_csi_state(CsiErrorState& state, int dim,
                       const CsiErrorParams& params, Rng& rng);

struct CsiEstimate {
  Eigen::VectorXcd estimate;
  Eigen::VectorXcd error;  // true channel minus estimate
};

// Maps the current state onto a concrete channel: the error is the state
// scaled to the ball of squared radius error_var*||g||^2 (hard projection).
CsiEstimate apply_csi_error(const CsiErrorState& state,
                            const Eigen::VectorXcd& true_channel,
                            double error_var);

// Advance-and-apply in one call.
CsiEstimate estimate_csi(const Eigen::VectorXcd& true_channel, double error_var,
                         const CsiErrorParams& params, CsiErrorState& state,
                         Rng& rng);

// Additive distortion variance for a given incident signal power.
inline double evm_distortion(double signal_power, double evm) {
  return evm * evm * signal_power;
}

// Aggregate transmit+receive distortion coefficient (variance per unit power).
inline double evm_noise_coeff(double evm_tx, double evm_rx) {
  return evm_tx * evm_tx + evm_rx * evm_rx;
}

}  // namespace aris
