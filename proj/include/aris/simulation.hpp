#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "aris/beamformer.hpp"
#include "aris/channel.hpp"
#include "aris/config.hpp"
#include "aris/geometry.hpp"
#include "aris/impairments.hpp"
#include "aris/rng.hpp"

namespace aris {

// Initial node placement for one trial.
struct Layout {
  Position3 bs;
  std::vector<MobilityState> users;
  MobilityState eve;
};

// Users are placed in the configured sector and range, rejection-sampled
// into the area box; the eavesdropper starts at a random planar offset from
// the user centroid. Initial velocities point along a random heading at the
// mean speed.
Layout init_layout(const SystemConfig& config, std::uint64_t master_seed,
                   std::uint64_t trial);

// One slot's controller-independent draws: true channels at the current node
// positions, the reflection hardware noise, and the shared scale-free CSI
// error states.
struct SlotEnvironment {
  std::uint64_t slot = 0;
  ChannelSet channels;
  ReflectionNoise reflection;
  std::vector<CsiErrorState> user_csi;
  CsiErrorState eve_csi;
};

// Per-trial environment process. Every draw is keyed by (master seed, trial,
// slot), never by call order or thread placement, so two environments with
// equal keys replay identical slot sequences. Controllers compared within a
// trial therefore face the same disturbances even when their access patterns
// differ.
class Environment {
 public:
  Environment(const SystemConfig& config, std::uint64_t master_seed,
              std::uint64_t trial, const Position3& ris_position);

  const Layout& layout() const { return layout_; }
  const Position3& ris() const { return ris_; }
  std::uint64_t slots_stepped() const { return slot_; }

  // Advances mobility and CSI state by one slot and draws its realization.
  SlotEnvironment step();

 private:
  const SystemConfig* cfg_;
  std::uint64_t master_;
  std::uint64_t trial_;
  std::uint64_t slot_ = 0;
  Position3 ris_;
  Layout layout_;
  std::vector<CsiErrorState> user_csi_;
  CsiErrorState eve_csi_;
};

// Cascaded-channel knowledge available to the transmitter at a reference
// reflection: erroneous vector estimates plus the exact reflection-to-channel
// maps used for phase derivatives.
struct EstimateSet {
  std::vector<Eigen::VectorXcd> user_estimate;
  Eigen::VectorXcd eve_estimate;
  std::vector<Eigen::MatrixXcd> user_cascade;
  Eigen::MatrixXcd eve_cascade;
};

EstimateSet estimate_channels(const SlotEnvironment& env,
                              const Eigen::VectorXd& ref_phases,
                              const SystemConfig& config);

// Assembles one slot's optimization input from the environment draw and the
// controller's reference reflection (normally its previous commanded phases).
SlotProblem make_slot_problem(const SlotEnvironment& env,
                              const Eigen::VectorXd& ref_phases,
                              const SystemConfig& config);

// What actually happens on air for a commanded configuration: hardware noise
// perturbs the reflection, receivers see the true channels with transceiver
// distortion, and the per-user secrecy rate is scored.
struct RealizedSlot {
  double sse = 0.0;
  std::vector<double> user_sinr;  // own-stream SINR per user
  std::vector<double> eve_sinr;   // eavesdropper SINR per user stream
  ReflectionState reflection;
};

RealizedSlot realize_slot(const SlotEnvironment& env,
                          const Eigen::MatrixXcd& precoder,
                          const Eigen::VectorXd& commanded_phases,
                          const SystemConfig& config);

}  // namespace aris
