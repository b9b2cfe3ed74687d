#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "aris/geometry.hpp"
#include "aris/rng.hpp"

namespace aris {

enum class LinkId { bs_ris, ris_user, ris_eve };

struct LinkParams {
  LinkId link = LinkId::bs_ris;
  double ricean_factor = 10.0;      // linear
  double path_loss_exponent = 2.5;
  double reference_gain = 1.0;      // linear power gain at 1 m
};

// Large-scale power gain C0 * d^{-alpha}. Throws on non-positive distance.
double path_loss(double distance_m, const LinkParams& link);

// Free-space power gain at 1 m reference distance, (c / (4 pi f))^2.
double free_space_reference_gain(double carrier_hz);

// Everything needed to synthesize one slot's links.
struct ChannelGeometry {
  Position3 bs;
  Position3 ris;
  std::vector<Position3> users;
  Position3 eve;
  ArrayGeometry bs_array;   // ULA
  ArrayGeometry ris_array;  // UPA
};

struct ChannelModel {
  LinkParams bs_ris{LinkId::bs_ris, 10.0, 2.5, 1.0};
  LinkParams ris_user{LinkId::ris_user, 1.9953, 3.5, 1.0};
  LinkParams ris_eve{LinkId::ris_eve, 3.1623, 3.2, 1.0};
};

// One slot's true links. Dominant components are stored unscaled so callers
// can build phase-aligned RIS probes without re-deriving the geometry.
struct ChannelSet {
  Eigen::MatrixXcd bs_ris;                  // N_R x N
  std::vector<Eigen::VectorXcd> ris_user;   // K vectors of length N_R
  Eigen::VectorXcd ris_eve;                 // N_R
  Eigen::MatrixXcd bs_ris_los;              // rank-one dominant component
  std::vector<Eigen::VectorXcd> ris_user_los;
  Eigen::VectorXcd ris_eve_los;
  double loss_bs_ris = 1.0;
  std::vector<double> loss_user;
  double loss_eve = 1.0;
};

// Synthesizes all links for one slot. Each link mixes a deterministic
// dominant component (weight sqrt(k/(k+1))) with an i.i.d. complex-Gaussian
// diffuse part (weight sqrt(1/(k+1))), scaled by the root path loss. Dominant
// parts use entry-unit-modulus outer products so the expected squared
// Frobenius norm equals path loss times the element count product.
ChannelSet draw_channels(const ChannelGeometry& geometry,
                         const ChannelModel& model, Rng& rng);

// Receiver selector for cascaded-channel queries: 0..K-1 are users.
inline constexpr int kEveTarget = -1;

// Effective BS-side channel through the reflection: returns g such that
// g^H = h^H diag(reflection) H, a column vector of length N.
Eigen::VectorXcd cascaded_channel(const ChannelSet& channels,
                                  const Eigen::VectorXcd& reflection,
                                  int target);

// Cascade matrix C = diag(conj(h)) H, size N_R x N, so that the cascaded
// channel is g = C^H conj(reflection) for any reflection vector.
Eigen::MatrixXcd cascade_matrix(const ChannelSet& channels, int target);

// Binary regression dump of drawn channel sets (interleaved re/im doubles,
// little-endian). load throws std::runtime_error on malformed files.
void dump_channel_trace(const std::string& path,
                        const std::vector<ChannelSet>& trace);
std::vector<ChannelSet> load_channel_trace(const std::string& path);

}  // namespace aris
