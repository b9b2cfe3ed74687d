#include "aris/simulation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "aris/metrics.hpp"

namespace aris {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

Eigen::VectorXcd unit_reflection(const Eigen::VectorXd& phases) {
  Eigen::VectorXcd v(phases.size());
  for (Eigen::Index n = 0; n < phases.size(); ++n) v(n) = std::polar(1.0, phases(n));
  return v;
}

Position3 sample_user_position(const LayoutConfig& layout, Rng& rng) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    double theta = rng.uniform(layout.sector_min_deg, layout.sector_max_deg) * kDegToRad;
    double range = rng.uniform(layout.user_range_min, layout.user_range_max);
    double x = layout.bs.x + range * std::cos(theta);
    double y = layout.bs.y + range * std::sin(theta);
    if (layout.area.contains(x, y)) return {x, y, 0.0};
  }
  throw std::runtime_error("init_layout: user sector does not intersect the area");
}

MobilityState make_mobile(const Position3& position, const MobilityConfig& mobility,
                          Rng& rng) {
  MobilityState state;
  state.position = position;
  double heading = rng.uniform(0.0, 2.0 * std::numbers::pi);
  state.mean_velocity =
      mobility.mean_speed * Eigen::Vector2d(std::cos(heading), std::sin(heading));
  state.velocity = state.mean_velocity;
  state.memory = mobility.memory;
  state.noise_std = mobility.noise_std;
  return state;
}

}  // namespace

Layout init_layout(const SystemConfig& config, std::uint64_t master_seed,
                   std::uint64_t trial) {
  Rng rng(derive_seed(master_seed, StreamId::layout, trial));
  const LayoutConfig& lc = config.layout;

  Layout out;
  out.bs = lc.bs;
  out.users.reserve(static_cast<std::size_t>(lc.users));
  double cx = 0.0;
  double cy = 0.0;
  for (int k = 0; k < lc.users; ++k) {
    Position3 p = sample_user_position(lc, rng);
    cx += p.x;
    cy += p.y;
    out.users.push_back(make_mobile(p, config.mobility, rng));
  }
  cx /= std::max(1, lc.users);
  cy /= std::max(1, lc.users);

  Position3 eve_pos{cx, cy, 0.0};
  for (int attempt = 0; attempt < 10000; ++attempt) {
    double psi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    double offset = rng.uniform(lc.eve_offset_min, lc.eve_offset_max);
    double x = cx + offset * std::cos(psi);
    double y = cy + offset * std::sin(psi);
    if (lc.area.contains(x, y)) {
      eve_pos = {x, y, 0.0};
      break;
    }
  }
  out.eve = make_mobile(eve_pos, config.mobility, rng);
  return out;
}

Environment::Environment(const SystemConfig& config, std::uint64_t master_seed,
                         std::uint64_t trial, const Position3& ris_position)
    : cfg_(&config),
      master_(master_seed),
      trial_(trial),
      ris_(ris_position),
      layout_(init_layout(config, master_seed, trial)),
      user_csi_(static_cast<std::size_t>(config.layout.users)) {}

SlotEnvironment Environment::step() {
  const SystemConfig& cfg = *cfg_;
  const std::uint64_t s = slot_++;

  {
    Rng rng(derive_seed(master_, StreamId::mobility, trial_, s));
    for (auto& user : layout_.users) {
      user = step_mobility(user, cfg.mobility.slot_seconds, cfg.layout.area, rng);
    }
    layout_.eve =
        step_mobility(layout_.eve, cfg.mobility.slot_seconds, cfg.layout.area, rng);
  }

  SlotEnvironment env;
  env.slot = s;

  {
    ChannelGeometry geo;
    geo.bs = layout_.bs;
    geo.ris = ris_;
    geo.users.reserve(layout_.users.size());
    for (const auto& user : layout_.users) geo.users.push_back(user.position);
    geo.eve = layout_.eve.position;
    geo.bs_array = ArrayGeometry{ArrayKind::linear, cfg.arrays.bs_antennas, 1,
                                 cfg.arrays.spacing};
    geo.ris_array = ArrayGeometry{ArrayKind::planar, cfg.arrays.ris_x,
                                  cfg.arrays.ris_y, cfg.arrays.spacing};
    Rng rng(derive_seed(master_, StreamId::channel, trial_, s));
    env.channels = draw_channels(geo, cfg.channel_model(), rng);
  }

  {
    Rng rng(derive_seed(master_, StreamId::reflection, trial_, s));
    env.reflection =
        draw_reflection_noise(cfg.arrays.ris_elements(), cfg.impairments, rng);
  }

  {
    Rng rng(derive_seed(master_, StreamId::csi, trial_, s));
    for (auto& state : user_csi_) {
      advance_csi_state(state, cfg.arrays.bs_antennas, cfg.csi, rng);
    }
    advance_csi_state(eve_csi_, cfg.arrays.bs_antennas, cfg.csi, rng);
  }
  env.user_csi = user_csi_;
  env.eve_csi = eve_csi_;
  return env;
}

EstimateSet estimate_channels(const SlotEnvironment& env,
                              const Eigen::VectorXd& ref_phases,
                              const SystemConfig& config) {
  const auto n_users = env.channels.ris_user.size();
  if (env.user_csi.size() != n_users) {
    throw std::invalid_argument("estimate_channels: CSI state count mismatch");
  }
  Eigen::VectorXcd v0 = unit_reflection(ref_phases);

  EstimateSet out;
  out.user_estimate.resize(n_users);
  out.user_cascade.resize(n_users);
  for (std::size_t k = 0; k < n_users; ++k) {
    out.user_cascade[k] = cascade_matrix(env.channels, static_cast<int>(k));
    Eigen::VectorXcd true_g = out.user_cascade[k].adjoint() * v0.conjugate();
    out.user_estimate[k] =
        apply_csi_error(env.user_csi[k], true_g, config.csi.effective_var_user())
            .estimate;
  }
  out.eve_cascade = cascade_matrix(env.channels, kEveTarget);
  Eigen::VectorXcd true_e = out.eve_cascade.adjoint() * v0.conjugate();
  out.eve_estimate =
      apply_csi_error(env.eve_csi, true_e, config.csi.effective_var_eve()).estimate;
  return out;
}

SlotProblem make_slot_problem(const SlotEnvironment& env,
                              const Eigen::VectorXd& ref_phases,
                              const SystemConfig& config) {
  EstimateSet est = estimate_channels(env, ref_phases, config);

  SlotProblem prob;
  prob.user_estimate = std::move(est.user_estimate);
  prob.eve_estimate = std::move(est.eve_estimate);
  prob.user_cascade = std::move(est.user_cascade);
  prob.eve_cascade = std::move(est.eve_cascade);
  prob.ref_phases = ref_phases;
  prob.sigma2_user = config.csi.effective_var_user();
  prob.sigma2_eve = config.csi.effective_var_eve();
  prob.noise_var = config.radio.noise_power_w();
  prob.distortion_coeff = config.radio.distortion_coeff();
  prob.power = config.power_limits();
  prob.codebook = config.codebook();
  prob.alpha = config.risk.alpha;
  prob.n_samples = config.stage2.samples;
  prob.wasserstein_radius = config.stage2.wasserstein_radius;
  prob.adversary_steps = config.stage2.adversary_steps;
  prob.zeta_grid = config.stage2.zeta_grid;
  prob.softplus_sharpness = config.stage2.softplus_sharpness;
  prob.max_iterations = config.stage2.max_iterations;
  prob.tolerance = config.stage2.tolerance;
  prob.backtrack_limit = config.stage2.backtrack_limit;
  return prob;
}

RealizedSlot realize_slot(const SlotEnvironment& env,
                          const Eigen::MatrixXcd& precoder,
                          const Eigen::VectorXd& commanded_phases,
                          const SystemConfig& config) {
  RealizedSlot out;
  out.reflection = apply_reflection_noise(commanded_phases, env.reflection,
                                          config.impairments, config.codebook());

  const double noise = config.radio.noise_power_w();
  const double coeff = config.radio.distortion_coeff();
  const auto n_users = env.channels.ris_user.size();

  out.user_sinr.resize(n_users);
  out.eve_sinr.resize(n_users);
  Eigen::VectorXcd eve_channel =
      cascaded_channel(env.channels, out.reflection.realized, kEveTarget);
  for (std::size_t k = 0; k < n_users; ++k) {
    Eigen::VectorXcd user_channel =
        cascaded_channel(env.channels, out.reflection.realized, static_cast<int>(k));
    out.user_sinr[k] =
        sinr(user_channel, precoder, static_cast<int>(k), noise, coeff);
    out.eve_sinr[k] = sinr(eve_channel, precoder, static_cast<int>(k), noise, coeff);
  }
  out.sse = secrecy_sse(out.user_sinr, out.eve_sinr);
  return out;
}

}  // namespace aris
