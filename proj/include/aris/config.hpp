#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "aris/channel.hpp"
#include "aris/geometry.hpp"
#include "aris/impairments.hpp"
#include "aris/metrics.hpp"

namespace aris {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Missing or unreadable file.
struct ConfigFileError : ConfigError {
  using ConfigError::ConfigError;
};
// Syntactically invalid document.
struct ConfigParseError : ConfigError {
  using ConfigError::ConfigError;
};
// Well-formed document with bad values or unknown keys.
struct ConfigValidationError : ConfigError {
  using ConfigError::ConfigError;
};

struct ArrayConfig {
  int bs_antennas = 32;
  int ris_x = 8;
  int ris_y = 8;
  double spacing = 0.5;  // wavelengths

  int ris_elements() const { return ris_x * ris_y; }
};

struct LayoutConfig {
  Position3 bs{0.0, 0.0, 30.0};
  int users = 2;
  int eavesdroppers = 1;
  double sector_min_deg = 35.0;   // user placement sector, from the +x axis
  double sector_max_deg = 85.0;
  double user_range_min = 60.0;   // m from the BS
  double user_range_max = 100.0;
  double eve_offset_min = 20.0;   // m from the user centroid
  double eve_offset_max = 40.0;
  AreaBounds area{-75.0, 75.0};
  double uav_alt_min = 60.0;
  double uav_alt_max = 150.0;
};

struct MobilityConfig {
  double mean_speed = 1.0;   // m/s
  double memory = 0.8;
  double noise_std = 0.2;    // m/s per axis
  double slot_seconds = 0.01;
};

struct RadioConfig {
  double carrier_hz = 28e9;
  double bandwidth_hz = 100e6;
  double noise_power_dbm = -84.0;
  double p_max = 2.0;         // W
  double per_antenna = 0.1;   // W
  double evm_tx = 0.08;
  double evm_rx = 0.10;

  double noise_power_w() const {
    return std::pow(10.0, (noise_power_dbm - 30.0) / 10.0);
  }
  double distortion_coeff() const { return evm_noise_coeff(evm_tx, evm_rx); }
};

struct LinkConfig {
  double ricean_db = 10.0;
  double path_loss_exponent = 2.5;
  // Large-scale intercept at 1 m. The default keeps cascaded links in a
  // regime where beamformed SINRs land in the tens of dB; set it to the
  // free-space value (about -61.4 dB at 28 GHz) for absolute budgets.
  double reference_gain_db = 0.0;

  LinkParams to_params(LinkId id) const {
    LinkParams p;
    p.link = id;
    p.ricean_factor = std::pow(10.0, ricean_db / 10.0);
    p.path_loss_exponent = path_loss_exponent;
    p.reference_gain = std::pow(10.0, reference_gain_db / 10.0);
    return p;
  }
};

struct RiskConfig {
  double alpha = 0.2;
};

struct Stage1Config {
  int candidates = 50;
  int coarse_keep = 12;      // candidates surviving to the fine stage
  int presample_slots = 48;  // per-candidate surrogate window
  int fine_slots = 200;
  int warm_slots = 5;        // leading fine slots excluded from scoring
  int random_probes = 8;
  double probe_weight = 0.3; // blend weight on the normalized probe score
};

struct Stage2Config {
  int samples = 10;
  double wasserstein_radius = 0.03;
  int adversary_steps = 3;
  std::vector<double> zeta_grid{0.0, 0.25, 0.5, 0.75, 1.0};
  double softplus_sharpness = 50.0;
  int max_iterations = 15;
  double tolerance = 1e-4;
  int backtrack_limit = 20;
};

struct SystemConfig {
  ArrayConfig arrays;
  LayoutConfig layout;
  MobilityConfig mobility;
  RadioConfig radio;
  LinkConfig link_bs_ris{10.0, 2.5, 0.0};
  LinkConfig link_ris_user{3.0, 3.5, 0.0};
  LinkConfig link_ris_eve{5.0, 3.2, 0.0};
  int ris_bits = 2;
  RisImpairmentParams impairments;
  CsiErrorParams csi;
  RiskConfig risk;
  Stage1Config stage1;
  Stage2Config stage2;

  RisCodebook codebook() const { return RisCodebook{ris_bits}; }
  ChannelModel channel_model() const {
    return ChannelModel{link_bs_ris.to_params(LinkId::bs_ris),
                        link_ris_user.to_params(LinkId::ris_user),
                        link_ris_eve.to_params(LinkId::ris_eve)};
  }
  PowerLimits power_limits() const { return {radio.p_max, radio.per_antenna}; }
};

enum class OutputFormat { csv, json };

enum class ExperimentKind { deploy, robust, sweep, selftest };

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::robust;
  int trials = 3;
  int slots = 1500;       // per-trial evaluation slots (robust, sweep)
  int eval_slots = 1000;  // evaluation phase after deployment selection
  double outage_threshold = 2.5;
  std::vector<double> sweep_jitter{2.0, 5.0, 10.0};
  std::vector<double> sweep_correlation{0.5, 0.75, 0.9};
  std::uint64_t master_seed = 1;
  unsigned parallel = 1;
  std::string slot_log;   // optional JSONL path, empty disables
};

struct LoadedConfig {
  SystemConfig system;
  ExperimentSpec experiment;
};

SystemConfig default_config();

// Parses and validates a JSON config document. Every key is optional and
// falls back to its default; unknown keys are rejected by name.
LoadedConfig load_config(const std::string& path);
LoadedConfig parse_config_text(const std::string& text);

void validate(const SystemConfig& config);
void validate(const ExperimentSpec& spec);

// Canonical JSON rendering of the full configuration (used for manifests).
std::string config_to_json(const SystemConfig& config,
                           const ExperimentSpec& spec);

}  // namespace aris
