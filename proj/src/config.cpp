#include "aris/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace aris {

namespace {

using nlohmann::json;

// Section reader that rejects unknown keys by name.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) {
      throw ConfigValidationError("config: section '" + path_ +
                                  "' must be an object");
    }
  }

  ~Section() = default;

  bool has(const std::string& key) {
    seen_.push_back(key);
    return node_.contains(key);
  }

  template <typename T>
  void read(const std::string& key, T& out) {
    if (!has(key)) return;
    try {
      out = node_.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigValidationError("config: key '" + qualify(key) +
                                  "' has the wrong type");
    }
  }

  const json& child(const std::string& key) {
    seen_.push_back(key);
    return node_.at(key);
  }

  std::string qualify(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  // Call after all reads: flags any key the schema never asked about.
  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      bool known = false;
      for (const std::string& s : seen_) {
        if (s == it.key()) {
          known = true;
          break;
        }
      }
      if (!known) {
        throw ConfigValidationError("config: unknown key '" + qualify(it.key()) +
                                    "'");
      }
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::vector<std::string> seen_;
};

void read_position(Section& parent, const std::string& key, Position3& out) {
  if (!parent.has(key)) return;
  const json& node = parent.child(key);
  Section s(node, parent.qualify(key));
  s.read("x", out.x);
  s.read("y", out.y);
  s.read("z", out.z);
  s.finish();
}

void read_arrays(const json& node, ArrayConfig& out) {
  Section s(node, "arrays");
  s.read("bs_antennas", out.bs_antennas);
  s.read("ris_x", out.ris_x);
  s.read("ris_y", out.ris_y);
  s.read("spacing", out.spacing);
  s.finish();
}

void read_layout(const json& node, LayoutConfig& out) {
  Section s(node, "layout");
  read_position(s, "bs", out.bs);
  s.read("users", out.users);
  s.read("eavesdroppers", out.eavesdroppers);
  s.read("sector_min_deg", out.sector_min_deg);
  s.read("sector_max_deg", out.sector_max_deg);
  s.read("user_range_min", out.user_range_min);
  s.read("user_range_max", out.user_range_max);
  s.read("eve_offset_min", out.eve_offset_min);
  s.read("eve_offset_max", out.eve_offset_max);
  s.read("area_min", out.area.lo);
  s.read("area_max", out.area.hi);
  s.read("uav_alt_min", out.uav_alt_min);
  s.read("uav_alt_max", out.uav_alt_max);
  s.finish();
}

void read_mobility(const json& node, MobilityConfig& out) {
  Section s(node, "mobility");
  s.read("mean_speed", out.mean_speed);
  s.read("memory", out.memory);
  s.read("noise_std", out.noise_std);
  s.read("slot_seconds", out.slot_seconds);
  s.finish();
}

void read_radio(const json& node, RadioConfig& out) {
  Section s(node, "radio");
  s.read("carrier_hz", out.carrier_hz);
  s.read("bandwidth_hz", out.bandwidth_hz);
  s.read("noise_power_dbm", out.noise_power_dbm);
  s.read("p_max", out.p_max);
  s.read("per_antenna", out.per_antenna);
  s.read("evm_tx", out.evm_tx);
  s.read("evm_rx", out.evm_rx);
  s.finish();
}

void read_link(const json& node, const std::string& path, LinkConfig& out) {
  Section s(node, path);
  s.read("ricean_db", out.ricean_db);
  s.read("path_loss_exponent", out.path_loss_exponent);
  s.read("reference_gain_db", out.reference_gain_db);
  s.finish();
}

void read_links(const json& node, SystemConfig& out) {
  Section s(node, "links");
  if (s.has("bs_ris")) read_link(s.child("bs_ris"), "links.bs_ris", out.link_bs_ris);
  if (s.has("ris_user")) {
    read_link(s.child("ris_user"), "links.ris_user", out.link_ris_user);
  }
  if (s.has("ris_eve")) read_link(s.child("ris_eve"), "links.ris_eve", out.link_ris_eve);
  s.finish();
}

void read_impairments(const json& node, SystemConfig& out) {
  Section s(node, "impairments");
  s.read("ris_bits", out.ris_bits);
  s.read("jitter_concentration", out.impairments.jitter_concentration);
  s.read("extra_phase_std", out.impairments.extra_phase_std);
  s.read("beta_min", out.impairments.beta_min);
  s.read("beta_max", out.impairments.beta_max);
  s.read("amp_shape", out.impairments.amp_shape);
  s.read("amp_phase_offset", out.impairments.amp_phase_offset);
  s.read("amp_error_std", out.impairments.amp_error_std);
  s.read("common_mode_jitter", out.impairments.common_mode_jitter);
  s.finish();
}

void read_csi(const json& node, CsiErrorParams& out) {
  Section s(node, "csi");
  s.read("var_user", out.var_user);
  s.read("var_eve", out.var_eve);
  s.read("var_bs_ris", out.var_bs_ris);
  s.read("correlation", out.correlation);
  s.read("fresh_fill", out.fresh_fill);
  s.finish();
}

void read_risk(const json& node, RiskConfig& out) {
  Section s(node, "risk");
  s.read("alpha", out.alpha);
  s.finish();
}

void read_stage1(const json& node, Stage1Config& out) {
  Section s(node, "stage1");
  s.read("candidates", out.candidates);
  s.read("coarse_keep", out.coarse_keep);
  s.read("presample_slots", out.presample_slots);
  s.read("fine_slots", out.fine_slots);
  s.read("warm_slots", out.warm_slots);
  s.read("random_probes", out.random_probes);
  s.read("probe_weight", out.probe_weight);
  s.finish();
}

void read_stage2(const json& node, Stage2Config& out) {
  Section s(node, "stage2");
  s.read("samples", out.samples);
  s.read("wasserstein_radius", out.wasserstein_radius);
  s.read("adversary_steps", out.adversary_steps);
  s.read("zeta_grid", out.zeta_grid);
  s.read("softplus_sharpness", out.softplus_sharpness);
  s.read("max_iterations", out.max_iterations);
  s.read("tolerance", out.tolerance);
  s.read("backtrack_limit", out.backtrack_limit);
  s.finish();
}

void read_experiment(const json& node, ExperimentSpec& out) {
  Section s(node, "experiment");
  s.read("trials", out.trials);
  s.read("slots", out.slots);
  s.read("eval_slots", out.eval_slots);
  s.read("outage_threshold", out.outage_threshold);
  s.read("sweep_jitter", out.sweep_jitter);
  s.read("sweep_correlation", out.sweep_correlation);
  s.read("master_seed", out.master_seed);
  s.read("parallel", out.parallel);
  s.finish();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigValidationError("config: " + message);
}

}  // namespace

SystemConfig default_config() { return SystemConfig{}; }

void validate(const SystemConfig& c) {
  require(c.arrays.bs_antennas >= 1, "bs_antennas must be at least 1");
  require(c.arrays.ris_x >= 1 && c.arrays.ris_y >= 1,
          "RIS panel needs at least one element per axis");
  require(c.arrays.spacing > 0.0, "element spacing must be positive");
  require(c.layout.users >= 1, "need at least one user");
  require(c.layout.eavesdroppers == 1, "exactly one eavesdropper is supported");
  require(c.layout.area.lo < c.layout.area.hi, "area bounds must be ordered");
  require(c.layout.uav_alt_min <= c.layout.uav_alt_max,
          "UAV altitude bounds must be ordered");
  require(c.layout.uav_alt_min > 0.0, "UAV altitude must be positive");
  require(c.layout.user_range_min <= c.layout.user_range_max,
          "user range bounds must be ordered");
  require(c.mobility.mean_speed >= 0.0, "mean speed must be nonnegative");
  require(c.mobility.memory >= 0.0 && c.mobility.memory <= 1.0,
          "mobility memory must lie in [0, 1]");
  require(c.mobility.slot_seconds > 0.0, "slot duration must be positive");
  require(c.radio.p_max > 0.0, "power must be positive");
  require(c.radio.per_antenna > 0.0, "power must be positive");
  require(c.radio.carrier_hz > 0.0, "carrier frequency must be positive");
  require(c.radio.evm_tx >= 0.0 && c.radio.evm_tx < 1.0 && c.radio.evm_rx >= 0.0 &&
              c.radio.evm_rx < 1.0,
          "EVM fractions must lie in [0, 1)");
  require(c.ris_bits >= 1 && c.ris_bits <= 16, "ris_bits must lie in [1, 16]");
  require(c.impairments.jitter_concentration >= 0.0,
          "jitter concentration must be nonnegative");
  require(c.impairments.beta_min >= 0.0 &&
              c.impairments.beta_min <= c.impairments.beta_max &&
              c.impairments.beta_max <= 1.0,
          "amplitude range must satisfy 0 <= beta_min <= beta_max <= 1");
  require(c.impairments.amp_error_std >= 0.0,
          "amplitude error std must be nonnegative");
  require(c.csi.var_user >= 0.0 && c.csi.var_eve >= 0.0 && c.csi.var_bs_ris >= 0.0,
          "CSI error variances must be nonnegative");
  require(c.csi.correlation >= 0.0 && c.csi.correlation <= 1.0,
          "CSI correlation must lie in [0, 1]");
  require(c.csi.fresh_fill > 0.0 && c.csi.fresh_fill <= 1.0,
          "CSI fresh fill must lie in (0, 1]");
  require(c.risk.alpha > 0.0 && c.risk.alpha < 1.0,
          "risk level must lie in (0, 1)");
  require(c.stage1.candidates >= 1, "need at least one candidate");
  require(c.stage1.coarse_keep >= 1, "coarse_keep must be at least 1");
  require(c.stage1.presample_slots >= 1, "presample_slots must be at least 1");
  require(c.stage1.fine_slots >= 1, "fine_slots must be at least 1");
  require(c.stage1.warm_slots >= 0 && c.stage1.warm_slots < c.stage1.fine_slots,
          "warm_slots must leave at least one scored fine slot");
  require(c.stage1.random_probes >= 0, "random_probes must be nonnegative");
  require(c.stage1.probe_weight >= 0.0 && c.stage1.probe_weight <= 1.0,
          "probe_weight must lie in [0, 1]");
  require(c.stage2.samples >= 1, "need at least one SAA sample");
  require(c.stage2.wasserstein_radius >= 0.0, "radius must be nonnegative");
  require(c.stage2.adversary_steps >= 0, "adversary_steps must be nonnegative");
  require(!c.stage2.zeta_grid.empty(), "zeta_grid must not be empty");
  for (double z : c.stage2.zeta_grid) {
    require(z >= 0.0 && z <= 1.0, "zeta values must lie in [0, 1]");
  }
  require(c.stage2.softplus_sharpness > 0.0, "softplus sharpness must be positive");
  require(c.stage2.max_iterations >= 1, "max_iterations must be at least 1");
  require(c.stage2.tolerance > 0.0, "tolerance must be positive");
  require(c.stage2.backtrack_limit >= 1, "backtrack_limit must be at least 1");
}

void validate(const ExperimentSpec& s) {
  require(s.trials >= 1, "trials must be at least 1");
  require(s.slots >= 1, "slots must be at least 1");
  require(s.eval_slots >= 1, "eval_slots must be at least 1");
  require(!s.sweep_jitter.empty() && !s.sweep_correlation.empty(),
          "sweep axes must be explicit");
  require(s.parallel >= 1, "parallel must be at least 1");
}

LoadedConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigParseError(std::string("config: parse error: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigValidationError("config: top level must be an object");
  }

  LoadedConfig out;
  Section top(doc, "");
  if (top.has("arrays")) read_arrays(top.child("arrays"), out.system.arrays);
  if (top.has("layout")) read_layout(top.child("layout"), out.system.layout);
  if (top.has("mobility")) read_mobility(top.child("mobility"), out.system.mobility);
  if (top.has("radio")) read_radio(top.child("radio"), out.system.radio);
  if (top.has("links")) read_links(top.child("links"), out.system);
  if (top.has("impairments")) read_impairments(top.child("impairments"), out.system);
  if (top.has("csi")) read_csi(top.child("csi"), out.system.csi);
  if (top.has("risk")) read_risk(top.child("risk"), out.system.risk);
  if (top.has("stage1")) read_stage1(top.child("stage1"), out.system.stage1);
  if (top.has("stage2")) read_stage2(top.child("stage2"), out.system.stage2);
  if (top.has("experiment")) read_experiment(top.child("experiment"), out.experiment);
  top.finish();

  validate(out.system);
  validate(out.experiment);
  return out;
}

LoadedConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigFileError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config_text(buf.str());
}

std::string config_to_json(const SystemConfig& c, const ExperimentSpec& s) {
  json doc;
  doc["arrays"] = {{"bs_antennas", c.arrays.bs_antennas},
                   {"ris_x", c.arrays.ris_x},
                   {"ris_y", c.arrays.ris_y},
                   {"spacing", c.arrays.spacing}};
  doc["layout"] = {{"bs", {{"x", c.layout.bs.x}, {"y", c.layout.bs.y}, {"z", c.layout.bs.z}}},
                   {"users", c.layout.users},
                   {"eavesdroppers", c.layout.eavesdroppers},
                   {"sector_min_deg", c.layout.sector_min_deg},
                   {"sector_max_deg", c.layout.sector_max_deg},
                   {"user_range_min", c.layout.user_range_min},
                   {"user_range_max", c.layout.user_range_max},
                   {"eve_offset_min", c.layout.eve_offset_min},
                   {"eve_offset_max", c.layout.eve_offset_max},
                   {"area_min", c.layout.area.lo},
                   {"area_max", c.layout.area.hi},
                   {"uav_alt_min", c.layout.uav_alt_min},
                   {"uav_alt_max", c.layout.uav_alt_max}};
  doc["mobility"] = {{"mean_speed", c.mobility.mean_speed},
                     {"memory", c.mobility.memory},
                     {"noise_std", c.mobility.noise_std},
                     {"slot_seconds", c.mobility.slot_seconds}};
  doc["radio"] = {{"carrier_hz", c.radio.carrier_hz},
                  {"bandwidth_hz", c.radio.bandwidth_hz},
                  {"noise_power_dbm", c.radio.noise_power_dbm},
                  {"p_max", c.radio.p_max},
                  {"per_antenna", c.radio.per_antenna},
                  {"evm_tx", c.radio.evm_tx},
                  {"evm_rx", c.radio.evm_rx}};
  auto link = [](const LinkConfig& l) {
    return json{{"ricean_db", l.ricean_db},
                {"path_loss_exponent", l.path_loss_exponent},
                {"reference_gain_db", l.reference_gain_db}};
  };
  doc["links"] = {{"bs_ris", link(c.link_bs_ris)},
                  {"ris_user", link(c.link_ris_user)},
                  {"ris_eve", link(c.link_ris_eve)}};
  doc["impairments"] = {{"ris_bits", c.ris_bits},
                        {"jitter_concentration", c.impairments.jitter_concentration},
                        {"extra_phase_std", c.impairments.extra_phase_std},
                        {"beta_min", c.impairments.beta_min},
                        {"beta_max", c.impairments.beta_max},
                        {"amp_shape", c.impairments.amp_shape},
                        {"amp_phase_offset", c.impairments.amp_phase_offset},
                        {"amp_error_std", c.impairments.amp_error_std},
                        {"common_mode_jitter", c.impairments.common_mode_jitter}};
  doc["csi"] = {{"var_user", c.csi.var_user},
                {"var_eve", c.csi.var_eve},
                {"var_bs_ris", c.csi.var_bs_ris},
                {"correlation", c.csi.correlation},
                {"fresh_fill", c.csi.fresh_fill}};
  doc["risk"] = {{"alpha", c.risk.alpha}};
  doc["stage1"] = {{"candidates", c.stage1.candidates},
                   {"coarse_keep", c.stage1.coarse_keep},
                   {"presample_slots", c.stage1.presample_slots},
                   {"fine_slots", c.stage1.fine_slots},
                   {"warm_slots", c.stage1.warm_slots},
                   {"random_probes", c.stage1.random_probes},
                   {"probe_weight", c.stage1.probe_weight}};
  doc["stage2"] = {{"samples", c.stage2.samples},
                   {"wasserstein_radius", c.stage2.wasserstein_radius},
                   {"adversary_steps", c.stage2.adversary_steps},
                   {"zeta_grid", c.stage2.zeta_grid},
                   {"softplus_sharpness", c.stage2.softplus_sharpness},
                   {"max_iterations", c.stage2.max_iterations},
                   {"tolerance", c.stage2.tolerance},
                   {"backtrack_limit", c.stage2.backtrack_limit}};
  doc["experiment"] = {{"trials", s.trials},
                       {"slots", s.slots},
                       {"eval_slots", s.eval_slots},
                       {"outage_threshold", s.outage_threshold},
                       {"sweep_jitter", s.sweep_jitter},
                       {"sweep_correlation", s.sweep_correlation},
                       {"master_seed", s.master_seed},
                       {"parallel", s.parallel}};
  return doc.dump(2);
}

}  // namespace aris
