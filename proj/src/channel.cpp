#include "aris/channel.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace aris {

namespace {

// Diffuse component with i.i.d. unit-variance complex Gaussian entries.
// Filled in a fixed row-major order for reproducibility.
Eigen::MatrixXcd diffuse_matrix(int rows, int cols, Rng& rng) {
  Eigen::MatrixXcd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = rng.cnormal();
  }
  return m;
}

Eigen::VectorXcd diffuse_vector(int n, Rng& rng) {
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.cnormal();
  return v;
}

struct MixWeights {
  double dominant;
  double diffuse;
};

MixWeights mix_weights(double ricean_factor) {
  if (ricean_factor < 0.0) {
    throw std::invalid_argument("draw_channels: ricean factor must be >= 0");
  }
  return {std::sqrt(ricean_factor / (ricean_factor + 1.0)),
          std::sqrt(1.0 / (ricean_factor + 1.0))};
}

}  // namespace

double path_loss(double distance_m, const LinkParams& link) {
  if (distance_m <= 0.0) {
    throw std::invalid_argument("path_loss: degenerate geometry");
  }
  return link.reference_gain * std::pow(distance_m, -link.path_loss_exponent);
}

double free_space_reference_gain(double carrier_hz) {
  if (carrier_hz <= 0.0) {
    throw std::invalid_argument("free_space_reference_gain: bad carrier");
  }
  constexpr double c = 299792458.0;
  double x = c / (4.0 * std::numbers::pi * carrier_hz);
  return x * x;
}

ChannelSet draw_channels(const ChannelGeometry& geometry,
                         const ChannelModel& model, Rng& rng) {
  const int n_bs = geometry.bs_array.size();
  const int n_ris = geometry.ris_array.size();
  const int n_users = static_cast<int>(geometry.users.size());

  ChannelSet out;
  out.ris_user.resize(n_users);
  out.ris_user_los.resize(n_users);
  out.loss_user.resize(n_users);

  // BS -> RIS.
  PointingAngles to_ris = angles_between(geometry.bs, geometry.ris);
  PointingAngles to_bs = angles_between(geometry.ris, geometry.bs);
  Eigen::VectorXcd a_bs =
      steering_ula(to_ris.azimuth, n_bs, geometry.bs_array.spacing);
  Eigen::VectorXcd a_ris = steering_upa(to_bs.azimuth, to_bs.elevation,
                                        geometry.ris_array.n_x,
                                        geometry.ris_array.n_y,
                                        geometry.ris_array.spacing);
  out.loss_bs_ris = path_loss(to_ris.range, model.bs_ris);
  MixWeights w = mix_weights(model.bs_ris.ricean_factor);
  // Entry-unit-modulus outer product: |entry| = 1 so ||.||_F^2 = N_R * N.
  out.bs_ris_los = std::sqrt(static_cast<double>(n_ris) * n_bs) *
                   (a_ris * a_bs.adjoint());
  out.bs_ris = std::sqrt(out.loss_bs_ris) *
               (w.dominant * out.bs_ris_los +
                w.diffuse * diffuse_matrix(n_ris, n_bs, rng));

  // RIS -> users.
  for (int k = 0; k < n_users; ++k) {
    PointingAngles to_user = angles_between(geometry.ris, geometry.users[k]);
    Eigen::VectorXcd a = steering_upa(to_user.azimuth, to_user.elevation,
                                      geometry.ris_array.n_x,
                                      geometry.ris_array.n_y,
                                      geometry.ris_array.spacing);
    out.loss_user[k] = path_loss(to_user.range, model.ris_user);
    MixWeights wu = mix_weights(model.ris_user.ricean_factor);
    out.ris_user_los[k] = std::sqrt(static_cast<double>(n_ris)) * a;
    out.ris_user[k] = std::sqrt(out.loss_user[k]) *
                      (wu.dominant * out.ris_user_los[k] +
                       wu.diffuse * diffuse_vector(n_ris, rng));
  }

  // RIS -> eavesdropper.
  PointingAngles to_eve = angles_between(geometry.ris, geometry.eve);
  Eigen::VectorXcd a_eve = steering_upa(to_eve.azimuth, to_eve.elevation,
                                        geometry.ris_array.n_x,
                                        geometry.ris_array.n_y,
                                        geometry.ris_array.spacing);
  out.loss_eve = path_loss(to_eve.range, model.ris_eve);
  MixWeights we = mix_weights(model.ris_eve.ricean_factor);
  out.ris_eve_los = std::sqrt(static_cast<double>(n_ris)) * a_eve;
  out.ris_eve = std::sqrt(out.loss_eve) *
                (we.dominant * out.ris_eve_los +
                 we.diffuse * diffuse_vector(n_ris, rng));
  return out;
}

namespace {

const Eigen::VectorXcd& receiver_vector(const ChannelSet& channels, int target) {
  if (target == kEveTarget) return channels.ris_eve;
  if (target < 0 || target >= static_cast<int>(channels.ris_user.size())) {
    throw std::invalid_argument("cascaded_channel: unknown receiver");
  }
  return channels.ris_user[static_cast<std::size_t>(target)];
}

}  // namespace

Eigen::VectorXcd cascaded_channel(const ChannelSet& channels,
                                  const Eigen::VectorXcd& reflection,
                                  int target) {
  const Eigen::VectorXcd& h = receiver_vector(channels, target);
  if (reflection.size() != h.size()) {
    throw std::invalid_argument("cascaded_channel: reflection size mismatch");
  }
  // g^H = h^H diag(v) H  =>  g = H^H diag(conj(v)) h.
  return channels.bs_ris.adjoint() * reflection.conjugate().asDiagonal() * h;
}

Eigen::MatrixXcd cascade_matrix(const ChannelSet& channels, int target) {
  const Eigen::VectorXcd& h = receiver_vector(channels, target);
  return h.conjugate().asDiagonal() * channels.bs_ris;
}

namespace {

constexpr std::uint32_t kTraceMagic = 0x41524354;  // "ARCT"
constexpr std::uint32_t kTraceVersion = 1;

void write_u32(std::ofstream& f, std::uint32_t v) {
  f.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint32_t read_u32(std::ifstream& f) {
  std::uint32_t v = 0;
  f.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!f) throw std::runtime_error("channel trace: truncated header");
  return v;
}

void write_complex(std::ofstream& f, const std::complex<double>* data,
                   std::size_t count) {
  f.write(reinterpret_cast<const char*>(data),
          static_cast<std::streamsize>(count * sizeof(std::complex<double>)));
}

void read_complex(std::ifstream& f, std::complex<double>* data,
                  std::size_t count) {
  f.read(reinterpret_cast<char*>(data),
         static_cast<std::streamsize>(count * sizeof(std::complex<double>)));
  if (!f) throw std::runtime_error("channel trace: truncated payload");
}

void write_double(std::ofstream& f, double v) {
  f.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

double read_double(std::ifstream& f) {
  double v = 0;
  f.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!f) throw std::runtime_error("channel trace: truncated payload");
  return v;
}

}  // namespace

void dump_channel_trace(const std::string& path,
                        const std::vector<ChannelSet>& trace) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("channel trace: cannot open " + path);
  write_u32(f, kTraceMagic);
  write_u32(f, kTraceVersion);
  write_u32(f, static_cast<std::uint32_t>(trace.size()));
  for (const ChannelSet& set : trace) {
    write_u32(f, static_cast<std::uint32_t>(set.bs_ris.rows()));
    write_u32(f, static_cast<std::uint32_t>(set.bs_ris.cols()));
    write_u32(f, static_cast<std::uint32_t>(set.ris_user.size()));
    write_complex(f, set.bs_ris.data(), static_cast<std::size_t>(set.bs_ris.size()));
    write_complex(f, set.bs_ris_los.data(),
                  static_cast<std::size_t>(set.bs_ris_los.size()));
    for (std::size_t k = 0; k < set.ris_user.size(); ++k) {
      write_complex(f, set.ris_user[k].data(),
                    static_cast<std::size_t>(set.ris_user[k].size()));
      write_complex(f, set.ris_user_los[k].data(),
                    static_cast<std::size_t>(set.ris_user_los[k].size()));
      write_double(f, set.loss_user[k]);
    }
    write_complex(f, set.ris_eve.data(), static_cast<std::size_t>(set.ris_eve.size()));
    write_complex(f, set.ris_eve_los.data(),
                  static_cast<std::size_t>(set.ris_eve_los.size()));
    write_double(f, set.loss_bs_ris);
    write_double(f, set.loss_eve);
  }
  if (!f) throw std::runtime_error("channel trace: write failed for " + path);
}

std::vector<ChannelSet> load_channel_trace(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("channel trace: cannot open " + path);
  if (read_u32(f) != kTraceMagic) {
    throw std::runtime_error("channel trace: bad magic in " + path);
  }
  if (read_u32(f) != kTraceVersion) {
    throw std::runtime_error("channel trace: unsupported version in " + path);
  }
  std::uint32_t count = read_u32(f);
  std::vector<ChannelSet> trace(count);
  for (ChannelSet& set : trace) {
    std::uint32_t rows = read_u32(f);
    std::uint32_t cols = read_u32(f);
    std::uint32_t users = read_u32(f);
    set.bs_ris.resize(rows, cols);
    set.bs_ris_los.resize(rows, cols);
    read_complex(f, set.bs_ris.data(), static_cast<std::size_t>(set.bs_ris.size()));
    read_complex(f, set.bs_ris_los.data(),
                 static_cast<std::size_t>(set.bs_ris_los.size()));
    set.ris_user.resize(users);
    set.ris_user_los.resize(users);
    set.loss_user.resize(users);
    for (std::uint32_t k = 0; k < users; ++k) {
      set.ris_user[k].resize(rows);
      set.ris_user_los[k].resize(rows);
      read_complex(f, set.ris_user[k].data(), rows);
      read_complex(f, set.ris_user_los[k].data(), rows);
      set.loss_user[k] = read_double(f);
    }
    set.ris_eve.resize(rows);
    set.ris_eve_los.resize(rows);
    read_complex(f, set.ris_eve.data(), rows);
    read_complex(f, set.ris_eve_los.data(), rows);
    set.loss_bs_ris = read_double(f);
    set.loss_eve = read_double(f);
  }
  return trace;
}

}  // namespace aris
