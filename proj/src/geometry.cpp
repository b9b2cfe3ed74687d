#include "aris/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aris {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double distance(const Position3& a, const Position3& b) {
  double dx = b.x - a.x;
  double dy = b.y - a.y;
  double dz = b.z - a.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

PointingAngles angles_between(const Position3& from, const Position3& to) {
  double dx = to.x - from.x;
  double dy = to.y - from.y;
  double dz = to.z - from.z;
  double d = std::sqrt(dx * dx + dy * dy + dz * dz);
  if (d < 1e-12) {
    throw std::invalid_argument("angles_between: degenerate geometry");
  }
  PointingAngles out;
  out.azimuth = std::atan2(dy, dx);
  out.elevation = std::asin(std::clamp(dz / d, -1.0, 1.0));
  out.range = d;
  return out;
}

Eigen::VectorXcd steering_ula(double azimuth, int n_elements, double spacing) {
  if (n_elements < 1) {
    throw std::invalid_argument("steering_ula: need at least one element");
  }
  Eigen::VectorXcd v(n_elements);
  double step = kTwoPi * spacing * std::sin(azimuth);
  double scale = 1.0 / std::sqrt(static_cast<double>(n_elements));
  for (int i = 0; i < n_elements; ++i) {
    v(i) = std::polar(scale, step * static_cast<double>(i));
  }
  return v;
}

Eigen::VectorXcd steering_upa(double azimuth, double elevation, int nx, int ny,
                              double spacing) {
  if (nx < 1 || ny < 1) {
    throw std::invalid_argument("steering_upa: need at least one element");
  }
  double ux = std::sin(azimuth) * std::cos(elevation);
  double uy = std::sin(elevation);
  Eigen::VectorXcd v(nx * ny);
  double scale = 1.0 / std::sqrt(static_cast<double>(nx * ny));
  for (int ix = 0; ix < nx; ++ix) {
    for (int iy = 0; iy < ny; ++iy) {
      double phase = kTwoPi * spacing *
                     (static_cast<double>(ix) * ux + static_cast<double>(iy) * uy);
      v(ix * ny + iy) = std::polar(scale, phase);
    }
  }
  return v;
}

MobilityState step_mobility(const MobilityState& state, double dt,
                            const AreaBounds& area, Rng& rng) {
  if (dt <= 0.0) throw std::invalid_argument("step_mobility: dt must be positive");
  MobilityState next = state;
  double theta = state.memory;
  double noise_gain = std::sqrt(std::max(0.0, 1.0 - theta * theta)) * state.noise_std;
  for (int axis = 0; axis < 2; ++axis) {
    next.velocity(axis) = theta * state.velocity(axis) +
                          (1.0 - theta) * state.mean_velocity(axis) +
                          noise_gain * rng.normal();
  }
  next.position.x += next.velocity(0) * dt;
  next.position.y += next.velocity(1) * dt;

  // Reflect at the boundary; the drift flips too so tracks do not pile up
  // against the walls.
  auto reflect = [&](double& p, int axis) {
    if (p < area.lo) {
      p = 2.0 * area.lo - p;
      next.velocity(axis) = -next.velocity(axis);
      next.mean_velocity(axis) = -next.mean_velocity(axis);
    } else if (p > area.hi) {
      p = 2.0 * area.hi - p;
      next.velocity(axis) = -next.velocity(axis);
      next.mean_velocity(axis) = -next.mean_velocity(axis);
    }
  };
  reflect(next.position.x, 0);
  reflect(next.position.y, 1);
  return next;
}

}  // namespace aris
