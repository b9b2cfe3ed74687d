#pragma once

#include <Eigen/Dense>

#include "aris/rng.hpp"

namespace aris {

struct Position3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

double distance(const Position3& a, const Position3& b);

enum class ArrayKind { linear, planar };

struct ArrayGeometry {
  ArrayKind kind = ArrayKind::linear;
  int n_x = 1;           // element count along the first axis (ULA: total)
  int n_y = 1;           // second axis, planar arrays only
  double spacing = 0.5;  // element spacing in wavelengths

  int size() const { return n_x * n_y; }
};

// Square horizontal region, applied independently to x and y.
struct AreaBounds {
  double lo = -75.0;
  double hi = 75.0;

  bool contains(double x, double y) const {
    return x >= lo && x <= hi && y >= lo && y <= hi;
  }
};

struct PointingAngles {
  double azimuth = 0.0;    // (-pi, pi], measured from +x in the xy plane
  double elevation = 0.0;  // [-pi/2, pi/2], positive above the horizon
  double range = 0.0;      // meters
};

// Direction and distance from one point to another.
// Throws std::invalid_argument on coincident points.
PointingAngles angles_between(const Position3& from, const Position3& to);

// Unit-norm ULA response; element i carries phase 2*pi*spacing*i*sin(azimuth).
Eigen::VectorXcd steering_ula(double azimuth, int n_elements,
                              double spacing = 0.5);

// Unit-norm UPA response, the Kronecker product of the two axis factors with
// the x axis major: element (ix, iy) sits at index ix*ny + iy and carries
// phase 2*pi*spacing*(ix*ux + iy*uy), where ux = sin(az)*cos(el) and
// uy = sin(el). Broadside (az = el = 0) gives the all-ones vector.
Eigen::VectorXcd steering_upa(double azimuth, double elevation, int nx, int ny,
                              double spacing = 0.5);

// First-order autoregressive velocity process for a ground user.
struct MobilityState {
  Position3 position;
  Eigen::Vector2d velocity = Eigen::Vector2d::Zero();       // m/s, xy plane
  Eigen::Vector2d mean_velocity = Eigen::Vector2d::Zero();  // long-run drift
  double memory = 0.8;     // per-step velocity memory coefficient
  double noise_std = 0.2;  // m/s per axis
};

// Advances one step of duration dt:
//   v' = memory*v + (1-memory)*mean_velocity + sqrt(1-memory^2)*noise
// and reflects position (and both velocity vectors) at the area boundary so
// tracks never leave the area. Altitude is unchanged.
MobilityState step_mobility(const MobilityState& state, double dt,
                            const AreaBounds& area, Rng& rng);

}  // namespace aris
