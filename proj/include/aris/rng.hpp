#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace aris {

// SplitMix64 mixing step. Used for seed derivation only.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Labels for independently consumed random streams. Values are part of the
// reproducibility contract; do not reorder.
enum class StreamId : std::uint64_t {
  layout = 1,
  mobility = 2,
  channel = 3,
  csi = 4,
  reflection = 5,
  probe = 6,
  grid = 7,
  scheme = 8,
  selftest = 9,
};

// Derives a child seed from the master seed, a stream label and up to three
// structural indices (trial, slot, candidate, ...). The map depends only on
// its arguments, never on execution order, so any worker can reproduce any
// stream in isolation.
std::uint64_t derive_seed(std::uint64_t master, StreamId stream,
                          std::uint64_t a = 0, std::uint64_t b = 0,
                          std::uint64_t c = 0);

// Deterministic random source. Wraps mt19937_64 but hand-rolls the variate
// transforms; the standard-library distributions are implementation-defined
// and would break cross-platform reproducibility.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  // Uniform on [0, 1).
  double uniform();

  // Uniform on [lo, hi).
  double uniform(double lo, double hi);

  // Uniform integer in [0, n); n must be positive.
  std::uint64_t index(std::uint64_t n);

  // Standard normal via Box-Muller (cached spare).
  double normal();

  // Circularly symmetric complex normal, unit variance per complex entry.
  std::complex<double> cnormal();

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace aris
