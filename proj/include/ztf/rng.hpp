#pragma once

#include <cstdint>

#include "ztf/common.hpp"

namespace ztf {

/// Counter-based pseudo-random stream. Every draw hashes (key, counter), so
/// child streams split off a parent are independent of how much the parent is
/// consumed, and a fixed (seed, split path) reproduces the same sequence on
/// any platform and any thread layout.
class Rng {
public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Independent child stream; drawing from it does not advance this one.
  Rng split(std::uint64_t stream) const;

  std::uint64_t next_u64();
  double uniform();                        // [0, 1)
  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);         // inclusive bounds
  cplx unit_box_complex();                 // Re, Im uniform in [-1, 1]

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace ztf
