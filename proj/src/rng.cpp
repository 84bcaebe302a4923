#include "ztf/rng.hpp"

namespace ztf {

namespace {

// SplitMix64 finalizer: full-avalanche 64-bit mixing.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(mix64(seed) ^ mix64(stream ^ 0xA0761D6478BD642FULL))) {}

Rng Rng::split(std::uint64_t stream) const {
  Rng child(0);
  child.key_ = mix64(key_ ^ mix64(stream ^ 0xE7037ED1A0B428DBULL));
  child.counter_ = 0;
  return child;
}

std::uint64_t Rng::next_u64() {
  ++counter_;
  return mix64(key_ ^ (counter_ * 0xD1B54A32D192ED03ULL));
}

double Rng::uniform() {
  // 53 high bits -> [0, 1) with full double resolution.
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::uniform_int(int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next_u64() % span);
}

cplx Rng::unit_box_complex() {
  const double re = uniform(-1.0, 1.0);
  const double im = uniform(-1.0, 1.0);
  return {re, im};
}

}  // namespace ztf
