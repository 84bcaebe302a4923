#include "ztf/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "ztf/reduce.hpp"

namespace ztf {

LatticeBox::LatticeBox(int dim, int radius) : dim_(dim), radius_(radius) {
  if (dim < 1) throw InvalidArgument("lattice box: dimension must be >= 1");
  if (radius < 0) throw InvalidArgument("lattice box: radius must be >= 0");
  size_ = 1;
  for (int i = 0; i < dim; ++i) size_ *= static_cast<std::size_t>(side());
}

LatticePoint LatticeBox::point(std::size_t index) const {
  LatticePoint k(static_cast<std::size_t>(dim_));
  const std::size_t s = static_cast<std::size_t>(side());
  for (int i = dim_ - 1; i >= 0; --i) {
    k[static_cast<std::size_t>(i)] = static_cast<int>(index % s) - radius_;
    index /= s;
  }
  return k;
}

std::ptrdiff_t LatticeBox::index(const LatticePoint& k) const {
  if (static_cast<int>(k.size()) != dim_)
    throw DimensionMismatch("lattice box: point dimension mismatch");
  std::size_t idx = 0;
  for (int i = 0; i < dim_; ++i) {
    const int digit = k[static_cast<std::size_t>(i)] + radius_;
    if (digit < 0 || digit >= side()) return -1;
    idx = idx * static_cast<std::size_t>(side()) + static_cast<std::size_t>(digit);
  }
  return static_cast<std::ptrdiff_t>(idx);
}

bool LatticeBox::contains(const LatticePoint& k) const { return index(k) >= 0; }

int l1_norm(const LatticePoint& k) {
  int s = 0;
  for (int v : k) s += std::abs(v);
  return s;
}

std::size_t l1_ball_card(int dim, int t) {
  if (dim < 1) throw InvalidArgument("l1 ball: dimension must be >= 1");
  if (t < 0) return 0;
  const LatticeBox cube(dim, t);
  std::size_t count = 0;
  for (std::size_t i = 0; i < cube.size(); ++i)
    if (l1_norm(cube.point(i)) <= t) ++count;
  return count;
}

Signal::Signal(const LatticeBox& box) : box_(box), values_(box.size()) {}

Signal::Signal(const LatticeBox& box, std::vector<cplx> values)
    : box_(box), values_(std::move(values)) {
  if (values_.size() != box_.size())
    throw InvalidArgument("signal: value count does not match box size");
}

cplx Signal::at(const LatticePoint& k) const {
  const std::ptrdiff_t i = box_.index(k);
  return i < 0 ? cplx{} : values_[static_cast<std::size_t>(i)];
}

double Signal::norm(double p) const {
  if (std::isinf(p)) {
    double best = 0.0;
    for (const cplx& v : values_) best = std::max(best, std::abs(v));
    return best;
  }
  if (!(p >= 1.0)) throw InvalidArgument("signal norm: p must lie in [1, inf]");
  const double sum = pairwise_sum<double>(
      values_.size(), [&](std::size_t i) { return std::pow(std::abs(values_[i]), p); });
  return std::pow(sum, 1.0 / p);
}

double Signal::norm_l2() const {
  const double sum = pairwise_sum<double>(
      values_.size(), [&](std::size_t i) { return std::norm(values_[i]); });
  return std::sqrt(sum);
}

bool Signal::is_zero() const {
  for (const cplx& v : values_)
    if (v != cplx{}) return false;
  return true;
}

Signal Signal::delta(int dim) {
  Signal d(LatticeBox(dim, 0));
  d[0] = 1.0;
  return d;
}

cplx inner(const Signal& a, const Signal& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("inner: dimension mismatch");
  // Iterate the smaller box; the other signal reads as zero off its own box.
  const bool a_small = a.box().size() <= b.box().size();
  const Signal& lead = a_small ? a : b;
  const Signal& other = a_small ? b : a;
  return pairwise_sum<cplx>(lead.size(), [&](std::size_t i) {
    const LatticePoint k = lead.box().point(i);
    const cplx av = a_small ? lead[i] : other.at(k);
    const cplx bv = a_small ? other.at(k) : lead[i];
    return av * std::conj(bv);
  });
}

bool same_values(const Signal& a, const Signal& b) {
  if (a.dim() != b.dim()) return false;
  const int r = std::max(a.box().radius(), b.box().radius());
  const LatticeBox hull(a.dim(), r);
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const LatticePoint k = hull.point(i);
    if (a.at(k) != b.at(k)) return false;
  }
  return true;
}

}  // namespace ztf
