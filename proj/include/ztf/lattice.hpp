#pragma once

#include <cstddef>
#include <vector>

#include "ztf/common.hpp"

namespace ztf {

using LatticePoint = std::vector<int>;

/// Centered sup-norm box {k in Z^n : max_i |k_i| <= radius} with a fixed
/// lexicographic enumeration: index 0 is (-N, ..., -N), the last axis varies
/// fastest, index size()-1 is (N, ..., N).
class LatticeBox {
public:
  LatticeBox(int dim, int radius);

  int dim() const { return dim_; }
  int radius() const { return radius_; }
  int side() const { return 2 * radius_ + 1; }
  std::size_t size() const { return size_; }

  LatticePoint point(std::size_t index) const;
  /// Enumeration index of k, or -1 when k lies outside the box.
  std::ptrdiff_t index(const LatticePoint& k) const;
  bool contains(const LatticePoint& k) const;

  bool operator==(const LatticeBox& o) const {
    return dim_ == o.dim_ && radius_ == o.radius_;
  }

private:
  int dim_;
  int radius_;
  std::size_t size_;
};

int l1_norm(const LatticePoint& k);
/// Number of lattice points with |k|_1 <= t in dimension dim.
std::size_t l1_ball_card(int dim, int t);

/// Finitely supported function on Z^n: stored on a LatticeBox, identically
/// zero outside it.
class Signal {
public:
  explicit Signal(const LatticeBox& box);
  Signal(const LatticeBox& box, std::vector<cplx> values);

  const LatticeBox& box() const { return box_; }
  int dim() const { return box_.dim(); }
  std::size_t size() const { return values_.size(); }

  cplx& operator[](std::size_t i) { return values_[i]; }
  const cplx& operator[](std::size_t i) const { return values_[i]; }
  std::vector<cplx>& values() { return values_; }
  const std::vector<cplx>& values() const { return values_; }

  /// Value at an arbitrary lattice point; zero off the box.
  cplx at(const LatticePoint& k) const;

  /// l^p norm, p in [1, inf] (pass infinity for the sup norm).
  double norm(double p) const;
  double norm_l2() const;
  bool is_zero() const;

  /// Unit mass at the origin on the radius-0 box.
  static Signal delta(int dim);

private:
  LatticeBox box_;
  std::vector<cplx> values_;
};

/// sum_k a(k) conj(b(k)), fixed pairwise reduction order.
cplx inner(const Signal& a, const Signal& b);

/// Exact value equality on the common domain (same dim; boxes may differ,
/// off-box values count as zero).
bool same_values(const Signal& a, const Signal& b);

}  // namespace ztf
