#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ztf/common.hpp"
#include "ztf/lattice.hpp"

namespace ztf {

/// Uniform Q^n sampling of [0,1)^n with lexicographic node order (last axis
/// fastest). Node j has coordinates j_i / Q and quadrature weight Q^{-n}.
/// The rule integrates a trigonometric monomial e^{2 pi i r.w} exactly unless
/// r is a nonzero multiple of Q along some axis, so any integrand whose
/// frequencies stay inside (-Q, Q)^n is integrated exactly.
class TorusGrid {
public:
  TorusGrid(int dim, int resolution);

  int dim() const { return dim_; }
  int resolution() const { return resolution_; }
  std::size_t size() const { return size_; }
  double weight() const { return weight_; }

  std::vector<int> digits(std::size_t index) const;
  std::size_t index(const std::vector<int>& digits) const;  // reduced mod Q
  std::vector<double> node(std::size_t index) const;
  /// Node coordinates reduced to the centered cell [-1/2, 1/2).
  std::vector<double> centered_node(std::size_t index) const;
  /// Index of node(a) - node(b) on the torus.
  std::size_t difference(std::size_t a, std::size_t b) const;

  bool operator==(const TorusGrid& o) const {
    return dim_ == o.dim_ && resolution_ == o.resolution_;
  }

private:
  int dim_;
  int resolution_;
  std::size_t size_;
  double weight_;
};

/// Resolution used when the caller does not pick one: Q = 2 (2N + 1).
int default_resolution(int signal_radius);

/// Function on T^n: either explicit samples on a TorusGrid, or the indicator
/// of the closed l1 ball {|w|_1 <= omega} with representatives taken in
/// [-1/2, 1/2)^n (band form, kept symbolic so integrals against it can use
/// exact moments).
class TorusFunction {
public:
  static TorusFunction grid_samples(const TorusGrid& grid, std::vector<cplx> values);
  static TorusFunction band_indicator(int dim, double omega);  // 0 < omega <= 1/2

  bool is_band() const { return band_; }
  int dim() const { return dim_; }
  double omega() const;                    // band form only
  const TorusGrid& grid() const;           // sample form only
  const std::vector<cplx>& values() const; // sample form only

  /// Samples on the requested grid; the band form is sampled by its
  /// indicator (boundary nodes count as inside the closed ball).
  std::vector<cplx> sample(const TorusGrid& grid) const;

  TorusFunction conjugate() const;

private:
  TorusFunction() = default;
  bool band_ = false;
  int dim_ = 0;
  double omega_ = 0.0;
  std::optional<TorusGrid> grid_;
  std::vector<cplx> values_;
};

/// Moment of the l1 frequency ball: c(r) = integral over {|w|_1 <= omega} of
/// e^{2 pi i r.w} dw. Real, even in r, |c(r)| <= c(0) = vol. Closed form in
/// dimension 1 (c(0) = 2 omega, c(r) = sin(2 pi r omega) / (pi r)); nested
/// adaptive quadrature for n >= 2 with target absolute error 1e-10.
double band_moment(const LatticePoint& r, double omega);

struct BandMomentResult {
  double value;
  double error_bound;  // 0 when the closed form applies
};
BandMomentResult band_moment_with_error(const LatticePoint& r, double omega);

}  // namespace ztf
