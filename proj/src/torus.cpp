#include "ztf/torus.hpp"

#include <algorithm>
#include <cmath>

namespace ztf {

TorusGrid::TorusGrid(int dim, int resolution) : dim_(dim), resolution_(resolution) {
  if (dim < 1) throw InvalidArgument("torus grid: dimension must be >= 1");
  if (resolution < 1) throw InvalidArgument("torus grid: resolution must be >= 1");
  size_ = 1;
  for (int i = 0; i < dim; ++i) size_ *= static_cast<std::size_t>(resolution);
  weight_ = 1.0;
  for (int i = 0; i < dim; ++i) weight_ /= static_cast<double>(resolution);
}

std::vector<int> TorusGrid::digits(std::size_t index) const {
  std::vector<int> d(static_cast<std::size_t>(dim_));
  const std::size_t q = static_cast<std::size_t>(resolution_);
  for (int i = dim_ - 1; i >= 0; --i) {
    d[static_cast<std::size_t>(i)] = static_cast<int>(index % q);
    index /= q;
  }
  return d;
}

std::size_t TorusGrid::index(const std::vector<int>& digits) const {
  if (static_cast<int>(digits.size()) != dim_)
    throw DimensionMismatch("torus grid: digit dimension mismatch");
  std::size_t idx = 0;
  for (int i = 0; i < dim_; ++i) {
    int d = digits[static_cast<std::size_t>(i)] % resolution_;
    if (d < 0) d += resolution_;
    idx = idx * static_cast<std::size_t>(resolution_) + static_cast<std::size_t>(d);
  }
  return idx;
}

std::vector<double> TorusGrid::node(std::size_t index) const {
  const std::vector<int> d = digits(index);
  std::vector<double> w(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    w[i] = static_cast<double>(d[i]) / static_cast<double>(resolution_);
  return w;
}

std::vector<double> TorusGrid::centered_node(std::size_t index) const {
  std::vector<double> w = node(index);
  for (double& x : w)
    if (x >= 0.5) x -= 1.0;
  return w;
}

std::size_t TorusGrid::difference(std::size_t a, std::size_t b) const {
  const std::vector<int> da = digits(a);
  const std::vector<int> db = digits(b);
  std::vector<int> d(da.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = da[i] - db[i];
  return index(d);
}

int default_resolution(int signal_radius) {
  if (signal_radius < 0) throw InvalidArgument("default resolution: radius must be >= 0");
  return 2 * (2 * signal_radius + 1);
}

TorusFunction TorusFunction::grid_samples(const TorusGrid& grid, std::vector<cplx> values) {
  if (values.size() != grid.size())
    throw InvalidArgument("torus function: value count does not match grid size");
  TorusFunction f;
  f.band_ = false;
  f.dim_ = grid.dim();
  f.grid_ = grid;
  f.values_ = std::move(values);
  return f;
}

TorusFunction TorusFunction::band_indicator(int dim, double omega) {
  if (dim < 1) throw InvalidArgument("band indicator: dimension must be >= 1");
  if (!(omega > 0.0) || omega > 0.5)
    throw InvalidArgument("band indicator: omega must lie in (0, 1/2]");
  TorusFunction f;
  f.band_ = true;
  f.dim_ = dim;
  f.omega_ = omega;
  return f;
}

double TorusFunction::omega() const {
  if (!band_) throw InvalidArgument("torus function: not in band form");
  return omega_;
}

const TorusGrid& TorusFunction::grid() const {
  if (band_) throw InvalidArgument("torus function: band form has no grid");
  return *grid_;
}

const std::vector<cplx>& TorusFunction::values() const {
  if (band_) throw InvalidArgument("torus function: band form has no samples");
  return values_;
}

std::vector<cplx> TorusFunction::sample(const TorusGrid& grid) const {
  if (grid.dim() != dim_) throw DimensionMismatch("torus function: grid dimension mismatch");
  if (!band_) {
    if (!(grid == *grid_))
      throw DimensionMismatch("torus function: resampling across grids is not defined");
    return values_;
  }
  std::vector<cplx> out(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const std::vector<double> w = grid.centered_node(j);
    double l1 = 0.0;
    for (double x : w) l1 += std::fabs(x);
    out[j] = l1 <= omega_ ? 1.0 : 0.0;
  }
  return out;
}

TorusFunction TorusFunction::conjugate() const {
  if (band_) return *this;
  std::vector<cplx> v = values_;
  for (cplx& z : v) z = std::conj(z);
  return grid_samples(*grid_, std::move(v));
}

namespace {

// 1-D closed form: integral over [-a, a] of e^{2 pi i r t} dt.
double segment_moment(int r, double a) {
  if (r == 0) return 2.0 * a;
  return std::sin(kTwoPi * static_cast<double>(r) * a) / (kPi * static_cast<double>(r));
}

// Adaptive Simpson with explicit error accounting.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double tol, int depth, double& err) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double h = b - a;
  const double whole = h / 6.0 * (fa + 4.0 * fm + fb);
  const double left = h / 12.0 * (fa + 4.0 * flm + fm);
  const double right = h / 12.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    err += std::fabs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1, err) +
         adaptive_simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1, err);
}

template <class F>
double integrate(const F& f, double a, double b, double tol, double& err) {
  if (!(b > a)) return 0.0;
  const double fa = f(a);
  const double fm = f(0.5 * (a + b));
  const double fb = f(b);
  return adaptive_simpson(f, a, b, fa, fm, fb, tol, 48, err);
}

// Moment of the l1 ball of radius a in dimension n >= 1 at frequency r,
// by peeling one axis: c_n(r, a) = 2 int_0^a cos(2 pi r_1 t) c_{n-1}(r', a - t) dt.
double l1_moment(const int* r, int n, double a, double tol, double& err) {
  if (a <= 0.0) return 0.0;
  if (n == 1) return segment_moment(r[0], a);
  const auto f = [&](double t) {
    // Inner quadrature errors accumulate into the same counter; this
    // over-counts (every evaluation point contributes), which keeps the
    // reported bound conservative.
    return std::cos(kTwoPi * static_cast<double>(r[0]) * t) *
           l1_moment(r + 1, n - 1, a - t, tol, err);
  };
  return 2.0 * integrate(f, 0.0, a, tol, err);
}

}  // namespace

BandMomentResult band_moment_with_error(const LatticePoint& r, double omega) {
  if (r.empty()) throw InvalidArgument("band moment: empty frequency");
  if (!(omega > 0.0) || omega > 0.5)
    throw InvalidArgument("band moment: omega must lie in (0, 1/2]");
  const int n = static_cast<int>(r.size());
  if (n == 1) return {segment_moment(r[0], omega), 0.0};
  double err = 0.0;
  const double value = l1_moment(r.data(), n, omega, 1e-12, err);
  // Nested quadrature: inner integrals share the same tolerance, so a safe
  // bound is the accumulated Simpson estimate scaled by the nesting depth.
  const double bound = std::max(1e-10, err * static_cast<double>(n));
  return {value, bound};
}

double band_moment(const LatticePoint& r, double omega) {
  return band_moment_with_error(r, omega).value;
}

}  // namespace ztf
