#include "ztf/structured.hpp"

#include <algorithm>
#include <cmath>

#include "ztf/fourier.hpp"
#include "ztf/reduce.hpp"
#include "ztf/stft.hpp"

namespace ztf {

namespace {

double dot(const LatticePoint& k, const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) s += static_cast<double>(k[i]) * w[i];
  return s;
}

LatticePoint abs_point(LatticePoint r) {
  for (int& v : r) v = std::abs(v);
  return r;
}

}  // namespace

Signal time_truncate(const Signal& f, int t) {
  if (t < 0) throw InvalidArgument("time truncate: radius must be >= 0");
  Signal out(f.box());
  for (std::size_t i = 0; i < f.size(); ++i)
    if (l1_norm(f.box().point(i)) <= t) out[i] = f[i];
  return out;
}

Signal band_project(const Signal& f, double omega, const LatticeBox& out_box,
                    double* moment_error) {
  if (f.dim() != out_box.dim()) throw DimensionMismatch("band project: dimension mismatch");
  if (!(omega > 0.0) || omega > 0.5)
    throw InvalidArgument("band project: omega must lie in (0, 1/2]");

  const LatticeBox rbox(f.dim(), out_box.radius() + f.box().radius());
  std::vector<double> moments(rbox.size());
  std::vector<double> errors(rbox.size());
  for (std::size_t ri = 0; ri < rbox.size(); ++ri) {
    const BandMomentResult m = band_moment_with_error(abs_point(rbox.point(ri)), omega);
    moments[ri] = m.value;
    errors[ri] = m.error_bound;
  }

  Signal out(out_box);
  LatticePoint r(static_cast<std::size_t>(f.dim()));
  for (std::size_t ki = 0; ki < out_box.size(); ++ki) {
    const LatticePoint k = out_box.point(ki);
    out[ki] = pairwise_sum<cplx>(f.size(), [&](std::size_t li) {
      const cplx fv = f[li];
      if (fv == cplx{}) return cplx{};
      const LatticePoint l = f.box().point(li);
      for (std::size_t a = 0; a < r.size(); ++a) r[a] = k[a] - l[a];
      return fv * moments[static_cast<std::size_t>(rbox.index(r))];
    });
  }

  if (moment_error != nullptr) {
    double worst = 0.0;
    for (std::size_t ki = 0; ki < out_box.size(); ++ki) {
      const LatticePoint k = out_box.point(ki);
      double acc = 0.0;
      for (std::size_t li = 0; li < f.size(); ++li) {
        const LatticePoint l = f.box().point(li);
        for (std::size_t a = 0; a < r.size(); ++a) r[a] = k[a] - l[a];
        acc += std::abs(f[li]) * errors[static_cast<std::size_t>(rbox.index(r))];
      }
      worst = std::max(worst, acc);
    }
    *moment_error = worst;
  }
  return out;
}

LpsComparison lps_compare(int time_radius, double omega, const TorusGrid& grid) {
  if (grid.dim() != 1) throw InvalidArgument("lps compare: defined in dimension 1");
  if (time_radius < 0) throw InvalidArgument("lps compare: T must be >= 0");
  if (!(omega > 0.0) || omega > 0.5)
    throw InvalidArgument("lps compare: omega must lie in (0, 1/2]");

  const int T = time_radius;
  const double card = static_cast<double>(2 * T + 1);
  Signal window{LatticeBox(1, T)};
  for (std::size_t i = 0; i < window.size(); ++i) window[i] = 1.0 / std::sqrt(card);

  const Symbol sigma = Symbol::band_region(1, T, omega);
  const LatticeBox box(1, 2 * T);
  LpsComparison cmp;
  cmp.time_radius = T;
  cmp.omega = omega;
  cmp.loc = loc_kernel(sigma, window, window, box, box, grid);

  const Eigen::Index dim = static_cast<Eigen::Index>(box.size());
  cmp.lps = OperatorMatrix{box, box, Eigen::MatrixXcd(dim, dim)};
  cmp.weight_profile = Eigen::MatrixXd(dim, dim);
  for (Eigen::Index ki = 0; ki < dim; ++ki) {
    const int k = static_cast<int>(ki) - 2 * T;
    for (Eigen::Index li = 0; li < dim; ++li) {
      const int l = static_cast<int>(li) - 2 * T;
      cmp.lps.m(ki, li) = band_moment({std::abs(k - l)}, omega);
      int hits = 0;
      for (int m = -T; m <= T; ++m)
        if (std::abs(k - m) <= T && std::abs(l - m) <= T) ++hits;
      cmp.weight_profile(ki, li) = static_cast<double>(hits) / card;
    }
  }

  const SingularSpectrum diff = singular_values(Eigen::MatrixXcd(cmp.loc.m - cmp.lps.m));
  cmp.difference_operator_norm = diff.values.empty() ? 0.0 : diff.values.front();
  return cmp;
}

FrequencyKernel paracommutator_kernel(const TorusFunction& beta, const Signal& g1,
                                      const Signal& g2, const TorusGrid& grid) {
  if (beta.dim() != g1.dim() || beta.dim() != g2.dim() || beta.dim() != grid.dim())
    throw DimensionMismatch("paracommutator: dimension mismatch");

  const Eigen::Index nodes = static_cast<Eigen::Index>(grid.size());
  FrequencyKernel A{grid, Eigen::MatrixXcd(nodes, nodes)};

  if (!beta.is_band()) {
    if (!(beta.grid() == grid))
      throw DimensionMismatch("paracommutator: sampled factor must share the grid");
    const TorusFunction t1 = dft_lattice_to_torus(g1, grid);
    const TorusFunction t2 = dft_lattice_to_torus(g2, grid);
    parallel_for(grid.size(), [&](std::size_t i) {
      for (std::size_t j = 0; j < grid.size(); ++j) {
        const cplx sum = pairwise_sum<cplx>(grid.size(), [&](std::size_t s) {
          const cplx b = beta.values()[s];
          if (b == cplx{}) return cplx{};
          return b * std::conj(t1.values()[grid.difference(i, s)]) *
                 t2.values()[grid.difference(j, s)];
        });
        A.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            grid.weight() * sum;
      }
    });
    return A;
  }

  // Band factor: expand both transforms over the lattice, so each entry is a
  // double window sum against exact moments c(l - k).
  const LatticeBox rbox(beta.dim(), g1.box().radius() + g2.box().radius());
  std::vector<double> moments(rbox.size());
  for (std::size_t ri = 0; ri < rbox.size(); ++ri)
    moments[ri] = band_moment(abs_point(rbox.point(ri)), beta.omega());

  parallel_for(grid.size(), [&](std::size_t i) {
    const std::vector<double> xi = grid.node(i);
    LatticePoint r(static_cast<std::size_t>(beta.dim()));
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const std::vector<double> eta = grid.node(j);
      const cplx sum =
          pairwise_sum<cplx>(g1.size() * g2.size(), [&](std::size_t t) {
            const std::size_t ki = t / g2.size();
            const std::size_t li = t % g2.size();
            const cplx a = g1[ki];
            const cplx b = g2[li];
            if (a == cplx{} || b == cplx{}) return cplx{};
            const LatticePoint k = g1.box().point(ki);
            const LatticePoint l = g2.box().point(li);
            for (std::size_t ax = 0; ax < r.size(); ++ax) r[ax] = l[ax] - k[ax];
            const double phase = dot(k, xi) - dot(l, eta);
            return std::conj(a) * b * moments[static_cast<std::size_t>(rbox.index(r))] *
                   std::polar(1.0, kTwoPi * phase);
          });
      A.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sum;
    }
  });
  return A;
}

cplx paracommutator_form(const FrequencyKernel& A, const Signal& alpha, const Signal& f,
                         const Signal& h) {
  const TorusGrid& grid = A.grid;
  if (alpha.dim() != grid.dim() || f.dim() != grid.dim() || h.dim() != grid.dim())
    throw DimensionMismatch("paracommutator: dimension mismatch");

  const TorusFunction ahat = dft_lattice_to_torus(alpha, grid);
  const TorusFunction fhat = dft_lattice_to_torus(f, grid);
  const TorusFunction hhat = dft_lattice_to_torus(h, grid);
  const std::size_t nodes = grid.size();
  const cplx sum = pairwise_sum<cplx>(nodes * nodes, [&](std::size_t t) {
    const std::size_t i = t / nodes;
    const std::size_t j = t % nodes;
    const cplx a = A.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    if (a == cplx{}) return cplx{};
    return a * ahat.values()[grid.difference(j, i)] * fhat.values()[i] *
           std::conj(hhat.values()[j]);
  });
  return grid.weight() * grid.weight() * sum;
}

Signal paraproduct(const Signal& g1, const Signal& g2, const Signal& f, const Signal& h,
                   const TorusGrid& grid) {
  if (g1.dim() != grid.dim() || g2.dim() != grid.dim() || f.dim() != grid.dim() ||
      h.dim() != grid.dim())
    throw DimensionMismatch("paraproduct: dimension mismatch");

  // The modulated-window convolutions collapse to transform slices:
  // (M_w g~ * f)(k) = e^{2 pi i w.k} V_g f(k, w), and the two synthesis
  // phases cancel in the product.
  const int radius = std::min(f.box().radius() + g1.box().radius(),
                              h.box().radius() + g2.box().radius());
  const LatticeBox box(grid.dim(), radius);
  const PhaseSpaceField V1 = stft(f, g1, box, grid);
  const PhaseSpaceField V2 = stft(h, g2, box, grid);

  Signal out(box);
  parallel_for(box.size(), [&](std::size_t ki) {
    const cplx sum = pairwise_sum<cplx>(grid.size(), [&](std::size_t j) {
      return V1.at(ki, j) * std::conj(V2.at(ki, j));
    });
    out[ki] = grid.weight() * sum;
  });
  return out;
}

TorusFunction multiplier_symbol(const TorusFunction& beta, const Signal& g1,
                                const Signal& g2, const TorusGrid& grid) {
  if (beta.dim() != g1.dim() || beta.dim() != g2.dim() || beta.dim() != grid.dim())
    throw DimensionMismatch("multiplier: dimension mismatch");

  std::vector<cplx> mu(grid.size());
  if (!beta.is_band()) {
    if (!(beta.grid() == grid))
      throw DimensionMismatch("multiplier: sampled factor must share the grid");
    const TorusFunction t1 = dft_lattice_to_torus(g1, grid);
    const TorusFunction t2 = dft_lattice_to_torus(g2, grid);
    parallel_for(grid.size(), [&](std::size_t i) {
      const cplx sum = pairwise_sum<cplx>(grid.size(), [&](std::size_t s) {
        const cplx b = beta.values()[s];
        if (b == cplx{}) return cplx{};
        const std::size_t d = grid.difference(i, s);
        return b * std::conj(t1.values()[d]) * t2.values()[d];
      });
      mu[i] = grid.weight() * sum;
    });
    return TorusFunction::grid_samples(grid, std::move(mu));
  }

  const LatticeBox rbox(beta.dim(), g1.box().radius() + g2.box().radius());
  std::vector<double> moments(rbox.size());
  for (std::size_t ri = 0; ri < rbox.size(); ++ri)
    moments[ri] = band_moment(abs_point(rbox.point(ri)), beta.omega());
  parallel_for(grid.size(), [&](std::size_t i) {
    const std::vector<double> xi = grid.node(i);
    LatticePoint r(static_cast<std::size_t>(beta.dim()));
    mu[i] = pairwise_sum<cplx>(g1.size() * g2.size(), [&](std::size_t t) {
      const std::size_t ki = t / g2.size();
      const std::size_t li = t % g2.size();
      const cplx a = g1[ki];
      const cplx b = g2[li];
      if (a == cplx{} || b == cplx{}) return cplx{};
      const LatticePoint k = g1.box().point(ki);
      const LatticePoint l = g2.box().point(li);
      for (std::size_t ax = 0; ax < r.size(); ++ax) r[ax] = l[ax] - k[ax];
      const double phase = dot(k, xi) - dot(l, xi);
      return std::conj(a) * b * moments[static_cast<std::size_t>(rbox.index(r))] *
             std::polar(1.0, kTwoPi * phase);
    });
  });
  return TorusFunction::grid_samples(grid, std::move(mu));
}

Signal multiplier_apply(const TorusFunction& mu, const Signal& f,
                        const LatticeBox& out_box) {
  if (mu.is_band())
    throw InvalidArgument("multiplier apply: band symbols have exact moments; project instead");
  if (mu.dim() != f.dim() || mu.dim() != out_box.dim())
    throw DimensionMismatch("multiplier: dimension mismatch");

  const TorusGrid& grid = mu.grid();
  const TorusFunction fhat = dft_lattice_to_torus(f, grid);
  std::vector<cplx> prod(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) prod[j] = mu.values()[j] * fhat.values()[j];
  return dft_torus_to_lattice(TorusFunction::grid_samples(grid, std::move(prod)), out_box);
}

}  // namespace ztf
