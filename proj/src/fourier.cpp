#include "ztf/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "ztf/reduce.hpp"

namespace ztf {

namespace {

double dot(const LatticePoint& k, const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) s += static_cast<double>(k[i]) * w[i];
  return s;
}

}  // namespace

TorusFunction dft_lattice_to_torus(const Signal& f, const TorusGrid& grid) {
  if (f.dim() != grid.dim()) throw DimensionMismatch("transform: dimension mismatch");
  std::vector<cplx> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t j) {
    const std::vector<double> w = grid.node(j);
    out[j] = pairwise_sum<cplx>(f.size(), [&](std::size_t i) {
      const LatticePoint k = f.box().point(i);
      return f[i] * std::polar(1.0, -kTwoPi * dot(k, w));
    });
  });
  return TorusFunction::grid_samples(grid, std::move(out));
}

Signal dft_torus_to_lattice(const TorusFunction& F, const LatticeBox& box) {
  if (F.is_band())
    throw InvalidArgument("transform: band form has no sample transform; use band moments");
  if (F.dim() != box.dim()) throw DimensionMismatch("transform: dimension mismatch");
  const TorusGrid& grid = F.grid();
  const std::vector<cplx>& v = F.values();
  Signal out(box);
  parallel_for(box.size(), [&](std::size_t i) {
    const LatticePoint k = box.point(i);
    const cplx sum = pairwise_sum<cplx>(grid.size(), [&](std::size_t j) {
      return v[j] * std::polar(1.0, kTwoPi * dot(k, grid.node(j)));
    });
    out[i] = grid.weight() * sum;
  });
  return out;
}

Signal tf_atom(const Signal& g, const LatticePoint& m, const std::vector<double>& w) {
  if (static_cast<int>(m.size()) != g.dim() || static_cast<int>(w.size()) != g.dim())
    throw DimensionMismatch("tf_atom: dimension mismatch between window, shift, and frequency");
  int reach = 0;
  for (int v : m) reach = std::max(reach, std::abs(v));
  const LatticeBox box(g.dim(), g.box().radius() + reach);
  Signal out(box);
  LatticePoint shifted(m.size());
  for (std::size_t i = 0; i < box.size(); ++i) {
    const LatticePoint k = box.point(i);
    for (std::size_t a = 0; a < m.size(); ++a) shifted[a] = k[a] - m[a];
    const cplx gv = g.at(shifted);
    if (gv != cplx{}) out[i] = std::polar(1.0, kTwoPi * dot(k, w)) * gv;
  }
  return out;
}

}  // namespace ztf
