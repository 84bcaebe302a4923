#include "ztf/stft.hpp"

#include <cmath>

#include "ztf/reduce.hpp"

namespace ztf {

namespace {

double dot(const LatticePoint& k, const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) s += static_cast<double>(k[i]) * w[i];
  return s;
}

void check_operands(const Signal& f, const Signal& g, const LatticeBox& mbox,
                    const TorusGrid& grid) {
  if (f.dim() != g.dim() || f.dim() != mbox.dim() || f.dim() != grid.dim())
    throw DimensionMismatch("stft: dimension mismatch among signal, window, box, grid");
  if (g.is_zero()) throw InvalidArgument("stft: window must be nonzero");
}

}  // namespace

PhaseSpaceField::PhaseSpaceField(const LatticeBox& mbox, const TorusGrid& grid)
    : mbox_(mbox), grid_(grid), values_(mbox.size() * grid.size()) {
  if (mbox.dim() != grid.dim())
    throw DimensionMismatch("phase space field: box/grid dimension mismatch");
}

LatticeBox stft_mbox(const Signal& f, const Signal& g) {
  if (f.dim() != g.dim()) throw DimensionMismatch("stft: dimension mismatch");
  return LatticeBox(f.dim(), f.box().radius() + g.box().radius());
}

PhaseSpaceField stft(const Signal& f, const Signal& g, const LatticeBox& mbox,
                     const TorusGrid& grid) {
  check_operands(f, g, mbox, grid);
  PhaseSpaceField out(mbox, grid);

  // Character table over f's box, shared by every position.
  const std::size_t nk = f.size();
  std::vector<cplx> table(grid.size() * nk);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const std::vector<double> w = grid.node(j);
    for (std::size_t i = 0; i < nk; ++i)
      table[j * nk + i] = std::polar(1.0, -kTwoPi * dot(f.box().point(i), w));
  }

  parallel_for(mbox.size(), [&](std::size_t mi) {
    const LatticePoint m = mbox.point(mi);
    // Windowed slice f(k) conj(g(k - m)) on f's box.
    std::vector<cplx> slice(nk);
    LatticePoint lag(m.size());
    bool any = false;
    for (std::size_t i = 0; i < nk; ++i) {
      const LatticePoint k = f.box().point(i);
      for (std::size_t a = 0; a < m.size(); ++a) lag[a] = k[a] - m[a];
      const cplx gv = g.at(lag);
      if (gv != cplx{} && f[i] != cplx{}) {
        slice[i] = f[i] * std::conj(gv);
        any = true;
      }
    }
    if (!any) return;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const cplx* row = table.data() + j * nk;
      out.at(mi, j) =
          pairwise_sum<cplx>(nk, [&](std::size_t i) { return row[i] * slice[i]; });
    }
  });
  return out;
}

PhaseSpaceField stft(const Signal& f, const Signal& g, const TorusGrid& grid) {
  return stft(f, g, stft_mbox(f, g), grid);
}

PhaseSpaceField stft_via_convolution(const Signal& f, const Signal& g,
                                     const LatticeBox& mbox, const TorusGrid& grid) {
  check_operands(f, g, mbox, grid);
  PhaseSpaceField out(mbox, grid);
  parallel_for(mbox.size(), [&](std::size_t mi) {
    const LatticePoint m = mbox.point(mi);
    LatticePoint diff(m.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const std::vector<double> w = grid.node(j);
      // (f * M_w g~)(m) with g~(x) = conj(g(-x)), i.e. the involuted window.
      const cplx conv = pairwise_sum<cplx>(f.size(), [&](std::size_t li) {
        const LatticePoint l = f.box().point(li);
        for (std::size_t a = 0; a < m.size(); ++a) diff[a] = l[a] - m[a];
        const cplx gv = g.at(diff);  // g~(m - l) = conj(g(l - m))
        if (gv == cplx{}) return cplx{};
        return f[li] * std::polar(1.0, -kTwoPi * dot(diff, w)) * std::conj(gv);
      });
      out.at(mi, j) = std::polar(1.0, -kTwoPi * dot(m, w)) * conv;
    }
  });
  return out;
}

Signal stft_adjoint(const PhaseSpaceField& F, const Signal& gamma,
                    const LatticeBox& out_box) {
  if (F.dim() != gamma.dim() || F.dim() != out_box.dim())
    throw DimensionMismatch("stft adjoint: dimension mismatch");
  if (gamma.is_zero()) throw InvalidArgument("stft adjoint: window must be nonzero");
  const TorusGrid& grid = F.grid();
  Signal out(out_box);
  parallel_for(out_box.size(), [&](std::size_t ki) {
    const LatticePoint k = out_box.point(ki);
    LatticePoint lag(k.size());
    const cplx total = pairwise_sum<cplx>(F.positions(), [&](std::size_t mi) {
      const LatticePoint m = F.mbox().point(mi);
      for (std::size_t a = 0; a < k.size(); ++a) lag[a] = k[a] - m[a];
      const cplx gv = gamma.at(lag);
      if (gv == cplx{}) return cplx{};
      const cplx synth = pairwise_sum<cplx>(grid.size(), [&](std::size_t j) {
        return F.at(mi, j) * std::polar(1.0, kTwoPi * dot(k, grid.node(j)));
      });
      return grid.weight() * synth * gv;
    });
    out[ki] = total;
  });
  return out;
}

Signal stft_adjoint(const PhaseSpaceField& F, const Signal& gamma) {
  const LatticeBox out_box(F.dim(), F.mbox().radius() + gamma.box().radius());
  return stft_adjoint(F, gamma, out_box);
}

cplx field_inner(const PhaseSpaceField& F, const PhaseSpaceField& G) {
  if (!(F.mbox() == G.mbox()) || !(F.grid() == G.grid()))
    throw DimensionMismatch("field inner: fields must share box and grid");
  const cplx sum = pairwise_sum<cplx>(F.size(), [&](std::size_t i) {
    return F.values()[i] * std::conj(G.values()[i]);
  });
  return F.grid().weight() * sum;
}

}  // namespace ztf
