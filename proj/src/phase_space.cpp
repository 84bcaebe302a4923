#include "ztf/phase_space.hpp"

#include <algorithm>
#include <cmath>

#include "ztf/reduce.hpp"

namespace ztf {

namespace {

bool even_integer(double p) {
  return std::isfinite(p) && std::floor(p) == p &&
         (static_cast<long long>(p) % 2) == 0;
}

double field_lp_value(const PhaseSpaceField& F, double p) {
  if (std::isinf(p)) {
    double best = 0.0;
    for (const cplx& v : F.values()) best = std::max(best, std::abs(v));
    return best;
  }
  if (!(p >= 1.0)) throw InvalidArgument("field norm: p must lie in [1, inf]");
  const double sum = pairwise_sum<double>(F.size(), [&](std::size_t i) {
    return std::pow(std::abs(F.values()[i]), p);
  });
  return std::pow(F.grid().weight() * sum, 1.0 / p);
}

}  // namespace

NormReport lp_norm_field(const PhaseSpaceField& F, double p) {
  return {p, field_lp_value(F, p), true, std::nullopt};
}

PhaseSpaceField ps_convolve(const PhaseSpaceField& F, const PhaseSpaceField& G) {
  if (F.dim() != G.dim() || !(F.grid() == G.grid()))
    throw DimensionMismatch("phase-space convolution: fields must share dimension and grid");
  const TorusGrid& grid = F.grid();
  const LatticeBox out_box(F.dim(), F.mbox().radius() + G.mbox().radius());
  PhaseSpaceField out(out_box, grid);
  const std::size_t nodes = grid.size();

  parallel_for(out_box.size(), [&](std::size_t mi) {
    const LatticePoint m = out_box.point(mi);
    LatticePoint diff(m.size());
    for (std::size_t j = 0; j < nodes; ++j) {
      const cplx sum = pairwise_sum<cplx>(F.positions() * nodes, [&](std::size_t t) {
        const std::size_t li = t / nodes;
        const std::size_t i = t % nodes;
        const cplx fv = F.at(li, i);
        if (fv == cplx{}) return cplx{};
        const LatticePoint l = F.mbox().point(li);
        for (std::size_t a = 0; a < m.size(); ++a) diff[a] = m[a] - l[a];
        const std::ptrdiff_t gi = G.mbox().index(diff);
        if (gi < 0) return cplx{};
        return fv * G.at(static_cast<std::size_t>(gi), grid.difference(j, i));
      });
      out.at(mi, j) = grid.weight() * sum;
    }
  });
  return out;
}

PhaseSpaceField ps_translate(const PhaseSpaceField& F, const LatticePoint& l,
                             std::size_t x_node) {
  if (static_cast<int>(l.size()) != F.dim())
    throw DimensionMismatch("phase-space translate: shift dimension mismatch");
  int reach = 0;
  for (int v : l) reach = std::max(reach, std::abs(v));
  const LatticeBox out_box(F.dim(), F.mbox().radius() + reach);
  PhaseSpaceField out(out_box, F.grid());
  LatticePoint src(l.size());
  for (std::size_t mi = 0; mi < out_box.size(); ++mi) {
    const LatticePoint m = out_box.point(mi);
    for (std::size_t a = 0; a < l.size(); ++a) src[a] = m[a] - l[a];
    const std::ptrdiff_t si = F.mbox().index(src);
    if (si < 0) continue;
    for (std::size_t j = 0; j < F.nodes(); ++j)
      out.at(mi, j) = F.at(static_cast<std::size_t>(si), F.grid().difference(j, x_node));
  }
  return out;
}

NormReport modulation_norm_lattice(const Signal& f, const Signal& g, double p,
                                   const TorusGrid& grid) {
  if (f.dim() != g.dim() || f.dim() != grid.dim())
    throw DimensionMismatch("modulation norm: dimension mismatch");
  if (g.is_zero()) throw InvalidArgument("modulation norm: window must be nonzero");
  const LatticeBox mbox = stft_mbox(f, g);
  const double value = field_lp_value(stft(f, g, mbox, grid), p);
  // |V|^p is a resolved trigonometric polynomial exactly when p is an even
  // integer and every product frequency stays inside the grid's alias-free
  // range: Q >= p N_f + 1.
  const bool exact =
      even_integer(p) && grid.resolution() >= static_cast<int>(p) * f.box().radius() + 1;
  NormReport report{p, value, exact, std::nullopt};
  if (!exact) {
    const TorusGrid fine(grid.dim(), 2 * grid.resolution());
    report.refinement_delta = std::fabs(value - field_lp_value(stft(f, g, mbox, fine), p));
  }
  return report;
}

NormReport modulation_norm_lattice(const Signal& f, const Signal& g, double p) {
  const TorusGrid grid(f.dim(),
                       default_resolution(f.box().radius() + g.box().radius()));
  return modulation_norm_lattice(f, g, p, grid);
}

NormReport modulation_norm_field(const PhaseSpaceField& F, const PhaseSpaceField& G,
                                 double p) {
  if (!(F.mbox() == G.mbox()) || !(F.grid() == G.grid()))
    throw DimensionMismatch("modulation norm: fields must share box and grid");
  bool zero = true;
  for (const cplx& v : G.values())
    if (v != cplx{}) { zero = false; break; }
  if (zero) throw InvalidArgument("modulation norm: window field must be nonzero");
  if (!std::isinf(p) && !(p >= 1.0))
    throw InvalidArgument("modulation norm: p must lie in [1, inf]");

  const int n = F.dim();
  const int M = F.mbox().side();
  const int Q = F.grid().resolution();
  const std::size_t npos = F.positions();
  const std::size_t nnod = F.nodes();
  const std::size_t group = npos * nnod;

  // Cyclic difference tables for the finite group Z_M^n x Z_Q^n.
  std::vector<std::size_t> pos_sub(npos * npos);
  {
    const LatticeBox& box = F.mbox();
    std::vector<int> d(static_cast<std::size_t>(n));
    for (std::size_t a = 0; a < npos; ++a) {
      const LatticePoint pa = box.point(a);
      for (std::size_t b = 0; b < npos; ++b) {
        const LatticePoint pb = box.point(b);
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i) {
          int digit = (pa[static_cast<std::size_t>(i)] - pb[static_cast<std::size_t>(i)]) % M;
          if (digit < 0) digit += M;
          idx = idx * static_cast<std::size_t>(M) + static_cast<std::size_t>(digit);
        }
        pos_sub[a * npos + b] = idx;
      }
    }
  }
  std::vector<std::size_t> node_sub(nnod * nnod);
  for (std::size_t a = 0; a < nnod; ++a)
    for (std::size_t b = 0; b < nnod; ++b)
      node_sub[a * nnod + b] = F.grid().difference(a, b);

  // Characters split over the two factors; tabulating each factor keeps the
  // cubic accumulation below free of trig calls.
  const auto factor_table = [n](std::size_t count, int base) {
    std::vector<cplx> table(count * count);
    for (std::size_t c = 0; c < count; ++c)
      for (std::size_t x = 0; x < count; ++x) {
        double phase = 0.0;
        std::size_t cu = c, xu = x;
        for (int i = 0; i < n; ++i) {
          phase += static_cast<double>((cu % base) * (xu % base)) /
                   static_cast<double>(base);
          cu /= static_cast<std::size_t>(base);
          xu /= static_cast<std::size_t>(base);
        }
        table[c * count + x] = std::polar(1.0, kTwoPi * phase);
      }
    return table;
  };
  const std::vector<cplx> pos_char = factor_table(npos, M);
  const std::vector<cplx> node_char = factor_table(nnod, Q);
  const auto character = [&](std::size_t chi, std::size_t x) {
    return pos_char[(chi / nnod) * npos + x / nnod] *
           node_char[(chi % nnod) * nnod + x % nnod];
  };

  const double mu = F.grid().weight();  // Q^{-n} per group element
  double mu_hat = 1.0;                  // M^{-n} per character
  for (int i = 0; i < n; ++i) mu_hat /= static_cast<double>(M);

  // Norm accumulation over the |H|^2 phase-space of the finite group.
  std::vector<double> per_shift(group);
  parallel_for(group, [&](std::size_t a) {
    std::vector<cplx> slice(group);
    for (std::size_t x = 0; x < group; ++x) {
      const std::size_t xu = x / nnod, xj = x % nnod;
      const std::size_t au = a / nnod, aj = a % nnod;
      const std::size_t su = pos_sub[xu * npos + au];
      const std::size_t sj = node_sub[xj * nnod + aj];
      slice[x] = F.at(xu, xj) * std::conj(G.at(su, sj));
    }
    double acc = 0.0;
    bool first = true;
    for (std::size_t chi = 0; chi < group; ++chi) {
      const cplx v = mu * pairwise_sum<cplx>(group, [&](std::size_t x) {
        return slice[x] * std::conj(character(chi, x));
      });
      const double mag = std::abs(v);
      if (std::isinf(p)) {
        acc = first ? mag : std::max(acc, mag);
        first = false;
      } else {
        acc += mu_hat * std::pow(mag, p);
      }
    }
    per_shift[a] = acc;
  });

  double value;
  if (std::isinf(p)) {
    value = 0.0;
    for (double v : per_shift) value = std::max(value, v);
  } else {
    const double total =
        pairwise_sum<double>(group, [&](std::size_t a) { return mu * per_shift[a]; });
    value = std::pow(total, 1.0 / p);
  }
  return {p, value, true, std::nullopt};
}

}  // namespace ztf
