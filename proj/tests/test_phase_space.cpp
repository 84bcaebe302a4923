#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "ztf/phase_space.hpp"
#include "ztf/rng.hpp"

using namespace ztf;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

PhaseSpaceField random_field(Rng& rng, int dim, int radius, int resolution) {
  PhaseSpaceField F(LatticeBox(dim, radius), TorusGrid(dim, resolution));
  for (auto& v : F.values()) v = rng.unit_box_complex();
  return F;
}

Signal random_signal(Rng& rng, int dim, int radius) {
  Signal f(LatticeBox(dim, radius));
  for (auto& v : f.values()) v = rng.unit_box_complex();
  return f;
}

// Plain-loop convolution on matching grids, for cross-checking.
PhaseSpaceField convolve_naive(const PhaseSpaceField& F, const PhaseSpaceField& G) {
  const TorusGrid& grid = F.grid();
  PhaseSpaceField out(LatticeBox(F.dim(), F.mbox().radius() + G.mbox().radius()), grid);
  for (std::size_t mo = 0; mo < out.positions(); ++mo) {
    const LatticePoint m = out.mbox().point(mo);
    for (std::size_t j = 0; j < out.nodes(); ++j) {
      cplx acc = 0.0;
      for (std::size_t li = 0; li < F.positions(); ++li) {
        const LatticePoint l = F.mbox().point(li);
        LatticePoint shift(l.size());
        for (std::size_t i = 0; i < l.size(); ++i) shift[i] = m[i] - l[i];
        const std::ptrdiff_t gi = G.mbox().index(shift);
        if (gi < 0) continue;
        for (std::size_t x = 0; x < grid.size(); ++x)
          acc += grid.weight() * F.at(li, x) *
                 G.at(static_cast<std::size_t>(gi), grid.difference(j, x));
      }
      out.at(mo, j) = acc;
    }
  }
  return out;
}

// Finite-group transform norm in dimension 1, written with no shortcuts.
double group_norm_naive(const PhaseSpaceField& F, const PhaseSpaceField& G, double p) {
  const std::size_t M = F.positions(), Q = F.nodes();
  const double mu = F.grid().weight();
  const double mu_hat = 1.0 / static_cast<double>(M);
  double acc = 0.0, top = 0.0;
  for (std::size_t as = 0; as < M; ++as)
    for (std::size_t at = 0; at < Q; ++at) {
      for (std::size_t cs = 0; cs < M; ++cs)
        for (std::size_t ct = 0; ct < Q; ++ct) {
          cplx v = 0.0;
          for (std::size_t s = 0; s < M; ++s)
            for (std::size_t t = 0; t < Q; ++t) {
              const double phase =
                  static_cast<double>(cs * s) / static_cast<double>(M) +
                  static_cast<double>(ct * t) / static_cast<double>(Q);
              v += F.at(s, t) * std::conj(G.at((s + M - as) % M, (t + Q - at) % Q)) *
                   std::polar(1.0, -oracle::tau * phase);
            }
          v *= mu;
          if (p == kInf)
            top = std::max(top, std::abs(v));
          else
            acc += mu * mu_hat * std::pow(std::abs(v), p);
        }
    }
  return p == kInf ? top : std::pow(acc, 1.0 / p);
}

}  // namespace

TEST_SUITE("field norms") {
  TEST_CASE("lp norms match direct sums") {
    Rng rng(201);
    const PhaseSpaceField F = random_field(rng, 2, 1, 3);
    const double mu = F.grid().weight();
    double l1 = 0.0, l2 = 0.0, sup = 0.0;
    for (const cplx& v : F.values()) {
      l1 += mu * std::abs(v);
      l2 += mu * std::norm(v);
      sup = std::max(sup, std::abs(v));
    }
    CHECK(lp_norm_field(F, 1.0).value == doctest::Approx(l1).epsilon(1e-13));
    CHECK(lp_norm_field(F, 2.0).value == doctest::Approx(std::sqrt(l2)).epsilon(1e-13));
    CHECK(lp_norm_field(F, kInf).value == doctest::Approx(sup));
    CHECK(lp_norm_field(F, 3.5).exact);
    CHECK_FALSE(lp_norm_field(F, 1.0).refinement_delta.has_value());
    CHECK_THROWS_AS(lp_norm_field(F, 0.5), InvalidArgument);
  }
}

TEST_SUITE("convolution") {
  TEST_CASE("matches the plain-loop sum") {
    Rng rng(202);
    for (int dim : {1, 2}) {
      const PhaseSpaceField F = random_field(rng, dim, 1, 3);
      const PhaseSpaceField G = random_field(rng, dim, 2, 3);
      const PhaseSpaceField got = ps_convolve(F, G);
      const PhaseSpaceField want = convolve_naive(F, G);
      REQUIRE(got.mbox() == want.mbox());
      double worst = 0.0;
      for (std::size_t i = 0; i < got.size(); ++i)
        worst = std::max(worst, std::abs(got.values()[i] - want.values()[i]));
      CHECK(worst < 1e-13);
    }
  }

  TEST_CASE("point supports add, frequencies convolve circularly") {
    const TorusGrid grid(1, 4);
    PhaseSpaceField F(LatticeBox(1, 1), grid);
    PhaseSpaceField G(LatticeBox(1, 2), grid);
    F.at(2, 1) = cplx(2.0, 0.0);   // position m=1, node 1/4
    G.at(4, 3) = cplx(3.0, 0.0);   // position m=2, node 3/4
    const PhaseSpaceField C = ps_convolve(F, G);
    for (std::size_t mi = 0; mi < C.positions(); ++mi)
      for (std::size_t j = 0; j < C.nodes(); ++j) {
        const bool hit = C.mbox().point(mi)[0] == 3 && j == 0;  // 1/4 + 3/4 = 0 mod 1
        const cplx expect = hit ? cplx(grid.weight() * 6.0, 0.0) : cplx(0.0);
        CHECK(std::abs(C.at(mi, j) - expect) < 1e-15);
      }
  }

  TEST_CASE("convolving with a scaled point mass translates") {
    Rng rng(203);
    const PhaseSpaceField F = random_field(rng, 1, 2, 5);
    PhaseSpaceField point(LatticeBox(1, 1), F.grid());
    const std::size_t x_node = 3;
    point.at(2, x_node) = cplx(5.0, 0.0);  // position l=1, scaled by Q
    const PhaseSpaceField moved = ps_convolve(F, point);
    const PhaseSpaceField want = ps_translate(F, {1}, x_node);
    REQUIRE(moved.mbox() == want.mbox());
    for (std::size_t i = 0; i < moved.size(); ++i)
      CHECK(std::abs(moved.values()[i] - want.values()[i]) < 1e-13);
  }

  TEST_CASE("operands must share dimension and grid") {
    Rng rng(204);
    const PhaseSpaceField A = random_field(rng, 1, 1, 4);
    const PhaseSpaceField B = random_field(rng, 1, 1, 5);
    const PhaseSpaceField C2 = random_field(rng, 2, 1, 4);
    CHECK_THROWS_AS(ps_convolve(A, B), DimensionMismatch);
    CHECK_THROWS_AS(ps_convolve(A, C2), DimensionMismatch);
  }

  TEST_CASE("Young bound with L1 on the left factor") {
    Rng rng(205);
    for (int trial = 0; trial < 20; ++trial) {
      const int dim = 1 + trial % 2;
      const PhaseSpaceField F = random_field(rng, dim, rng.uniform_int(1, 2), 3);
      const PhaseSpaceField G = random_field(rng, dim, rng.uniform_int(1, 2), 3);
      const PhaseSpaceField C = ps_convolve(F, G);
      const double f1 = lp_norm_field(F, 1.0).value;
      for (double p : {1.0, 2.0, kInf}) {
        const double lhs = lp_norm_field(C, p).value;
        const double rhs = f1 * lp_norm_field(G, p).value;
        CHECK(lhs <= rhs * (1.0 + 1e-10));
      }
    }
  }
}

TEST_SUITE("modulation norms") {
  TEST_CASE("lattice norm with a delta window is the lp norm of f-hat slices") {
    Rng rng(206);
    const Signal f = random_signal(rng, 1, 2);
    const Signal d = Signal::delta(1);
    const NormReport r2 = modulation_norm_lattice(f, d, 2.0);
    CHECK(r2.exact);
    CHECK(r2.value == doctest::Approx(f.norm_l2()).epsilon(1e-12));
    CHECK_FALSE(r2.refinement_delta.has_value());
  }

  TEST_CASE("lattice norm at p=2 is Plancherel for any window") {
    Rng rng(207);
    for (int trial = 0; trial < 10; ++trial) {
      const int dim = 1 + trial % 2;
      const Signal f = random_signal(rng, dim, 2);
      const Signal g = random_signal(rng, dim, 1);
      const NormReport r = modulation_norm_lattice(f, g, 2.0);
      CHECK(r.exact);
      CHECK(r.value == doctest::Approx(f.norm_l2() * g.norm_l2()).epsilon(1e-11));
    }
  }

  TEST_CASE("even integer p is exact once the grid resolves |V|^p") {
    Rng rng(208);
    const Signal f = random_signal(rng, 1, 2);
    const Signal g = random_signal(rng, 1, 1);
    // p = 4, N_f = 2: exact needs Q >= 9
    const NormReport fine = modulation_norm_lattice(f, g, 4.0, TorusGrid(1, 9));
    CHECK(fine.exact);
    const NormReport finer = modulation_norm_lattice(f, g, 4.0, TorusGrid(1, 13));
    CHECK(fine.value == doctest::Approx(finer.value).epsilon(1e-12));
    const NormReport coarse = modulation_norm_lattice(f, g, 4.0, TorusGrid(1, 5));
    CHECK_FALSE(coarse.exact);
    REQUIRE(coarse.refinement_delta.has_value());
    // the recorded delta is the distance to the doubled-grid value
    const NormReport doubled = modulation_norm_lattice(f, g, 4.0, TorusGrid(1, 10));
    CHECK(*coarse.refinement_delta ==
          doctest::Approx(std::abs(coarse.value - doubled.value)).epsilon(1e-10));
  }

  TEST_CASE("odd and fractional p are flagged approximate") {
    Rng rng(209);
    const Signal f = random_signal(rng, 1, 1);
    const Signal g = random_signal(rng, 1, 1);
    for (double p : {1.0, 3.0, 2.5}) {
      const NormReport r = modulation_norm_lattice(f, g, p);
      CHECK_FALSE(r.exact);
      CHECK(r.refinement_delta.has_value());
    }
    // sup norm: max over sampled nodes, flagged approximate as well
    const NormReport s = modulation_norm_lattice(f, g, kInf);
    CHECK_FALSE(s.exact);
  }

  TEST_CASE("field norm matches the four-loop group transform") {
    Rng rng(210);
    const PhaseSpaceField F = random_field(rng, 1, 1, 3);
    const PhaseSpaceField G = random_field(rng, 1, 1, 3);
    for (double p : {1.0, 2.0, 4.0, kInf}) {
      const NormReport r = modulation_norm_field(F, G, p);
      CHECK(r.value == doctest::Approx(group_norm_naive(F, G, p)).epsilon(1e-11));
      CHECK(r.exact);
    }
  }

  TEST_CASE("field norm at p=2 factors into the two L2 norms") {
    Rng rng(211);
    for (int trial = 0; trial < 5; ++trial) {
      const PhaseSpaceField F = random_field(rng, 1, 2, 4);
      const PhaseSpaceField G = random_field(rng, 1, 2, 4);
      const double lhs = modulation_norm_field(F, G, 2.0).value;
      const double rhs = lp_norm_field(F, 2.0).value * lp_norm_field(G, 2.0).value;
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    }
  }

  TEST_CASE("field norm with a unit point window reduces M1 to the L1 norm") {
    Rng rng(212);
    const PhaseSpaceField F = random_field(rng, 1, 1, 4);
    PhaseSpaceField G(F.mbox(), F.grid());
    const std::size_t center = (G.positions() / 2) * G.nodes();
    G.values()[center] = std::sqrt(static_cast<double>(G.grid().size()));
    CHECK(lp_norm_field(G, 2.0).value == doctest::Approx(1.0).epsilon(1e-13));
    const double m1 = modulation_norm_field(F, G, 1.0).value;
    const double q = std::sqrt(static_cast<double>(F.grid().size()));
    CHECK(m1 == doctest::Approx(q * lp_norm_field(F, 1.0).value).epsilon(1e-11));
  }
}
