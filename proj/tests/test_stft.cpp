#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "ztf/fourier.hpp"
#include "ztf/rng.hpp"
#include "ztf/stft.hpp"

using namespace ztf;

namespace {

Signal random_signal(Rng& rng, int dim, int radius) {
  Signal f(LatticeBox(dim, radius));
  for (auto& v : f.values()) v = rng.unit_box_complex();
  return f;
}

double max_abs_diff(const PhaseSpaceField& F, const std::vector<cplx>& ref) {
  double worst = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i)
    worst = std::max(worst, std::abs(F.values()[i] - ref[i]));
  return worst;
}

}  // namespace

TEST_SUITE("stft") {
  TEST_CASE("matches the definition sum in dimensions 1 and 2") {
    Rng rng(101);
    for (int dim : {1, 2}) {
      const Signal f = random_signal(rng, dim, 2);
      const Signal g = random_signal(rng, dim, 1);
      const LatticeBox mbox = stft_mbox(f, g);
      CHECK(mbox.radius() == 3);
      const TorusGrid grid(dim, dim == 1 ? 9 : 5);
      const PhaseSpaceField F = stft(f, g, mbox, grid);
      CHECK(max_abs_diff(F, oracle::stft_field(f, g, mbox, grid)) < 1e-12);
    }
  }

  TEST_CASE("direct and correlation evaluation paths agree") {
    Rng rng(102);
    for (int trial = 0; trial < 10; ++trial) {
      const int dim = 1 + trial % 2;
      const Signal f = random_signal(rng, dim, rng.uniform_int(1, 2));
      const Signal g = random_signal(rng, dim, rng.uniform_int(1, 2));
      const LatticeBox mbox = stft_mbox(f, g);
      const TorusGrid grid(dim, default_resolution(mbox.radius()));
      const PhaseSpaceField a = stft(f, g, mbox, grid);
      const PhaseSpaceField b = stft_via_convolution(f, g, mbox, grid);
      double worst = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
      CHECK(worst < 1e-12);
    }
  }

  TEST_CASE("transform vanishes outside the lag box") {
    Rng rng(103);
    const Signal f = random_signal(rng, 1, 2);
    const Signal g = random_signal(rng, 1, 1);
    const TorusGrid grid(1, 8);
    const PhaseSpaceField wide = stft(f, g, LatticeBox(1, 6), grid);
    for (std::size_t mi = 0; mi < wide.positions(); ++mi) {
      const int m = wide.mbox().point(mi)[0];
      if (std::abs(m) <= 3) continue;
      for (std::size_t j = 0; j < wide.nodes(); ++j)
        CHECK(std::abs(wide.at(mi, j)) == 0.0);
    }
  }

  TEST_CASE("window validation") {
    const Signal f = Signal::delta(1);
    CHECK_THROWS_AS(stft(f, Signal(LatticeBox(1, 1)), TorusGrid(1, 4)), InvalidArgument);
    CHECK_THROWS_AS(stft(f, Signal::delta(2), TorusGrid(1, 4)), DimensionMismatch);
    CHECK_THROWS_AS(stft(f, Signal::delta(1), TorusGrid(2, 4)), DimensionMismatch);
  }

  TEST_CASE("orthogonality relation at quadrature level") {
    Rng rng(104);
    for (int trial = 0; trial < 20; ++trial) {
      const int dim = 1 + trial % 2;
      const Signal f1 = random_signal(rng, dim, 2);
      const Signal f2 = random_signal(rng, dim, 1);
      const Signal g1 = random_signal(rng, dim, 1);
      const Signal g2 = random_signal(rng, dim, 2);
      // shared lag box covering both products; Q resolves every lag
      const LatticeBox mbox(dim, 4);
      const TorusGrid grid(dim, default_resolution(4));
      const cplx lhs = field_inner(stft(f1, g1, mbox, grid), stft(f2, g2, mbox, grid));
      const cplx rhs = inner(f1, f2) * inner(g2, g1);
      CHECK(std::abs(lhs - rhs) < 1e-11 * std::max(1.0, std::abs(rhs)));
    }
  }

  TEST_CASE("plancherel identity") {
    Rng rng(105);
    for (int trial = 0; trial < 20; ++trial) {
      const Signal f = random_signal(rng, 1, rng.uniform_int(1, 3));
      const Signal g = random_signal(rng, 1, rng.uniform_int(1, 3));
      const LatticeBox mbox = stft_mbox(f, g);
      const TorusGrid grid(1, default_resolution(mbox.radius()));
      const PhaseSpaceField F = stft(f, g, mbox, grid);
      const double lhs = std::sqrt(field_inner(F, F).real());
      const double rhs = f.norm_l2() * g.norm_l2();
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    }
  }

  TEST_CASE("inversion through any dual window") {
    Rng rng(106);
    for (int trial = 0; trial < 10; ++trial) {
      const int dim = 1 + trial % 2;
      const Signal f = random_signal(rng, dim, 2);
      const Signal g = random_signal(rng, dim, 1);
      Signal gamma = random_signal(rng, dim, 1);
      while (std::abs(inner(gamma, g)) < 0.1) gamma = random_signal(rng, dim, 1);
      const LatticeBox mbox = stft_mbox(f, g);
      const TorusGrid grid(dim, default_resolution(mbox.radius()));
      const PhaseSpaceField F = stft(f, g, mbox, grid);
      const Signal back = stft_adjoint(F, gamma, f.box());
      const cplx scale = 1.0 / std::conj(inner(g, gamma));
      for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(std::abs(back[i] * scale - f[i]) < 1e-11);
    }
  }

  TEST_CASE("adjoint matches its defining pairing exactly") {
    Rng rng(107);
    const Signal g = random_signal(rng, 1, 1);
    const Signal h = random_signal(rng, 1, 3);
    const LatticeBox mbox(1, 2);
    const TorusGrid grid(1, 7);
    PhaseSpaceField F(mbox, grid);
    for (auto& v : F.values()) v = rng.unit_box_complex();
    // <adjoint(F, g), h> = <F, stft(h, g)> is plain summation algebra, so it
    // holds for every grid, even one too coarse for inversion.
    const Signal out = stft_adjoint(F, g, h.box());
    const cplx lhs = inner(out, h);
    const cplx rhs = field_inner(F, stft(h, g, mbox, grid));
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }

  TEST_CASE("adjoint values match the naive synthesis sum") {
    Rng rng(108);
    const Signal gamma = random_signal(rng, 2, 1);
    PhaseSpaceField F(LatticeBox(2, 1), TorusGrid(2, 3));
    for (auto& v : F.values()) v = rng.unit_box_complex();
    const Signal out = stft_adjoint(F, gamma);
    CHECK(out.box().radius() == 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const cplx ref = oracle::adjoint_value(F, gamma, out.box().point(i));
      CHECK(std::abs(out[i] - ref) < 1e-12);
    }
  }

  TEST_CASE("atom transform peaks at the atom's phase-space location") {
    Rng rng(109);
    Signal g = random_signal(rng, 1, 1);
    const double scale = 1.0 / g.norm_l2();
    for (auto& v : g.values()) v *= scale;
    const TorusGrid grid(1, 6);
    const LatticePoint m0 = {2};
    const std::size_t j0 = 4;
    const Signal atom = tf_atom(g, m0, grid.node(j0));
    const PhaseSpaceField F = stft(atom, g, LatticeBox(1, 4), grid);
    const std::size_t mi = static_cast<std::size_t>(F.mbox().index(m0));
    // |V_g(M_w T_m g)(m, w)| = ||g||^2 = 1, and no other value exceeds it
    CHECK(std::abs(F.at(mi, j0)) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t m = 0; m < F.positions(); ++m)
      for (std::size_t j = 0; j < F.nodes(); ++j)
        CHECK(std::abs(F.at(m, j)) <= 1.0 + 1e-12);
  }
}
