#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "ztf/fourier.hpp"
#include "ztf/rng.hpp"
#include "ztf/spectral.hpp"

using namespace ztf;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

Signal random_signal(Rng& rng, int dim, int radius) {
  Signal f(LatticeBox(dim, radius));
  for (auto& v : f.values()) v = rng.unit_box_complex();
  return f;
}

Signal nonneg_signal(Rng& rng, int dim, int radius) {
  Signal f(LatticeBox(dim, radius));
  for (auto& v : f.values()) v = cplx(rng.uniform(), 0.0);
  return f;
}

const BoundCheck& find_check(const BoundReport& r, const std::string& name) {
  for (const BoundCheck& c : r.checks)
    if (c.name == name) return c;
  REQUIRE(false);
  static BoundCheck none;
  return none;
}

}  // namespace

TEST_SUITE("singular values") {
  TEST_CASE("diagonal matrices expose their moduli, sorted") {
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(3, 3);
    D(0, 0) = cplx(0.0, -2.0);
    D(1, 1) = cplx(3.0, 0.0);
    D(2, 2) = cplx(0.6, 0.8);
    const SingularSpectrum s = singular_values(D);
    REQUIRE(s.values.size() == 3);
    CHECK(s.values[0] == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(s.values[1] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(s.values[2] == doctest::Approx(1.0).epsilon(1e-13));
  }

  TEST_CASE("rank-one matrices have a single singular value") {
    Rng rng(401);
    Eigen::VectorXcd u(4), v(3);
    for (int i = 0; i < 4; ++i) u(i) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    for (int i = 0; i < 3; ++i) v(i) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const SingularSpectrum s = singular_values(Eigen::MatrixXcd(u * v.adjoint()));
    CHECK(s.values[0] == doctest::Approx(u.norm() * v.norm()).epsilon(1e-12));
    for (std::size_t i = 1; i < s.values.size(); ++i) CHECK(s.values[i] < 1e-12);
  }

  TEST_CASE("schatten norms: closed forms, monotonicity, validation") {
    SingularSpectrum s{{3.0, 2.0, 1.0}};
    CHECK(schatten_norm(s, 1.0) == doctest::Approx(6.0));
    CHECK(schatten_norm(s, 2.0) == doctest::Approx(std::sqrt(14.0)));
    CHECK(schatten_norm(s, kInf) == doctest::Approx(3.0));
    double prev = schatten_norm(s, 1.0);
    for (double p : {1.5, 2.0, 3.0, 7.0, 40.0}) {
      const double cur = schatten_norm(s, p);
      CHECK(cur <= prev * (1.0 + 1e-12));
      prev = cur;
    }
    CHECK(schatten_norm(s, kInf) <= prev * (1.0 + 1e-12));
    CHECK_THROWS_AS(schatten_norm(s, 0.99), InvalidArgument);
    CHECK_THROWS_AS(schatten_norm(s, std::nan("")), InvalidArgument);
    CHECK(schatten_norm(SingularSpectrum{}, 2.0) == 0.0);
  }

  TEST_CASE("schatten 2 equals the Frobenius norm of a random kernel") {
    Rng rng(402);
    const TorusGrid grid(1, 6);
    PhaseSpaceField field(LatticeBox(1, 1), grid);
    for (auto& v : field.values()) v = rng.unit_box_complex();
    const Signal g1 = random_signal(rng, 1, 1);
    const Signal g2 = random_signal(rng, 1, 1);
    const OperatorMatrix K = loc_kernel(Symbol::grid(field), g1, g2, LatticeBox(1, 2),
                                        LatticeBox(1, 2), grid);
    const double s2 = schatten_norm(singular_values(K), 2.0);
    CHECK(s2 == doctest::Approx(K.m.norm()).epsilon(1e-12));
  }

  TEST_CASE("trace sums the diagonal and rejects rectangles") {
    OperatorMatrix K{LatticeBox(1, 1), LatticeBox(1, 1), Eigen::MatrixXcd::Zero(3, 3)};
    K.m(0, 0) = cplx(1, 2);
    K.m(1, 1) = cplx(-4, 0);
    K.m(2, 2) = cplx(0, 1);
    CHECK(std::abs(trace(K) - cplx(-3, 3)) < 1e-15);
    OperatorMatrix R{LatticeBox(1, 2), LatticeBox(1, 1), Eigen::MatrixXcd::Zero(5, 3)};
    CHECK_THROWS_AS(trace(R), DimensionMismatch);
  }
}

TEST_SUITE("berezin") {
  TEST_CASE("entries are quadratic forms against coherent atoms") {
    Rng rng(403);
    const TorusGrid grid(1, 8);
    const Signal alpha = nonneg_signal(rng, 1, 1);
    const Symbol sigma = Symbol::time_only(alpha);
    const Signal g = random_signal(rng, 1, 1);
    const LatticeBox mbox(1, 2);
    const PhaseSpaceField bz = berezin_symbol(sigma, g, mbox, grid);
    // recompute two entries directly
    const OperatorMatrix K =
        loc_kernel(sigma, g, g, LatticeBox(1, 3), LatticeBox(1, 3), grid);
    for (std::size_t t : {std::size_t{0}, std::size_t{17}}) {
      const Signal atom = tf_atom(g, mbox.point(t / 8), grid.node(t % 8));
      const cplx want = matrix_bilinear(K, atom, atom);
      CHECK(std::abs(bz.values()[t] - want) < 1e-12);
    }
  }

  TEST_CASE("nonnegative symbol with equal windows gives a nonnegative diagonal") {
    Rng rng(404);
    const TorusGrid grid(1, 8);
    const Symbol sigma = Symbol::band_region(1, 1, 0.25);
    const Signal g = random_signal(rng, 1, 1);
    const PhaseSpaceField bz = berezin_symbol(sigma, g, LatticeBox(1, 2), grid);
    for (const cplx& v : bz.values()) {
      CHECK(v.real() > -1e-12);
      CHECK(std::abs(v.imag()) < 1e-12);
    }
  }

  TEST_CASE("berezin rejects mismatched operands") {
    const Symbol sigma = Symbol::band_region(1, 1, 0.25);
    CHECK_THROWS_AS(
        berezin_symbol(sigma, Signal::delta(2), LatticeBox(2, 1), TorusGrid(2, 4)),
        DimensionMismatch);
    CHECK_THROWS_AS(
        berezin_symbol(sigma, Signal(LatticeBox(1, 1)), LatticeBox(1, 1), TorusGrid(1, 4)),
        InvalidArgument);
  }
}

TEST_SUITE("bounds") {
  TEST_CASE("nonnegative symbol, equal windows: every asserted bound holds") {
    Rng rng(405);
    for (int trial = 0; trial < 10; ++trial) {
      const int rp = 1;
      const Signal g = random_signal(rng, 1, 1);
      // alias-free for every check: berezin needs Q >= 2 (rp + 3 N_g) + 1 = 9
      const TorusGrid grid(1, 12);
      PhaseSpaceField field(LatticeBox(1, rp), grid);
      for (auto& v : field.values()) v = cplx(rng.uniform(), 0.0);
      const BoundReport r = bounds_report(Symbol::grid(field), g, g, grid);
      REQUIRE(r.checks.size() == 5);
      for (const BoundCheck& c : r.checks) {
        CHECK_FALSE(c.skipped);
        CHECK(c.holds);
      }
    }
  }

  TEST_CASE("trace equals S1 equals the symbol mass times the window energy") {
    Rng rng(406);
    const TorusGrid grid(1, 12);
    const Signal g = random_signal(rng, 1, 1);
    PhaseSpaceField field(LatticeBox(1, 1), grid);
    for (auto& v : field.values()) v = cplx(rng.uniform(), 0.0);
    const Symbol sigma = Symbol::grid(field);
    const OperatorMatrix K =
        loc_kernel(sigma, g, g, LatticeBox(1, 2), LatticeBox(1, 2), grid);
    const double s1 = schatten_norm(singular_values(K), 1.0);
    const cplx tr = trace(K);
    const double mass = sigma.l1_norm() * g.norm_l2() * g.norm_l2();
    CHECK(std::abs(tr.imag()) < 1e-12);
    CHECK(tr.real() == doctest::Approx(mass).epsilon(1e-10));
    CHECK(s1 == doctest::Approx(mass).epsilon(1e-10));
    // positive semidefinite: eigenvalues of the Hermitian kernel stay >= 0
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(K.m);
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
  }

  TEST_CASE("hypothesis gating produces skips, not assertions") {
    Rng rng(407);
    const Signal g = random_signal(rng, 1, 2);
    // Q = 4 cannot resolve the operator of a radius-2 sampled symbol
    const TorusGrid grid(1, 4);
    PhaseSpaceField field(LatticeBox(1, 2), grid);
    for (auto& v : field.values()) v = cplx(rng.uniform(), 0.0);
    const BoundReport r = bounds_report(Symbol::grid(field), g, g, grid);
    const BoundCheck& op = find_check(r, "opnorm_le_sup_l1");
    CHECK(op.skipped);
    CHECK(op.note.find("needs Q >=") != std::string::npos);
    CHECK(find_check(r, "berezin_l1_le_s1").skipped);
    // the band path has exact moments: nothing to alias, nothing skipped
    const BoundReport rb =
        bounds_report(Symbol::band_region(1, 1, 0.25), g, g, grid);
    CHECK_FALSE(find_check(rb, "opnorm_le_sup_l1").skipped);
    CHECK(find_check(rb, "opnorm_le_sup_l1").holds);
  }

  TEST_CASE("differing windows skip the equal-window checks only") {
    Rng rng(408);
    const Signal g1 = random_signal(rng, 1, 1);
    const Signal g2 = random_signal(rng, 1, 1);
    const TorusGrid grid(1, 12);
    const BoundReport r = bounds_report(Symbol::band_region(1, 1, 0.25), g1, g2, grid);
    CHECK_FALSE(find_check(r, "opnorm_le_sup_l1").skipped);
    CHECK(find_check(r, "trace_s1_le_l1").skipped);
    CHECK(find_check(r, "berezin_l1_le_s1").skipped);
  }

  TEST_CASE("frequency-only symbols report unbounded support") {
    Rng rng(409);
    const Signal g = random_signal(rng, 1, 1);
    const TorusGrid grid(1, 6);
    const BoundReport r =
        bounds_report(Symbol::freq_only(TorusFunction::band_indicator(1, 0.25)), g, g, grid);
    for (const BoundCheck& c : r.checks) {
      CHECK(c.skipped);
      CHECK(c.note.find("unbounded") != std::string::npos);
    }
  }

  TEST_CASE("monitored surrogates are marked and carry slack 2") {
    Rng rng(410);
    const Signal g = random_signal(rng, 1, 1);
    const TorusGrid grid(1, 12);
    PhaseSpaceField field(LatticeBox(1, 1), grid);
    for (auto& v : field.values()) v = cplx(rng.uniform(), 0.0);
    const BoundReport r = bounds_report(Symbol::grid(field), g, g, grid);
    const BoundCheck& m1 = find_check(r, "s1_le_mod1_symbol");
    const BoundCheck& m2 = find_check(r, "opnorm_le_sup_mod1_windows");
    CHECK(m1.monitored);
    CHECK(m2.monitored);
    CHECK(m1.slack == 2.0);
    CHECK(m2.slack == 2.0);
    CHECK(m1.holds);
    CHECK(m2.holds);
  }
}
