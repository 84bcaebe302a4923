#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "ztf/fourier.hpp"
#include "ztf/lattice.hpp"
#include "ztf/reduce.hpp"
#include "ztf/rng.hpp"
#include "ztf/torus.hpp"

using namespace ztf;

TEST_SUITE("lattice") {
  TEST_CASE("box enumeration round trips and is lexicographic") {
    for (int n : {1, 2, 3}) {
      for (int r : {0, 1, 2}) {
        LatticeBox box(n, r);
        CHECK(box.size() == static_cast<std::size_t>(std::pow(2 * r + 1, n)));
        LatticePoint prev;
        for (std::size_t i = 0; i < box.size(); ++i) {
          const LatticePoint k = box.point(i);
          CHECK(box.index(k) == static_cast<std::ptrdiff_t>(i));
          CHECK(box.contains(k));
          if (i > 0) CHECK(prev < k);  // vector comparison = lexicographic
          prev = k;
        }
        CHECK(box.point(0) == LatticePoint(n, -r));
        CHECK(box.point(box.size() - 1) == LatticePoint(n, r));
      }
    }
  }

  TEST_CASE("points outside the box report index -1") {
    LatticeBox box(2, 1);
    CHECK(box.index({2, 0}) == -1);
    CHECK(box.index({0, -2}) == -1);
    CHECK_FALSE(box.contains({-2, 1}));
  }

  TEST_CASE("box rejects bad shapes") {
    CHECK_THROWS_AS(LatticeBox(0, 1), InvalidArgument);
    CHECK_THROWS_AS(LatticeBox(1, -1), InvalidArgument);
  }

  TEST_CASE("l1 ball cardinality matches enumeration") {
    for (int n : {1, 2, 3})
      for (int t : {0, 1, 2, 3}) {
        LatticeBox box(n, t);
        std::size_t direct = 0;
        for (std::size_t i = 0; i < box.size(); ++i)
          if (l1_norm(box.point(i)) <= t) ++direct;
        CHECK(l1_ball_card(n, t) == direct);
      }
  }

  TEST_CASE("signal off-box reads are zero and norms match direct sums") {
    LatticeBox box(1, 2);
    Signal f(box);
    for (std::size_t i = 0; i < f.size(); ++i)
      f[i] = cplx(static_cast<double>(i) - 1.5, 0.5);
    CHECK(f.at({7}) == cplx(0.0));
    double l1 = 0.0, l2 = 0.0, sup = 0.0;
    for (const cplx& v : f.values()) {
      l1 += std::abs(v);
      l2 += std::norm(v);
      sup = std::max(sup, std::abs(v));
    }
    CHECK(f.norm(1.0) == doctest::Approx(l1).epsilon(1e-15));
    CHECK(f.norm_l2() == doctest::Approx(std::sqrt(l2)).epsilon(1e-15));
    CHECK(f.norm(std::numeric_limits<double>::infinity()) == doctest::Approx(sup));
    CHECK_THROWS_AS(f.norm(0.5), InvalidArgument);
  }

  TEST_CASE("inner product is conjugate linear in the second slot") {
    LatticeBox box(1, 1);
    Signal a(box, {{1, 1}, {2, 0}, {0, -1}});
    Signal b(box, {{0, 1}, {1, 1}, {3, 0}});
    cplx direct = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) direct += a[i] * std::conj(b[i]);
    CHECK(std::abs(inner(a, b) - direct) < 1e-15);
    CHECK(std::abs(inner(b, a) - std::conj(direct)) < 1e-15);
  }

  TEST_CASE("same_values ignores box padding") {
    Signal small(LatticeBox(1, 1), {{0, 0}, {5, 1}, {0, 0}});
    Signal wide(LatticeBox(1, 3));
    wide.values()[3] = cplx(5, 1);
    CHECK(same_values(small, wide));
    wide.values()[0] = cplx(1, 0);
    CHECK_FALSE(same_values(small, wide));
  }
}

TEST_SUITE("torus") {
  TEST_CASE("grid nodes, weight, and centered representatives") {
    TorusGrid grid(2, 4);
    CHECK(grid.size() == 16);
    CHECK(grid.weight() == doctest::Approx(1.0 / 16.0));
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const auto w = grid.node(j);
      const auto c = grid.centered_node(j);
      const auto d = grid.digits(j);
      CHECK(grid.index(d) == j);
      for (int i = 0; i < 2; ++i) {
        CHECK(w[i] == doctest::Approx(d[i] / 4.0));
        CHECK(c[i] >= -0.5);
        CHECK(c[i] < 0.5);
        const double frac = std::abs(w[i] - c[i]);
        CHECK((frac == doctest::Approx(0.0) || frac == doctest::Approx(1.0)));
      }
    }
  }

  TEST_CASE("difference acts as subtraction mod Q") {
    TorusGrid grid(2, 5);
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t a = static_cast<std::size_t>(rng.uniform_int(0, 24));
      const std::size_t b = static_cast<std::size_t>(rng.uniform_int(0, 24));
      const auto da = grid.digits(a), db = grid.digits(b), dd = grid.digits(grid.difference(a, b));
      for (int i = 0; i < 2; ++i) CHECK(((da[i] - db[i]) % 5 + 5) % 5 == dd[i]);
    }
  }

  TEST_CASE("quadrature kills characters except multiples of Q") {
    const int Q = 6;
    TorusGrid grid(1, Q);
    for (int r = -2 * Q; r <= 2 * Q; ++r) {
      cplx acc = 0.0;
      for (std::size_t j = 0; j < grid.size(); ++j)
        acc += grid.weight() * std::polar(1.0, kTwoPi * r * grid.node(j)[0]);
      const double expect = (r % Q == 0) ? 1.0 : 0.0;
      CHECK(std::abs(acc - expect) < 1e-14);
    }
  }

  TEST_CASE("default resolution doubles the box side") {
    CHECK(default_resolution(0) == 2);
    CHECK(default_resolution(1) == 6);
    CHECK(default_resolution(3) == 14);
  }

  TEST_CASE("band indicator samples the closed l1 ball") {
    TorusFunction band = TorusFunction::band_indicator(2, 0.25);
    TorusGrid grid(2, 4);  // nodes at 0, 1/4, 1/2, 3/4 -> centered 0, 1/4, -1/2, -1/4
    const auto s = band.sample(grid);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const auto c = grid.centered_node(j);
      const double l1 = std::abs(c[0]) + std::abs(c[1]);
      CHECK(s[j] == cplx(l1 <= 0.25 + 1e-12 ? 1.0 : 0.0));
    }
    CHECK_THROWS_AS(TorusFunction::band_indicator(1, 0.0), InvalidArgument);
    CHECK_THROWS_AS(TorusFunction::band_indicator(1, 0.75), InvalidArgument);
  }

  TEST_CASE("sampled torus function round trips and conjugates") {
    TorusGrid grid(1, 3);
    TorusFunction F = TorusFunction::grid_samples(grid, {{1, 2}, {0, -1}, {3, 0}});
    const auto back = F.sample(grid);
    CHECK(back[1] == cplx(0, -1));
    const auto conj = F.conjugate().sample(grid);
    CHECK(conj[1] == cplx(0, 1));
    CHECK_THROWS_AS(F.omega(), InvalidArgument);
  }

  TEST_CASE("band moments match adaptive quadrature in dimension 1") {
    for (double omega : {0.125, 0.25, 0.4, 0.5})
      for (int r = 0; r <= 6; ++r) {
        const double lib = band_moment({r}, omega);
        const double ref = oracle::band_moment({r}, omega);
        CHECK(lib == doctest::Approx(ref).epsilon(1e-10));
        CHECK(band_moment({-r}, omega) == doctest::Approx(lib).epsilon(1e-14));
      }
    CHECK(band_moment({0}, 0.3) == doctest::Approx(0.6));
  }

  TEST_CASE("band moments match nested quadrature in dimension 2") {
    for (double omega : {0.25, 0.5})
      for (int r0 : {0, 1, 3})
        for (int r1 : {0, 2}) {
          const BandMomentResult lib = band_moment_with_error({r0, r1}, omega);
          const double ref = oracle::band_moment({r0, r1}, omega);
          CHECK(std::abs(lib.value - ref) < 1e-9);
          CHECK(lib.error_bound >= 0.0);
        }
    // volume of the l1 ball: (2 omega)^n / n!
    CHECK(band_moment({0, 0}, 0.5) == doctest::Approx(0.5).epsilon(1e-10));
  }
}

TEST_SUITE("fourier") {
  TEST_CASE("transform of a delta is flat and inversion recovers the signal") {
    TorusGrid grid(1, 8);
    Signal d = Signal::delta(1);
    const auto flat = dft_lattice_to_torus(d, grid).sample(grid);
    for (const cplx& v : flat) CHECK(std::abs(v - 1.0) < 1e-15);

    Rng rng(3);
    Signal f(LatticeBox(1, 2));
    for (auto& v : f.values()) v = rng.unit_box_complex();
    const TorusFunction F = dft_lattice_to_torus(f, TorusGrid(1, 6));
    const Signal back = dft_torus_to_lattice(F, f.box());
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(back[i] - f[i]) < 1e-13);
  }

  TEST_CASE("grid transform matches the naive sum") {
    Rng rng(5);
    Signal f(LatticeBox(2, 1));
    for (auto& v : f.values()) v = rng.unit_box_complex();
    TorusGrid grid(2, 3);
    const auto F = dft_lattice_to_torus(f, grid).sample(grid);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const auto w = grid.node(j);
      cplx direct = 0.0;
      for (std::size_t u = 0; u < f.size(); ++u) {
        const LatticePoint k = f.box().point(u);
        direct += f[u] * std::polar(1.0, -kTwoPi * (w[0] * k[0] + w[1] * k[1]));
      }
      CHECK(std::abs(F[j] - direct) < 1e-13);
    }
  }

  TEST_CASE("atoms translate and modulate") {
    Signal g(LatticeBox(1, 1), {{1, 0}, {2, 0}, {3, 0}});
    const Signal atom = tf_atom(g, {2}, {0.25});
    CHECK(atom.box().radius() == 3);
    for (int k = -3; k <= 3; ++k) {
      const cplx expect = g.at({k - 2}) * std::polar(1.0, kTwoPi * 0.25 * k);
      CHECK(std::abs(atom.at({k}) - expect) < 1e-15);
    }
  }
}

TEST_SUITE("rng") {
  TEST_CASE("fixed seed reproduces the stream") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  }

  TEST_CASE("splits are stable under parent consumption") {
    Rng parent(7);
    Rng child_before = parent.split(3);
    parent.next_u64();
    parent.next_u64();
    Rng child_after = parent.split(3);
    for (int i = 0; i < 10; ++i) CHECK(child_before.next_u64() == child_after.next_u64());
  }

  TEST_CASE("child streams differ from each other and the parent") {
    Rng parent(9);
    const std::uint64_t a = parent.split(1).next_u64();
    const std::uint64_t b = parent.split(2).next_u64();
    CHECK(a != b);
  }

  TEST_CASE("uniform draws respect bounds") {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
      const double u = rng.uniform();
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
      const int k = rng.uniform_int(-3, 3);
      CHECK(k >= -3);
      CHECK(k <= 3);
      const cplx z = rng.unit_box_complex();
      CHECK(std::abs(z.real()) <= 1.0);
      CHECK(std::abs(z.imag()) <= 1.0);
    }
    std::set<int> seen;
    for (int i = 0; i < 200; ++i) seen.insert(rng.uniform_int(0, 4));
    CHECK(seen.size() == 5);
  }
}

TEST_SUITE("reduce") {
  TEST_CASE("pairwise sum of integers is exact") {
    const std::size_t count = 100000;
    const double s =
        pairwise_sum<double>(count, [](std::size_t i) { return static_cast<double>(i % 7); });
    double direct = 0.0;
    for (std::size_t i = 0; i < count; ++i) direct += static_cast<double>(i % 7);
    CHECK(s == direct);  // both sums are exact in double
  }

  TEST_CASE("pairwise sum does not depend on the worker setting") {
    auto term = [](std::size_t i) { return 1.0 / static_cast<double>(i + 1); };
    set_worker_count(1);
    const double one = pairwise_sum<double>(5000, term);
    set_worker_count(7);
    const double many = pairwise_sum<double>(5000, term);
    set_worker_count(0);
    CHECK(one == many);
  }

  TEST_CASE("parallel_for covers every index exactly once") {
    for (int workers : {1, 2, 5}) {
      set_worker_count(workers);
      std::vector<int> hits(317, 0);
      parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
      CHECK(std::accumulate(hits.begin(), hits.end(), 0) == 317);
      for (int h : hits) CHECK(h == 1);
    }
    set_worker_count(0);
  }
}
