#include <cmath>
#include <random>

#include "doctest.h"
#include "dchain/error.hpp"
#include "dchain/inequalities.hpp"
#include "dchain/poly.hpp"
#include "dchain/roots.hpp"
#include "../oracles.hpp"
#include "../test_util.hpp"

using namespace dchain;
using testutil::rand_c;

TEST_CASE("eval: small instances and dense Horner agreement") {
  MultiPoly p(2, {{{2, 0}, 1.0}, {{0, 1}, 1.0}});
  CVec z{cplx(1, 1), cplx(2, 0)};
  CHECK(std::abs(eval(p, z) - cplx(2, 2)) < 1e-15);
  CHECK(MultiPoly::constant(3, 1.0)(CVec{1.0, 2.0, 3.0}) == cplx(1.0));
  CHECK_THROWS_AS(eval(p, CVec{1.0}), Error);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    MultiPoly q = testutil::random_poly(rng, 2, 3);
    oracle::DenseTable tab(2, 3);
    for (const auto& t : q.terms()) tab.at(t.alpha) += t.coeff;
    CVec w{rand_c(rng, 2.0), rand_c(rng, 2.0)};
    const cplx ref = tab.eval(w);
    CHECK(std::abs(q(w) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("normalize") {
  MultiPoly p(1, {{{1}, 2.0}});
  CHECK(normalize(p).terms()[0].coeff == cplx(1.0));
  MultiPoly q(2, {{{1, 0}, 3.0}, {{0, 1}, 4.0}});
  MultiPoly nq = normalize(q);
  CHECK(std::abs(nq.terms()[0].coeff.real() - 4.0 / 7.0) + std::abs(nq.terms()[1].coeff.real() - 3.0 / 7.0) < 1e-15);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    MultiPoly r = testutil::random_poly(rng, 2, 3);
    MultiPoly a = normalize(r);
    CHECK(normalize(a) == a);
    CHECK(is_normalized(a));
  }
  CHECK_THROWS_AS(normalize(MultiPoly(2)), Error);
}

TEST_CASE("shift: binomial expansion and norm growth") {
  MultiPoly z(1, {{{1}, 1.0}});
  MultiPoly s = shift(z, CVec{1.0});
  CHECK(s == MultiPoly(1, {{{0}, 1.0}, {{1}, 1.0}}));
  CHECK(s.norm1() <= 2.0);

  MultiPoly z2(1, {{{2}, 1.0}});
  MultiPoly s2 = shift(z2, CVec{1.0});
  for (int k = 0; k <= 2; ++k) {
    bool found = false;
    for (const auto& t : s2.terms())
      if (t.alpha[0] == k) {
        found = true;
        CHECK(std::abs(t.coeff - oracle::binomial(2, k)) < 1e-15);
      }
    CHECK(found);
  }
  CHECK(std::abs(s2.norm1() - 4.0) < 1e-15);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    MultiPoly p = testutil::random_poly(rng, 2, 3);
    CVec b{rand_c(rng) * 0.7, rand_c(rng) * 0.7};
    MultiPoly q = shift(p, b);
    CHECK(q.norm1() <= std::pow(2.0, 3) * p.norm1() * (1 + 1e-12));
    CVec w{rand_c(rng), rand_c(rng)};
    CVec wb{w[0] + b[0], w[1] + b[1]};
    CHECK(std::abs(q(w) - p(wb)) <= 1e-10 * std::max(1.0, std::abs(p(wb))));
  }
}

TEST_CASE("restrict_to_line") {
  MultiPoly p(2, {{{1, 1}, 1.0}});
  CLine L = make_line(CVec{0.0, 0.0}, CVec{1.0, 1.0});
  UniPoly q = restrict_to_line(p, L);
  REQUIRE(q.degree() == 2);
  CHECK(std::abs(q[2] - 0.5) < 1e-15);
  CHECK(std::abs(q[0]) + std::abs(q[1]) < 1e-15);

  // n = 1: restriction to {b + t} equals the shift.
  MultiPoly r(1, {{{0}, cplx(0.3, 0)}, {{2}, cplx(0, 1)}, {{3}, 2.0}});
  UniPoly rl = restrict_to_line(r, make_line(CVec{cplx(0.4, 0.2)}, CVec{1.0}));
  MultiPoly rs = shift(r, CVec{cplx(0.4, 0.2)});
  for (const auto& t : rs.terms()) CHECK(std::abs(rl[static_cast<std::size_t>(t.alpha[0])] - t.coeff) < 1e-14);

  std::mt19937_64 rng(3);
  int full_degree = 0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    MultiPoly P = testutil::random_poly(rng, 2, 3);
    CLine line = make_line(CVec{rand_c(rng), rand_c(rng)}, CVec{rand_c(rng), rand_c(rng)});
    for (std::size_t limit : {std::size_t{10000}, std::size_t{0}}) {
      UniPoly u = restrict_to_line(P, line, limit);
      CHECK(u.degree() <= P.degree());
      for (int k = 0; k < 10; ++k) {
        cplx t = rand_c(rng, 1.5);
        CHECK(std::abs(u(t) - P(line.at(t))) <= 1e-10 * u.norm1());
      }
      if (limit > 0 && u.degree() == P.degree()) ++full_degree;
    }
    // Through the origin the restricted norm is at most the norm of P.
    CLine through0 = make_line(CVec{0.0, 0.0}, line.direction);
    CHECK(restrict_to_line(P, through0).norm1() <= P.norm1() * (1 + 1e-12));
  }
  CHECK(full_degree >= 0.99 * trials);
}

TEST_CASE("find_roots: known cases and companion oracle") {
  RootSet r = find_roots(UniPoly({1.0, 0.0, 1.0}));
  REQUIRE(r.roots.size() == 2);
  CHECK(oracle::match_distance(r.roots, {cplx(0, 1), cplx(0, -1)}) < 1e-12);
  CHECK(r.residual_bound <= 1e-12);

  RootSet c = find_roots(UniPoly({-1.0, 3.0, -3.0, 1.0}));
  REQUIRE(c.roots.size() == 3);
  for (auto t : c.roots) CHECK(std::abs(t - 1.0) < 1e-4);

  CHECK_THROWS_AS(find_roots(UniPoly({1.0})), Error);
  try {
    find_roots(UniPoly({1.0, 1.0, 1e-16}));
    FAIL("expected degenerate leading coefficient");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateLeading);
  }

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<int> deg(1, 8);
    UniPoly p = testutil::random_unipoly(rng, deg(rng));
    RootSet rs = find_roots(p, 1e-10);
    auto ref = oracle::companion_roots(p.coeffs());
    CHECK(oracle::match_distance(rs.roots, ref) < 1e-6);
    for (auto t : rs.roots) CHECK(std::abs(p(t)) <= 1e-10 * p.norm1() * std::pow(std::max(1.0, std::abs(t)), p.degree()));
  }
}

TEST_CASE("dist_to_roots") {
  UniPoly p({-1.0, 0.0, 1.0});
  RootSet r = find_roots(p);
  CHECK(std::abs(dist_to_roots(r, 0.0) - 1.0) < 1e-12);
  CHECK(dist_to_roots(r, 1.0) < 1e-12);
  CHECK_THROWS_AS(dist_to_roots(RootSet{}, 0.0), Error);
}

TEST_CASE("constants") {
  CHECK(c_d_constant(1) == doctest::Approx(1.0 / 384).epsilon(1e-15));
  CHECK(c_d_constant(2) == doctest::Approx(1.0 / 27648).epsilon(1e-15));
  CHECK(c_d_constant(3) == doctest::Approx(1.0 / 1769472).epsilon(1e-15));
  CHECK(markov_gradient_bound(1, 1) == 2.0);
  CHECK(markov_gradient_bound(2, 2) == 32.0);
  CHECK(markov_gradient_bound(2, 3) == 144.0);
}

TEST_CASE("univariate lower bound") {
  UnivariateLowerCheck a = check_univariate_lower(UniPoly({0.0, 1.0}), 0.5);
  CHECK(a.lhs == doctest::Approx(0.5));
  CHECK(a.rhs == doctest::Approx(0.5 / 384).epsilon(1e-12));
  CHECK(a.holds);
  UnivariateLowerCheck b = check_univariate_lower(UniPoly({-0.25, 0.0, 1.0}), 0.5);
  CHECK(b.holds);
  CHECK(b.rhs < 1e-9);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> deg(1, 6);
    UniPoly p = testutil::random_unipoly(rng, deg(rng));
    CHECK(check_univariate_lower(p, rand_c(rng)).holds);
  }
}

TEST_CASE("disk Remez") {
  RemezDiskCheck m = check_remez_disk(UniPoly({0.0, 0.0, 0.0, 1.0}), 0.0, 0.5);
  CHECK(m.max_outer / m.max_inner == doctest::Approx(8.0).epsilon(1e-9));
  CHECK(m.holds);
  RemezDiskCheck c = check_remez_disk(UniPoly({2.0}), cplx(0.2, 0.1), 0.3);
  CHECK(c.max_outer == doctest::Approx(c.max_inner));
  CHECK(c.holds);
  CHECK_THROWS_AS(check_remez_disk(UniPoly({0.0, 1.0}), 0.9, 0.5), Error);
  CHECK_THROWS_AS(check_remez_disk(UniPoly({0.0, 1.0}), 0.0, 1.5), Error);
}
