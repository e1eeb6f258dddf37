#pragma once

#include <random>
#include <vector>

#include "dchain/poly.hpp"

namespace testutil {

using dchain::cplx;
using dchain::CVec;

inline cplx rand_c(std::mt19937_64& rng, double s = 1.0) {
  std::uniform_real_distribution<double> u(-s, s);
  const double re = u(rng);
  const double im = u(rng);
  return {re, im};
}

// Dense random polynomial of exact degree d: every multi-index with |alpha| <= d.
inline dchain::MultiPoly random_poly(std::mt19937_64& rng, int n, int d) {
  std::vector<dchain::Term> terms;
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  for (;;) {
    int tot = 0;
    for (int x : a) tot += x;
    if (tot <= d) terms.push_back({a, rand_c(rng)});
    int i = 0;
    while (i < n && ++a[static_cast<std::size_t>(i)] > d) a[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
  }
  // Force a nonzero top-degree term.
  std::vector<int> top(static_cast<std::size_t>(n), 0);
  top[0] = d;
  terms.push_back({top, cplx(0.5, 0.25)});
  return dchain::MultiPoly(n, terms);
}

inline dchain::UniPoly random_unipoly(std::mt19937_64& rng, int m) {
  std::vector<cplx> c(static_cast<std::size_t>(m + 1));
  for (auto& x : c) x = rand_c(rng);
  if (std::abs(c.back()) < 0.1) c.back() = 0.5;
  return dchain::UniPoly(c);
}

inline CVec rand_in_cube(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CVec v(static_cast<std::size_t>(n));
  for (auto& x : v) {
    const double re = u(rng);
    const double im = u(rng);
    x = {re, im};
  }
  return v;
}

}  // namespace testutil
