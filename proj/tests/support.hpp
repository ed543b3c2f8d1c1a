#pragma once

#include <random>
#include <string>
#include <vector>

#include "zm/linalg.hpp"

namespace zt {

using namespace zm;

inline ZPoly P(const std::string& s, unsigned n = 2) { return parse_polynomial(s, n); }

inline ZVec V(std::initializer_list<const char*> xs, unsigned n = 2) {
  ZVec v;
  for (auto x : xs) v.push_back(P(x, n));
  return v;
}

inline ZMatrix M(std::initializer_list<std::initializer_list<const char*>> rows, unsigned n = 2) {
  std::vector<ZVec> rs;
  for (auto r : rows) rs.push_back(V(r, n));
  return ZMatrix::from_rows(rs, n);
}

inline ZPoly random_poly(std::mt19937_64& rng, unsigned n, int deg, int coef, int terms) {
  std::vector<ZPoly::Term> t;
  for (int k = 0; k < terms; ++k) {
    Monomial m;
    int budget = static_cast<int>(rng() % (deg + 1));
    for (unsigned i = 0; i < n && budget > 0; ++i) {
      int e = static_cast<int>(rng() % (budget + 1));
      m.set(i, e);
      budget -= e;
    }
    t.push_back({m, Integer(static_cast<long>(rng() % (2 * coef + 1)) - coef)});
  }
  return ZPoly::from_terms(n, t);
}

inline ZMatrix random_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n, unsigned nv,
                             int deg, int coef, int terms) {
  ZMatrix A(m, n, nv);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) A(i, j) = random_poly(rng, nv, deg, coef, terms);
  return A;
}

}  // namespace zt
