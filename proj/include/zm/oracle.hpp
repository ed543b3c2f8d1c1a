#pragma once

#include <optional>

#include "zm/linalg.hpp"

namespace zm {

// Integer matrix of y -> A*y with every y_j of degree <= B, in the monomial
// bases of degree <= B (columns) and <= B + deg A (rows).
struct CoefficientSystem {
  std::vector<std::vector<Integer>> M;
  std::vector<Monomial> col_monos, row_monos;
  std::size_t m = 0, n = 0;
  unsigned nvars = 0;
};

CoefficientSystem coefficient_system(const ZMatrix& A, long B, long row_degree);

// Cofactors g_j with deg g_j <= B and sum g_j f_j = f0; absent means only that
// no certificate of that degree exists.
std::optional<ZVec> member_bounded_z(const ZPoly& f0, const std::vector<ZPoly>& fs, long B);

// Same for A*y = b.
std::optional<ZVec> solve_bounded_z(const ZMatrix& A, const ZVec& b, long B);

// Basis of the lattice of solutions of A*y = 0 with deg y <= B.
std::vector<ZVec> syzygy_bounded_z(const ZMatrix& A, long B);

}  // namespace zm
