#include "zm/linalg.hpp"

namespace zm {

namespace {

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

ValuationMinor min_valuation_minor(const ZMatrix& A, const Integer& p, std::size_t r) {
  require_prime(p);
  if (A.is_zero()) fail(ErrorKind::ZeroMatrix, "minor of the zero matrix");
  const std::size_t m = A.rows(), n = A.cols();
  if (r == 0 || r > m || r > n) fail(ErrorKind::DomainMismatch, "rank out of range");
  Integer count = binomial(m, r) * binomial(n, r);
  if (count > Integer(static_cast<unsigned long>(limits().minor_cap)))
    fail(ErrorKind::CombinatorialLimit,
         "C(m,r)*C(n,r) = " + count.get_str() + " exceeds the minor cap");
  ValuationMinor best;
  bool found = false;
  std::vector<std::size_t> rs(r);
  std::iota(rs.begin(), rs.end(), 0);
  do {
    std::vector<std::size_t> cs(r);
    std::iota(cs.begin(), cs.end(), 0);
    do {
      ZPoly d = determinant(A.sub(rs, cs));
      if (d.is_zero()) continue;
      long v = poly_valuation(d, p).value;
      if (!found || v < best.mu) {
        best.rows = rs;
        best.cols = cs;
        best.mu = v;
        found = true;
        if (v == 0) return best;
      }
    } while (next_combination(cs, n));
  } while (next_combination(rs, m));
  if (!found) fail(ErrorKind::DomainMismatch, "no nonsingular minor of the given size");
  return best;
}

ValuationMinor min_valuation_minor_pivot(const ZMatrix& A, const Integer& p) {
  require_prime(p);
  if (A.is_zero()) fail(ErrorKind::ZeroMatrix, "minor of the zero matrix");
  const std::size_t m = A.rows(), n = A.cols();
  const unsigned nv = A.nvars();
  std::vector<ZVec> M(m);
  for (std::size_t i = 0; i < m; ++i) M[i] = A.row(i);
  std::vector<bool> row_used(m, false), col_used(n, false);
  ZPoly prev(nv, Integer(1));
  ValuationMinor out;
  out.enumerated = false;
  for (;;) {
    // Bareiss entries are minors; dividing by the current pivot minor shifts
    // every candidate's valuation equally, so the argmin is the DVR pivot.
    std::size_t bi = m, bj = n;
    Valuation bv = Valuation::inf();
    for (std::size_t i = 0; i < m; ++i) {
      if (row_used[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (col_used[j] || M[i][j].is_zero()) continue;
        Valuation v = poly_valuation(M[i][j], p);
        if (v < bv) {
          bv = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi == m) break;
    row_used[bi] = true;
    col_used[bj] = true;
    out.rows.push_back(bi);
    out.cols.push_back(bj);
    for (std::size_t i = 0; i < m; ++i) {
      if (row_used[i]) continue;
      for (std::size_t l = 0; l < n; ++l) {
        if (col_used[l]) continue;
        ZPoly v = M[bi][bj] * M[i][l] - M[i][bj] * M[bi][l];
        M[i][l] = out.rows.size() == 1 ? v : exact_divide(v, prev);
      }
      M[i][bj] = ZPoly(nv);
    }
    prev = M[bi][bj];
    out.mu = bv.value;
  }
  ValuationMinor sorted = out;
  std::sort(sorted.rows.begin(), sorted.rows.end());
  std::sort(sorted.cols.begin(), sorted.cols.end());
  sorted.mu = poly_valuation(determinant(A.sub(sorted.rows, sorted.cols)), p).value;
  return sorted;
}

std::vector<std::vector<Integer>> integer_kernel(const Dense<Integer>& M, std::size_t n) {
  const std::size_t m = M.size();
  // Rows of [M^T | I]; unimodular row operations keep the right block a basis
  // change, so rows whose left block vanishes span the kernel lattice.
  std::vector<std::vector<Integer>> W(n, std::vector<Integer>(m + n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) W[j][i] = M[i][j];
    W[j][m + j] = 1;
  }
  std::size_t k = 0;
  for (std::size_t c = 0; c < m && k < n; ++c) {
    for (;;) {
      std::size_t piv = n;
      for (std::size_t i = k; i < n; ++i)
        if (W[i][c] != 0 && (piv == n || abs(W[i][c]) < abs(W[piv][c]))) piv = i;
      if (piv == n) break;
      std::swap(W[k], W[piv]);
      bool done = true;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (W[i][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), W[i][c].get_mpz_t(), W[k][c].get_mpz_t());
        for (std::size_t l = c; l < m + n; ++l)
          if (W[k][l] != 0) W[i][l] -= q * W[k][l];
        if (W[i][c] != 0) done = false;
      }
      if (done) {
        ++k;
        break;
      }
    }
  }
  std::vector<std::vector<Integer>> out;
  for (std::size_t i = k; i < n; ++i)
    out.emplace_back(W[i].begin() + static_cast<long>(m), W[i].end());
  return out;
}

}  // namespace zm
