#include "zm/oracle.hpp"

#include <functional>
#include <map>

namespace zm {

namespace {

std::vector<Monomial> monomials(unsigned N, long B) {
  std::vector<Monomial> out;
  if (B < 0) return out;
  std::vector<std::uint32_t> e(N, 0);
  std::function<void(unsigned, long)> rec = [&](unsigned i, long left) {
    if (i == N) {
      Monomial m;
      for (unsigned k = 0; k < N; ++k) m.set(k, e[k]);
      out.push_back(m);
      return;
    }
    for (long k = 0; k <= left; ++k) {
      e[i] = static_cast<std::uint32_t>(k);
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(0, B);
  return out;
}

struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return mono_greater(b, a); }
};

// Row echelon form of [C^T | I] by unimodular row operations.
struct Hermite {
  std::vector<std::vector<Integer>> rows;  // left block (width w), right block (width k)
  std::size_t w = 0, k = 0, rank = 0;
  std::vector<std::size_t> pivots;  // pivot column in the left block for rows < rank
};

Hermite hermite_transpose(const std::vector<std::vector<Integer>>& C, std::size_t ncols) {
  const std::size_t nrows = C.size();
  Hermite H;
  H.w = nrows;
  H.k = ncols;
  H.rows.assign(ncols, std::vector<Integer>(nrows + ncols, 0));
  for (std::size_t j = 0; j < ncols; ++j) {
    for (std::size_t i = 0; i < nrows; ++i) H.rows[j][i] = C[i][j];
    H.rows[j][nrows + j] = 1;
  }
  auto& W = H.rows;
  std::size_t r = 0;
  for (std::size_t c = 0; c < nrows && r < ncols; ++c) {
    for (;;) {
      std::size_t piv = ncols;
      for (std::size_t i = r; i < ncols; ++i)
        if (sgn(W[i][c]) != 0 && (piv == ncols || mpz_cmpabs(W[i][c].get_mpz_t(), W[piv][c].get_mpz_t()) < 0)) piv = i;
      if (piv == ncols) break;
      std::swap(W[r], W[piv]);
      bool clean = true;
      for (std::size_t i = r + 1; i < ncols; ++i) {
        if (sgn(W[i][c]) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), W[i][c].get_mpz_t(), W[r][c].get_mpz_t());
        if (q != 0)
          for (std::size_t l = c; l < W[i].size(); ++l)
            if (sgn(W[r][l]) != 0) W[i][l] -= q * W[r][l];
        if (sgn(W[i][c]) != 0) clean = false;
      }
      if (clean) {
        H.pivots.push_back(c);
        ++r;
        break;
      }
    }
  }
  H.rank = r;
  return H;
}

void check_cells(std::size_t rows, std::size_t cols) {
  if (static_cast<double>(rows) * static_cast<double>(rows + cols) >
      static_cast<double>(limits().oracle_cells))
    fail(ErrorKind::ResourceLimit, "oracle system exceeds the cell cap");
}

}  // namespace

CoefficientSystem coefficient_system(const ZMatrix& A, long B, long row_degree) {
  CoefficientSystem S;
  S.m = A.rows();
  S.n = A.cols();
  S.nvars = A.nvars();
  S.col_monos = monomials(S.nvars, B);
  S.row_monos = monomials(S.nvars, row_degree);
  check_cells(S.m * S.row_monos.size() + S.n * S.col_monos.size(), S.n * S.col_monos.size());
  std::map<Monomial, std::size_t, MonoLess> index;
  for (std::size_t k = 0; k < S.row_monos.size(); ++k) index[S.row_monos[k]] = k;
  const std::size_t R = S.row_monos.size(), Cn = S.col_monos.size();
  S.M.assign(S.m * R, std::vector<Integer>(S.n * Cn, 0));
  for (std::size_t i = 0; i < S.m; ++i)
    for (std::size_t j = 0; j < S.n; ++j)
      for (const auto& t : A(i, j).terms())
        for (std::size_t c = 0; c < Cn; ++c) {
          auto it = index.find(t.first * S.col_monos[c]);
          if (it == index.end()) fail(ErrorKind::Internal, "row degree too small");
          S.M[i * R + it->second][j * Cn + c] += t.second;
        }
  return S;
}

namespace {

ZVec unpack(const CoefficientSystem& S, const std::vector<Integer>& x) {
  ZVec y;
  const std::size_t Cn = S.col_monos.size();
  for (std::size_t j = 0; j < S.n; ++j) {
    std::vector<ZPoly::Term> ts;
    for (std::size_t c = 0; c < Cn; ++c)
      if (x[j * Cn + c] != 0) ts.push_back({S.col_monos[c], x[j * Cn + c]});
    y.push_back(ZPoly::from_terms(S.nvars, ts));
  }
  return y;
}

}  // namespace

std::optional<ZVec> solve_bounded_z(const ZMatrix& A, const ZVec& b, long B) {
  const unsigned N = A.nvars();
  if (B < 0) return std::nullopt;
  long rowdeg = B + std::max<long>(A.degree(), 0);
  for (const auto& bi : b)
    if (!bi.is_zero() && bi.degree() > rowdeg) return std::nullopt;
  CoefficientSystem S = coefficient_system(A, B, rowdeg);
  const std::size_t R = S.row_monos.size(), ncols = S.n * S.col_monos.size();
  std::vector<Integer> t(S.m * R, 0);
  std::map<Monomial, std::size_t, MonoLess> index;
  for (std::size_t k = 0; k < R; ++k) index[S.row_monos[k]] = k;
  for (std::size_t i = 0; i < S.m; ++i)
    for (const auto& term : b[i].terms()) t[i * R + index.at(term.first)] = term.second;
  Hermite H = hermite_transpose(S.M, ncols);
  // Express t through the echelon rows; the right block tracks the unknowns.
  std::vector<Integer> x(ncols, 0);
  for (std::size_t k = 0; k < H.rank; ++k) {
    const std::size_t c = H.pivots[k];
    const auto& row = H.rows[k];
    if (t[c] == 0) continue;
    if (!mpz_divisible_p(t[c].get_mpz_t(), row[c].get_mpz_t())) return std::nullopt;
    Integer q = t[c] / row[c];
    for (std::size_t l = c; l < H.w; ++l)
      if (row[l] != 0) t[l] -= q * row[l];
    for (std::size_t l = 0; l < ncols; ++l)
      if (row[H.w + l] != 0) x[l] += q * row[H.w + l];
  }
  for (const auto& v : t)
    if (v != 0) return std::nullopt;
  ZVec y = unpack(S, x);
  ZVec Ay = A.apply(y);
  for (std::size_t i = 0; i < b.size(); ++i)
    if (Ay[i] != b[i].with_nvars(N)) fail(ErrorKind::Internal, "oracle solution does not verify");
  return y;
}

std::optional<ZVec> member_bounded_z(const ZPoly& f0, const std::vector<ZPoly>& fs, long B) {
  if (fs.empty()) return std::nullopt;
  unsigned N = f0.nvars();
  for (const auto& f : fs) N = std::max(N, f.nvars());
  std::vector<ZVec> row{ZVec()};
  for (const auto& f : fs) row[0].push_back(f.with_nvars(N));
  return solve_bounded_z(ZMatrix::from_rows(row, N), ZVec{f0.with_nvars(N)}, B);
}

std::vector<ZVec> syzygy_bounded_z(const ZMatrix& A, long B) {
  std::vector<ZVec> out;
  if (B < 0) return out;
  CoefficientSystem S = coefficient_system(A, B, B + std::max<long>(A.degree(), 0));
  const std::size_t ncols = S.n * S.col_monos.size();
  Hermite H = hermite_transpose(S.M, ncols);
  for (std::size_t k = H.rank; k < ncols; ++k) {
    std::vector<Integer> x(H.rows[k].begin() + static_cast<long>(H.w), H.rows[k].end());
    out.push_back(unpack(S, x));
  }
  for (const auto& y : out)
    if (!is_zero_vec(A.apply(y))) fail(ErrorKind::Internal, "oracle kernel vector does not solve A");
  return out;
}

}  // namespace zm
