#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "zm/poly.hpp"

namespace zm {

template <class C>
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t m, std::size_t n, unsigned nvars)
      : m_(m), n_(n), nv_(nvars), a_(m * n, Poly<C>(nvars)) {}
  static PolyMatrix from_rows(const std::vector<PolyVec<C>>& rows, unsigned nvars) {
    std::size_t n = rows.empty() ? 0 : rows[0].size();
    PolyMatrix M(rows.size(), n, nvars);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != n) fail(ErrorKind::SchemaError, "ragged matrix rows");
      for (std::size_t j = 0; j < n; ++j) M(i, j) = rows[i][j].with_nvars(nvars);
    }
    return M;
  }
  static PolyMatrix from_columns(const std::vector<PolyVec<C>>& cols, std::size_t m,
                                 unsigned nvars) {
    PolyMatrix M(m, cols.size(), nvars);
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < m; ++i) M(i, j) = cols[j][i].with_nvars(nvars);
    return M;
  }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  unsigned nvars() const { return nv_; }
  Poly<C>& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Poly<C>& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  PolyVec<C> row(std::size_t i) const {
    return PolyVec<C>(a_.begin() + i * n_, a_.begin() + (i + 1) * n_);
  }
  PolyVec<C> col(std::size_t j) const {
    PolyVec<C> v;
    for (std::size_t i = 0; i < m_; ++i) v.push_back((*this)(i, j));
    return v;
  }
  bool is_zero() const {
    for (const auto& p : a_)
      if (!p.is_zero()) return false;
    return true;
  }
  long degree() const {
    long d = kNegInf;
    for (const auto& p : a_) d = std::max(d, p.degree());
    return d;
  }
  long degree_in(unsigned v) const {
    long d = kNegInf;
    for (const auto& p : a_) d = std::max(d, p.degree_in(v));
    return d;
  }
  PolyVec<C> apply(const PolyVec<C>& y) const {
    PolyVec<C> out(m_, Poly<C>(nv_));
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (!(*this)(i, j).is_zero() && !y[j].is_zero()) out[i] += (*this)(i, j) * y[j];
    return out;
  }
  PolyMatrix sub(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    PolyMatrix S(rs.size(), cs.size(), nv_);
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) S(i, j) = (*this)(rs[i], cs[j]);
    return S;
  }
  template <class F>
  auto map_entries(F&& f) const {
    using P = std::decay_t<decltype(f(std::declval<const Poly<C>&>()))>;
    using D = std::decay_t<decltype(std::declval<P>().lc())>;
    PolyMatrix<D> M(m_, n_, nv_);
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j) M(i, j) = f((*this)(i, j));
    return M;
  }
  bool operator==(const PolyMatrix& o) const {
    return m_ == o.m_ && n_ == o.n_ && a_ == o.a_;
  }

 private:
  std::size_t m_ = 0, n_ = 0;
  unsigned nv_ = 0;
  std::vector<Poly<C>> a_;
};

using ZMatrix = PolyMatrix<Integer>;

template <class C>
bool is_zero_vec(const PolyVec<C>& v) {
  for (const auto& p : v)
    if (!p.is_zero()) return false;
  return true;
}

struct MinorChoice {
  std::size_t r = 0;
  std::vector<std::size_t> rows, cols;
};

namespace detail {
template <class C>
bool simpler(const Poly<C>& a, const Poly<C>& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.size() < b.size();
}
}  // namespace detail

// Rank over the fraction field by fraction-free (Bareiss) elimination; the
// returned rows/cols index a nonsingular r x r submatrix.
template <class C>
MinorChoice rank_with_minor(const PolyMatrix<C>& A) {
  if (A.is_zero()) fail(ErrorKind::ZeroMatrix, "rank of the zero matrix");
  const std::size_t m = A.rows(), n = A.cols();
  std::vector<PolyVec<C>> M(m);
  for (std::size_t i = 0; i < m; ++i) M[i] = A.row(i);
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  Poly<C> prev(A.nvars(), C(1));
  MinorChoice out;
  std::size_t k = 0;
  for (std::size_t j = 0; j < n && k < m; ++j) {
    std::size_t best = m;
    for (std::size_t i = k; i < m; ++i)
      if (!M[i][j].is_zero() && (best == m || detail::simpler(M[i][j], M[best][j]))) best = i;
    if (best == m) continue;
    std::swap(M[k], M[best]);
    std::swap(perm[k], perm[best]);
    for (std::size_t i = k + 1; i < m; ++i) {
      for (std::size_t l = j + 1; l < n; ++l) {
        Poly<C> v = M[k][j] * M[i][l] - M[i][j] * M[k][l];
        M[i][l] = k == 0 ? v : exact_divide(v, prev);
      }
      M[i][j] = Poly<C>(A.nvars());
    }
    prev = M[k][j];
    out.rows.push_back(perm[k]);
    out.cols.push_back(j);
    ++k;
  }
  out.r = k;
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return out.rows[a] < out.rows[b]; });
  std::vector<std::size_t> rs;
  for (auto o : order) rs.push_back(out.rows[o]);
  out.rows = rs;
  return out;
}

template <class C>
Poly<C> determinant(const PolyMatrix<C>& M) {
  const std::size_t n = M.rows();
  if (n == 0) return Poly<C>(M.nvars(), C(1));
  std::vector<PolyVec<C>> W(n);
  for (std::size_t i = 0; i < n; ++i) W[i] = M.row(i);
  Poly<C> prev(M.nvars(), C(1));
  bool neg = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = n;
    for (std::size_t i = k; i < n; ++i)
      if (!W[i][k].is_zero() && (best == n || detail::simpler(W[i][k], W[best][k]))) best = i;
    if (best == n) return Poly<C>(M.nvars());
    if (best != k) {
      std::swap(W[k], W[best]);
      neg = !neg;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t l = k + 1; l < n; ++l)
        W[i][l] = exact_divide(Poly<C>(W[k][k] * W[i][l] - W[i][k] * W[k][l]), prev);
      W[i][k] = Poly<C>(M.nvars());
    }
    prev = W[k][k];
  }
  return neg ? -prev : prev;
}

template <class C>
struct DetAdj {
  Poly<C> det;
  PolyMatrix<C> adj;
};

// det(M) and adj(M) with M*adj = adj*M = det*I.
template <class C>
DetAdj<C> det_adj(const PolyMatrix<C>& M) {
  const std::size_t n = M.rows();
  const unsigned nv = M.nvars();
  if (M.cols() != n) fail(ErrorKind::DomainMismatch, "det_adj needs a square matrix");
  DetAdj<C> out{Poly<C>(nv, C(1)), PolyMatrix<C>(n, n, nv)};
  if (n == 0) return out;
  if (n == 1) {
    out.det = M(0, 0);
    out.adj(0, 0) = Poly<C>(nv, C(1));
    return out;
  }
  auto cofactors = [&]() {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::size_t> rs, cs;
        for (auto t : idx) {
          if (t != j) rs.push_back(t);
          if (t != i) cs.push_back(t);
        }
        Poly<C> d = determinant(M.sub(rs, cs));
        out.adj(i, j) = ((i + j) % 2) ? -d : d;
      }
    out.det = Poly<C>(nv);
    for (std::size_t j = 0; j < n; ++j) out.det += M(0, j) * out.adj(j, 0);
  };
  if (n <= 4) {
    cofactors();
    return out;
  }
  // Fraction-free Gauss-Jordan on [M | I].
  std::vector<PolyVec<C>> W(n, PolyVec<C>(2 * n, Poly<C>(nv)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) W[i][j] = M(i, j);
    W[i][n + i] = Poly<C>(nv, C(1));
  }
  Poly<C> prev(nv, C(1));
  bool neg = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = n;
    for (std::size_t i = k; i < n; ++i)
      if (!W[i][k].is_zero() && (best == n || detail::simpler(W[i][k], W[best][k]))) best = i;
    if (best == n) {
      cofactors();
      return out;
    }
    if (best != k) {
      std::swap(W[k], W[best]);
      neg = !neg;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t l = 0; l < 2 * n; ++l) {
        if (l == k) continue;
        Poly<C> v = W[k][k] * W[i][l] - W[i][k] * W[k][l];
        W[i][l] = exact_divide(v, prev);
      }
      W[i][k] = Poly<C>(nv);
    }
    prev = W[k][k];
  }
  // After the sweep every diagonal entry equals the last pivot; rows that were
  // pivots earlier are rescaled implicitly by the later steps.
  out.det = neg ? -prev : prev;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.adj(i, j) = neg ? -W[i][n + j] : W[i][n + j];
  return out;
}

template <class C>
struct SSystem {
  Poly<C> delta;
  std::vector<std::size_t> rows;         // selected independent rows
  std::vector<std::size_t> pivot_cols;   // columns of the minor
  std::vector<std::size_t> free_cols;    // remaining columns, ascending
  std::vector<PolyVec<C>> cs;            // r x (n-r), cs[i][k] pairs with free_cols[k]
  PolyMatrix<C> adj;                     // adjugate of the minor
};

template <class C>
SSystem<C> reduce_to_s(const PolyMatrix<C>& A, const MinorChoice& ch) {
  SSystem<C> S;
  S.rows = ch.rows;
  S.pivot_cols = ch.cols;
  for (std::size_t j = 0; j < A.cols(); ++j)
    if (std::find(ch.cols.begin(), ch.cols.end(), j) == ch.cols.end()) S.free_cols.push_back(j);
  PolyMatrix<C> D = A.sub(ch.rows, ch.cols);
  DetAdj<C> da = det_adj(D);
  if (da.det.is_zero()) fail(ErrorKind::SingularMinor, "selected minor is singular");
  S.delta = da.det;
  S.adj = da.adj;
  const std::size_t r = ch.rows.size();
  S.cs.assign(r, PolyVec<C>(S.free_cols.size(), Poly<C>(A.nvars())));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < S.free_cols.size(); ++k) {
      Poly<C> acc(A.nvars());
      for (std::size_t t = 0; t < r; ++t) {
        const Poly<C>& a = A(ch.rows[t], S.free_cols[k]);
        if (!a.is_zero() && !da.adj(i, t).is_zero()) acc += da.adj(i, t) * a;
      }
      S.cs[i][k] = acc;
    }
  return S;
}

template <class C>
std::vector<PolyVec<C>> special_solutions(const SSystem<C>& S, std::size_t n, unsigned nvars) {
  std::vector<PolyVec<C>> out;
  for (std::size_t k = 0; k < S.free_cols.size(); ++k) {
    PolyVec<C> v(n, Poly<C>(nvars));
    for (std::size_t i = 0; i < S.pivot_cols.size(); ++i) v[S.pivot_cols[i]] = -S.cs[i][k];
    v[S.free_cols[k]] = S.delta;
    out.push_back(v);
  }
  return out;
}

struct ValuationMinor {
  std::vector<std::size_t> rows, cols;
  long mu = 0;
  bool enumerated = true;  // false when the pivoting fallback was used
};

// Lexicographic enumeration of r x r minors, first minimal valuation wins.
ValuationMinor min_valuation_minor(const ZMatrix& A, const Integer& p, std::size_t r);
// Full-pivoting elimination over the DVR Z[X]_(p) with Gauss valuation; also
// attains the minimum, used when enumeration exceeds the cap.
ValuationMinor min_valuation_minor_pivot(const ZMatrix& A, const Integer& p);

// ---- dense constant matrices (base case N = 0) ----

template <class K>
using Dense = std::vector<std::vector<K>>;

// Reduced row echelon form over a field; returns pivot columns.
template <class K>
std::vector<std::size_t> rref(Dense<K>& M, std::size_t ncols) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t j = 0; j < ncols && r < M.size(); ++j) {
    std::size_t p = M.size();
    for (std::size_t i = r; i < M.size(); ++i)
      if (!Coeff<K>::is_zero(M[i][j])) {
        p = i;
        break;
      }
    if (p == M.size()) continue;
    std::swap(M[r], M[p]);
    K inv = Coeff<K>::div(K(1), M[r][j]);
    for (auto& x : M[r]) x = x * inv;
    for (std::size_t i = 0; i < M.size(); ++i) {
      if (i == r || Coeff<K>::is_zero(M[i][j])) continue;
      K f = M[i][j];
      for (std::size_t l = j; l < M[i].size(); ++l)
        if (!Coeff<K>::is_zero(M[r][l])) M[i][l] = M[i][l] - f * M[r][l];
    }
    piv.push_back(j);
    ++r;
  }
  return piv;
}

template <class K>
std::vector<std::vector<K>> kernel_field(Dense<K> M, std::size_t n) {
  auto piv = rref(M, n);
  std::vector<std::vector<K>> out;
  std::vector<bool> is_piv(n, false);
  for (auto j : piv) is_piv[j] = true;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    std::vector<K> v(n, K(0));
    v[f] = K(1);
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -M[i][f];
    out.push_back(v);
  }
  return out;
}

template <class K>
std::optional<std::vector<K>> solve_field(const Dense<K>& A, const std::vector<K>& b,
                                          std::size_t n) {
  Dense<K> M = A;
  for (std::size_t i = 0; i < M.size(); ++i) M[i].push_back(b[i]);
  auto piv = rref(M, n + 1);
  if (!piv.empty() && piv.back() == n) return std::nullopt;
  std::vector<K> x(n, K(0));
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = M[i][n];
  return x;
}

// Basis of the integer kernel lattice {y in Z^n : M y = 0} (saturated).
std::vector<std::vector<Integer>> integer_kernel(const Dense<Integer>& M, std::size_t n);

template <class C>
std::size_t rank_of(const PolyMatrix<C>& A) {
  if (A.is_zero()) return 0;
  return rank_with_minor(A).r;
}

}  // namespace zm
