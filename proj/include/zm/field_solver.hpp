#pragma once

#include <functional>
#include <optional>
#include <type_traits>

#include "zm/bounds.hpp"
#include "zm/coeff.hpp"
#include "zm/linalg.hpp"

namespace zm {

// Candidate points for the linear change, indexed by 0, 1, 2, ...
template <class K>
struct FieldPoints;
template <>
struct FieldPoints<Rational> {
  static std::optional<Rational> at(std::uint64_t k) { return Rational(Integer(k)); }
};
template <>
struct FieldPoints<Fp> {
  static std::optional<Fp> at(std::uint64_t k) {
    if (k >= fp_modulus()) return std::nullopt;
    return Fp::raw(k);
  }
};
template <>
struct FieldPoints<FpT> {
  static std::optional<FpT> at(std::uint64_t k) { return FpT::from_poly(up_from_index(k)); }
};

template <class K>
struct Normalization {
  std::vector<std::uint64_t> index;  // point indices, one per X_1..X_{N-1}
  std::vector<K> c;
  long e = 0;
  K u = K(1);
};

// Value of the degree-e homogeneous part of f at (c_1, ..., c_{N-1}, 1).
template <class K>
K top_form_at(const Poly<K>& f, long e, const std::vector<K>& c) {
  K acc(0);
  for (const auto& t : f.terms()) {
    if (static_cast<long>(t.first.tot) != e) continue;
    K v = t.second;
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::uint32_t k = 0; k < t.first[static_cast<unsigned>(i)]; ++k) v = v * c[i];
    acc = acc + v;
  }
  return acc;
}

// Searches c in {0,1,2,...}^(N-1), by total then lexicographically, for the
// first point where the top form of delta is nonzero. Over F_p the search is
// limited to F_p-points and may come back empty.
template <class K>
std::optional<Normalization<K>> normalize_delta(const Poly<K>& delta) {
  const unsigned N = delta.nvars();
  if (N == 0) fail(ErrorKind::NoVariables, "normalize_delta needs N >= 1");
  if (delta.is_zero()) fail(ErrorKind::Zero, "normalize_delta of zero");
  Normalization<K> out;
  out.e = delta.degree();
  const std::size_t k = N - 1;
  if (out.e == 0) {
    out.index.assign(k, 0);
    out.c.assign(k, K(0));
    out.u = delta.lc();
    return out;
  }
  // A nonzero form of degree e has a non-root in any box with e+1 values per axis.
  const std::uint64_t tmax = static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(out.e) + 1;
  std::vector<std::uint64_t> idx(k, 0);
  for (std::uint64_t t = 0; t <= tmax; ++t) {
    std::optional<Normalization<K>> found;
    bool any_point = false;
    // Enumerate compositions of t into k parts, lexicographically descending.
    std::function<bool(std::size_t, std::uint64_t)> rec = [&](std::size_t pos,
                                                              std::uint64_t left) -> bool {
      if (pos + 1 >= k) {
        if (k == 0 && left != 0) return false;
        if (k > 0) idx[pos] = left;
        std::vector<K> c;
        for (auto v : idx) {
          auto pt = FieldPoints<K>::at(v);
          if (!pt) return false;
          c.push_back(*pt);
        }
        any_point = true;
        K val = top_form_at(delta, out.e, c);
        if (Coeff<K>::is_zero(val)) return false;
        Normalization<K> r;
        r.index = idx;
        r.c = c;
        r.e = out.e;
        r.u = val;
        found = r;
        return true;
      }
      for (std::uint64_t v = left + 1; v-- > 0;) {
        idx[pos] = v;
        if (rec(pos + 1, left - v)) return true;
      }
      return false;
    };
    rec(0, t);
    if (found) return found;
    if (!any_point && t > 0) break;
    if (k == 0) break;
  }
  return std::nullopt;
}

template <class K>
struct DerivedSystem {
  PolyMatrix<K> A;
  std::optional<PolyVec<K>> b;
  std::size_t window = 0;  // X_N-degree window of the unknowns
  std::size_t eqs = 0;     // equations per original row
  std::size_t n = 0;
};

// Coefficient comparison in X_N: unknown y_{j,k} sits at column j*window + k,
// equation (i, k) at row i*eqs + k.
template <class K>
DerivedSystem<K> build_derived(const PolyMatrix<K>& A, std::size_t window, std::size_t d,
                               const std::optional<PolyVec<K>>& b = std::nullopt) {
  const unsigned N = A.nvars();
  if (N == 0) fail(ErrorKind::NoVariables, "build_derived needs N >= 1");
  const std::size_t m = A.rows(), n = A.cols();
  std::size_t eqs = window + d;
  if (b)
    for (const auto& bi : *b)
      if (!bi.is_zero()) eqs = std::max<std::size_t>(eqs, bi.degree_in(N - 1) + 1);
  DerivedSystem<K> D;
  D.window = window;
  D.eqs = eqs;
  D.n = n;
  D.A = PolyMatrix<K>(m * eqs, n * window, N - 1);
  if (window > 0 && limits().derived_cells / window / std::max<std::size_t>(m * eqs, 1) < n)
    fail(ErrorKind::ResourceLimit, "derived system exceeds the cell budget");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (A(i, j).is_zero()) continue;
      PolyVec<K> parts = split_xn(A(i, j));
      for (std::size_t l = 0; l < parts.size(); ++l) {
        if (parts[l].is_zero()) continue;
        for (std::size_t kk = 0; kk < window; ++kk)
          if (kk + l < eqs) D.A(i * eqs + kk + l, j * window + kk) = parts[l];
      }
    }
  if (b) {
    PolyVec<K> bb(m * eqs, Poly<K>(N - 1));
    for (std::size_t i = 0; i < m; ++i) {
      if ((*b)[i].is_zero()) continue;
      PolyVec<K> parts = split_xn((*b)[i]);
      for (std::size_t k = 0; k < parts.size(); ++k) bb[i * eqs + k] = parts[k];
    }
    D.b = bb;
  }
  return D;
}

template <class K>
PolyVec<K> unpack_derived(const PolyVec<K>& yp, std::size_t n, std::size_t window, unsigned N) {
  PolyVec<K> y;
  for (std::size_t j = 0; j < n; ++j) {
    PolyVec<K> parts(yp.begin() + static_cast<long>(j * window),
                     yp.begin() + static_cast<long>((j + 1) * window));
    for (auto& p : parts) p = p.with_nvars(N - 1);
    y.push_back(join_xn(parts, N));
  }
  return y;
}

template <class K>
PolyVec<K> pack_derived(const PolyVec<K>& y, std::size_t window) {
  PolyVec<K> out;
  for (const auto& f : y) {
    const unsigned N = f.nvars();
    PolyVec<K> parts = f.is_zero() ? PolyVec<K>{} : split_xn(f);
    if (parts.size() > window) fail(ErrorKind::DomainMismatch, "X_N-degree exceeds the window");
    parts.resize(window, Poly<K>(N - 1));
    for (auto& p : parts) out.push_back(p);
  }
  return out;
}

template <class K>
struct FieldLevel {
  unsigned nvars = 0;
  std::size_t rows = 0, cols = 0, r = 0;
  long e = 0;  // total degree of the pivot minor
  K u = K(1);  // X_N-leading constant after the change
  std::vector<std::uint64_t> change;
  std::size_t window = 0;
  long d = 0;
};

template <class K>
struct FieldSyzygyBasis {
  std::vector<PolyVec<K>> generators;
  std::vector<FieldLevel<K>> trace;
  bool via_fpt = false;  // some level needed F_p(T)
  Integer bound = 0;     // (2md)^(2^N), 0 when too large to write out
  bool bound_ok = true;
};

namespace field_detail {

template <class K>
std::vector<PolyVec<K>> unit_vectors(std::size_t n, unsigned N) {
  std::vector<PolyVec<K>> out;
  for (std::size_t j = 0; j < n; ++j) {
    PolyVec<K> v(n, Poly<K>(N));
    v[j] = Poly<K>(N, K(1));
    out.push_back(v);
  }
  return out;
}

template <class K>
void push_unique(std::vector<PolyVec<K>>& out, const PolyVec<K>& v) {
  if (is_zero_vec(v)) return;
  for (const auto& w : out)
    if (w == v) return;
  out.push_back(v);
}

template <class K>
PolyVec<K> change_vec(const PolyVec<K>& v, const std::vector<K>& c, bool inverse) {
  PolyVec<K> out;
  for (const auto& f : v) out.push_back(f.nvars() == 0 ? f : linear_change(f, c, inverse));
  return out;
}

template <class K>
Dense<K> to_dense(const PolyMatrix<K>& A) {
  Dense<K> M(A.rows(), std::vector<K>(A.cols(), K(0)));
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) M[i][j] = A(i, j).constant_term();
  return M;
}

template <class K>
std::vector<PolyVec<K>> base_kernel(const PolyMatrix<K>& A) {
  const std::size_t n = A.cols();
  std::vector<PolyVec<K>> out;
  auto emit = [&](const auto& vs) {
    for (const auto& v : vs) {
      PolyVec<K> pv;
      for (const auto& x : v) pv.push_back(Poly<K>(0, K(x)));
      out.push_back(pv);
    }
  };
  if constexpr (std::is_same_v<K, Rational>) {
    // Row scaling keeps the kernel; the saturated integer kernel is then a
    // basis over every localization of Z.
    Dense<Integer> Z(A.rows(), std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < A.rows(); ++i) {
      Integer L = 1;
      for (std::size_t j = 0; j < n; ++j) L = lcm(L, Integer(A(i, j).constant_term().get_den()));
      for (std::size_t j = 0; j < n; ++j) {
        Rational v = A(i, j).constant_term() * L;
        Z[i][j] = v.get_num();
      }
    }
    emit(integer_kernel(Z, n));
    return out;
  }
  emit(kernel_field(to_dense(A), n));
  return out;
}

inline PolyMatrix<FpT> lift_fpt(const PolyMatrix<Fp>& A) {
  return A.map_entries([](const Poly<Fp>& f) {
    return f.map([](const Fp& a) -> FpT { return FpT(static_cast<long>(a.v)); });
  });
}
inline PolyVec<FpT> lift_fpt(const PolyVec<Fp>& v) {
  PolyVec<FpT> out;
  for (const auto& f : v) out.push_back(f.map([](const Fp& a) -> FpT { return FpT(static_cast<long>(a.v)); }));
  return out;
}

}  // namespace field_detail

// Multiplies a vector over F_p(T)[X] by the lcm of its T-denominators.
PolyVec<FpT> clear_t_denominators(const PolyVec<FpT>& v, UPoly* multiplier = nullptr);

// Splits vectors with polynomial T-coefficients into their T-slices y(k).
std::vector<PolyVec<Fp>> descend_finite_field(const std::vector<PolyVec<FpT>>& gens);

template <class K>
std::vector<PolyVec<K>> syzygy_field_rec(const PolyMatrix<K>& A, std::vector<FieldLevel<K>>& trace,
                                         bool& via_fpt);

template <class K>
std::vector<PolyVec<K>> syzygy_field_rec(const PolyMatrix<K>& A, std::vector<FieldLevel<K>>& trace,
                                         bool& via_fpt) {
  using namespace field_detail;
  const unsigned N = A.nvars();
  const std::size_t n = A.cols();
  if (A.is_zero()) return unit_vectors<K>(n, N);
  MinorChoice ch = rank_with_minor(A);
  const std::size_t r = ch.r;
  if (N == 0) return base_kernel(A);
  std::vector<std::size_t> all(n), first(r);
  std::iota(all.begin(), all.end(), 0);
  std::iota(first.begin(), first.end(), 0);
  PolyMatrix<K> Ar = A.sub(ch.rows, all);
  SSystem<K> S = reduce_to_s(Ar, MinorChoice{r, first, ch.cols});
  std::vector<PolyVec<K>> out;
  for (const auto& v : special_solutions(S, n, N)) push_unique(out, v);
  FieldLevel<K> lvl;
  lvl.nvars = N;
  lvl.rows = A.rows();
  lvl.cols = n;
  lvl.r = r;
  lvl.e = S.delta.degree();
  if (lvl.e == 0) {
    lvl.u = S.delta.lc();
    trace.push_back(lvl);
    return out;
  }
  auto norm = normalize_delta(S.delta);
  if (!norm) {
    if constexpr (std::is_same_v<K, Fp>) {
      via_fpt = true;
      std::vector<FieldLevel<FpT>> sub_trace;
      bool dummy = false;
      auto gens = syzygy_field_rec(lift_fpt(A), sub_trace, dummy);
      std::vector<PolyVec<FpT>> cleared;
      for (const auto& g : gens) cleared.push_back(clear_t_denominators(g));
      std::vector<PolyVec<Fp>> res;
      for (const auto& v : descend_finite_field(cleared)) push_unique(res, v);
      return res;
    } else {
      fail(ErrorKind::Internal, "no normalizing point over an infinite field");
    }
  }
  lvl.u = norm->u;
  lvl.change = norm->index;
  PolyMatrix<K> Ac = Ar.map_entries([&](const Poly<K>& f) { return linear_change(f, norm->c, false); });
  long w = lvl.e;
  for (const auto& row : S.cs)
    for (const auto& c : row)
      if (!c.is_zero()) w = std::max(w, linear_change(c, norm->c, false).degree_in(N - 1));
  lvl.window = static_cast<std::size_t>(w);
  lvl.d = Ac.degree_in(N - 1);
  trace.push_back(lvl);
  DerivedSystem<K> D = build_derived(Ac, lvl.window, static_cast<std::size_t>(lvl.d));
  auto sub = syzygy_field_rec(D.A, trace, via_fpt);
  for (const auto& yp : sub) {
    PolyVec<K> y = unpack_derived(yp, n, lvl.window, N);
    push_unique(out, change_vec(y, norm->c, true));
  }
  return out;
}

template <class K>
FieldSyzygyBasis<K> syzygy_field(const PolyMatrix<K>& A) {
  FieldSyzygyBasis<K> B;
  B.generators = syzygy_field_rec(A, B.trace, B.via_fpt);
  for (const auto& g : B.generators)
    if (!is_zero_vec(A.apply(g))) fail(ErrorKind::Internal, "field generator does not solve A");
  if (!A.is_zero()) {
    const long d = std::max<long>(A.degree(), 1), m = static_cast<long>(A.rows());
    if (A.nvars() <= 6) B.bound = beta(A.nvars(), d, m);
    for (const auto& g : B.generators)
      if (!within_beta(vec_degree(g), A.nvars(), d, m)) B.bound_ok = false;
  }
  return B;
}

template <class K>
std::optional<PolyVec<K>> solve_field_rec(const PolyMatrix<K>& A, const PolyVec<K>& b);

namespace field_detail {

inline std::optional<PolyVec<Fp>> solve_via_fpt(const PolyMatrix<Fp>& A, const PolyVec<Fp>& b) {
  auto y = solve_field_rec(lift_fpt(A), lift_fpt(b));
  if (!y) return std::nullopt;
  // D(T) y = Y with T-polynomial entries and A Y = D(T) b; any nonzero
  // coefficient d_k of D gives the F_p[X] solution Y(k)/d_k.
  UPoly D;
  PolyVec<FpT> Y = clear_t_denominators(*y, &D);
  std::size_t k = 0;
  while (D.c[k] == 0) ++k;
  Fp inv = Fp::raw(D.c[k]).inverse();
  PolyVec<Fp> out;
  for (const auto& f : Y) {
    std::vector<typename Poly<Fp>::Term> ts;
    for (const auto& t : f.terms()) {
      const UPoly& num = t.second.num();
      if (k < num.c.size() && num.c[k] != 0) ts.push_back({t.first, Fp::raw(num.c[k]) * inv});
    }
    out.push_back(Poly<Fp>::from_sorted(f.nvars(), std::move(ts)));
  }
  return out;
}

}  // namespace field_detail

template <class K>
std::optional<PolyVec<K>> solve_field_rec(const PolyMatrix<K>& A, const PolyVec<K>& b) {
  using namespace field_detail;
  const unsigned N = A.nvars();
  const std::size_t m = A.rows(), n = A.cols();
  if (b.size() != m) fail(ErrorKind::DomainMismatch, "right-hand side length differs from rows");
  if (is_zero_vec(b)) return PolyVec<K>(n, Poly<K>(N));
  if (A.is_zero()) return std::nullopt;
  MinorChoice ch = rank_with_minor(A);
  const std::size_t r = ch.r;
  {
    PolyMatrix<K> Ab(m, n + 1, N);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) Ab(i, j) = A(i, j);
      Ab(i, n) = b[i].with_nvars(N);
    }
    if (rank_with_minor(Ab).r > r) return std::nullopt;
  }
  if (N == 0) {
    std::vector<K> bb;
    for (const auto& x : b) bb.push_back(x.constant_term());
    auto x = solve_field(to_dense(A), bb, n);
    if (!x) return std::nullopt;
    PolyVec<K> out;
    for (const auto& v : *x) out.push_back(Poly<K>(0, v));
    return out;
  }
  std::vector<std::size_t> all(n), first(r);
  std::iota(all.begin(), all.end(), 0);
  std::iota(first.begin(), first.end(), 0);
  PolyMatrix<K> Ar = A.sub(ch.rows, all);
  PolyVec<K> br;
  for (auto i : ch.rows) br.push_back(b[i].with_nvars(N));
  SSystem<K> S = reduce_to_s(Ar, MinorChoice{r, first, ch.cols});
  const long e = S.delta.degree();
  if (e == 0) {
    const K dinv = Coeff<K>::div(K(1), S.delta.lc());
    PolyVec<K> y(n, Poly<K>(N));
    for (std::size_t i = 0; i < r; ++i) {
      Poly<K> acc(N);
      for (std::size_t t = 0; t < r; ++t) acc += S.adj(i, t) * br[t];
      y[S.pivot_cols[i]] = acc.scale(dinv);
    }
    return y;
  }
  auto norm = normalize_delta(S.delta);
  if (!norm) {
    if constexpr (std::is_same_v<K, Fp>) {
      return solve_via_fpt(A, b);
    } else {
      fail(ErrorKind::Internal, "no normalizing point over an infinite field");
    }
  }
  const auto& c = norm->c;
  auto chg = [&](const Poly<K>& f) { return linear_change(f, c, false); };
  PolyMatrix<K> Ac = Ar.map_entries(chg);
  PolyMatrix<K> adjc = S.adj.map_entries(chg);
  Poly<K> dc = chg(S.delta);
  PolyVec<K> f(r), g(r);
  for (std::size_t i = 0; i < r; ++i) divmod_xn_unit(chg(br[i]), dc, f[i], g[i]);
  PolyVec<K> h(n, Poly<K>(N));
  for (std::size_t i = 0; i < r; ++i) {
    Poly<K> acc(N);
    for (std::size_t t = 0; t < r; ++t) acc += adjc(i, t) * f[t];
    h[S.pivot_cols[i]] = acc;
  }
  long w = e;
  for (const auto& row : S.cs)
    for (const auto& x : row)
      if (!x.is_zero()) w = std::max(w, chg(x).degree_in(N - 1));
  w = std::max(w, adjc.degree_in(N - 1));
  const long d = Ac.degree_in(N - 1);
  DerivedSystem<K> D = build_derived(Ac, static_cast<std::size_t>(w), static_cast<std::size_t>(d),
                                     std::optional<PolyVec<K>>(g));
  auto sub = solve_field_rec(D.A, *D.b);
  if (!sub) return std::nullopt;
  PolyVec<K> z = unpack_derived(*sub, n, D.window, N);
  PolyVec<K> y;
  for (std::size_t j = 0; j < n; ++j) y.push_back(linear_change(Poly<K>(h[j] + z[j]), c, true));
  return y;
}

template <class K>
std::optional<PolyVec<K>> solve_inhomogeneous_field(const PolyMatrix<K>& A, const PolyVec<K>& b) {
  auto y = solve_field_rec(A, b);
  if (y) {
    PolyVec<K> Ay = A.apply(*y);
    for (std::size_t i = 0; i < b.size(); ++i)
      if (Ay[i] != b[i].with_nvars(A.nvars()))
        fail(ErrorKind::Internal, "field solution does not verify");
  }
  return y;
}

// ---- integer-coefficient entry points ----

struct FieldSyzygyZ {
  std::vector<ZVec> generators;  // primitive integer vectors generating Sol over Q[X]
  std::vector<FieldLevel<Rational>> trace;
  Integer cleared = 1;  // lcm of denominators cleared from the generators
  Integer bound = 0;
  bool bound_ok = true;
};

PolyMatrix<Rational> to_q(const ZMatrix& A);
PolyVec<Rational> to_q(const ZVec& v);
FieldSyzygyZ syzygy_field_q(const ZMatrix& A);
std::optional<PolyVec<Rational>> solve_field_q(const ZMatrix& A, const ZVec& b);

PolyMatrix<Fp> to_fp(const ZMatrix& A);
PolyVec<Fp> to_fp(const ZVec& v);
// Lifts residues to integers in [0, p).
ZPoly lift_fp(const Poly<Fp>& f);

}  // namespace zm
