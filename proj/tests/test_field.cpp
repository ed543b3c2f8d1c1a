#include "doctest.h"
#include "support.hpp"
#include "zm/field_solver.hpp"

using namespace zt;

namespace {

template <class K>
PolyMatrix<K> stack_columns(const std::vector<PolyVec<K>>& gens, std::size_t n, unsigned nv) {
  return PolyMatrix<K>::from_columns(gens, n, nv);
}

template <class K>
bool in_span(const std::vector<PolyVec<K>>& gens, const PolyVec<K>& y, unsigned nv) {
  if (is_zero_vec(y)) return true;
  if (gens.empty()) return false;
  return solve_inhomogeneous_field(stack_columns(gens, y.size(), nv), y).has_value();
}

std::vector<Monomial> monomials_upto(unsigned N, long B) {
  std::vector<Monomial> out;
  std::function<void(unsigned, long, Monomial)> rec = [&](unsigned i, long left, Monomial m) {
    if (i == N) {
      out.push_back(m);
      return;
    }
    for (long k = 0; k <= left; ++k) {
      Monomial mm = m;
      mm.set(i, static_cast<std::uint32_t>(k));
      rec(i + 1, left - k, mm);
    }
  };
  rec(0, B, Monomial{});
  return out;
}

// Coefficient-comparison matrix of y -> A y on degree <= B unknowns.
template <class K>
struct CoeffSystem {
  Dense<K> M;
  std::vector<Monomial> cols, rows;
};

template <class K>
CoeffSystem<K> coeff_system(const PolyMatrix<K>& A, long B, long extra) {
  const unsigned N = A.nvars();
  const std::size_t m = A.rows(), n = A.cols();
  CoeffSystem<K> S;
  S.cols = monomials_upto(N, B);
  S.rows = monomials_upto(N, B + std::max<long>(A.degree(), 0) + extra);
  auto row_of = [&](const Monomial& mono) {
    for (std::size_t k = 0; k < S.rows.size(); ++k)
      if (S.rows[k] == mono) return k;
    return S.rows.size();
  };
  S.M.assign(m * S.rows.size(), std::vector<K>(n * S.cols.size(), K(0)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& t : A(i, j).terms())
        for (std::size_t c = 0; c < S.cols.size(); ++c) {
          auto& cell = S.M[i * S.rows.size() + row_of(t.first * S.cols[c])][j * S.cols.size() + c];
          cell = cell + t.second;
        }
  return S;
}

// Basis of all solutions of degree <= B over the field, by plain coefficient
// comparison; independent of the recursive elimination.
template <class K>
std::vector<PolyVec<K>> brute_kernel(const PolyMatrix<K>& A, long B) {
  const unsigned N = A.nvars();
  const std::size_t n = A.cols();
  auto S = coeff_system(A, B, 0);
  std::vector<PolyVec<K>> out;
  for (const auto& v : kernel_field(S.M, n * S.cols.size())) {
    PolyVec<K> y;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<typename Poly<K>::Term> ts;
      for (std::size_t c = 0; c < S.cols.size(); ++c)
        if (!Coeff<K>::is_zero(v[j * S.cols.size() + c]))
          ts.push_back({S.cols[c], v[j * S.cols.size() + c]});
      y.push_back(Poly<K>::from_terms(N, ts));
    }
    out.push_back(y);
  }
  return out;
}

// Whether A y = b has a solution of degree <= B.
template <class K>
bool brute_solvable(const PolyMatrix<K>& A, const PolyVec<K>& b, long B) {
  long db = std::max<long>(vec_degree(b), 0);
  long extra = std::max<long>(db - B - std::max<long>(A.degree(), 0), 0);
  auto S = coeff_system(A, B, extra);
  std::vector<K> rhs(S.M.size(), K(0));
  for (std::size_t i = 0; i < b.size(); ++i)
    for (const auto& t : b[i].terms())
      for (std::size_t k = 0; k < S.rows.size(); ++k)
        if (S.rows[k] == t.first) rhs[i * S.rows.size() + k] = t.second;
  return solve_field(S.M, rhs, A.cols() * S.cols.size()).has_value();
}

}  // namespace

TEST_CASE("normalize_delta") {
  auto a = normalize_delta(to_q(P("X1*X2")));
  REQUIRE(a);
  CHECK(a->index == std::vector<std::uint64_t>{1});
  CHECK(a->e == 2);
  CHECK(a->u == 1);
  CHECK(linear_change(to_q(P("X1*X2")), a->c, false) == to_q(P("X2^2 + X1*X2")));

  auto b = normalize_delta(to_q(P("X2^2 + X1")));
  REQUIRE(b);
  CHECK(b->index == std::vector<std::uint64_t>{0});

  // Top form X1^2 - X2^2 at (c, 1): c = 1 is a root, c = 2 gives 3.
  auto top = to_q(P("X1^2 - X2^2"));
  CHECK(top_form_at(top, 2, std::vector<Rational>{Rational(1)}) == 0);
  CHECK(top_form_at(top, 2, std::vector<Rational>{Rational(2)}) == 3);
  auto c = normalize_delta(top);
  REQUIRE(c);
  CHECK(c->index == std::vector<std::uint64_t>{0});
  CHECK(c->u == -1);

  FpScope s(2);
  auto none = normalize_delta(convert<Fp>(P("X1^2*X2 + X1*X2^2")));
  CHECK(!none);
  auto t = normalize_delta(convert<FpT>(P("X1^2*X2 + X1*X2^2")));
  REQUIRE(t);
  CHECK(!Coeff<FpT>::is_zero(t->u));
}

TEST_CASE("build_derived") {
  auto A = to_q(M({{"X2"}}));
  auto D = build_derived(A, 1, 1);
  CHECK(D.A.rows() == 2);
  CHECK(D.A.cols() == 1);
  CHECK(D.A(0, 0).is_zero());
  CHECK(D.A(1, 0) == Poly<Rational>(1, Rational(1)));

  auto A2 = to_q(M({{"X1*X2 + 1", "X2^2 - X1"}}));
  auto D2 = build_derived(A2, 3, 2);
  CHECK(D2.A.rows() == 5);
  CHECK(D2.A.cols() == 6);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    PolyVec<Rational> y;
    for (int j = 0; j < 2; ++j) {
      ZPoly f = random_poly(rng, 2, 4, 5, 4);
      std::vector<ZPoly::Term> keep;
      for (const auto& term : f.terms())
        if (term.first[1] < 3) keep.push_back(term);
      y.push_back(to_q(ZPoly::from_terms(2, keep)));
    }
    auto packed = pack_derived(y, 3);
    CHECK(unpack_derived(packed, 2, 3, 2) == y);
    // A' y' is the coefficient list of A y.
    auto lhs = D2.A.apply(packed);
    auto Ay = A2.apply(y)[0];
    auto parts = Ay.is_zero() ? PolyVec<Rational>{} : split_xn(Ay);
    parts.resize(5, Poly<Rational>(1));
    CHECK(lhs == parts);
  }
}

TEST_CASE("syzygy_field examples") {
  auto a = syzygy_field(to_q(M({{"X1", "X2"}})));
  CHECK(in_span(a.generators, to_q(V({"X2", "-X1"})), 2));
  CHECK(a.bound_ok);
  for (const auto& g : a.generators) CHECK(in_span(std::vector<PolyVec<Rational>>{to_q(V({"X2", "-X1"}))}, g, 2));

  auto b = syzygy_field(to_q(M({{"1"}}, 1)));
  CHECK(b.generators.empty());

  auto c = syzygy_field(to_q(M({{"X1", "1"}, {"X1^2", "X1"}}, 1)));
  CHECK(in_span(c.generators, to_q(V({"1", "-X1"}, 1)), 1));
  CHECK(c.trace.front().r == 1);

  auto z = syzygy_field(to_q(ZMatrix(1, 2, 1)));
  CHECK(z.generators.size() == 2);
}

TEST_CASE("solve_inhomogeneous_field examples") {
  auto y = solve_inhomogeneous_field(to_q(M({{"X1", "1 - X1"}}, 1)), to_q(V({"1"}, 1)));
  REQUIRE(y);
  auto y2 = solve_inhomogeneous_field(to_q(M({{"X1^2", "X1 + 1"}}, 1)), to_q(V({"1"}, 1)));
  REQUIRE(y2);
  CHECK(to_q(M({{"X1^2", "X1 + 1"}}, 1)).apply(*y2)[0] == to_q(P("1", 1)));
  CHECK(!solve_inhomogeneous_field(to_q(M({{"1"}, {"1"}}, 1)), to_q(V({"1", "2"}, 1))));
  CHECK(!solve_inhomogeneous_field(to_q(M({{"X1", "X2"}})), to_q(V({"1"}))));
  auto y3 = solve_inhomogeneous_field(to_q(M({{"X1", "X2"}})), to_q(V({"X1^2 + X2^3"})));
  CHECK(y3.has_value());
}

TEST_CASE("descend_finite_field") {
  FpScope s(3);
  auto T = FpT::from_poly(up_from_index(3));  // the indeterminate T
  Poly<FpT> x1 = Poly<FpT>::var(2, 0), x2 = Poly<FpT>::var(2, 1);
  PolyVec<FpT> v{x2 + Poly<FpT>(2, T), -x1};
  auto out = descend_finite_field(std::vector<PolyVec<FpT>>{v});
  REQUIRE(out.size() == 2);
  CHECK(out[0] == PolyVec<Fp>{Poly<Fp>::var(2, 1), -Poly<Fp>::var(2, 0)});
  CHECK(out[1] == PolyVec<Fp>{Poly<Fp>(2, Fp(1)), Poly<Fp>(2)});
  CHECK(descend_finite_field(std::vector<PolyVec<FpT>>{PolyVec<FpT>{x1, x2}}).size() == 1);
  CHECK(descend_finite_field(std::vector<PolyVec<FpT>>{PolyVec<FpT>{Poly<FpT>(2), Poly<FpT>(2)}}).empty());
}

TEST_CASE("finite field fallback") {
  FpScope s(2);
  auto A = to_fp(M({{"X1^2*X2 + X1*X2^2", "X1^2*X2 + X1*X2^2 + X1*X2"}}));
  auto B = syzygy_field(A);
  CHECK(B.via_fpt);
  CHECK(in_span(B.generators, to_fp(V({"X1^2*X2 + X1*X2^2 + X1*X2", "X1^2*X2 + X1*X2^2"})), 2));
  auto y = solve_inhomogeneous_field(A, to_fp(V({"X1^2*X2^2 + X1*X2^3 + X1^2*X2"})));
  REQUIRE(y);
  auto none = solve_inhomogeneous_field(A, to_fp(V({"X1"})));
  CHECK(!none);
}

TEST_CASE("field completeness on small instances") {
  std::mt19937_64 rng(21);
  const long B = 3;
  int checked = 0;
  for (int t = 0; t < 40; ++t) {
    unsigned N = 1 + t % 2;
    std::size_t m = 1 + rng() % 2, n = 1 + rng() % 3;
    ZMatrix A = random_matrix(rng, m, n, N, 2, 4, 2);
    if (A.is_zero()) continue;
    {
      auto Aq = to_q(A);
      auto G = syzygy_field(Aq);
      CHECK(G.bound_ok);
      for (const auto& y : brute_kernel(Aq, B)) CHECK(in_span(G.generators, y, N));
      ZVec b;
      for (std::size_t i = 0; i < m; ++i) b.push_back(random_poly(rng, N, 2, 3, 2));
      auto sol = solve_inhomogeneous_field(Aq, to_q(b));
      // Cross-check solvability against a bounded search.
      if (!sol) CHECK(!brute_solvable(Aq, to_q(b), B));
      if (brute_solvable(Aq, to_q(b), 2)) CHECK(sol.has_value());
    }
    {
      FpScope s(2);
      auto A2 = to_fp(A);
      if (A2.is_zero()) continue;
      auto G = syzygy_field(A2);
      for (const auto& y : brute_kernel(A2, B)) CHECK(in_span(G.generators, y, N));
    }
    ++checked;
  }
  CHECK(checked > 20);
}
