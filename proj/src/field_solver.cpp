#include "zm/field_solver.hpp"

namespace zm {

namespace {

UPoly up_lcm(const UPoly& a, const UPoly& b) {
  UPoly q, r;
  up_divmod(up_mul(a, b), up_gcd(a, b), q, r);
  return up_monic(q);
}

}  // namespace

PolyVec<FpT> clear_t_denominators(const PolyVec<FpT>& v, UPoly* multiplier) {
  UPoly L = up_const(1);
  for (const auto& f : v)
    for (const auto& t : f.terms()) L = up_lcm(L, t.second.den());
  PolyVec<FpT> out;
  const FpT scale = FpT::from_poly(L);
  for (const auto& f : v) out.push_back(f.scale(scale));
  if (multiplier) *multiplier = L;
  return out;
}

std::vector<PolyVec<Fp>> descend_finite_field(const std::vector<PolyVec<FpT>>& gens) {
  std::vector<PolyVec<Fp>> out;
  for (const auto& v : gens) {
    long top = -1;
    for (const auto& f : v)
      for (const auto& t : f.terms()) {
        if (!(t.second.den() == up_const(1)))
          fail(ErrorKind::DomainMismatch, "descend_finite_field needs polynomial T-entries");
        top = std::max(top, t.second.num().degree());
      }
    for (long k = 0; k <= top; ++k) {
      PolyVec<Fp> slice;
      bool nonzero = false;
      for (const auto& f : v) {
        std::vector<Poly<Fp>::Term> ts;
        for (const auto& t : f.terms()) {
          const auto& c = t.second.num().c;
          if (static_cast<std::size_t>(k) < c.size() && c[k] != 0)
            ts.push_back({t.first, Fp::raw(c[k])});
        }
        if (!ts.empty()) nonzero = true;
        slice.push_back(Poly<Fp>::from_sorted(f.nvars(), std::move(ts)));
      }
      if (nonzero) out.push_back(slice);
    }
  }
  return out;
}

PolyMatrix<Rational> to_q(const ZMatrix& A) {
  return A.map_entries([](const ZPoly& f) { return zm::to_q(f); });
}

PolyVec<Rational> to_q(const ZVec& v) {
  PolyVec<Rational> out;
  for (const auto& f : v) out.push_back(zm::to_q(f));
  return out;
}

PolyMatrix<Fp> to_fp(const ZMatrix& A) {
  return A.map_entries([](const ZPoly& f) { return convert<Fp>(f); });
}

PolyVec<Fp> to_fp(const ZVec& v) {
  PolyVec<Fp> out;
  for (const auto& f : v) out.push_back(convert<Fp>(f));
  return out;
}

ZPoly lift_fp(const Poly<Fp>& f) {
  return f.map([](const Fp& a) -> Integer { return Integer(static_cast<unsigned long>(a.v)); });
}

FieldSyzygyZ syzygy_field_q(const ZMatrix& A) {
  FieldSyzygyBasis<Rational> B = syzygy_field(to_q(A));
  FieldSyzygyZ out;
  out.trace = B.trace;
  out.bound = B.bound;
  out.bound_ok = B.bound_ok;
  for (const auto& g : B.generators) {
    Integer L = vec_denominator(g);
    out.cleared = lcm(out.cleared, L);
    ZVec z = clear_vec(g, L);
    Integer c = 0;
    for (const auto& f : z) c = gcd(c, poly_content(f));
    if (c > 1)
      for (auto& f : z) {
        ZPoly q;
        f.try_div_scalar(c, q);
        f = q;
      }
    bool dup = false;
    for (const auto& w : out.generators)
      if (w == z) dup = true;
    if (!dup) out.generators.push_back(z);
  }
  return out;
}

std::optional<PolyVec<Rational>> solve_field_q(const ZMatrix& A, const ZVec& b) {
  return solve_inhomogeneous_field(to_q(A), to_q(b));
}

}  // namespace zm
