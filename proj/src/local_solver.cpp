#include "zm/local_solver.hpp"

namespace zm {

namespace {

void push_unique(std::vector<ZVec>& out, const ZVec& v) {
  if (is_zero_vec(v)) return;
  for (const auto& w : out)
    if (w == v) return;
  out.push_back(v);
}

ZPoly div_pk(const ZPoly& f, const Integer& pk) {
  ZPoly q;
  if (!f.try_div_scalar(pk, q)) fail(ErrorKind::Internal, "entry not divisible by p^mu");
  return q;
}

std::uint64_t pow_u64(std::uint64_t b, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (r > limits().te_exponent_cap / b) return limits().te_exponent_cap + 1;
    r *= b;
  }
  return r;
}

struct Transform {
  enum Kind { Identity, Linear, Te } kind = Identity;
  std::vector<Integer> c;
  std::uint64_t e = 0;

  ZPoly fwd(const ZPoly& f) const {
    if (kind == Linear) return linear_change(f, c, false);
    if (kind == Te) return translate_te(f, e, false);
    return f;
  }
  ZPoly inv(const ZPoly& f) const {
    if (kind == Linear) return linear_change(f, c, true);
    if (kind == Te) return translate_te(f, e, true);
    return f;
  }
};

bool next_box_point(std::vector<std::uint64_t>& idx, std::uint64_t p) {
  for (std::size_t i = idx.size(); i-- > 0;) {
    if (idx[i] + 1 < p) {
      ++idx[i];
      for (std::size_t j = i + 1; j < idx.size(); ++j) idx[j] = 0;
      return true;
    }
  }
  return false;
}

std::vector<ZVec> local_rec(const ZMatrix& A, const Integer& p, LocalMode mode,
                            std::vector<LocalLevel>& trace) {
  const unsigned N = A.nvars();
  const std::size_t n = A.cols();
  std::vector<ZVec> out;
  if (A.is_zero()) {
    for (std::size_t j = 0; j < n; ++j) {
      ZVec v(n, ZPoly(N));
      v[j] = ZPoly(N, Integer(1));
      out.push_back(v);
    }
    return out;
  }
  LocalLevel lvl;
  lvl.nu = N;
  lvl.m = A.rows();
  lvl.n = n;
  lvl.r = rank_with_minor(A).r;
  lvl.deg = A.degree();
  const std::size_t r = lvl.r;
  ValuationMinor vm;
  try {
    vm = min_valuation_minor(A, p, r);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::CombinatorialLimit) throw;
    vm = min_valuation_minor_pivot(A, p);
  }
  lvl.enumerated = vm.enumerated;
  lvl.mu = vm.mu;
  std::vector<std::size_t> all(n), first(r);
  std::iota(all.begin(), all.end(), 0);
  std::iota(first.begin(), first.end(), 0);
  ZMatrix Ar = A.sub(vm.rows, all);
  SSystem<Integer> S = reduce_to_s(Ar, MinorChoice{r, first, vm.cols});
  if (poly_valuation(S.delta, p) != Valuation::of(vm.mu)) lvl.valuation_ok = false;
  for (const auto& row : S.cs)
    for (const auto& c : row)
      if (poly_valuation(c, p) < Valuation::of(vm.mu)) lvl.valuation_ok = false;
  if (!lvl.valuation_ok) {
    trace.push_back(lvl);
    fail(ErrorKind::Internal, "valuation of an (S)-entry is below mu");
  }
  const Integer pk = ipow(p, static_cast<unsigned long>(vm.mu));
  for (const auto& v : special_solutions(S, n, N)) {
    ZVec u;
    for (const auto& f : v) u.push_back(div_pk(f, pk));
    push_unique(out, u);
  }
  if (N == 0) {
    lvl.transform = "none";
    trace.push_back(lvl);
    return out;
  }
  ZPoly eps = div_pk(S.delta, pk);
  std::vector<ZVec> d(S.cs.size());
  for (std::size_t i = 0; i < S.cs.size(); ++i)
    for (const auto& c : S.cs[i]) d[i].push_back(div_pk(c, pk));
  lvl.e = static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(std::max<long>(lvl.deg, 0)) + 1;
  if (lvl.e < 2) lvl.e = 2;

  Transform T;
  bool chosen = false;
  if (mode == LocalMode::Adaptive) {
    if (regular_xn_degree(eps, p)) {
      T.kind = Transform::Identity;
      lvl.transform = "identity";
      chosen = true;
    } else if (N > 1 && p.fits_ulong_p()) {
      std::vector<std::uint64_t> idx(N - 1, 0);
      while (!chosen && next_box_point(idx, p.get_ui())) {
        Transform L;
        L.kind = Transform::Linear;
        for (auto v : idx) L.c.push_back(Integer(static_cast<unsigned long>(v)));
        if (regular_xn_degree(L.fwd(eps), p)) {
          T = L;
          lvl.transform = "linear";
          lvl.change = idx;
          chosen = true;
        }
      }
    }
    // Small fields can have too few points for a linear change; smaller
    // exponents than e keep the derived windows short.
    for (std::uint64_t k = 2; !chosen && N > 1 && k < lvl.e; ++k) {
      Transform K;
      K.kind = Transform::Te;
      K.e = k;
      if (regular_xn_degree(K.fwd(eps), p)) {
        T = K;
        lvl.transform = "T_k";
        lvl.change = {k};
        chosen = true;
      }
    }
  }
  if (!chosen) {
    T.kind = Transform::Te;
    T.e = lvl.e;
    lvl.transform = "T_e";
  }
  ZPoly eps_t = T.fwd(eps);
  auto s = regular_xn_degree(eps_t, p);
  const std::uint64_t eN = pow_u64(lvl.e, N);
  lvl.s = s ? *s : -1;
  lvl.regular_ok = s.has_value() && static_cast<std::uint64_t>(*s) < eN;
  if (!lvl.regular_ok) {
    trace.push_back(lvl);
    fail(ErrorKind::Internal, "epsilon is not regular in X_N of degree < e^N");
  }
  if (*s == 0) {
    // epsilon is a unit in the restricted power series ring.
    trace.push_back(lvl);
    return out;
  }
  ZMatrix B = Ar.map_entries([&](const ZPoly& f) { return T.fwd(f); });
  long w = eps_t.degree_in(N - 1);
  for (const auto& row : d)
    for (const auto& c : row)
      if (!c.is_zero()) w = std::max(w, T.fwd(c).degree_in(N - 1));
  lvl.window = static_cast<std::size_t>(w);
  const long dB = B.degree_in(N - 1);
  trace.push_back(lvl);
  DerivedSystem<Integer> D = build_derived(B, lvl.window, static_cast<std::size_t>(dB));
  auto sub = local_rec(D.A, p, mode, trace);
  for (const auto& yp : sub) {
    ZVec y = unpack_derived(yp, n, lvl.window, N);
    for (auto& f : y) f = T.inv(f);
    push_unique(out, y);
  }
  return out;
}

}  // namespace

LocalSyzygyBasis syzygy_local(const ZMatrix& A, const Integer& p, LocalMode mode) {
  require_prime(p);
  LocalSyzygyBasis B;
  B.p = p;
  B.mode = mode;
  B.generators = local_rec(A, p, mode, B.trace);
  for (const auto& g : B.generators)
    if (!is_zero_vec(A.apply(g))) fail(ErrorKind::Internal, "local generator does not solve A");
  if (!A.is_zero()) {
    const long d = std::max<long>(A.degree(), 1), m = static_cast<long>(A.rows());
    if (A.nvars() <= 4) B.bound = flat_bound(A.nvars(), d, m);
    for (const auto& g : B.generators)
      if (!within_flat(vec_degree(g), A.nvars(), d, m)) B.bound_ok = false;
  }
  return B;
}

std::vector<ZVec> combine_generators(const ZMatrix& A, const std::vector<ZVec>& field_gens,
                                     const std::vector<ZVec>& local_gens) {
  std::vector<ZVec> out;
  for (const auto* list : {&field_gens, &local_gens})
    for (const auto& g : *list) {
      if (g.size() != A.cols() || !is_zero_vec(A.apply(g)))
        fail(ErrorKind::MixedSystems, "generator does not solve the given system");
      push_unique(out, g);
    }
  return out;
}

}  // namespace zm
