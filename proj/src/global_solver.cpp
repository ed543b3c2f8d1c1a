#include "zm/global_solver.hpp"

#include <numeric>

namespace zm {

namespace {

unsigned common_nvars(const ZPoly& f0, const std::vector<ZPoly>& fs) {
  unsigned N = f0.nvars();
  for (const auto& f : fs) N = std::max(N, f.nvars());
  return N;
}

ZMatrix row_matrix(const std::vector<ZPoly>& fs, unsigned N) {
  ZVec row;
  for (const auto& f : fs) row.push_back(f.with_nvars(N));
  return ZMatrix::from_rows({row}, N);
}

ZVec zero_vec(std::size_t n, unsigned N) { return ZVec(n, ZPoly(N)); }

ZVec primitive(ZVec v) {
  Integer c = 0;
  for (const auto& f : v) c = gcd(c, poly_content(f));
  if (c > 1)
    for (auto& f : v) f = f.map([&](const Integer& a) -> Integer { return a / c; });
  return v;
}

ZVec sign_normal(ZVec v) {
  for (const auto& f : v)
    if (!f.is_zero()) {
      if (f.lc() < 0)
        for (auto& g : v) g = -g;
      break;
    }
  return v;
}

void push_unique(std::vector<ZVec>& out, const ZVec& v) {
  if (is_zero_vec(v)) return;
  for (const auto& w : out)
    if (w == v) return;
  out.push_back(v);
}

std::uint64_t small_prime(const Integer& p) {
  if (!p.fits_ulong_p()) fail(ErrorKind::ResourceLimit, "prime " + p.get_str() + " exceeds 64 bits");
  return p.get_ui();
}

std::optional<ZVec> solve_mod_p(const ZMatrix& A, const ZVec& b, const Integer& p) {
  FpScope scope(small_prime(p));
  auto y = solve_inhomogeneous_field(to_fp(A), to_fp(b));
  if (!y) return std::nullopt;
  ZVec out;
  for (const auto& f : *y) out.push_back(lift_fp(f).with_nvars(A.nvars()));
  return out;
}

ZVec combination(const std::vector<ZPoly>& h, const std::vector<ZVec>& vs, std::size_t len,
                 unsigned N) {
  ZVec y = zero_vec(len, N);
  for (std::size_t k = 0; k < vs.size(); ++k)
    if (!h[k].is_zero())
      for (std::size_t j = 0; j < len; ++j) y[j] += h[k] * vs[k][j];
  return y;
}

ZMatrix augmented(const ZMatrix& A, const ZVec& b) {
  ZMatrix Ab(A.rows(), A.cols() + 1, A.nvars());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) Ab(i, j) = A(i, j);
    Ab(i, A.cols()) = -b[i].with_nvars(A.nvars());
  }
  return Ab;
}

struct FieldCache {
  std::optional<FieldSyzygyZ> gens;
  std::vector<BoundReport>* reports = nullptr;
};

constexpr std::size_t kSubsetCap = 64;

double input_height(const ZMatrix& A) {
  double h = 0;
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      if (!A(i, j).is_zero()) h = std::max(h, height_q(A(i, j)).log_value());
  return h;
}

std::optional<LocalSolution> solve_local_impl(const ZMatrix& A, const ZVec& b, const Integer& p,
                                              Witness* why, FieldCache& cache) {
  const unsigned N = A.nvars();
  const std::size_t n = A.cols();
  if (!solve_mod_p(A, b, p)) {
    if (why) *why = Witness{"mod-p", p};
    return std::nullopt;
  }
  if (A.rows() == 1) {
    auto bz = bezout_local(A.row(0), p);
    if (bz) {
      LocalSolution s;
      for (const auto& h : bz->cofactors) s.y.push_back(h * b[0]);
      s.c = bz->denominator;
      return s;
    }
  }
  ZMatrix Ab = augmented(A, b);
  if (!cache.gens) cache.gens = syzygy_field_q(Ab);
  LocalSyzygyBasis loc = syzygy_local(Ab, p);
  std::vector<ZVec> gens = combine_generators(Ab, cache.gens->generators, loc.generators);
  if (cache.reports) cache.reports->push_back(audit_syzygies(Ab, cache.gens->generators, {&loc}));
  std::vector<ZPoly> last;
  std::vector<ZVec> used;
  for (const auto& g : gens)
    if (!g[n].is_zero()) {
      last.push_back(g[n]);
      used.push_back(g);
    }
  std::optional<LocalCertificate> bz;
  if (!last.empty()) bz = bezout_local(last, p);
  if (!bz) {
    if (why) *why = Witness{"local", p};
    return std::nullopt;
  }
  LocalSolution s;
  s.y = combination(bz->cofactors, used, n, N);
  s.c = bz->denominator;
  ZVec Ay = A.apply(s.y);
  for (std::size_t i = 0; i < b.size(); ++i)
    if (Ay[i] != b[i].with_nvars(N) * ZPoly(N, s.c)) fail(ErrorKind::Internal, "local solution does not verify");
  return s;
}

}  // namespace

std::string Witness::text() const {
  if (kind == "mod-p") return "mod-p obstruction p=" + p.get_str();
  if (kind == "local") return "Q-solvable, local failure p=" + p.get_str();
  if (kind == "Q-rank") return "unsolvable over Q";
  if (kind == "zero-generators") return "all generators zero";
  return "";
}

bool verify(const Certificate& c) {
  if (c.cofactors.size() != c.A.cols() || c.b.size() != c.A.rows()) return false;
  ZVec Ay = c.A.apply(c.cofactors);
  for (std::size_t i = 0; i < c.b.size(); ++i)
    if (Ay[i] != c.b[i].with_nvars(c.A.nvars())) return false;
  return true;
}

bool verify(const LocalCertificate& c, const std::vector<ZPoly>& cs) {
  if (c.cofactors.size() != cs.size() || c.denominator == 0) return false;
  if (mpz_divisible_p(c.denominator.get_mpz_t(), c.p.get_mpz_t())) return false;
  unsigned N = common_nvars(ZPoly(0), cs);
  ZPoly s(N);
  for (std::size_t j = 0; j < cs.size(); ++j) s += c.cofactors[j].with_nvars(N) * cs[j].with_nvars(N);
  return s == ZPoly(N, c.denominator);
}

BoundReport audit_syzygies(const ZMatrix& A, const std::vector<ZVec>& field,
                           const std::vector<const LocalSyzygyBasis*>& local) {
  std::vector<AuditItem> items;
  std::vector<long> es, ms;
  for (const auto& g : field) items.push_back(audit_item(Provenance::Field, g));
  for (const auto* L : local) {
    for (const auto& g : L->generators) items.push_back(audit_item(Provenance::Local, g));
    for (const auto& lv : L->trace) {
      es.push_back(static_cast<long>(lv.e));
      ms.push_back(static_cast<long>(lv.m));
    }
  }
  return audit(A.nvars(), std::max<long>(A.degree(), 1), static_cast<long>(A.rows()),
               static_cast<long>(A.cols()), input_height(A), items, es, ms);
}

Integer denominator_delta(const ZMatrix& A, const FieldSyzygyZ& field) {
  if (A.is_zero()) fail(ErrorKind::ZeroMatrix, "denominator of the zero matrix");
  Integer d = field.cleared;
  for (const auto& lv : field.trace) d *= abs(lv.u.get_num()) * lv.u.get_den();
  return d;
}

ZSyzygyBasis syzygy_z(const ZMatrix& A, LocalMode mode) {
  ZSyzygyBasis B;
  const unsigned N = A.nvars();
  if (A.is_zero()) {
    for (std::size_t j = 0; j < A.cols(); ++j) {
      ZVec e = zero_vec(A.cols(), N);
      e[j] = ZPoly(N, Integer(1));
      B.generators.push_back(e);
      B.origin.push_back(0);
    }
    B.report = audit(N, 1, static_cast<long>(A.rows()), static_cast<long>(A.cols()), 0, {});
    return B;
  }
  B.field = syzygy_field_q(A);
  B.delta = denominator_delta(A, B.field);
  for (const auto& g : B.field.generators) {
    std::size_t before = B.generators.size();
    push_unique(B.generators, sign_normal(primitive(g)));
    if (B.generators.size() > before) B.origin.push_back(0);
  }
  if (abs(B.delta) != 1)
    for (const auto& [p, k] : factorize(B.delta)) {
      (void)k;
      B.local.push_back(syzygy_local(A, p, mode));
      combine_generators(A, {}, B.local.back().generators);
      for (const auto& g : B.local.back().generators) {
        std::size_t before = B.generators.size();
        push_unique(B.generators, sign_normal(primitive(g)));
        if (B.generators.size() > before) B.origin.push_back(p);
      }
    }
  std::vector<const LocalSyzygyBasis*> locals;
  for (const auto& L : B.local) locals.push_back(&L);
  B.report = audit_syzygies(A, B.field.generators, locals);
  return B;
}

std::optional<LocalSolution> solve_local(const ZMatrix& A, const ZVec& b, const Integer& p,
                                         Witness* why) {
  require_prime(p);
  FieldCache cache;
  return solve_local_impl(A, b, p, why, cache);
}

SolveOutcome solve_linear_z_report(const ZMatrix& A, const ZVec& b) {
  if (b.size() != A.rows()) fail(ErrorKind::DomainMismatch, "right-hand side length differs from row count");
  const unsigned N = A.nvars();
  SolveOutcome out;
  Certificate cert;
  cert.A = A;
  for (const auto& f : b) cert.b.push_back(f.with_nvars(N));
  if (is_zero_vec(cert.b)) {
    cert.cofactors = zero_vec(A.cols(), N);
    out.certificate = cert;
    return out;
  }
  if (A.is_zero()) {
    out.witness = Witness{"zero-generators", 0};
    return out;
  }
  // Solutions on column subsets are solutions of the whole system and are
  // much cheaper than the full rational solve when A has redundant columns.
  const std::size_t n = A.cols();
  std::vector<Integer> ds;
  std::vector<ZVec> ys;
  std::vector<AuditItem> items;
  Integer g = 0;
  auto take = [&](const std::vector<std::size_t>& cols, const PolyVec<Rational>& yq) {
    Integer Ls = vec_denominator(yq);
    if (g != 0 && gcd(g, Ls) == g) return;
    ZVec part = clear_vec(yq, Ls);
    ZVec y = zero_vec(n, N);
    for (std::size_t k = 0; k < cols.size(); ++k) y[cols[k]] = part[k];
    g = gcd(g, Ls);
    ds.push_back(Ls);
    ys.push_back(y);
    items.push_back(audit_item(Provenance::Field, yq));
  };
  std::vector<std::vector<std::size_t>> subsets;
  for (std::size_t i = 0; i < n; ++i) subsets.push_back({i});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) subsets.push_back({i, j});
  if (subsets.size() > kSubsetCap) subsets.resize(kSubsetCap);
  for (const auto& cols : subsets) {
    if (g == 1 || cols.size() >= n) break;
    std::vector<ZVec> sub;
    for (std::size_t j : cols) sub.push_back(A.col(j));
    auto yq = solve_field_q(ZMatrix::from_columns(sub, A.rows(), N), cert.b);
    if (yq) take(cols, *yq);
  }
  if (g == 0) {
    auto yq = solve_field_q(A, cert.b);
    if (!yq) {
      out.witness = Witness{"Q-rank", 0};
      return out;
    }
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    take(all, *yq);
  }
  out.q_denominator = g;
  {
    long d = A.degree();
    for (const auto& f : cert.b) d = std::max(d, f.degree());
    out.reports.push_back(audit(N, std::max<long>(d, 1), static_cast<long>(A.rows()),
                                static_cast<long>(n), input_height(A), items));
  }
  if (g != 1) {
    FieldCache cache;
    cache.reports = &out.reports;
    for (const auto& [p, k] : factorize(g)) {
      (void)k;
      out.primes.push_back(p);
      Witness why;
      auto s = solve_local_impl(A, cert.b, p, &why, cache);
      if (!s) {
        out.witness = why;
        return out;
      }
      ds.push_back(s->c);
      ys.push_back(s->y);
    }
  }
  std::vector<Integer> a = combine_to_one(ds);
  cert.cofactors = zero_vec(A.cols(), N);
  for (std::size_t k = 0; k < ys.size(); ++k)
    for (std::size_t j = 0; j < A.cols(); ++j) cert.cofactors[j] += ZPoly(N, a[k]) * ys[k][j];
  if (!verify(cert)) fail(ErrorKind::Internal, "certificate does not verify");
  out.certificate = cert;
  return out;
}

std::optional<Certificate> solve_linear_z(const ZMatrix& A, const ZVec& b) {
  return solve_linear_z_report(A, b).certificate;
}

SolveOutcome member_z_report(const ZPoly& f0, const std::vector<ZPoly>& fs) {
  const unsigned N = common_nvars(f0, fs);
  if (fs.empty()) {
    SolveOutcome out;
    if (f0.is_zero()) {
      Certificate c;
      c.mode = CertificateMode::Membership;
      c.A = ZMatrix(1, 0, N);
      c.b = {f0.with_nvars(N)};
      out.certificate = c;
    } else {
      out.witness = Witness{"zero-generators", 0};
    }
    return out;
  }
  SolveOutcome out = solve_linear_z_report(row_matrix(fs, N), {f0.with_nvars(N)});
  if (out.certificate) out.certificate->mode = CertificateMode::Membership;
  return out;
}

std::optional<Certificate> member_z(const ZPoly& f0, const std::vector<ZPoly>& fs) {
  return member_z_report(f0, fs).certificate;
}

std::vector<ZPoly> power_cofactors(const std::vector<ZPoly>& rs, const std::vector<ZPoly>& fs,
                                   unsigned long e) {
  if (rs.size() != fs.size()) fail(ErrorKind::DomainMismatch, "cofactor and generator lists differ in length");
  if (e == 0) fail(ErrorKind::DomainMismatch, "exponent must be at least 1");
  unsigned N = 0;
  for (const auto& f : fs) N = std::max(N, f.nvars());
  for (const auto& r : rs) N = std::max(N, r.nvars());
  ZPoly q(N, Integer(1));
  for (std::size_t i = 0; i < fs.size(); ++i) q -= rs[i].with_nvars(N) * fs[i].with_nvars(N);
  std::vector<ZPoly> w;
  for (const auto& r : rs) w.push_back(r.with_nvars(N));
  for (unsigned long k = 1; k < e; ++k)
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = rs[i].with_nvars(N) + q * w[i];
  return w;
}

std::optional<LocalCertificate> bezout_local(const std::vector<ZPoly>& cs, const Integer& p) {
  require_prime(p);
  if (cs.empty()) return std::nullopt;
  const unsigned N = common_nvars(ZPoly(0), cs);
  ZMatrix A = row_matrix(cs, N);
  ZVec one{ZPoly(N, Integer(1))};
  auto gq = solve_field_q(A, one);
  if (!gq) return std::nullopt;
  Integer delta = vec_denominator(*gq);
  ZVec G = clear_vec(*gq, delta);
  auto r = solve_mod_p(A, one, p);
  if (!r) return std::nullopt;
  LocalCertificate out;
  out.p = p;
  Valuation v = vp(delta, p);
  const unsigned long e = static_cast<unsigned long>(v.value);
  if (e == 0) {
    out.cofactors = G;
    out.denominator = delta;
  } else {
    Integer pe = ipow(p, e);
    Integer u = delta / pe;
    std::vector<ZPoly> fs = A.row(0);
    ZPoly q(N, Integer(1));
    for (std::size_t i = 0; i < fs.size(); ++i) q -= (*r)[i] * fs[i];
    std::vector<ZPoly> s = power_cofactors(*r, fs, e);
    ZPoly qe = pow(q, e);
    ZPoly w;
    if (!qe.try_div_scalar(pe, w)) fail(ErrorKind::Internal, "power of the residue is not divisible by p^e");
    for (std::size_t j = 0; j < fs.size(); ++j) out.cofactors.push_back(ZPoly(N, u) * s[j] + w * G[j]);
    out.denominator = u;
  }
  if (out.denominator < 0) {
    out.denominator = -out.denominator;
    for (auto& h : out.cofactors) h = -h;
  }
  if (!verify(out, cs)) fail(ErrorKind::Internal, "local Bezout certificate does not verify");
  return out;
}

std::optional<Certificate> bezout_z(const std::vector<ZPoly>& fs) {
  if (fs.empty()) return std::nullopt;
  const unsigned N = common_nvars(ZPoly(0), fs);
  Certificate cert;
  cert.mode = CertificateMode::Bezout;
  cert.A = row_matrix(fs, N);
  cert.b = {ZPoly(N, Integer(1))};
  if (cert.A.is_zero()) return std::nullopt;
  auto gq = solve_field_q(cert.A, cert.b);
  if (!gq) return std::nullopt;
  Integer delta = vec_denominator(*gq);
  std::vector<Integer> ds{delta};
  std::vector<ZVec> hs{clear_vec(*gq, delta)};
  if (delta != 1)
    for (const auto& [p, k] : factorize(delta)) {
      (void)k;
      auto lc = bezout_local(fs, p);
      if (!lc) return std::nullopt;
      ds.push_back(lc->denominator);
      hs.push_back(lc->cofactors);
    }
  std::vector<Integer> a = combine_to_one(ds);
  cert.cofactors = zero_vec(fs.size(), N);
  for (std::size_t k = 0; k < hs.size(); ++k)
    for (std::size_t j = 0; j < fs.size(); ++j) cert.cofactors[j] += ZPoly(N, a[k]) * hs[k][j].with_nvars(N);
  if (!verify(cert)) fail(ErrorKind::Internal, "Bezout certificate does not verify");
  return cert;
}

bool in_module(const std::vector<ZVec>& gens, const ZVec& v, unsigned N) {
  if (is_zero_vec(v)) return true;
  if (gens.empty()) return false;
  return solve_linear_z(ZMatrix::from_columns(gens, v.size(), N), v).has_value();
}

std::vector<ZVec> module_intersect(const std::vector<ZVec>& M, const std::vector<ZVec>& Mp,
                                   std::size_t m, unsigned N) {
  std::vector<ZVec> out;
  if (M.empty() || Mp.empty()) return out;
  std::vector<ZVec> cols = M;
  for (const auto& w : Mp) {
    ZVec neg;
    for (const auto& f : w) neg.push_back(-f);
    cols.push_back(neg);
  }
  ZMatrix S = ZMatrix::from_columns(cols, m, N);
  for (const auto& z : syzygy_z(S).generators) {
    std::vector<ZPoly> h(z.begin(), z.begin() + static_cast<long>(M.size()));
    push_unique(out, sign_normal(combination(h, M, m, N)));
  }
  return out;
}

std::vector<ZPoly> module_colon(const std::vector<ZVec>& Mp, const std::vector<ZVec>& M,
                                std::size_t m, unsigned N) {
  // (M' : M) is the intersection over v in M of the last coordinates of the
  // solutions of [M' | -v].
  std::vector<ZVec> ideal{ZVec{ZPoly(N, Integer(1))}};
  for (const auto& v : M) {
    if (is_zero_vec(v)) continue;
    std::vector<ZVec> cols = Mp;
    ZVec neg;
    for (const auto& f : v) neg.push_back(-f);
    cols.push_back(neg);
    std::vector<ZVec> Iv;
    ZMatrix S = ZMatrix::from_columns(cols, m, N);
    for (const auto& z : syzygy_z(S).generators) push_unique(Iv, sign_normal(ZVec{z.back()}));
    ideal = module_intersect(ideal, Iv, 1, N);
    if (ideal.empty()) break;
  }
  std::vector<ZPoly> out;
  for (const auto& g : ideal) out.push_back(g[0]);
  return out;
}

std::vector<ZVec> module_saturate(const std::vector<ZVec>& Mp, std::size_t m, unsigned N) {
  std::vector<ZVec> current;
  for (const auto& v : Mp) push_unique(current, sign_normal(primitive(v)));
  if (current.empty()) return current;
  ZMatrix W = ZMatrix::from_columns(Mp, m, N);
  if (W.is_zero()) return {};
  Integer delta = denominator_delta(W, syzygy_field_q(W));
  if (abs(delta) == 1) return current;
  // (M' : delta^k) grows with k and stops once two steps agree.
  Integer dk = 1;
  for (int k = 1; k <= 16; ++k) {
    dk *= delta;
    std::vector<ZVec> cols = Mp;
    for (std::size_t i = 0; i < m; ++i) {
      ZVec e = zero_vec(m, N);
      e[i] = ZPoly(N, Integer(-dk));
      cols.push_back(e);
    }
    ZMatrix S = ZMatrix::from_columns(cols, m, N);
    std::vector<ZVec> next;
    for (const auto& z : syzygy_z(S).generators)
      push_unique(next, sign_normal(primitive(ZVec(z.begin() + static_cast<long>(Mp.size()), z.end()))));
    bool stable = true;
    for (const auto& v : next)
      if (!in_module(current, v, N)) {
        stable = false;
        break;
      }
    current = next;
    if (stable) return current;
  }
  fail(ErrorKind::ResourceLimit, "saturation did not stabilize");
}

}  // namespace zm
