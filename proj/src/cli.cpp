#include "zm/cli.hpp"

#include <chrono>

#include "zm/global_solver.hpp"
#include "zm/oracle.hpp"

namespace zm::cli {

using nlohmann::json;

namespace {

struct Ring {
  std::string kind = "Z";  // Z, Q, Fp, Zp
  Integer p = 0;
  std::string name() const { return p == 0 ? kind : kind + "(" + p.get_str() + ")"; }
};

[[noreturn]] void schema(const std::string& what) { fail(ErrorKind::SchemaError, what); }

Ring parse_ring(const json& problem, const Flags& flags) {
  std::string text = flags.ring;
  if (text.empty() && problem.contains("ring")) {
    if (!problem["ring"].is_string()) schema("\"ring\" must be a string");
    text = problem["ring"].get<std::string>();
  }
  if (text.empty()) text = "Z";
  Ring r;
  auto open = text.find('(');
  r.kind = text.substr(0, open);
  if (open != std::string::npos) {
    if (text.back() != ')') schema("malformed ring tag " + text);
    try {
      r.p = Integer(text.substr(open + 1, text.size() - open - 2));
    } catch (const std::invalid_argument&) {
      schema("malformed prime in ring tag " + text);
    }
  }
  if (r.kind != "Z" && r.kind != "Q" && r.kind != "Fp" && r.kind != "Zp") schema("unknown ring " + text);
  if (r.kind == "Fp" || r.kind == "Zp") {
    if (r.p == 0 && flags.prime) r.p = *flags.prime;
    if (r.p == 0) schema("ring " + r.kind + " needs a prime");
    require_prime(r.p);
  } else if (r.p != 0) {
    schema("ring " + r.kind + " takes no prime");
  }
  return r;
}

unsigned nvars_of(const json& problem) {
  if (!problem.is_object()) schema("problem must be a JSON object");
  if (!problem.contains("N") || !problem["N"].is_number_integer()) schema("\"N\" must be an integer");
  long N = problem["N"].get<long>();
  if (N < 0 || N > static_cast<long>(kMaxVars)) schema("\"N\" out of range");
  return static_cast<unsigned>(N);
}

ZPoly poly_field(const json& v, unsigned N, const std::string& what) {
  if (!v.is_string()) schema(what + " must be a polynomial string");
  return parse_polynomial(v.get<std::string>(), N);
}

std::vector<ZPoly> poly_list(const json& problem, const char* key, unsigned N) {
  if (!problem.contains(key) || !problem[key].is_array()) schema(std::string("\"") + key + "\" must be a list");
  std::vector<ZPoly> out;
  for (const auto& v : problem[key]) out.push_back(poly_field(v, N, key));
  return out;
}

ZPoly target_of(const json& problem, unsigned N) {
  if (!problem.contains("target")) schema("\"target\" is required");
  return poly_field(problem["target"], N, "target");
}

ZMatrix matrix_of(const json& problem, unsigned N) {
  if (problem.contains("matrix")) {
    const json& rows = problem["matrix"];
    if (!rows.is_array() || rows.empty()) schema("\"matrix\" must be a nonempty list of rows");
    std::vector<ZVec> rs;
    for (const auto& row : rows) {
      if (!row.is_array()) schema("matrix rows must be lists");
      ZVec r;
      for (const auto& v : row) r.push_back(poly_field(v, N, "matrix entry"));
      if (!rs.empty() && r.size() != rs[0].size()) schema("matrix rows differ in length");
      rs.push_back(r);
    }
    return ZMatrix::from_rows(rs, N);
  }
  if (problem.contains("generators")) return ZMatrix::from_rows({poly_list(problem, "generators", N)}, N);
  schema("\"matrix\" or \"generators\" is required");
}

ZVec rhs_of(const json& problem, unsigned N, std::size_t m) {
  if (problem.contains("rhs")) {
    ZVec b = poly_list(problem, "rhs", N);
    if (b.size() != m) schema("\"rhs\" length differs from the row count");
    return b;
  }
  if (problem.contains("target") && m == 1) return {target_of(problem, N)};
  schema("\"rhs\" is required");
}

// A module is a list of vectors; a bare string is a vector of length 1.
std::vector<ZVec> module_of(const json& v, unsigned N, std::size_t& m) {
  if (!v.is_array()) schema("a module must be a list of generators");
  std::vector<ZVec> out;
  for (const auto& g : v) {
    ZVec x;
    if (g.is_string()) x.push_back(poly_field(g, N, "module generator"));
    else if (g.is_array())
      for (const auto& c : g) x.push_back(poly_field(c, N, "module generator"));
    else schema("module generators must be strings or lists");
    if (m == 0) m = x.size();
    if (x.size() != m) schema("module generators differ in length");
    out.push_back(x);
  }
  return out;
}

std::vector<std::vector<ZVec>> modules_of(const json& problem, unsigned N, std::size_t count, std::size_t& m) {
  if (!problem.contains("modules") || !problem["modules"].is_array() || problem["modules"].size() != count)
    schema("\"modules\" must list " + std::to_string(count) + " module(s)");
  std::vector<std::vector<ZVec>> out;
  m = 0;
  for (const auto& v : problem["modules"]) out.push_back(module_of(v, N, m));
  if (m == 0) {
    if (!problem.contains("m") || !problem["m"].is_number_integer()) schema("\"m\" is required for empty modules");
    m = problem["m"].get<std::size_t>();
  }
  return out;
}

template <class C>
json poly_strings(const PolyVec<C>& v) {
  json out = json::array();
  for (const auto& f : v) out.push_back(format_poly(f));
  return out;
}

json vector_list(const std::vector<ZVec>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(poly_strings(v));
  return out;
}

json height_of(const ZVec& v) {
  std::vector<Rational> cs;
  for (const auto& f : v)
    for (const auto& t : f.terms()) cs.push_back(Rational(t.second));
  return to_json(height_q(cs));
}

json degree_json(long d) { return d == kNegInf ? json() : json(d); }

json certificate_json(const std::string& mode, const Ring& ring, const ZVec& cofactors,
                      const Integer& denominator) {
  json c = {{"mode", mode}, {"ring", ring.name()}, {"cofactors", poly_strings(cofactors)}};
  if (ring.kind != "Z") c["denominator"] = denominator.get_str();
  return c;
}

ZVec lift_vec(const PolyVec<Fp>& v, unsigned N) {
  ZVec out;
  for (const auto& f : v) out.push_back(lift_fp(f).with_nvars(N));
  return out;
}

std::uint64_t word_prime(const Integer& p) {
  if (!p.fits_ulong_p()) fail(ErrorKind::ResourceLimit, "prime exceeds 64 bits");
  return p.get_ui();
}

// Linear systems over any of the four rings; membership is the one-row case.
void solve_command(const std::string& mode, const ZMatrix& A, const ZVec& b, const Ring& ring,
                   const Flags& flags, json& out) {
  const unsigned N = A.nvars();
  const std::string yes = mode == "linear-system" ? "solvable" : "member";
  const std::string no = mode == "linear-system" ? "unsolvable" : "not-member";
  std::optional<ZVec> y;
  Integer denominator = 1;
  json audit = json::array();
  if (ring.kind == "Z") {
    auto r = solve_linear_z_report(A, b);
    if (r.certificate) y = r.certificate->cofactors;
    else out["witness"] = r.witness.text();
    out["q_denominator"] = r.q_denominator.get_str();
    json primes = json::array();
    for (const auto& p : r.primes) primes.push_back(p.get_str());
    out["local_primes"] = primes;
    for (const auto& rep : r.reports) audit.push_back(to_json(rep));
  } else if (ring.kind == "Q") {
    auto r = solve_field_q(A, b);
    if (r) {
      denominator = vec_denominator(*r);
      y = clear_vec(*r, denominator);
      audit.push_back(to_json(zm::audit(N, std::max<long>(A.degree(), 1), static_cast<long>(A.rows()),
                                        static_cast<long>(A.cols()), 0, {audit_item(Provenance::Field, *y)})));
    } else {
      out["witness"] = "unsolvable over Q";
    }
  } else if (ring.kind == "Fp") {
    FpScope scope(word_prime(ring.p));
    auto r = solve_inhomogeneous_field(to_fp(A), to_fp(b));
    if (r) y = lift_vec(*r, N);
    else out["witness"] = "unsolvable mod " + ring.p.get_str();
  } else {
    Witness why;
    auto r = solve_local(A, b, ring.p, &why);
    if (r) {
      y = r->y;
      denominator = r->c;
      if (denominator < 0) {
        denominator = -denominator;
        for (auto& f : *y) f = -f;
      }
    } else {
      out["witness"] = why.text();
    }
  }
  out["verdict"] = y ? yes : no;
  if (y) {
    out["certificate"] = certificate_json(mode, ring, *y, denominator);
    out["degrees"] = {{"cofactors", degree_json(vec_degree(*y))}};
    out["heights"] = {{"cofactors", height_of(*y)}};
  }
  if (flags.audit) out["audit"] = audit;
}

void syzygy_command(const ZMatrix& A, const Ring& ring, const Flags& flags, json& out) {
  const unsigned N = A.nvars();
  std::vector<ZVec> gens;
  json origin = json::array();
  json audit = json::array();
  if (ring.kind == "Z") {
    auto S = syzygy_z(A);
    gens = S.generators;
    for (const auto& o : S.origin) origin.push_back(o == 0 ? std::string("field") : "local p=" + o.get_str());
    out["delta"] = S.delta.get_str();
    audit.push_back(to_json(S.report));
  } else if (ring.kind == "Q") {
    auto F = syzygy_field_q(A);
    gens = F.generators;
    for (std::size_t k = 0; k < gens.size(); ++k) origin.push_back("field");
    if (!A.is_zero()) audit.push_back(to_json(audit_syzygies(A, gens, {})));
  } else if (ring.kind == "Fp") {
    FpScope scope(word_prime(ring.p));
    auto F = syzygy_field(to_fp(A));
    for (const auto& g : F.generators) gens.push_back(lift_vec(g, N));
    for (std::size_t k = 0; k < gens.size(); ++k) origin.push_back("field");
    out["via_fpt"] = F.via_fpt;
  } else {
    if (A.is_zero()) {
      gens = syzygy_z(A).generators;
      for (std::size_t k = 0; k < gens.size(); ++k) origin.push_back("field");
    } else {
      auto F = syzygy_field_q(A);
      auto L = syzygy_local(A, ring.p);
      gens = combine_generators(A, F.generators, L.generators);
      for (const auto& g : gens) {
        bool field = false;
        for (const auto& f : F.generators) field = field || f == g;
        origin.push_back(field ? std::string("field") : "local p=" + ring.p.get_str());
      }
      audit.push_back(to_json(audit_syzygies(A, F.generators, {&L})));
      json trace = json::array();
      for (const auto& lv : L.trace)
        trace.push_back({{"nu", lv.nu}, {"m", lv.m}, {"r", lv.r}, {"e", lv.e}, {"s", lv.s},
                         {"mu", lv.mu}, {"transform", lv.transform}, {"regular", lv.regular_ok},
                         {"valuation", lv.valuation_ok}});
      out["local_trace"] = trace;
    }
  }
  out["generators"] = vector_list(gens);
  out["origin"] = origin;
  long deg = kNegInf;
  for (const auto& g : gens) deg = std::max(deg, vec_degree(g));
  out["degrees"] = {{"max", degree_json(deg)}};
  if (flags.audit) out["audit"] = audit;
}

long oracle_bound(const Flags& flags) {
  long B = flags.bound.value_or(4);
  if (B < 0) return -1;
  return B;
}

json dispatch(const std::string& command, const json& problem, const Flags& flags,
              const json* certificate) {
  json out = {{"command", command}};
  if (command == "bounds") {
    unsigned N = nvars_of(problem);
    if (!problem.contains("d") || !problem.contains("m")) schema("\"d\" and \"m\" are required");
    long d = problem["d"].get<long>(), m = problem["m"].get<long>();
    if (d < 1 || m < 1) schema("\"d\" and \"m\" must be positive");
    out["beta"] = beta(N, d, m).get_str();
    out["flat"] = N <= 4 ? json(flat_bound(N, d, m).get_str()) : json();
    out["mono_count"] = mono_count(N, d).get_str();
    return out;
  }
  if (command == "verify") {
    if (!certificate) schema("verify needs a certificate");
    out["verified"] = verify_certificate(problem, *certificate);
    return out;
  }
  const unsigned N = nvars_of(problem);
  Ring ring = parse_ring(problem, flags);
  out["ring"] = ring.name();
  auto z_only = [&] {
    if (ring.kind != "Z") schema(command + " is only available over Z");
  };
  if (command == "member") {
    auto fs = poly_list(problem, "generators", N);
    ZPoly f0 = target_of(problem, N);
    if (fs.empty()) schema("\"generators\" must be nonempty");
    solve_command("membership", ZMatrix::from_rows({fs}, N), {f0}, ring, flags, out);
  } else if (command == "solve") {
    ZMatrix A = matrix_of(problem, N);
    solve_command("linear-system", A, rhs_of(problem, N, A.rows()), ring, flags, out);
  } else if (command == "syzygy") {
    syzygy_command(matrix_of(problem, N), ring, flags, out);
  } else if (command == "bezout") {
    auto fs = poly_list(problem, "generators", N);
    if (ring.kind == "Z") {
      auto c = bezout_z(fs);
      out["verdict"] = c ? "member" : "not-member";
      if (c) out["certificate"] = certificate_json("bezout", ring, c->cofactors, 1);
    } else if (ring.kind == "Zp") {
      auto c = bezout_local(fs, ring.p);
      out["verdict"] = c ? "member" : "not-member";
      if (c) out["certificate"] = certificate_json("bezout", ring, c->cofactors, c->denominator);
    } else {
      schema("bezout is available over Z and Zp");
    }
  } else if (command == "intersect") {
    z_only();
    std::size_t m = 0;
    auto ms = modules_of(problem, N, 2, m);
    out["generators"] = vector_list(module_intersect(ms[0], ms[1], m, N));
  } else if (command == "colon") {
    z_only();
    std::size_t m = 0;
    auto ms = modules_of(problem, N, 2, m);
    ZVec gens = module_colon(ms[0], ms[1], m, N);
    out["generators"] = poly_strings(gens);
  } else if (command == "saturate") {
    z_only();
    std::size_t m = 0;
    auto ms = modules_of(problem, N, 1, m);
    out["generators"] = vector_list(module_saturate(ms[0], m, N));
  } else if (command == "oracle-member") {
    z_only();
    auto fs = poly_list(problem, "generators", N);
    long B = oracle_bound(flags);
    out["bound"] = B;
    auto c = B < 0 ? std::nullopt : member_bounded_z(target_of(problem, N), fs, B);
    out["verdict"] = c ? "present" : "absent";
    if (c) out["cofactors"] = poly_strings(*c);
  } else if (command == "oracle-syzygy") {
    z_only();
    long B = oracle_bound(flags);
    out["bound"] = B;
    out["basis"] = vector_list(syzygy_bounded_z(matrix_of(problem, N), B));
  } else {
    schema("unknown command " + command);
  }
  return out;
}

}  // namespace

Output run(const std::string& command, const json& problem, const Flags& flags, const json* certificate) {
  Output o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    o.json = dispatch(command, problem, flags, certificate);
  } catch (const Error& e) {
    o.exit_code = e.is_resource() ? 3 : e.kind() == ErrorKind::Internal ? 1 : 2;
    o.json = {{"command", command}, {"error", kind_name(e.kind())}, {"message", e.what()}};
  } catch (const json::exception& e) {
    o.exit_code = 2;
    o.json = {{"command", command}, {"error", "SchemaError"}, {"message", e.what()}};
  }
  o.json["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  return o;
}

bool verify_certificate(const json& problem, const json& certificate) {
  const unsigned N = nvars_of(problem);
  if (!certificate.is_object() || !certificate.contains("cofactors")) schema("certificate needs \"cofactors\"");
  std::string mode = certificate.value("mode", "membership");
  ZMatrix A;
  ZVec b;
  if (mode == "membership" || mode == "bezout") {
    auto fs = poly_list(problem, "generators", N);
    A = ZMatrix::from_rows({fs}, N);
    b = {mode == "bezout" ? ZPoly(N, Integer(1)) : target_of(problem, N)};
  } else if (mode == "linear-system") {
    A = matrix_of(problem, N);
    b = rhs_of(problem, N, A.rows());
  } else {
    schema("unknown certificate mode " + mode);
  }
  ZVec y = poly_list(certificate, "cofactors", N);
  if (y.size() != A.cols()) return false;
  Integer denominator = 1;
  if (certificate.contains("denominator")) {
    if (!certificate["denominator"].is_string()) schema("\"denominator\" must be a string");
    denominator = Integer(certificate["denominator"].get<std::string>());
  }
  if (denominator == 0) return false;
  std::string ring = certificate.value("ring", "Z");
  Integer p = 0;
  if (auto open = ring.find('('); open != std::string::npos)
    p = Integer(ring.substr(open + 1, ring.size() - open - 2));
  if (ring == "Z") {
    if (denominator != 1) return false;
  } else if (ring.rfind("Zp", 0) == 0) {
    if (p == 0 || mpz_divisible_p(denominator.get_mpz_t(), p.get_mpz_t())) return false;
  }
  ZVec Ay(A.rows(), ZPoly(N));
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) Ay[i] += A(i, j) * y[j];
  for (std::size_t i = 0; i < A.rows(); ++i) {
    ZPoly diff = Ay[i] - b[i] * ZPoly(N, denominator);
    if (ring.rfind("Fp", 0) == 0) {
      if (p == 0 || !reduce_mod(diff, p).is_zero()) return false;
    } else if (!diff.is_zero()) {
      return false;
    }
  }
  return true;
}

}  // namespace zm::cli
