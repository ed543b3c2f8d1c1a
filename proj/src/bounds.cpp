#include "zm/bounds.hpp"

namespace zm {

namespace {
Integer base_of(long d, long m) {
  if (d < 0 || m < 0) fail(ErrorKind::DomainMismatch, "bound parameters must be nonnegative");
  return Integer(2) * Integer(m) * Integer(d);
}
}  // namespace

Integer beta(unsigned N, long d, long m) {
  if (N > 6) fail(ErrorKind::ResourceLimit, "beta exponent 2^N too large");
  return ipow(base_of(d, m), 1UL << N);
}

Integer flat_bound(unsigned N, long d, long m) {
  if (N > 4) fail(ErrorKind::ResourceLimit, "flat bound exponent too large");
  unsigned long t = 1;
  for (unsigned i = 0; i < N; ++i) t *= N + 1;
  return ipow(base_of(d, m), 2 * (t - 1));
}

bool within_beta(long deg, unsigned N, long d, long m) {
  if (deg == kNegInf) return true;
  if (N > 6 && base_of(d, m) >= 2) return true;  // bound is at least 2^128
  return Integer(deg) <= beta(N, d, m);
}

bool within_flat(long deg, unsigned N, long d, long m) {
  if (deg == kNegInf) return true;
  if (N > 4 && base_of(d, m) >= 2) return true;  // bound is at least 2^7774
  return Integer(deg) <= flat_bound(N, d, m);
}

Integer mono_count(unsigned N, long d) {
  if (d < 0) return 0;
  return binomial(N + static_cast<unsigned long>(d), N);
}

AuditItem audit_item(Provenance prov, const ZVec& v) {
  AuditItem it;
  it.provenance = prov;
  it.degree = vec_degree(v);
  std::vector<Rational> cs;
  for (const auto& p : v)
    for (const auto& t : p.terms()) cs.push_back(Rational(t.second));
  it.height = height_q(cs);
  return it;
}

BoundReport audit(unsigned N, long d, long m, long n, double h_input,
                  const std::vector<AuditItem>& items, std::vector<long> e_trace,
                  std::vector<long> m_trace) {
  BoundReport r;
  r.N = N;
  r.d = d;
  r.m = m;
  r.n = n;
  r.h_input = h_input;
  if (N <= 6) r.beta = beta(N, d, m);
  if (N <= 4) r.flat = flat_bound(N, d, m);
  r.e_trace = std::move(e_trace);
  r.m_trace = std::move(m_trace);
  for (const auto& it : items) {
    long& slot = it.provenance == Provenance::Field ? r.observed_field_degree
                                                    : r.observed_local_degree;
    slot = std::max(slot, it.degree);
    if (it.height.den_lcm > r.observed_height.den_lcm) r.observed_height.den_lcm = it.height.den_lcm;
    if (it.height.max_abs > r.observed_height.max_abs) r.observed_height.max_abs = it.height.max_abs;
  }
  r.pass_field = within_beta(r.observed_field_degree, N, d, m);
  r.pass_local = within_flat(r.observed_local_degree, N, d, m);
  r.pass = r.pass_field && r.pass_local;
  return r;
}

nlohmann::json to_json(const Height& h) {
  return {{"s", h.den_lcm.get_str()}, {"M", h.max_abs.get_str()}, {"log", h.log_value()}};
}

nlohmann::json to_json(const BoundReport& r) {
  auto deg = [](long v) -> nlohmann::json {
    if (v == kNegInf) return nullptr;
    return v;
  };
  return {{"N", r.N},
          {"d", r.d},
          {"m", r.m},
          {"n", r.n},
          {"h_input", r.h_input},
          {"beta", r.beta == 0 ? nlohmann::json() : nlohmann::json(r.beta.get_str())},
          {"flat", r.flat == 0 ? nlohmann::json() : nlohmann::json(r.flat.get_str())},
          {"observed_field_degree", deg(r.observed_field_degree)},
          {"observed_local_degree", deg(r.observed_local_degree)},
          {"observed_height", to_json(r.observed_height)},
          {"pass_field", r.pass_field},
          {"pass_local", r.pass_local},
          {"pass", r.pass},
          {"e_trace", r.e_trace},
          {"m_trace", r.m_trace}};
}

}  // namespace zm
