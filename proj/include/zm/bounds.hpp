#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "zm/poly.hpp"

namespace zm {

// (2md)^(2^N): degree bound for generators and solutions over a field.
Integer beta(unsigned N, long d, long m);
// (2md)^(2((N+1)^N - 1)): degree bound for generators over Z_(p) and Z.
Integer flat_bound(unsigned N, long d, long m);
// deg <= beta / flat_bound, decided without materializing bounds that exceed
// every machine integer.
bool within_beta(long deg, unsigned N, long d, long m);
bool within_flat(long deg, unsigned N, long d, long m);
// Number of monomials of degree <= d in N variables.
Integer mono_count(unsigned N, long d);

enum class Provenance { Field, Local };

struct AuditItem {
  Provenance provenance = Provenance::Field;
  long degree = kNegInf;
  Height height;
};

struct BoundReport {
  unsigned N = 0;
  long d = 0;
  long m = 0;
  long n = 0;
  double h_input = 0;
  Integer beta = 0;  // 0 when too large to write out
  Integer flat = 0;
  long observed_field_degree = kNegInf;
  long observed_local_degree = kNegInf;
  Height observed_height;
  bool pass_field = true;
  bool pass_local = true;
  bool pass = true;
  std::vector<long> e_trace, m_trace;
};

BoundReport audit(unsigned N, long d, long m, long n, double h_input,
                  const std::vector<AuditItem>& items, std::vector<long> e_trace = {},
                  std::vector<long> m_trace = {});

template <class C>
AuditItem audit_item(Provenance prov, const PolyVec<C>& v) {
  AuditItem it;
  it.provenance = prov;
  it.degree = vec_degree(v);
  return it;
}
AuditItem audit_item(Provenance prov, const ZVec& v);

nlohmann::json to_json(const Height& h);
nlohmann::json to_json(const BoundReport& r);

}  // namespace zm
