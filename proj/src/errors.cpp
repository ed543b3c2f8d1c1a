#include "zm/errors.hpp"

#include <cstdlib>

namespace zm {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::Zero: return "Zero";
    case ErrorKind::ZeroMatrix: return "ZeroMatrix";
    case ErrorKind::NoVariables: return "NoVariables";
    case ErrorKind::NonConstantLeading: return "NonConstantLeading";
    case ErrorKind::SingularMinor: return "SingularMinor";
    case ErrorKind::MixedSystems: return "MixedSystems";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::CombinatorialLimit: return "CombinatorialLimit";
    case ErrorKind::ExponentBlowup: return "ExponentBlowup";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(kind_name(kind)) + ": " + what);
}

Limits& limits() {
  static Limits l;
  return l;
}

static void env_u64(const char* name, std::uint64_t& slot) {
  const char* v = std::getenv(name);
  if (!v || !*v) return;
  char* end = nullptr;
  unsigned long long x = std::strtoull(v, &end, 10);
  if (end && *end == '\0' && x > 0) slot = x;
}

void load_limits_from_env() {
  Limits& l = limits();
  env_u64("ZM_MINOR_CAP", l.minor_cap);
  env_u64("ZM_TE_EXPONENT_CAP", l.te_exponent_cap);
  env_u64("ZM_ORACLE_CELLS", l.oracle_cells);
  env_u64("ZM_FACTOR_BUDGET", l.factor_budget);
  env_u64("ZM_DERIVED_CELLS", l.derived_cells);
  env_u64("ZM_POLY_TERMS", l.poly_terms);
}

}  // namespace zm
