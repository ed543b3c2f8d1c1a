#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace zm {

enum class ErrorKind {
  NotPrime,
  NotCoprime,
  Zero,
  ZeroMatrix,
  NoVariables,
  NonConstantLeading,
  SingularMinor,
  MixedSystems,
  ParseError,
  SchemaError,
  DomainMismatch,
  ResourceLimit,
  CombinatorialLimit,
  ExponentBlowup,
  Internal
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }
  // Resource-type failures map to CLI exit code 3, everything else to 2.
  bool is_resource() const {
    return kind_ == ErrorKind::ResourceLimit ||
           kind_ == ErrorKind::CombinatorialLimit ||
           kind_ == ErrorKind::ExponentBlowup;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

// Configurable resource caps. Defaults are conservative desk-scale values;
// the CLI overrides them from ZM_* environment variables.
struct Limits {
  std::uint64_t minor_cap = 10000;            // C(m,r)*C(n,r) minors
  std::uint64_t te_exponent_cap = 1000000;    // e^(N-1) * deg f
  std::uint64_t oracle_cells = 10000000;      // coefficient-matrix cells
  std::uint64_t factor_budget = 2000000;      // Pollard-Brent iterations
  std::uint64_t derived_cells = 4000000;      // rows*cols of a derived system
  std::uint64_t poly_terms = 2000000;         // terms in any intermediate product
};

Limits& limits();
void load_limits_from_env();

}  // namespace zm
