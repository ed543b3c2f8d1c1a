#pragma once

#include <string>

#include "zm/field_solver.hpp"

namespace zm {

// Literal uses T_e with e = r*deg A + 1 at every level. Adaptive tries the
// identity, then X_i -> X_i + c_i X_N with c in [0,p)^(N-1), then T_k for
// k = 2..e-1, then T_e.
enum class LocalMode { Literal, Adaptive };

struct LocalLevel {
  unsigned nu = 0;  // number of variables at this level
  std::size_t m = 0, n = 0, r = 0;
  long deg = 0;          // total degree of the level's matrix
  std::uint64_t e = 0;   // r*deg + 1
  long s = -1;           // regularity degree of epsilon in X_N
  long mu = 0;           // p-valuation of the chosen minor
  std::string transform;  // "none", "identity", "linear", "T_k", "T_e"
  std::vector<std::uint64_t> change;
  bool enumerated = true;  // minor found by enumeration (else by pivoting)
  bool regular_ok = true;  // s exists and s < e^nu
  bool valuation_ok = true;
  std::size_t window = 0;
};

struct LocalSyzygyBasis {
  Integer p;
  std::vector<ZVec> generators;
  std::vector<LocalLevel> trace;
  Integer bound = 0;  // (2m deg A)^(2((N+1)^N - 1))
  bool bound_ok = true;
  LocalMode mode = LocalMode::Adaptive;
};

LocalSyzygyBasis syzygy_local(const ZMatrix& A, const Integer& p,
                              LocalMode mode = LocalMode::Adaptive);

// Field generators and local generators of the same system, deduplicated.
std::vector<ZVec> combine_generators(const ZMatrix& A, const std::vector<ZVec>& field_gens,
                                     const std::vector<ZVec>& local_gens);

}  // namespace zm
