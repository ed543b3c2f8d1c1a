#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "zm/arith.hpp"

namespace zm::cli {

struct Flags {
  std::string ring;               // overrides the problem's "ring" when set
  std::optional<Integer> prime;   // for Fp / Zp given without a prime
  std::optional<long> bound;      // oracle degree bound, default 4
  bool audit = false;
};

struct Output {
  int exit_code = 0;  // 0 done, 1 internal error, 2 input error, 3 resource limit
  nlohmann::json json;
};

// Runs one command on a problem document. verify takes the certificate
// object emitted by member, solve or bezout.
Output run(const std::string& command, const nlohmann::json& problem, const Flags& flags,
           const nlohmann::json* certificate = nullptr);

// Exact re-multiplication check of a certificate against its problem.
bool verify_certificate(const nlohmann::json& problem, const nlohmann::json& certificate);

}  // namespace zm::cli
