#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "zm/cli.hpp"
#include "zm/errors.hpp"

namespace {

bool read_json(const std::string& path, nlohmann::json& out, std::string& err) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) {
      err = "cannot open " + path;
      return false;
    }
    buf << in.rdbuf();
  }
  try {
    out = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    err = path + ": " + e.what();
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ideal membership, syzygies and Bezout identities over Z[X1..XN]"};
  std::string command, problem_path, out_path, cert_path, ring;
  std::string prime;
  long bound = 4;
  bool audit = false;
  app.add_option("command", command,
                 "member, solve, syzygy, bezout, intersect, colon, saturate, bounds, "
                 "oracle-member, oracle-syzygy or verify")
      ->required();
  app.add_option("problem", problem_path, "problem JSON file, - for stdin")->required();
  app.add_option("--ring", ring, "Z, Q, Fp(p) or Zp(p)");
  app.add_option("--prime", prime, "prime for Fp or Zp");
  auto* bound_opt = app.add_option("--bound", bound, "oracle degree bound");
  app.add_flag("--audit", audit, "attach bound reports");
  app.add_option("--out", out_path, "write the JSON result here");
  app.add_option("--certificate", cert_path, "certificate JSON for verify");
  CLI11_PARSE(app, argc, argv);

  zm::load_limits_from_env();
  nlohmann::json problem, cert;
  std::string err;
  if (!read_json(problem_path, problem, err) || (!cert_path.empty() && !read_json(cert_path, cert, err))) {
    std::cerr << err << "\n";
    return 2;
  }
  // A full result document is accepted in place of the bare certificate.
  if (cert.is_object() && cert.contains("certificate")) cert = cert["certificate"];

  zm::cli::Flags flags;
  flags.ring = ring;
  flags.audit = audit;
  if (*bound_opt) flags.bound = bound;
  if (!prime.empty()) {
    try {
      flags.prime = zm::Integer(prime);
    } catch (const std::invalid_argument&) {
      std::cerr << "malformed --prime\n";
      return 2;
    }
  }
  auto result = zm::cli::run(command, problem, flags, cert_path.empty() ? nullptr : &cert);
  std::string text = result.json.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    out << text;
  }
  if (result.exit_code != 0 && result.json.contains("message"))
    std::cerr << result.json["error"].get<std::string>() << ": " << result.json["message"].get<std::string>() << "\n";
  return result.exit_code;
}
