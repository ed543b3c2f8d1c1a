#pragma once

#include <optional>
#include <string>

#include "zm/bounds.hpp"
#include "zm/local_solver.hpp"

namespace zm {

enum class CertificateMode { Membership, LinearSystem, Bezout };

struct Certificate {
  CertificateMode mode = CertificateMode::LinearSystem;
  ZMatrix A;  // one row f_1..f_n for membership and Bezout
  ZVec b;     // (f_0) or (1) in those modes
  ZVec cofactors;
};

// sum h_j c_j = denominator with p not dividing the denominator.
struct LocalCertificate {
  Integer p;
  ZVec cofactors;
  Integer denominator = 1;
};

bool verify(const Certificate& c);
bool verify(const LocalCertificate& c, const std::vector<ZPoly>& cs);

// Why a system was found unsolvable. kind is one of "zero-generators",
// "Q-rank", "mod-p", "local" ("" when solvable).
struct Witness {
  std::string kind;
  Integer p = 0;
  std::string text() const;
};

struct SolveOutcome {
  std::optional<Certificate> certificate;
  Witness witness;
  Integer q_denominator = 1;   // gcd of the denominators of the rational solutions found
  std::vector<Integer> primes;  // primes that needed local work
  std::vector<BoundReport> reports;
};

struct ZSyzygyBasis {
  std::vector<ZVec> generators;
  std::vector<Integer> origin;  // 0 for field generators, else the prime p
  Integer delta = 1;
  FieldSyzygyZ field;
  std::vector<LocalSyzygyBasis> local;
  BoundReport report;
};

// Field generators against beta and local generators against flat_bound.
BoundReport audit_syzygies(const ZMatrix& A, const std::vector<ZVec>& field,
                           const std::vector<const LocalSyzygyBasis*>& local);

// Product of the normalization constants of the rational Hermann run. For a
// prime q not dividing it the field generators already generate the solutions
// over Z_(q)[X].
Integer denominator_delta(const ZMatrix& A, const FieldSyzygyZ& field);

ZSyzygyBasis syzygy_z(const ZMatrix& A, LocalMode mode = LocalMode::Adaptive);

SolveOutcome solve_linear_z_report(const ZMatrix& A, const ZVec& b);
std::optional<Certificate> solve_linear_z(const ZMatrix& A, const ZVec& b);

SolveOutcome member_z_report(const ZPoly& f0, const std::vector<ZPoly>& fs);
std::optional<Certificate> member_z(const ZPoly& f0, const std::vector<ZPoly>& fs);

// s with 1 - (1 - sum r_i f_i)^e = sum s_i f_i.
std::vector<ZPoly> power_cofactors(const std::vector<ZPoly>& rs, const std::vector<ZPoly>& fs,
                                   unsigned long e);

std::optional<LocalCertificate> bezout_local(const std::vector<ZPoly>& cs, const Integer& p);
std::optional<Certificate> bezout_z(const std::vector<ZPoly>& fs);

// Solutions of A*y = c*b over Z[X] with c prime to p, or nothing when the
// system has no solution over Z_(p)[X].
struct LocalSolution {
  ZVec y;
  Integer c = 1;
};
std::optional<LocalSolution> solve_local(const ZMatrix& A, const ZVec& b, const Integer& p,
                                         Witness* why = nullptr);

// Submodules of Z[X]^m are given by generator lists (each of length m).
std::vector<ZVec> module_intersect(const std::vector<ZVec>& M, const std::vector<ZVec>& Mp,
                                   std::size_t m, unsigned N);
// {a : a*M in M'}; generators as polynomials.
std::vector<ZPoly> module_colon(const std::vector<ZVec>& Mp, const std::vector<ZVec>& M,
                                std::size_t m, unsigned N);
// (M' Q[X]) intersected with Z[X]^m.
std::vector<ZVec> module_saturate(const std::vector<ZVec>& Mp, std::size_t m, unsigned N);

bool in_module(const std::vector<ZVec>& gens, const ZVec& v, unsigned N);

}  // namespace zm
