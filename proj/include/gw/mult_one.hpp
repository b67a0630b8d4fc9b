#pragma once

#include <iosfwd>
#include <vector>

#include "gw/characters.hpp"
#include "gw/execution.hpp"

namespace gw {

struct PrimeWitness {
  u64 prime = 0;
  u64 norm = 0;
  u64 value_exponent = 0;  // nonzero mod the character's exponent modulus
};

/// Least prime p outside S and coprime to N(chi) with chi(p) != 1.
/// Throws NoWitnessError for the trivial character, SearchCapError past `cap`.
PrimeWitness least_nonsplit_prime(const DirichletCharacter& chi, const std::vector<Place>& S, u64 cap = 100'000'000);

/// A(chi, S) = N(chi) * N_S over Q.
u64 analytic_conductor_S(const DirichletCharacter& chi, const std::vector<Place>& S);

struct ScanRecord {
  u64 conductor = 0;
  u64 modulus = 0;
  u64 exponent_modulus = 0;
  std::vector<u64> exponents;
  u64 S_norm = 1;
  u64 least_prime = 0;  // 0 when the search hit the cap
  bool capped = false;
  double log_A = 0;
  double ratio_A = 0;  // log p / log A(chi, S)
  double ratio_B = 0;  // p / (N^{1/2 + eps} N_S^eps)
  double ratio_C = 0;  // p / (log A)^2
};

/// One record per primitive character of conductor <= max_conductor (every
/// order; exponents on the canonical generators mod N with exponent modulus
/// lambda(N)), sorted by conductor then exponent vector.
std::vector<ScanRecord> scan_family(u64 max_conductor, const std::vector<Place>& S, double epsilon, u64 cap,
                                    Execution exec = Execution::parallel);

/// Header plus one row per record; numbers in fixed notation so output is byte-stable.
void write_scan_csv(std::ostream& out, const std::vector<ScanRecord>& records);

struct ScanSummary {
  std::size_t records = 0;
  std::size_t capped = 0;
  double max_ratio_A = 0;
  double max_ratio_B = 0;
  double max_ratio_C = 0;
  u64 argmax_ratio_C = 0;                  // conductor where ratio_C peaks
  std::vector<double> decile_max_ratio_C;  // over conductor ranges (k-1)Q/10 < N <= kQ/10
};

ScanSummary summarize_scan(const std::vector<ScanRecord>& records, u64 max_conductor);

}  // namespace gw
