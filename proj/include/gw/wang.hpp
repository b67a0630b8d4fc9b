#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gw/arith.hpp"
#include "gw/local_power.hpp"

namespace gw {

/// Q, or Q(sqrt d) with d squarefree and d != 0, 1.
struct FieldDescriptor {
  i64 d = 1;  // 1 stands for Q

  static FieldDescriptor rationals() { return {}; }
  static FieldDescriptor quadratic(i64 d);  // throws DomainError on bad d
  bool is_rationals() const { return d == 1; }
  int degree() const { return is_rationals() ? 1 : 2; }
  /// |disc|: 1, |d| or 4|d|.
  u64 discriminant() const;
  std::string to_string() const;  // "Q" or "Qsqrt:d"
  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
};

/// Accepts "Q" and "Qsqrt:d".
FieldDescriptor parse_field(const std::string& text);

/// Largest s with eta_{2^s} in K (eta_n = zeta_n + zeta_n^{-1}).
int field_s_invariant(const FieldDescriptor& K);

struct SpecialCaseReport {
  bool occurs = false;
  int s = 2;
  /// eta_{2^{s+1}}^m; present iff occurs. Rational except over Q(sqrt 2).
  std::optional<QuadraticElement> a0;
  /// Places of Q under the places of K above 2 where -1, +-(2 + eta_{2^s})
  /// are all nonsquares (so {2} or empty).
  std::vector<Place> S0;
  char failed_condition = 0;  // 0, or 'b', 'c', 'd'
};

/// Places in S are places of Q; for a quadratic field a prime p in S stands
/// for every place of K above p.
SpecialCaseReport special_case(const FieldDescriptor& K, u64 m, const std::vector<Place>& S);

/// x in (Q^x)^m, exactly.
bool is_rational_mth_power(const mpq_class& x, u64 m);

/// x in P(m, S) over Q: locally an m-th power at every place outside S.
bool membership_P_m_S(const mpq_class& x, u64 m, const std::vector<Place>& S);

/// Least prime p not in S at which x is not a local m-th power.
/// Throws NoWitnessError if x lies in P(m, S), SearchCapError past `cap`.
u64 witness_prime(const mpq_class& x, u64 m, const std::vector<Place>& S, u64 cap = 10'000'000);

std::string to_string(const QuadraticElement& x, i64 d);

}  // namespace gw
