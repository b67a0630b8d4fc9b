#pragma once

#include <compare>
#include <string>

#include <gmpxx.h>

#include "gw/arith.hpp"

namespace gw {

/// A place of Q: a finite prime or the real place.
struct Place {
  enum class Kind { finite, real };
  Kind kind = Kind::finite;
  u64 prime = 0;  // meaningful only for finite places

  static Place finite(u64 p);  // throws DomainError unless p is prime
  static Place infinity() { return Place{Kind::real, 0}; }

  bool is_real() const { return kind == Kind::real; }
  bool is_finite() const { return kind == Kind::finite; }
  /// Norm of the place: p for finite, 1 for the real place.
  u64 norm() const { return is_real() ? 1 : prime; }
  std::string to_string() const;  // "7" or "infinity"

  // Finite places ordered by prime, the real place last.
  friend bool operator==(const Place&, const Place&) = default;
  friend std::strong_ordering operator<=>(const Place& a, const Place& b) {
    if (a.kind != b.kind) return a.is_finite() ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.prime <=> b.prime;
  }
};

/// Parses "infinity" or a prime written in decimal.
Place parse_place(const std::string& text);

/// True iff x is an m-th power in Q_v, m = l^r.
///
/// At a finite p with x = p^a u this needs m | a and u an m-th power of a
/// p-adic unit. For p not dividing m the residue of u mod p decides it (units
/// congruent to 1 mod p are m-th powers). For p = l, u is an m-th power iff it
/// is one mod p^{2r+1} (p odd) or mod 2^{r+3} (p = 2). At the real place the
/// answer is x > 0 or m odd. Throws DomainError if m is not a prime power or x = 0.
bool lth_power_test_local(const mpq_class& x, const Place& v, u64 m);

/// a + b*sqrt(d) with rational a, b.
struct QuadraticElement {
  mpq_class a;
  mpq_class b;
  QuadraticElement() = default;
  QuadraticElement(mpq_class a_, mpq_class b_ = 0) : a(std::move(a_)), b(std::move(b_)) {
    a.canonicalize();
    b.canonicalize();
  }
  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }
};

bool is_squarefree(i64 d);

/// Exact test for x being a square in Q(sqrt d); d = 1 means Q itself.
bool is_square_in_quadratic(const QuadraticElement& x, i64 d);

/// True iff x is a square in the completion of Q(sqrt d) at the place over 2.
/// When 2 splits (d = 1 mod 8) the place is the one where sqrt d maps to the
/// 2-adic root congruent to 1 mod 4; d = 1 means Q_2 itself. A root of
/// y^2 = u mod pi^{2e+1} decides the question; it is then Hensel-lifted to
/// 2^{precision_bits} as a certificate.
bool is_square_in_2adic_quadratic(const QuadraticElement& x, i64 d, int precision_bits = 12);

}  // namespace gw
