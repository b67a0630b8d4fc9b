#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace gw {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 n) {
  return static_cast<u64>(static_cast<u128>(a) * b % n);
}

u64 powmod(u64 base, u64 exp, u64 n);
u64 invmod(u64 a, u64 n);  // throws NonUnitError when gcd(a, n) != 1
u64 gcd(u64 a, u64 b);
u64 lcm(u64 a, u64 b);
u64 ipow(u64 base, unsigned exp);  // throws RangeError on overflow
i64 mod(i64 a, i64 n);             // representative in [0, n)

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(u64 n);

/// Least prime strictly greater than n.
u64 next_prime(u64 n);

/// Sieve of Eratosthenes; all primes <= limit.
std::vector<u64> primes_up_to(u64 limit);

/// If n = l^r with l prime and r >= 1, returns {l, r}; otherwise {0, 0}.
std::pair<u64, int> prime_power_decomposition(u64 n);
bool is_prime_power(u64 n);

struct PrimePower {
  u64 prime = 0;
  int exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A positive integer held by its factorization. Primes strictly increasing.
class FactoredInteger {
 public:
  FactoredInteger() = default;
  explicit FactoredInteger(std::vector<PrimePower> factors);

  const std::vector<PrimePower>& factors() const& { return factors_; }
  std::vector<PrimePower> factors() && { return std::move(factors_); }
  bool is_one() const { return factors_.empty(); }
  int exponent_of(u64 p) const;
  bool divisible_by(u64 p) const { return exponent_of(p) > 0; }

  /// Throws RangeError when the value does not fit in 64 bits.
  u64 value() const;
  bool fits_u64() const;
  double log() const;
  std::string to_string() const;  // "2^3*3"; "1" for the empty product

  FactoredInteger operator*(const FactoredInteger& other) const;
  FactoredInteger& operator*=(const FactoredInteger& other);
  friend bool operator==(const FactoredInteger&, const FactoredInteger&) = default;

 private:
  std::vector<PrimePower> factors_;
};

FactoredInteger factor(u64 n);

/// Wide-range factorization, 1 <= n <= 2^96.
struct WideFactorization {
  mpz_class value;
  std::vector<std::pair<mpz_class, int>> factors;
};
WideFactorization factor_wide(const mpz_class& n);
bool is_probable_prime_wide(const mpz_class& n);

/// p-adic valuation of a nonzero integer.
int valuation(const mpz_class& n, u64 p);
/// Residue of a nonzero rational p-unit modulo `modulus` (a power of p).
u64 residue_mod(const mpq_class& unit, u64 modulus);

}  // namespace gw
