#include "gw/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "gw/errors.hpp"

namespace gw {

u64 powmod(u64 base, u64 exp, u64 n) {
  if (n == 1) return 0;
  u64 result = 1;
  base %= n;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, n);
    base = mulmod(base, base, n);
    exp >>= 1;
  }
  return result;
}

u64 gcd(u64 a, u64 b) {
  while (b != 0) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u64 lcm(u64 a, u64 b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd(a, b) * b;
}

u64 invmod(u64 a, u64 n) {
  if (n == 1) return 0;
  i64 t = 0, new_t = 1;
  i64 r = static_cast<i64>(n), new_r = static_cast<i64>(a % n);
  while (new_r != 0) {
    i64 q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw NonUnitError(std::to_string(a) + " is not invertible mod " + std::to_string(n));
  return static_cast<u64>(mod(t, static_cast<i64>(n)));
}

u64 ipow(u64 base, unsigned exp) {
  u64 result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && result > std::numeric_limits<u64>::max() / base)
      throw RangeError("integer power overflows 64 bits");
    result *= base;
  }
  return result;
}

i64 mod(i64 a, i64 n) {
  i64 r = a % n;
  return r < 0 ? r + n : r;
}

namespace {

bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) {
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    const u64 m = 128;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u64 n, std::map<u64, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  u64 d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : small) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are deterministic for all n < 3.3e24.
  for (u64 a : small) {
    if (miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

u64 next_prime(u64 n) {
  u64 candidate = n + 1;
  while (!is_prime(candidate)) ++candidate;
  return candidate;
}

std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

std::pair<u64, int> prime_power_decomposition(u64 n) {
  if (n < 2) return {0, 0};
  auto f = factor(n);
  if (f.factors().size() != 1) return {0, 0};
  return {f.factors()[0].prime, f.factors()[0].exponent};
}

bool is_prime_power(u64 n) { return prime_power_decomposition(n).first != 0; }

FactoredInteger::FactoredInteger(std::vector<PrimePower> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  for (const auto& pp : factors) {
    if (pp.exponent < 0) throw DomainError("negative exponent in factorization");
    if (pp.exponent == 0) continue;
    if (!factors_.empty() && factors_.back().prime == pp.prime) {
      factors_.back().exponent += pp.exponent;
    } else {
      factors_.push_back(pp);
    }
  }
}

int FactoredInteger::exponent_of(u64 p) const {
  for (const auto& pp : factors_) {
    if (pp.prime == p) return pp.exponent;
  }
  return 0;
}

bool FactoredInteger::fits_u64() const {
  u128 v = 1;
  for (const auto& pp : factors_) {
    for (int i = 0; i < pp.exponent; ++i) {
      v *= pp.prime;
      if (v > std::numeric_limits<u64>::max()) return false;
    }
  }
  return true;
}

u64 FactoredInteger::value() const {
  if (!fits_u64()) throw RangeError("factored integer " + to_string() + " exceeds 64 bits");
  u64 v = 1;
  for (const auto& pp : factors_) v *= ipow(pp.prime, static_cast<unsigned>(pp.exponent));
  return v;
}

double FactoredInteger::log() const {
  double s = 0.0;
  for (const auto& pp : factors_) s += pp.exponent * std::log(static_cast<double>(pp.prime));
  return s;
}

std::string FactoredInteger::to_string() const {
  if (factors_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << '*';
    os << factors_[i].prime;
    if (factors_[i].exponent > 1) os << '^' << factors_[i].exponent;
  }
  return os.str();
}

FactoredInteger FactoredInteger::operator*(const FactoredInteger& other) const {
  std::vector<PrimePower> all = factors_;
  all.insert(all.end(), other.factors_.begin(), other.factors_.end());
  return FactoredInteger(std::move(all));
}

FactoredInteger& FactoredInteger::operator*=(const FactoredInteger& other) {
  *this = *this * other;
  return *this;
}

FactoredInteger factor(u64 n) {
  if (n == 0) throw DomainError("cannot factor 0");
  std::map<u64, int> found;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    while (n % p == 0) {
      ++found[p];
      n /= p;
    }
  }
  factor_into(n, found);
  std::vector<PrimePower> out;
  for (auto [p, e] : found) out.push_back({p, e});
  return FactoredInteger(std::move(out));
}

bool is_probable_prime_wide(const mpz_class& n) {
  if (n < 2) return false;
  if (n.fits_ulong_p()) return is_prime(n.get_ui());
  static const unsigned long bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  mpz_class d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  const mpz_class nm1 = n - 1;
  for (unsigned long a : bases) {
    mpz_class x;
    mpz_class base = a;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) continue;
    bool composite = true;
    for (unsigned long i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == nm1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  // Thirteen prime bases are proven only below 3.3e24; above that add BPSW.
  static const mpz_class proven_limit("3317044064679887385961981");
  if (n < proven_limit) return true;
  return mpz_probab_prime_p(n.get_mpz_t(), 25) > 0;
}

namespace {

mpz_class pollard_wide(const mpz_class& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      mpz_class diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_wide_into(const mpz_class& n, std::map<mpz_class, int>& out) {
  if (n == 1) return;
  if (n.fits_ulong_p()) {
    for (const auto& pp : factor(n.get_ui()).factors()) out[mpz_class(pp.prime)] += pp.exponent;
    return;
  }
  if (is_probable_prime_wide(n)) {
    ++out[n];
    return;
  }
  mpz_class d = pollard_wide(n);
  factor_wide_into(d, out);
  factor_wide_into(n / d, out);
}

}  // namespace

WideFactorization factor_wide(const mpz_class& n) {
  static const mpz_class limit = mpz_class(1) << 96;
  if (n < 1) throw DomainError("factor_wide requires n >= 1");
  if (n > limit) throw RangeError("factor_wide supports n <= 2^96");
  std::map<mpz_class, int> found;
  mpz_class rest = n;
  for (unsigned long p = 2; p < 1000; ++p) {
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      ++found[mpz_class(p)];
      rest /= p;
    }
  }
  factor_wide_into(rest, found);
  WideFactorization out{n, {}};
  for (auto& [p, e] : found) out.factors.emplace_back(p, e);
  return out;
}

int valuation(const mpz_class& n, u64 p) {
  if (n == 0) throw DomainError("valuation of zero");
  mpz_class t = abs(n);
  int v = 0;
  mpz_class q;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++v;
  }
  return v;
}

u64 residue_mod(const mpq_class& unit, u64 modulus) {
  mpz_class m = static_cast<unsigned long>(modulus);
  mpz_class num = unit.get_num() % m;
  if (num < 0) num += m;
  mpz_class den = unit.get_den() % m;
  u64 n = num.get_ui(), d = den.get_ui();
  return mulmod(n, invmod(d, modulus), modulus);
}

}  // namespace gw
