#include <random>
#include <set>

#include "doctest.h"
#include "gw/arith.hpp"
#include "gw/errors.hpp"
#include "gw/local_power.hpp"
#include "gw/unit_group.hpp"

using namespace gw;

TEST_CASE("factor: fixtures") {
  CHECK(factor(16).factors() == std::vector<PrimePower>{{2, 4}});
  CHECK(factor(1).factors().empty());
  CHECK(factor(28).factors() == std::vector<PrimePower>{{2, 2}, {7, 1}});
  CHECK_THROWS_AS(factor(0), DomainError);
}

TEST_CASE("factor: recomposition and primality of factors") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const u64 n = 1 + rng() % (1ULL << (1 + i % 62));
    const auto f = factor(n);
    CHECK(f.value() == n);
    u64 prev = 0;
    for (const auto& pp : f.factors()) {
      CHECK(pp.prime > prev);
      CHECK(is_prime(pp.prime));
      prev = pp.prime;
    }
  }
  // Semiprime with two ~32-bit factors exercises the rho path.
  const u64 a = 4294967291ULL, b = 4294967279ULL;
  CHECK(factor(a * b).factors() == std::vector<PrimePower>{{b, 1}, {a, 1}});
}

TEST_CASE("factor_wide: up to 2^96") {
  const mpz_class p("18446744073709551557");  // largest prime below 2^64
  const mpz_class n = p * 4294967291UL;
  const auto f = factor_wide(n);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].first == 4294967291UL);
  CHECK(f.factors[1].first == p);
  const mpz_class big = (mpz_class(1) << 96) + 1;
  CHECK_THROWS_AS(factor_wide(big), RangeError);
  mpz_class prod = 1;
  for (const auto& [q, e] : factor_wide(mpz_class("79228162514264337593543950335")).factors) {
    CHECK(is_probable_prime_wide(q));
    for (int i = 0; i < e; ++i) prod *= q;
  }
  CHECK(prod == mpz_class("79228162514264337593543950335"));
}

TEST_CASE("is_prime agrees with a sieve") {
  const auto primes = primes_up_to(100000);
  std::set<u64> ps(primes.begin(), primes.end());
  for (u64 n = 0; n <= 100000; ++n) CHECK_EQ(is_prime(n), ps.count(n) == 1);
}

TEST_CASE("unit_group: fixtures") {
  auto g8 = unit_group(8);
  CHECK(g8.generators() == std::vector<u64>{7, 5});
  CHECK(g8.orders() == std::vector<u64>{2, 2});
  CHECK(unit_group(1).generators().empty());
  auto g7 = unit_group(7);
  CHECK(g7.generators() == std::vector<u64>{3});
  CHECK(g7.orders() == std::vector<u64>{6});
  CHECK(unit_group(4).generators() == std::vector<u64>{3});
  CHECK(unit_group(2).generators().empty());
}

TEST_CASE("least primitive root mod p^k can differ from mod p") {
  // 10 is a primitive root mod 487 but 10^486 = 1 mod 487^2.
  CHECK(least_primitive_root(487, 1) == 3);
  CHECK(powmod(10, 486, 487ULL * 487ULL) == 1);
  const u64 g = least_primitive_root(487, 2);
  CHECK(powmod(g, 486, 487ULL * 487ULL) != 1);
  CHECK(least_primitive_root(7, 3) == 3);
}

namespace {

// Enumerates the subgroup generated by the canonical generators and compares
// it with the set of units.
void check_generation(u64 n) {
  auto g = unit_group(n);
  u64 phi = 0;
  for (u64 x = 0; x < n; ++x) phi += (gcd(x, n) == 1) ? 1 : 0;
  if (n == 1) phi = 1;
  CHECK(g.order() == phi);
  std::vector<bool> seen(n, false);
  std::vector<u64> frontier{1 % n};
  seen[1 % n] = true;
  u64 count = 1;
  while (!frontier.empty()) {
    u64 x = frontier.back();
    frontier.pop_back();
    for (u64 gen : g.generators()) {
      u64 y = mulmod(x, gen, n);
      if (!seen[y]) {
        seen[y] = true;
        ++count;
        frontier.push_back(y);
      }
    }
  }
  CHECK(count == phi);
  for (std::size_t i = 0; i < g.rank(); ++i) {
    const u64 o = g.orders()[i];
    CHECK(powmod(g.generators()[i], o, n) == 1 % n);
    for (const auto& q : factor(o).factors()) CHECK(powmod(g.generators()[i], o / q.prime, n) != 1 % n);
  }
}

}  // namespace

TEST_CASE("unit_group: generators generate, by enumeration") {
  for (u64 n = 1; n <= 1500; ++n) check_generation(n);
  for (u64 n : {65536ULL, 531441ULL, 999983ULL, 1000000ULL, 720720ULL, 2 * 487ULL * 487ULL}) check_generation(n);
}

TEST_CASE("dlog_units: fixtures") {
  CHECK(dlog_units(7, 2) == std::vector<u64>{2});
  CHECK(dlog_units(8, 1) == std::vector<u64>{0, 0});
  CHECK(dlog_units(8, 3) == std::vector<u64>{1, 1});
  CHECK_THROWS_AS(dlog_units(12, 9), NonUnitError);
}

TEST_CASE("dlog_units: round trip on random units") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 3000; ++i) {
    const u64 n = 2 + rng() % 99999;
    const auto g = unit_group(n);
    u64 x;
    do {
      x = rng() % n;
    } while (gcd(x, n) != 1);
    const auto e = g.dlog(x);
    for (std::size_t j = 0; j < e.size(); ++j) CHECK(e[j] < g.orders()[j]);
    CHECK(g.evaluate(e) == x);
  }
}

TEST_CASE("DlogTable matches dlog") {
  for (u64 n : {1ULL, 2ULL, 24ULL, 360ULL, 1001ULL, 4096ULL}) {
    const auto g = unit_group(n);
    DlogTable t(g);
    for (u64 x = 0; x < n; ++x) {
      const bool unit = gcd(x, n) == 1 || n == 1;
      CHECK(t.is_unit(x) == unit);
      if (!unit) continue;
      const auto e = g.dlog(x);
      CHECK(std::vector<u64>(t.exponents(x), t.exponents(x) + t.width()) == e);
    }
  }
}

TEST_CASE("lth_power_test_local: fixtures") {
  CHECK(lth_power_test_local(16, Place::finite(7), 8));
  CHECK_FALSE(lth_power_test_local(16, Place::finite(2), 8));
  CHECK_FALSE(lth_power_test_local(2, Place::finite(3), 8));
  CHECK(lth_power_test_local(-8, Place::infinity(), 3));
  CHECK_FALSE(lth_power_test_local(-4, Place::infinity(), 2));
  CHECK_THROWS_AS(lth_power_test_local(2, Place::finite(3), 6), DomainError);
  CHECK_THROWS_AS(lth_power_test_local(0, Place::finite(3), 2), DomainError);
}

TEST_CASE("lth_power_test_local: 16 is not an 8th power in Q_2, exhaustive mod 2^12") {
  const u64 mod = 1 << 12;
  bool found = false;
  for (u64 y = 0; y < mod; ++y) {
    if (powmod(y, 8, mod) == 16) found = true;
  }
  // Valuations of y^8 are multiples of 8, so 16 = 2^4 can never be reached.
  CHECK_FALSE(found);
  CHECK_FALSE(lth_power_test_local(16, Place::finite(2), 8));
}

TEST_CASE("lth_power_test_local agrees with exhaustive search") {
  for (u64 p : primes_up_to(50)) {
    for (u64 m : {2ULL, 3ULL, 4ULL, 8ULL, 9ULL}) {
      int k = 0;
      u64 pk = 1;
      while (pk * p <= 1000000) {
        pk *= p;
        ++k;
      }
      std::vector<bool> is_power(pk, false);
      for (u64 y = 1; y < pk; ++y) {
        if (y % p != 0) is_power[powmod(y, m, pk)] = true;
      }
      for (u64 u = 1; u < std::min<u64>(pk, 4000); ++u) {
        if (u % p == 0) continue;
        CHECK_MESSAGE(lth_power_test_local(mpq_class(u), Place::finite(p), m) == is_power[u],
                      "p=" << p << " m=" << m << " u=" << u);
        // Valuation part: p^m * u behaves like u, p^1 * u never is (m > 1).
        mpz_class pm;
        mpz_ui_pow_ui(pm.get_mpz_t(), p, m);
        CHECK(lth_power_test_local(mpq_class(pm * u), Place::finite(p), m) == is_power[u]);
        CHECK(lth_power_test_local(mpq_class(mpz_class(u), pm), Place::finite(p), m) == is_power[u]);
        CHECK_FALSE(lth_power_test_local(mpq_class(mpz_class(p) * u), Place::finite(p), m));
      }
    }
  }
}

TEST_CASE("principal units are m-th powers when p does not divide m") {
  std::mt19937_64 rng(3);
  for (u64 p : primes_up_to(200)) {
    for (u64 m : {2ULL, 3ULL, 4ULL, 8ULL, 9ULL, 25ULL, 49ULL}) {
      if (m % p == 0) continue;
      for (int i = 0; i < 20; ++i) {
        const mpz_class u = mpz_class(1) + mpz_class(p) * static_cast<unsigned long>(rng() % 100000);
        const mpq_class x(u, mpz_class(1) + mpz_class(p) * static_cast<unsigned long>(rng() % 1000));
        CHECK(lth_power_test_local(x, Place::finite(p), m));
      }
    }
  }
}

TEST_CASE("16 is an 8th power in Q_p for every odd p <= 10^4, but not in Q nor Q_2") {
  for (u64 p : primes_up_to(10000)) {
    if (p == 2) continue;
    CHECK(lth_power_test_local(16, Place::finite(p), 8));
  }
  CHECK_FALSE(lth_power_test_local(16, Place::finite(2), 8));
  // 16 = 2^4 and 4 is not divisible by 8: no rational 8th root.
  CHECK(valuation(16, 2) % 8 != 0);
}

TEST_CASE("is_square_in_2adic_quadratic: fixtures") {
  CHECK(is_square_in_2adic_quadratic(QuadraticElement(-1), 7));
  CHECK_FALSE(is_square_in_2adic_quadratic(QuadraticElement(-1), 1));
  for (i64 d : {1, 2, 3, 5, 7, -1, -2, -5, 17, 6, 10, -3}) {
    CHECK(is_square_in_2adic_quadratic(QuadraticElement(1), d));
  }
  CHECK_THROWS_AS(is_square_in_2adic_quadratic(QuadraticElement(0), 7), DomainError);
  CHECK_THROWS_AS(is_square_in_2adic_quadratic(QuadraticElement(1), 8), DomainError);
}

namespace {

bool rational_2adic_square(const mpq_class& q) {
  const mpz_class n = q.get_num() * q.get_den();  // same square class
  const int v = static_cast<int>(mpz_scan1(n.get_mpz_t(), 0));
  if (v % 2) return false;
  mpz_class u = n >> v;
  mpz_class r = u % 8;
  if (r < 0) r += 8;
  return r == 1;
}

}  // namespace

TEST_CASE("is_square_in_2adic_quadratic: rationals against the Q_2 square-class criterion") {
  // For rational x and a field K_v = Q_2(sqrt d) of degree 2, x is a square
  // iff x or x*d is a square in Q_2; when 2 splits, iff x is a square in Q_2.
  const std::vector<i64> ds = {-1, -2, -3, -5, -6, -7, -10, -11, 2, 3, 5, 6, 7, 10, 11, 13, 14, 17, 33, 41};
  for (i64 d : ds) {
    i64 r = ((d % 8) + 8) % 8;
    for (int num = -40; num <= 40; ++num) {
      if (num == 0) continue;
      for (int den : {1, 2, 3, 4, 8, 12}) {
        const mpq_class x(num, den);
        mpq_class xc = x;
        xc.canonicalize();
        bool expected = rational_2adic_square(xc);
        if (r != 1) expected = expected || rational_2adic_square(xc * d);
        const QuadraticElement e(xc);
        CHECK_MESSAGE(is_square_in_2adic_quadratic(e, d) == expected, "d=" << d << " x=" << xc.get_str());
        CHECK(is_square_in_2adic_quadratic(e, d, 16) == expected);
      }
    }
  }
}

TEST_CASE("is_square_in_2adic_quadratic: squares of irrational elements") {
  std::mt19937_64 rng(5);
  for (i64 d : {-7, -5, -3, -2, -1, 2, 3, 5, 6, 7, 10, 17}) {
    for (int i = 0; i < 200; ++i) {
      const mpq_class a(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 6));
      const mpq_class b(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 6));
      if (a == 0 && b == 0) continue;
      // (a + b sqrt d)^2 = a^2 + d b^2 + 2ab sqrt d
      const QuadraticElement sq(a * a + d * b * b, 2 * a * b);
      CHECK(is_square_in_2adic_quadratic(sq, d));
      CHECK(is_square_in_2adic_quadratic(sq, d, 16));
      CHECK(is_square_in_quadratic(sq, d));
    }
  }
}

TEST_CASE("is_square_in_quadratic: global") {
  CHECK(is_square_in_quadratic(QuadraticElement(2), 2));
  CHECK_FALSE(is_square_in_quadratic(QuadraticElement(-1), 2));
  CHECK(is_square_in_quadratic(QuadraticElement(-1), -1));
  CHECK(is_square_in_quadratic(QuadraticElement(3, 2), 2));  // (1 + sqrt2)^2
  CHECK_FALSE(is_square_in_quadratic(QuadraticElement(2, 1), 2));
  CHECK_FALSE(is_square_in_quadratic(QuadraticElement(-2, -1), 2));
  CHECK(is_square_in_quadratic(QuadraticElement(7), 7));
  CHECK_FALSE(is_square_in_quadratic(QuadraticElement(-1), 7));
}
