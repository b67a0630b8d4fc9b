#include <sstream>

#include "doctest.h"
#include "gw/errors.hpp"
#include "gw/mult_one.hpp"

using namespace gw;

namespace {

// Quadratic character mod an odd prime by Euler's criterion, as +1/-1/0.
int legendre(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

DirichletCharacter legendre_character(u64 p) {
  const auto g = unit_group(p);
  return DirichletCharacter(g, {1}, 2);
}

}  // namespace

TEST_CASE("least nonsplit prime: fixtures") {
  const auto chi5 = legendre_character(5);
  CHECK(least_nonsplit_prime(chi5, {}).prime == 2);
  const auto chi7 = legendre_character(7);
  const auto w = least_nonsplit_prime(chi7, {Place::finite(3)});
  CHECK(w.prime == 5);
  CHECK(w.norm == 5);
  CHECK(w.value_exponent == 1);
  CHECK_THROWS_AS(least_nonsplit_prime(DirichletCharacter::trivial(12, 2), {}), NoWitnessError);
  // Induced characters are primitivized first: chi5 viewed mod 15 still answers 2.
  CHECK(least_nonsplit_prime(DirichletCharacter(unit_group(15), {0, 2}, 4), {}).prime == 2);
}

TEST_CASE("least nonsplit prime agrees with Euler's criterion") {
  for (u64 p : primes_up_to(400)) {
    if (p < 3) continue;
    u64 want = 2;
    while (!is_prime(want) || want == p || legendre(want, p) != -1) ++want;
    CHECK(least_nonsplit_prime(legendre_character(p), {}).prime == want);
  }
}

TEST_CASE("analytic conductor") {
  CHECK(analytic_conductor_S(legendre_character(5), {Place::finite(3)}) == 15);
  CHECK(analytic_conductor_S(DirichletCharacter::trivial(), {}) == 1);
  CHECK(analytic_conductor_S(DirichletCharacter(unit_group(7), {2}, 6),
                             {Place::finite(2), Place::finite(5), Place::infinity()}) == 70);
}

TEST_CASE("scan: fixtures") {
  CHECK(scan_family(1, {}, 0.1, 1000).empty());
  const auto r5 = scan_family(5, {}, 0.1, 1000);
  // Conductors 3, 4, 5 (three characters).
  REQUIRE(r5.size() == 5);
  CHECK(r5[0].conductor == 3);
  CHECK(r5[0].least_prime == 2);
  const auto r8 = scan_family(8, {Place::finite(2)}, 0.1, 1000);
  CHECK(r8[0].conductor == 3);
  CHECK(r8[0].least_prime == 5);
  CHECK(r8[0].S_norm == 2);
  CHECK_THROWS_AS(scan_family(8, {}, 0.0, 1000), DomainError);
}

TEST_CASE("scan: primitive-character counts and witness validity") {
  const u64 Q = 300;
  const auto recs = scan_family(Q, {}, 0.1, 1'000'000, Execution::serial);
  // Number of primitive characters mod N is the Dirichlet inverse of phi under mu, checked by brute force.
  std::vector<u64> count(Q + 1, 0);
  for (const auto& r : recs) ++count[r.conductor];
  for (u64 N = 1; N <= Q; ++N) {
    const auto g = unit_group(N);
    u64 brute = 0;
    std::vector<u64> e(g.rank(), 0);
    const u64 m = std::max<u64>(g.exponent(), 1);
    while (true) {
      DirichletCharacter chi(g, e, m);
      if (chi.is_primitive() && !chi.is_trivial()) ++brute;
      std::size_t j = e.size();
      while (j-- > 0) {
        e[j] += m / g.orders()[j];
        if (e[j] < m) break;
        e[j] = 0;
      }
      if (j == static_cast<std::size_t>(-1)) break;
    }
    CHECK_MESSAGE(count[N] == brute, "N=", N);
  }
  for (const auto& r : recs) {
    const DirichletCharacter chi(unit_group(r.modulus), r.exponents, r.exponent_modulus);
    REQUIRE_FALSE(r.capped);
    CHECK(r.modulus % r.least_prime != 0);
    CHECK(*chi.evaluate(static_cast<i64>(r.least_prime)) != 0);
    for (u64 q = 2; q < r.least_prime; ++q) {
      if (is_prime(q) && r.modulus % q != 0) CHECK(*chi.evaluate(static_cast<i64>(q)) == 0);
    }
    CHECK(r.ratio_A > 0);
    CHECK(r.ratio_B > 0);
    CHECK(r.ratio_C > 0);
  }
}

TEST_CASE("scan: serial and parallel agree byte for byte") {
  const std::vector<Place> S{Place::finite(2), Place::finite(7)};
  std::ostringstream a, b;
  write_scan_csv(a, scan_family(400, S, 0.1, 1'000'000, Execution::serial));
  write_scan_csv(b, scan_family(400, S, 0.1, 1'000'000, Execution::parallel));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("conductor,modulus,char_exponents,S,least_prime,log_A,ratio_A,ratio_B,ratio_C\n", 0) == 0);
}

TEST_CASE("scan summary") {
  const auto recs = scan_family(100, {}, 0.1, 1'000'000);
  const auto s = summarize_scan(recs, 100);
  CHECK(s.records == recs.size());
  CHECK(s.capped == 0);
  CHECK(s.decile_max_ratio_C.size() == 10);
  double mx = 0;
  for (double d : s.decile_max_ratio_C) mx = std::max(mx, d);
  CHECK(mx == s.max_ratio_C);
}
