#include <set>

#include "doctest.h"
#include "gw/errors.hpp"
#include "gw/grunwald.hpp"
#include "instances.hpp"

using namespace gw;
using gw::testing::make_instance;

namespace {

std::vector<Place> places(std::initializer_list<u64> primes, bool infinity = false) {
  std::vector<Place> S;
  for (u64 p : primes) S.push_back(Place::finite(p));
  if (infinity) S.push_back(Place::infinity());
  return S;
}

bool matches(const DirichletCharacter& chi, const GrunwaldInstance& inst) {
  for (const auto& want : inst.places) {
    if (!same_character(local_component(chi, want.place), want)) return false;
  }
  return true;
}

// Least conductor of a primitive character of exponent M matching the data,
// by listing the whole character group mod each N.
std::optional<DirichletCharacter> brute_minimal(const GrunwaldInstance& inst, u64 M, u64 cap) {
  for (u64 N = 1; N <= cap; ++N) {
    const auto g = unit_group(N);
    std::vector<u64> steps;
    for (u64 o : g.orders()) steps.push_back(M / gcd(M, o));
    std::vector<u64> e(steps.size(), 0);
    while (true) {
      DirichletCharacter chi(g, e, M);
      if (chi.is_primitive() && matches(chi, inst.rescaled(M))) return chi;
      std::size_t j = e.size();
      while (j-- > 0) {
        e[j] += steps[j];
        if (e[j] < M) break;
        e[j] = 0;
      }
      if (j == static_cast<std::size_t>(-1)) break;
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("P* basis and cosets") {
  auto basis = p_star_basis(8, places({2}, true));
  CHECK(basis == std::vector<mpq_class>{-1, 2});
  CHECK(p_star_basis(3, places({5})) == std::vector<mpq_class>{5});
  CHECK(p_star_basis(2, {}) == std::vector<mpq_class>{-1});
  CHECK(p_star_cosets(8, places({2})).size() == 16);
  CHECK(p_star_cosets(9, places({2, 3})).size() == 81);
  CHECK_THROWS_AS(p_star_basis(6, {}), DomainError);
}

TEST_CASE("auxiliary primes: fixtures") {
  CHECK(auxiliary_primes(2, {}) == std::vector<u64>{3});
  CHECK(auxiliary_primes(3, places({5})) == std::vector<u64>{7});
}

TEST_CASE("auxiliary primes: survivors checked coset by coset") {
  struct Case {
    u64 m;
    std::vector<Place> S;
  };
  const std::vector<Case> cases = {
      {8, places({2}, true)}, {8, places({2})},     {8, places({3})},    {2, places({5})},
      {4, places({2, 3})},    {9, places({3, 7})},  {3, places({2, 5})}, {16, places({2, 3})},
      {27, places({5})},      {4, places({}, true)}, {5, places({11})},
  };
  for (const auto& c : cases) {
    const auto aux = auxiliary_primes(c.m, c.S);
    for (u64 q : aux) CHECK(std::find(c.S.begin(), c.S.end(), Place::finite(q)) == c.S.end());
    const auto rep = special_case(FieldDescriptor::rationals(), c.m, c.S);
    std::set<mpq_class> survivors;
    for (const auto& x : p_star_cosets(c.m, c.S)) {
      bool local_everywhere = true;
      for (u64 q : aux) local_everywhere = local_everywhere && lth_power_test_local(x, Place::finite(q), c.m);
      if (local_everywhere) survivors.insert(x);
    }
    std::set<mpq_class> allowed{1};
    if (rep.occurs) allowed.insert(rep.a0->a);
    CHECK_MESSAGE(survivors == allowed, "m=", c.m, " |S|=", c.S.size());
  }
  // The Wang pair at m = 8: 1 and 16 survive.
  const auto aux = auxiliary_primes(8, places({2}, true));
  std::size_t n = 0;
  for (const auto& x : p_star_cosets(8, places({2}, true))) {
    bool ok = true;
    for (u64 q : aux) ok = ok && lth_power_test_local(x, Place::finite(q), 8);
    if (ok) {
      CHECK((x == 1 || x == 16));
      ++n;
    }
  }
  CHECK(n == 2);
}

TEST_CASE("build_cycle fixtures") {
  const auto c1 = build_cycle(make_instance(2, {}), {3});
  CHECK(c1.norm() == 24);
  CHECK(c1.real_bit);
  const auto c2 = build_cycle(make_instance(3, {LocalCharacter::unramified(5, 3, 1)}), {7});
  CHECK(c2.norm() == 189);
  CHECK_FALSE(c2.real_bit);
  const auto chi2 = *gw::testing::ramified(2, 5, 8, 0, 1);
  const auto c3 = build_cycle(make_instance(8, {chi2}), {3, 5});
  CHECK(c3.norm() == 1024 * 15);
  CHECK_THROWS_AS(build_cycle(make_instance(3, {LocalCharacter::unramified(5, 3, 1)}), {5}), DomainError);
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(make_instance(6, {}).validate(), ValidationError);
  CHECK_THROWS_AS(make_instance(4, {LocalCharacter::unramified(5, 2, 1)}).validate(), ValidationError);
  CHECK_THROWS_AS(make_instance(3, {LocalCharacter::unramified(5, 3, 1), LocalCharacter::unramified(5, 3, 2)}).validate(),
                  ValidationError);
  auto bad = LocalCharacter::unramified(5, 3, 1);
  bad.conductor_exponent = 1;
  bad.unit_exponents = {1};  // value of order 3 on a generator of order 4
  CHECK_THROWS_AS(make_instance(3, {bad}).validate(), ValidationError);
}

TEST_CASE("construct: fixtures") {
  const auto quad = construct(make_instance(2, {LocalCharacter::unramified(5, 2, 1)}));
  CHECK(quad.conductor() == 3);
  CHECK(quad.exponent_achieved == 2);
  CHECK_FALSE(quad.special_case_flag);

  const auto triv = construct(make_instance(3, {}));
  CHECK(triv.conductor() == 1);
  CHECK(triv.character.is_trivial());

  const auto cubic = construct(make_instance(3, {LocalCharacter::unramified(7, 3, 1)}));
  CHECK(matches(cubic.character, make_instance(3, {LocalCharacter::unramified(7, 3, 1)})));
  CHECK(cubic.character.order() == 3);
  const auto best = oracle_minimal(make_instance(3, {LocalCharacter::unramified(7, 3, 1)}), cubic.conductor());
  CHECK(best.conductor() <= cubic.conductor());
}

TEST_CASE("Wang obstruction: exponent 2m is forced") {
  // Unramified at 2 with chi(2) = zeta_8: chi(16) = zeta_8^4 = -1.
  const auto inst = make_instance(8, {LocalCharacter::unramified(2, 8, 1)});
  CHECK(wang_obstruction(inst) == 4);
  const auto sol = construct(inst);
  CHECK(sol.exponent_achieved == 16);
  CHECK(sol.special_case_flag);
  CHECK(same_character(local_component(sol.character, Place::finite(2)), inst.places[0]));
  CHECK(16 % sol.character.order() == 0);
  CHECK_THROWS_AS(oracle_search(inst, 8, 1, Execution::serial).value(), std::bad_optional_access);
  CHECK_FALSE(oracle_search(inst, 8, 3000).has_value());
  CHECK_THROWS_AS(oracle_minimal(inst, 3000, Execution::parallel, false), NotFoundBelowCap);
  const auto widened = oracle_minimal(inst, sol.conductor());
  CHECK(widened.exponent_achieved == 16);
  CHECK(widened.conductor() <= sol.conductor());

  // Same place set, data with chi(16) = 1: exponent 8 suffices.
  const auto ok = make_instance(8, {LocalCharacter::unramified(2, 8, 2), LocalCharacter::sign(8)});
  CHECK(wang_obstruction(ok) == 0);
  const auto sol8 = construct(ok);
  CHECK(sol8.exponent_achieved == 8);
  CHECK(sol8.special_case_flag);
  CHECK(matches(sol8.character, ok));
}

TEST_CASE("oracle: fixtures and agreement with brute force") {
  const auto quad = make_instance(2, {LocalCharacter::unramified(5, 2, 1)});
  CHECK(oracle_minimal(quad, 100).conductor() == 3);
  CHECK(oracle_minimal(make_instance(9, {}), 10).conductor() == 1);
  CHECK_THROWS_AS(oracle_minimal(make_instance(2, {LocalCharacter::unramified(5, 2, 1)}), 2), NotFoundBelowCap);

  for (u64 m : {2, 3, 4}) {
    for (const auto& inst : gw::testing::instance_matrix(m, places({2, 3, 5}, true), 4)) {
      const auto brute = brute_minimal(inst, m, 200);
      const auto serial = oracle_search(inst, m, 200, Execution::serial);
      const auto parallel = oracle_search(inst, m, 200, Execution::parallel);
      REQUIRE(brute.has_value() == serial.has_value());
      REQUIRE(serial.has_value() == parallel.has_value());
      if (!serial) continue;
      CHECK(serial->modulus() == brute->modulus());
      CHECK(*serial == *parallel);
      CHECK(matches(*serial, inst));
    }
  }
}

TEST_CASE("construct: soundness over a small matrix") {
  for (u64 m : {2, 3, 4, 8, 9}) {
    for (const auto& inst : gw::testing::instance_matrix(m, places({2, 3, 5}, true), 3)) {
      const auto sol = construct(inst);
      CHECK(matches(sol.character, inst));
      CHECK(sol.character.is_primitive());
      CHECK(sol.exponent_achieved % sol.character.order() == 0);
      CHECK(sol.cycle.norm() % sol.conductor() == 0);
      CHECK(gw::testing::conductor_bound_holds(sol.character, sol.exponent_achieved));
      if (sol.exponent_achieved != m) {
        CHECK(sol.special_case_flag);
        CHECK(wang_obstruction(inst) != 0);
      }
    }
  }
}

TEST_CASE("bound report: E1 over Q with one finite prime") {
  struct Case {
    u64 m;
    u64 E1;
  };
  for (const auto& c : std::vector<Case>{{3, 3}, {9, 7}, {5, 5}, {7, 7}, {2, 2}, {4, 5}, {8, 9}, {16, 17}}) {
    const auto inst = make_instance(c.m, {LocalCharacter::unramified(11, c.m, 1)});
    const auto rep = bound_report(inst, construct(inst), 0.1);
    CHECK_MESSAGE(rep.E1 == c.E1, "m=", c.m);
    CHECK(rep.D == 0);
    CHECK(rep.selmer_rank == rep.e);
    CHECK(rep.bpi <= rep.bpv);
    CHECK(rep.tm1_ratio > 0);
  }
  const auto inst = make_instance(8, {LocalCharacter::unramified(11, 8, 1)});
  const auto sol = construct(inst);
  CHECK(bound_report(inst, sol, 0.1).delta == 1);
  CHECK(bound_report(inst, sol, 0.1, true).delta == 0);
  CHECK(bound_report(make_instance(2, {}), construct(make_instance(2, {})), 0.1).delta == 0);
}

TEST_CASE("solve: divisor scan and kernel enumeration find the same conductor") {
  for (u64 m : {2, 3, 4, 8}) {
    for (const auto& inst : gw::testing::instance_matrix(m, places({2, 3, 5}, true), 3)) {
      if (wang_obstruction(inst) != 0) continue;
      const auto cycle = build_cycle(inst, auxiliary_primes(m, inst.S()));
      const auto listed = solve_character_with_exponent(inst, cycle, m);
      const auto scanned = solve_character_with_exponent(inst, cycle, m, 0);
      REQUIRE(listed.has_value());
      REQUIRE(scanned.has_value());
      CHECK(listed->conductor() == scanned->conductor());
      CHECK(matches(scanned->character, inst));
    }
  }
}

TEST_CASE("construct: cycles beyond 64 bits") {
  // Widened to exponent 16 with four finite primes in S: the greedy cycle is huge.
  std::vector<LocalCharacter> data = {LocalCharacter::unramified(2, 8, 1), LocalCharacter::unramified(3, 8, 1),
                                      LocalCharacter::unramified(5, 8, 0), LocalCharacter::unramified(7, 8, 3),
                                      LocalCharacter::sign(8)};
  const auto inst = make_instance(8, data);
  const auto sol = construct(inst);
  CHECK(sol.exponent_achieved == 16);
  CHECK(matches(sol.character, inst));
}
