#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "gw/characters.hpp"
#include "gw/execution.hpp"
#include "gw/wang.hpp"

namespace gw {

/// Prescribed local characters chi^v (all with exponent modulus m) at the
/// places of S, over K = Q.
struct GrunwaldInstance {
  FieldDescriptor field;
  u64 m = 2;
  std::vector<LocalCharacter> places;

  /// Places of S in canonical order (finite by prime, then infinity).
  std::vector<Place> S() const;
  const LocalCharacter* prescribed(const Place& v) const;
  /// N_S: product of the finite primes of S.
  u64 norm_S() const;
  /// Throws ValidationError naming the offending entry.
  void validate() const;
  /// Same data viewed with a larger exponent modulus (m must divide new_m).
  GrunwaldInstance rescaled(u64 new_m) const;
};

struct GrunwaldSolution {
  DirichletCharacter character;  // primitive
  u64 exponent_achieved = 0;     // m, or 2m in the obstructed special case
  bool special_case_flag = false;
  std::vector<u64> aux_primes;
  CycleValue cycle;

  u64 conductor() const { return character.modulus(); }
};

/// Generators of P*(m,S)/Q^{xm}: -1 when m is even, then the finite primes of S.
std::vector<mpq_class> p_star_basis(u64 m, const std::vector<Place>& S);

/// Every coset representative (-1)^a prod p^{b_p} of P*(m,S)/Q^{xm}, with
/// 0 <= b_p < m. Throws RangeError beyond 2^22 cosets.
std::vector<mpq_class> p_star_cosets(u64 m, const std::vector<Place>& S);

/// Primes outside S at which the local m-th power tests cut P*(m,S)/Q^{xm}
/// down to {1}, or to {1, a0} when the special case occurs. Greedy in
/// increasing q (q not dividing m); for l = 2, r >= 3 one more prime is
/// appended: 2 itself when 2 is not in S, otherwise the least q = +-3 mod 8.
std::vector<u64> auxiliary_primes(u64 m, const std::vector<Place>& S, u64 prime_cap = 1'000'000);

/// c0 * c1 * c2: conductors of the prescribed data, l^{r+2}, and the auxiliary primes.
CycleValue build_cycle(const GrunwaldInstance& instance, const std::vector<u64>& aux);

/// Sum over v in S of chi^v(a0) mod m; zero unless the special case occurs.
u64 wang_obstruction(const GrunwaldInstance& instance);

/// Characters mod the finite part of `cycle` with the prescribed local
/// components and order dividing instance.m; the least conductor, ties broken
/// by the lexicographically least exponent vector. If none exists and the
/// instance is Wang-obstructed, retries with exponent 2m. Throws
/// InternalContradiction when no solution exists at all.
GrunwaldSolution solve_character(const GrunwaldInstance& instance, const CycleValue& cycle);

/// Same, exponent fixed; nullopt when the system has no solution. Above
/// `enumeration_limit` solutions, the least conductor is found by scanning the
/// divisors of the cycle upward instead (ties then follow the oracle's order).
std::optional<GrunwaldSolution> solve_character_with_exponent(const GrunwaldInstance& instance,
                                                              const CycleValue& cycle, u64 exponent,
                                                              u64 enumeration_limit = u64{1} << 20);

/// p_star_basis -> auxiliary_primes -> build_cycle -> solve_character.
GrunwaldSolution construct(const GrunwaldInstance& instance);

/// Least conductor N <= cap of a primitive character of order dividing
/// `exponent` with the prescribed local components (lexicographically least
/// exponent vector at that N). Both execution paths return the same result.
std::optional<DirichletCharacter> oracle_search(const GrunwaldInstance& instance, u64 exponent, u64 cap,
                                                Execution exec = Execution::parallel);

/// Exhaustive search with exponent m, then 2m if `allow_widening` and the
/// special case occurs. Throws NotFoundBelowCap.
GrunwaldSolution oracle_minimal(const GrunwaldInstance& instance, u64 cap, Execution exec = Execution::parallel,
                                bool allow_widening = true);

struct BoundReport {
  int e = 0;
  int D = 0;
  int delta = 0;
  int delta_prime = 0;
  u64 E1 = 0;
  int selmer_rank = 0;
  double bound_TM1_shape = 0;     // l^r |S u S_inf| log(N_S l^r)
  double bound_TM2_exponent = 0;  // E1 (1/2 + eps)
  double bound_TM2_log_shape = 0;  // E1 (1/2 + eps) log N_S + sum log N(chi^v)
  double bound_TM3_log_shape = 0;  // 2 (e + delta) log log(N_S l) + sum log N(chi^v)
  double achieved_log_conductor = 0;
  double tm1_ratio = 0;  // achieved / TM1 shape
  u64 bpi = 0;           // N(chi) of the solution
  u64 bpv = 0;           // norm of the solution's cycle (0 if unknown)
};

/// With `delta_refinement`, delta drops to 0 when l is not in S (the
/// cyclic case with S_l outside S, and the non-cyclic case with S0 outside S).
BoundReport bound_report(const GrunwaldInstance& instance, const GrunwaldSolution& solution, double epsilon,
                         bool delta_refinement = false);

}  // namespace gw
