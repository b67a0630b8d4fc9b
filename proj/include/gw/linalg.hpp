#pragma once

#include <optional>
#include <vector>

#include "gw/arith.hpp"

namespace gw {

/// Solution set of A x = b over Z/l^R: x0 + span of `kernel`, where kernel[i]
/// has additive order kernel_orders[i]. The parametrization is a bijection
/// onto the solution set: coefficients range over [0, kernel_orders[i]).
struct ModularSolution {
  std::vector<u64> particular;
  std::vector<std::vector<u64>> kernel;
  std::vector<u64> kernel_orders;

  /// Number of solutions, saturating at `limit + 1`.
  u64 count(u64 limit) const;
};

/// Smith-form elimination over the chain ring Z/l^R (pivot = least l-adic
/// valuation). `modulus` must be a prime power; rows of A have `cols` entries.
/// Returns nullopt when the system is inconsistent.
std::optional<ModularSolution> solve_mod_prime_power(std::vector<std::vector<u64>> A, std::vector<u64> b,
                                                     std::size_t cols, u64 modulus);

}  // namespace gw
