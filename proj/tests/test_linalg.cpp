#include <random>
#include <set>

#include "doctest.h"
#include "gw/errors.hpp"
#include "gw/linalg.hpp"

using namespace gw;

namespace {

using Vec = std::vector<u64>;

bool satisfies(const std::vector<Vec>& A, const Vec& b, const Vec& x, u64 M) {
  for (std::size_t i = 0; i < A.size(); ++i) {
    u64 s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s = (s + A[i][j] * x[j]) % M;
    if (s != b[i] % M) return false;
  }
  return true;
}

std::set<Vec> brute_solutions(const std::vector<Vec>& A, const Vec& b, std::size_t cols, u64 M) {
  std::set<Vec> out;
  Vec x(cols, 0);
  while (true) {
    if (satisfies(A, b, x, M)) out.insert(x);
    std::size_t j = 0;
    for (; j < cols; ++j) {
      if (++x[j] < M) break;
      x[j] = 0;
    }
    if (j == cols) break;
  }
  return out;
}

std::set<Vec> expand(const ModularSolution& s, u64 M) {
  std::set<Vec> out;
  Vec coef(s.kernel.size(), 0);
  while (true) {
    Vec x = s.particular;
    for (std::size_t i = 0; i < coef.size(); ++i) {
      for (std::size_t j = 0; j < x.size(); ++j) x[j] = (x[j] + coef[i] * s.kernel[i][j]) % M;
    }
    out.insert(x);
    std::size_t i = 0;
    for (; i < coef.size(); ++i) {
      if (++coef[i] < s.kernel_orders[i]) break;
      coef[i] = 0;
    }
    if (i == coef.size()) break;
  }
  return out;
}

}  // namespace

TEST_CASE("solve mod prime powers agrees with brute force") {
  std::mt19937_64 rng(7);
  for (u64 M : {2, 4, 8, 9, 27, 5, 16}) {
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t cols = 1 + rng() % 3;
      const std::size_t rows = rng() % 4;
      std::vector<Vec> A(rows, Vec(cols));
      Vec b(rows);
      for (auto& r : A)
        for (auto& x : r) x = rng() % M;
      for (auto& x : b) x = rng() % M;
      // Make about half the systems consistent by construction.
      if (trial % 2 == 0) {
        Vec x0(cols);
        for (auto& x : x0) x = rng() % M;
        for (std::size_t i = 0; i < rows; ++i) {
          b[i] = 0;
          for (std::size_t j = 0; j < cols; ++j) b[i] = (b[i] + A[i][j] * x0[j]) % M;
        }
      }
      const auto want = brute_solutions(A, b, cols, M);
      const auto got = solve_mod_prime_power(A, b, cols, M);
      if (want.empty()) {
        CHECK_FALSE(got.has_value());
        continue;
      }
      REQUIRE(got.has_value());
      CHECK(got->count(1'000'000) == want.size());
      CHECK(expand(*got, M) == want);
    }
  }
}

TEST_CASE("solve mod prime powers: edge cases") {
  // 2x = 1 mod 4 has no solution.
  CHECK_FALSE(solve_mod_prime_power({{2}}, {1}, 1, 4).has_value());
  // No rows: everything is a solution.
  const auto all = solve_mod_prime_power({}, {}, 2, 9);
  REQUIRE(all.has_value());
  CHECK(all->count(1000) == 81);
  CHECK(all->count(10) == 11);
  CHECK_THROWS_AS(solve_mod_prime_power({{1}}, {0}, 1, 12), DomainError);
}
