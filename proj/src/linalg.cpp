#include "gw/linalg.hpp"

#include "gw/errors.hpp"

namespace gw {

namespace {

struct Ring {
  u64 l = 0;
  u64 M = 1;

  u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % M); }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + (M - b); }
  u64 add(u64 a, u64 b) const { return static_cast<u64>((static_cast<u128>(a) + b) % M); }
  int val(u64 a) const {
    if (a == 0) return -1;
    int v = 0;
    while (a % l == 0) {
      a /= l;
      ++v;
    }
    return v;
  }
};

}  // namespace

u64 ModularSolution::count(u64 limit) const {
  u64 n = 1;
  for (u64 o : kernel_orders) {
    if (o != 0 && n > limit / o) return limit + 1;
    n *= o;
  }
  return n;
}

std::optional<ModularSolution> solve_mod_prime_power(std::vector<std::vector<u64>> A, std::vector<u64> b,
                                                     std::size_t cols, u64 modulus) {
  const auto [l, R] = prime_power_decomposition(modulus);
  if (l == 0) throw DomainError("linear solve needs a prime-power modulus, got " + std::to_string(modulus));
  const Ring ring{l, modulus};
  const std::size_t rows = A.size();
  if (b.size() != rows) throw DomainError("right-hand side length mismatch");
  for (auto& row : A) {
    if (row.size() != cols) throw DomainError("matrix row length mismatch");
    for (auto& x : row) x %= modulus;
  }
  for (auto& x : b) x %= modulus;

  // Column operations are tracked in V (x = V y); row operations act on b directly.
  std::vector<std::vector<u64>> V(cols, std::vector<u64>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) V[i][i] = 1;
  std::vector<int> pivot_val;

  std::size_t t = 0;
  for (; t < rows && t < cols; ++t) {
    int best = -1;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        const int v = ring.val(A[i][j]);
        if (v >= 0 && (best < 0 || v < best)) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (best < 0) break;
    std::swap(A[t], A[bi]);
    std::swap(b[t], b[bi]);
    if (bj != t) {
      for (auto& row : A) std::swap(row[t], row[bj]);
      for (auto& row : V) std::swap(row[t], row[bj]);
    }
    // Normalize the pivot to l^best.
    u64 lv = 1;
    for (int k = 0; k < best; ++k) lv *= l;
    const u64 unit = A[t][t] / lv;
    const u64 inv = invmod(unit % modulus, modulus);
    for (auto& x : A[t]) x = ring.mul(x, inv);
    b[t] = ring.mul(b[t], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == t || A[i][t] == 0) continue;
      const u64 f = A[i][t] / lv;  // exact: valuation >= best
      for (std::size_t j = t; j < cols; ++j) A[i][j] = ring.sub(A[i][j], ring.mul(f, A[t][j]));
      b[i] = ring.sub(b[i], ring.mul(f, b[t]));
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (A[t][j] == 0) continue;
      const u64 f = A[t][j] / lv;
      for (std::size_t i = 0; i < rows; ++i) A[i][j] = ring.sub(A[i][j], ring.mul(f, A[i][t]));
      for (std::size_t i = 0; i < cols; ++i) V[i][j] = ring.sub(V[i][j], ring.mul(f, V[i][t]));
    }
    pivot_val.push_back(best);
  }
  const std::size_t rank = t;
  for (std::size_t i = rank; i < rows; ++i) {
    if (b[i] != 0) return std::nullopt;
  }

  std::vector<u64> y(cols, 0);
  ModularSolution sol;
  auto column = [&](std::size_t j, u64 scale) {
    std::vector<u64> c(cols);
    for (std::size_t i = 0; i < cols; ++i) c[i] = ring.mul(V[i][j], scale);
    return c;
  };
  for (std::size_t i = 0; i < rank; ++i) {
    u64 lv = 1;
    for (int k = 0; k < pivot_val[i]; ++k) lv *= l;
    if (b[i] % lv != 0) return std::nullopt;
    y[i] = b[i] / lv;
    if (pivot_val[i] > 0) {
      sol.kernel.push_back(column(i, modulus / lv));
      sol.kernel_orders.push_back(lv);
    }
  }
  for (std::size_t j = rank; j < cols; ++j) {
    sol.kernel.push_back(column(j, 1));
    sol.kernel_orders.push_back(modulus);
  }
  sol.particular.assign(cols, 0);
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = 0; j < cols; ++j) sol.particular[i] = ring.add(sol.particular[i], ring.mul(V[i][j], y[j]));
  }
  return sol;
}

}  // namespace gw
