#pragma once

#include <cstddef>
#include <vector>

#include "gw/arith.hpp"

namespace gw {

/// (Z/p^k)^x with its canonical cyclic generators: the least primitive root
/// for odd p; (-1) for 4; (-1, 5) for 2^k, k >= 3; nothing for 1 and 2.
struct UnitGroupComponent {
  u64 prime = 0;
  int exponent = 0;
  u64 modulus = 1;
  std::vector<u64> generators;  // residues mod p^k
  std::vector<u64> orders;
};

UnitGroupComponent prime_power_unit_group(u64 p, int k);

/// Exponents of x (a unit mod p^k) on the component's generators.
std::vector<u64> component_dlog(const UnitGroupComponent& c, u64 x);

/// Least g that generates (Z/p^k)^x, p odd.
u64 least_primitive_root(u64 p, int k);

/// Canonical CRT-split structure of (Z/NZ)^x.
class UnitGroupStructure {
 public:
  UnitGroupStructure() = default;
  explicit UnitGroupStructure(const FactoredInteger& modulus);

  u64 modulus() const { return modulus_; }
  const FactoredInteger& factorization() const { return factorization_; }
  const std::vector<u64>& generators() const { return generators_; }
  const std::vector<u64>& orders() const { return orders_; }
  std::size_t rank() const { return generators_.size(); }

  const std::vector<UnitGroupComponent>& components() const { return components_; }
  /// Index of the first generator belonging to components()[i].
  std::size_t first_generator(std::size_t component) const { return offsets_[component]; }
  /// Index of the component for prime p, or npos.
  std::size_t component_index(u64 p) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  u64 order() const;      // phi(N)
  u64 exponent() const;   // Carmichael lambda(N)

  /// Exponent vector of x; throws NonUnitError if gcd(x, N) != 1.
  std::vector<u64> dlog(u64 x) const;
  /// prod g_i^{e_i} mod N.
  u64 evaluate(const std::vector<u64>& exponents) const;

 private:
  u64 modulus_ = 1;
  FactoredInteger factorization_;
  std::vector<UnitGroupComponent> components_;
  std::vector<std::size_t> offsets_;
  std::vector<u64> generators_;
  std::vector<u64> orders_;
};

UnitGroupStructure unit_group(u64 n);
std::vector<u64> dlog_units(u64 n, u64 x);

/// Exponent vectors of every residue mod N, precomputed once. Non-units map
/// to an empty marker. Intended for repeated character evaluation.
class DlogTable {
 public:
  explicit DlogTable(const UnitGroupStructure& group);
  bool is_unit(u64 x) const { return unit_[x % group_.modulus()]; }
  const u64* exponents(u64 x) const { return table_.data() + (x % group_.modulus()) * width_; }
  std::size_t width() const { return width_; }
  const UnitGroupStructure& group() const { return group_; }

 private:
  UnitGroupStructure group_;
  std::size_t width_;
  std::vector<u64> table_;
  std::vector<bool> unit_;
};

}  // namespace gw
