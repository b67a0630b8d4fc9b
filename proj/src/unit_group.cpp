#include "gw/unit_group.hpp"

#include <cmath>
#include <unordered_map>

#include "gw/errors.hpp"

namespace gw {

namespace {

// x with g^x = h in the cyclic group of the given order mod n.
u64 bsgs(u64 g, u64 h, u64 order, u64 n) {
  if (order == 1) return 0;
  const u64 m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(order))));
  std::unordered_map<u64, u64> baby;
  baby.reserve(m * 2);
  u64 cur = 1;
  for (u64 j = 0; j < m; ++j) {
    baby.emplace(cur, j);
    cur = mulmod(cur, g, n);
  }
  const u64 giant = invmod(powmod(g, m, n), n);
  u64 gamma = h % n;
  for (u64 i = 0; i <= m; ++i) {
    auto it = baby.find(gamma);
    if (it != baby.end()) return (i * m + it->second) % order;
    gamma = mulmod(gamma, giant, n);
  }
  throw InternalContradiction("discrete log not found: element outside generated subgroup");
}

bool is_primitive_root_mod_p(u64 g, u64 p, const FactoredInteger& pm1) {
  for (const auto& q : pm1.factors()) {
    if (powmod(g, (p - 1) / q.prime, p) == 1) return false;
  }
  return true;
}

u64 crt_lift(u64 residue, u64 part, u64 modulus) {
  // x = residue mod part, x = 1 mod modulus/part.
  const u64 rest = modulus / part;
  if (rest == 1) return residue % part;
  const u64 inv_rest = invmod(rest % part, part);
  const u64 inv_part = invmod(part % rest, rest);
  const u128 x = static_cast<u128>(rest) * mulmod(residue % part, inv_rest, part) +
                 static_cast<u128>(part) * inv_part;
  return static_cast<u64>(x % modulus);
}

}  // namespace

u64 least_primitive_root(u64 p, int k) {
  if (p == 2 || k < 1) throw DomainError("least_primitive_root requires an odd prime power");
  const auto pm1 = factor(p - 1);
  const u64 p2 = p * p;
  for (u64 g = 2;; ++g) {
    if (g % p == 0) continue;
    if (!is_primitive_root_mod_p(g, p, pm1)) continue;
    if (k >= 2 && powmod(g, p - 1, p2) == 1) continue;
    return g;
  }
}

UnitGroupComponent prime_power_unit_group(u64 p, int k) {
  UnitGroupComponent c;
  c.prime = p;
  c.exponent = k;
  c.modulus = k > 0 ? ipow(p, static_cast<unsigned>(k)) : 1;
  if (k <= 0) return c;
  if (p == 2) {
    if (k == 2) {
      c.generators = {3};
      c.orders = {2};
    } else if (k >= 3) {
      c.generators = {c.modulus - 1, 5};
      c.orders = {2, c.modulus / 4};
    }
    return c;
  }
  c.generators = {least_primitive_root(p, k) % c.modulus};
  c.orders = {c.modulus / p * (p - 1)};
  return c;
}

std::vector<u64> component_dlog(const UnitGroupComponent& c, u64 x) {
  x %= c.modulus;
  if (c.modulus > 1 && x % c.prime == 0)
    throw NonUnitError(std::to_string(x) + " is not a unit mod " + std::to_string(c.modulus));
  if (c.generators.empty()) return {};
  if (c.prime == 2) {
    u64 sign = (x % 4 == 3) ? 1 : 0;
    if (c.exponent == 2) return {sign};
    u64 y = sign ? c.modulus - x : x;
    return {sign, bsgs(5, y, c.orders[1], c.modulus)};
  }
  return {bsgs(c.generators[0], x, c.orders[0], c.modulus)};
}

UnitGroupStructure::UnitGroupStructure(const FactoredInteger& modulus)
    : modulus_(modulus.value()), factorization_(modulus) {
  for (const auto& pp : factorization_.factors()) {
    auto c = prime_power_unit_group(pp.prime, pp.exponent);
    offsets_.push_back(generators_.size());
    for (std::size_t i = 0; i < c.generators.size(); ++i) {
      generators_.push_back(crt_lift(c.generators[i], c.modulus, modulus_));
      orders_.push_back(c.orders[i]);
    }
    components_.push_back(std::move(c));
  }
}

std::size_t UnitGroupStructure::component_index(u64 p) const {
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].prime == p) return i;
  }
  return npos;
}

u64 UnitGroupStructure::order() const {
  u64 n = 1;
  for (u64 o : orders_) n *= o;
  return n;
}

u64 UnitGroupStructure::exponent() const {
  u64 n = 1;
  for (u64 o : orders_) n = lcm(n, o);
  return n;
}

std::vector<u64> UnitGroupStructure::dlog(u64 x) const {
  if (gcd(x % modulus_, modulus_) != 1 && modulus_ != 1)
    throw NonUnitError(std::to_string(x) + " is not a unit mod " + std::to_string(modulus_));
  std::vector<u64> out;
  out.reserve(generators_.size());
  for (const auto& c : components_) {
    auto local = component_dlog(c, x % c.modulus);
    out.insert(out.end(), local.begin(), local.end());
  }
  return out;
}

u64 UnitGroupStructure::evaluate(const std::vector<u64>& exponents) const {
  u64 x = 1 % modulus_;
  for (std::size_t i = 0; i < generators_.size(); ++i)
    x = mulmod(x, powmod(generators_[i], exponents[i], modulus_), modulus_);
  return x;
}

UnitGroupStructure unit_group(u64 n) {
  if (n == 0) throw DomainError("unit_group requires N >= 1");
  return UnitGroupStructure(factor(n));
}

std::vector<u64> dlog_units(u64 n, u64 x) { return unit_group(n).dlog(x); }

DlogTable::DlogTable(const UnitGroupStructure& group)
    : group_(group), width_(group.rank()) {
  const u64 n = group_.modulus();
  table_.assign(n * width_, 0);
  unit_.assign(n, false);
  // Odometer walk over all exponent vectors; stepping digit i multiplies by g_i,
  // and since g_i^{o_i} = 1 a wrap-around also costs one multiplication.
  std::vector<u64> digits(width_, 0);
  u64 x = 1 % n;
  const u64 total = group_.order();
  for (u64 step = 0; step < total; ++step) {
    unit_[x] = true;
    std::copy(digits.begin(), digits.end(), table_.begin() + static_cast<std::ptrdiff_t>(x * width_));
    for (std::size_t i = 0; i < width_; ++i) {
      x = mulmod(x, group_.generators()[i], n);
      if (++digits[i] < group_.orders()[i]) break;
      digits[i] = 0;
    }
  }
  if (n == 1) unit_[0] = true;
}

}  // namespace gw
