#include "gw/powres.hpp"

#include "gw/errors.hpp"

namespace gw {

namespace {

void check_primes(u64 p, u64 l) {
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  if (!is_prime(l)) throw DomainError("l = " + std::to_string(l) + " is not prime");
}

// Index of a generator on which p's exponent is not divisible by gcd(l, order), if any.
std::optional<std::size_t> obstruction(const UnitGroupStructure& G, const std::vector<u64>& d, u64 l) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] % gcd(l, G.orders()[i]) != 0) return i;
  }
  return std::nullopt;
}

}  // namespace

bool is_lth_power_mod(u64 p, u64 l, u64 N) {
  if (gcd(p, N) != 1) throw NonUnitError(std::to_string(p) + " is not a unit mod " + std::to_string(N));
  const auto G = unit_group(N);
  return !obstruction(G, G.dlog(p % N), l).has_value();
}

PowerResidueAnswer least_non_lth_power_modulus(u64 p, u64 l, std::optional<int> r, u64 cap) {
  check_primes(p, l);
  if (r && *r < 1) throw DomainError("r must be positive");
  const u64 lr = r ? ipow(l, static_cast<unsigned>(*r)) : 1;
  for (u64 N = 2; N <= cap; ++N) {
    if (N % p == 0) continue;
    const auto G = unit_group(N);
    if (G.order() % lr != 0) continue;
    const auto d = G.dlog(p % N);
    const auto i = obstruction(G, d, l);
    if (!i) continue;
    PowerResidueAnswer ans;
    ans.modulus = N;
    ans.certificate.phi = G.order();
    u64 kernel = 1;  // |U[l]| = prod gcd(l, o_i)
    for (u64 o : G.orders()) kernel *= gcd(l, o);
    ans.certificate.lth_power_subgroup = G.order() / kernel;
    ans.certificate.p_dlog = d;
    ans.certificate.witness_generator = *i;
    return ans;
  }
  throw SearchCapError("powres: no modulus below " + std::to_string(cap));
}

std::optional<DirichletCharacter> detecting_character(u64 p, u64 l, u64 N) {
  check_primes(p, l);
  if (gcd(p, N) != 1) return std::nullopt;
  const auto G = unit_group(N);
  const auto i = obstruction(G, G.dlog(p % N), l);
  if (!i) return std::nullopt;
  // l divides the order of generator i, so the value zeta_l on it is well defined.
  std::vector<u64> e(G.rank(), 0);
  e[*i] = 1;
  return DirichletCharacter(G, e, l);
}

GrunwaldInstance powres_instance(u64 p, u64 l) {
  check_primes(p, l);
  GrunwaldInstance inst;
  inst.m = l;
  inst.places = {LocalCharacter::unramified(p, l, 1)};
  return inst;
}

}  // namespace gw
