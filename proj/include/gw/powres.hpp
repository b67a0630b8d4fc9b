#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gw/characters.hpp"
#include "gw/grunwald.hpp"

namespace gw {

/// Why p is not an l-th power mod N.
struct PowerResidueCertificate {
  u64 phi = 0;                  // |(Z/N)^x|
  u64 lth_power_subgroup = 0;   // |((Z/N)^x)^l|
  std::vector<u64> p_dlog;      // exponents of p on the canonical generators
  std::size_t witness_generator = 0;  // a generator whose exponent is not divisible by gcd(l, order)
};

struct PowerResidueAnswer {
  u64 modulus = 0;
  PowerResidueCertificate certificate;
};

/// p a unit mod N and an l-th power there (l prime).
bool is_lth_power_mod(u64 p, u64 l, u64 N);

/// Least N >= 2 coprime to p with p not an l-th power mod N; with `r`, also l^r | phi(N).
PowerResidueAnswer least_non_lth_power_modulus(u64 p, u64 l, std::optional<int> r = std::nullopt,
                                               u64 cap = 100'000'000);

/// A character mod N of order l with chi(p) != 1, when p is not an l-th power mod N.
std::optional<DirichletCharacter> detecting_character(u64 p, u64 l, u64 N);

/// m = l, S = {p}, unramified at p with chi(p) = zeta_l: its minimal conductor
/// is the least N with p not an l-th power mod N.
GrunwaldInstance powres_instance(u64 p, u64 l);

}  // namespace gw
