#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gw/arith.hpp"
#include "gw/local_power.hpp"
#include "gw/unit_group.hpp"

namespace gw {

/// Character values are stored as exponents of zeta_m: a residue e mod m
/// stands for zeta_m^e.

/// Formal cycle: a finite part and a bit for the real place.
struct CycleValue {
  FactoredInteger finite_part;
  bool real_bit = false;

  /// Norm of the cycle; the real place contributes 1.
  u64 norm() const { return finite_part.value(); }
  double log_norm() const { return finite_part.log(); }
  std::string to_string() const;
  friend bool operator==(const CycleValue&, const CycleValue&) = default;
};

/// Finite-order character of Q_p^x or R^x.
///
/// Finite place: `unit_exponents` are the values on the canonical generators of
/// (Z/p^k)^x, k = `conductor_exponent` (minimal), and `uniformizer_exponent` is
/// the value on p. Real place: only `sign_exponent` (0 or 1) is meaningful and
/// `conductor_exponent` equals it.
struct LocalCharacter {
  Place place;
  u64 exponent_modulus = 1;
  int conductor_exponent = 0;
  std::vector<u64> unit_exponents;
  u64 uniformizer_exponent = 0;
  u64 sign_exponent = 0;

  static LocalCharacter trivial(const Place& v, u64 m);
  /// Unramified character of Q_p^x with the given value on p.
  static LocalCharacter unramified(u64 p, u64 m, u64 uniformizer_exponent);
  static LocalCharacter sign(u64 m);

  /// Throws MalformedCharacterError if an invariant is violated.
  void validate() const;

  bool is_trivial() const;
  bool is_ramified() const { return conductor_exponent > 0; }
  u64 order() const;
  /// Conductor cycle: p^k or the real place.
  CycleValue conductor() const;
  /// Same character written with exponent modulus new_m (m must divide new_m).
  LocalCharacter rescaled(u64 new_m) const;
  std::string to_string() const;
};

/// Equality as characters, across possibly different exponent moduli.
bool same_character(const LocalCharacter& a, const LocalCharacter& b);

/// zeta_m-exponent of chi_v(x); x nonzero.
u64 evaluate_local(const LocalCharacter& chi, const mpq_class& x);

/// Dirichlet character mod N of exponent m, by its values on the canonical
/// generators of (Z/NZ)^x. The defining modulus is kept; primitive() and
/// conductor() reduce it.
class DirichletCharacter {
 public:
  DirichletCharacter() : DirichletCharacter(1, {}, 1) {}
  DirichletCharacter(u64 modulus, std::vector<u64> exponents, u64 exponent_modulus);
  DirichletCharacter(UnitGroupStructure group, std::vector<u64> exponents, u64 exponent_modulus);

  static DirichletCharacter trivial(u64 modulus = 1, u64 exponent_modulus = 1);

  u64 modulus() const { return group_.modulus(); }
  u64 exponent_modulus() const { return m_; }
  const std::vector<u64>& exponents() const { return exponents_; }
  const UnitGroupStructure& group() const { return group_; }

  /// zeta_m-exponent of chi(n), or nullopt (the zero marker) if gcd(n, N) > 1.
  std::optional<u64> evaluate(i64 n) const;
  std::optional<u64> evaluate(const DlogTable& table, u64 n) const;

  bool is_trivial() const;
  u64 order() const;
  DirichletCharacter power(u64 k) const;
  DirichletCharacter rescaled(u64 new_m) const;
  /// The primitive character inducing this one.
  DirichletCharacter primitive() const;
  bool is_primitive() const;
  CycleValue conductor() const;
  /// Sign exponent: 1 iff chi(-1) = -1.
  u64 parity() const;

  std::string to_string() const;
  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.modulus() == b.modulus() && a.m_ == b.m_ && a.exponents_ == b.exponents_;
  }

 private:
  UnitGroupStructure group_;
  u64 m_;
  std::vector<u64> exponents_;
};

DirichletCharacter make_dirichlet(u64 modulus, std::vector<u64> exponents, u64 exponent_modulus);

/// Conductor exponent at one prime-power component, given the exponents of
/// the character on that component's generators.
int component_conductor_exponent(const UnitGroupComponent& c, const u64* exponents, u64 m);

/// Exponent vectors of the primitive characters of (Z/p^k)^x (k = c.exponent)
/// with order dividing m, in lexicographic order. k = 0 yields the trivial one.
std::vector<std::vector<u64>> primitive_component_characters(const UnitGroupComponent& c, u64 m);

/// Values of a component character (mod p^K) on the generators of (Z/p^k)^x, k <= K.
std::vector<u64> restrict_component(const UnitGroupComponent& big, const u64* exponents, u64 m, int k);

/// Idelic local component at v. At p | N: units get chi_(p)^{-1}, the
/// uniformizer gets prod_{q != p} chi_(q)(p). At p not dividing N: unramified
/// with value chi(p). At the real place: sign iff chi(-1) = -1.
LocalCharacter local_component(const DirichletCharacter& chi, const Place& v);

/// Sum over all relevant places of chi_v(x) is 0 mod m.
bool verify_product_formula(const DirichletCharacter& chi, const mpq_class& x);

/// prod_{i < ord(chi)} N(conductor(chi^i)): the absolute discriminant of the
/// abelian field cut out by chi.
FactoredInteger field_discriminant(const DirichletCharacter& chi);

}  // namespace gw
