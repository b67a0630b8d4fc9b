#include "gw/characters.hpp"

#include <set>
#include <sstream>

#include "gw/errors.hpp"

namespace gw {

namespace {

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 neg_mod(u64 a, u64 m) { return a == 0 ? 0 : m - a; }

u64 order_of_exponent(u64 e, u64 m) { return m / gcd(e % m, m); }

std::string join(const std::vector<u64>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

// Primes dividing a nonzero integer; small inputs only.
void collect_primes(const mpz_class& n, std::set<u64>& out) {
  mpz_class a = abs(n);
  if (a <= 1) return;
  for (const auto& [p, e] : factor_wide(a).factors) {
    if (!p.fits_ulong_p()) throw RangeError("prime factor exceeds 64 bits");
    out.insert(p.get_ui());
  }
}

}  // namespace

std::string CycleValue::to_string() const {
  return finite_part.to_string() + (real_bit ? "*infinity" : "");
}

LocalCharacter LocalCharacter::trivial(const Place& v, u64 m) {
  LocalCharacter chi;
  chi.place = v;
  chi.exponent_modulus = m;
  return chi;
}

LocalCharacter LocalCharacter::unramified(u64 p, u64 m, u64 uniformizer_exponent) {
  LocalCharacter chi = trivial(Place::finite(p), m);
  chi.uniformizer_exponent = uniformizer_exponent % m;
  return chi;
}

LocalCharacter LocalCharacter::sign(u64 m) {
  LocalCharacter chi = trivial(Place::infinity(), m);
  chi.sign_exponent = 1;
  chi.conductor_exponent = 1;
  return chi;
}

void LocalCharacter::validate() const {
  const u64 m = exponent_modulus;
  if (m == 0) throw MalformedCharacterError("exponent modulus must be positive");
  if (place.is_real()) {
    if (sign_exponent > 1) throw MalformedCharacterError("sign_exponent must be 0 or 1");
    if (conductor_exponent != static_cast<int>(sign_exponent))
      throw MalformedCharacterError("real place: conductor_exponent must equal sign_exponent");
    if (!unit_exponents.empty() || uniformizer_exponent != 0)
      throw MalformedCharacterError("real place carries only a sign");
    if (sign_exponent == 1 && m % 2 != 0)
      throw MalformedCharacterError("sign character has order 2, which does not divide m=" + std::to_string(m));
    return;
  }
  if (!is_prime(place.prime)) throw MalformedCharacterError("place is not a prime");
  if (sign_exponent != 0) throw MalformedCharacterError("finite place has no sign_exponent");
  if (conductor_exponent < 0) throw MalformedCharacterError("conductor_exponent must be >= 0");
  if (place.prime == 2 && conductor_exponent == 1)
    throw MalformedCharacterError("conductor exponent 1 is impossible at 2");
  if (uniformizer_exponent >= m) throw MalformedCharacterError("uniformizer_exponent must be < m");
  const auto c = prime_power_unit_group(place.prime, conductor_exponent);
  if (unit_exponents.size() != c.generators.size())
    throw MalformedCharacterError("unit_exponents needs " + std::to_string(c.generators.size()) +
                                  " entries for conductor " + std::to_string(place.prime) + "^" +
                                  std::to_string(conductor_exponent));
  for (std::size_t i = 0; i < unit_exponents.size(); ++i) {
    if (unit_exponents[i] >= m) throw MalformedCharacterError("unit exponent must be < m");
    if (mul_mod(unit_exponents[i], c.orders[i], m) != 0)
      throw MalformedCharacterError("unit exponent " + std::to_string(unit_exponents[i]) +
                                    " incompatible with generator order " + std::to_string(c.orders[i]));
  }
  if (component_conductor_exponent(c, unit_exponents.data(), m) != conductor_exponent)
    throw MalformedCharacterError("conductor_exponent is not minimal for the given unit exponents");
}

bool LocalCharacter::is_trivial() const {
  if (place.is_real()) return sign_exponent == 0;
  if (uniformizer_exponent != 0) return false;
  for (u64 e : unit_exponents) {
    if (e != 0) return false;
  }
  return true;
}

u64 LocalCharacter::order() const {
  if (place.is_real()) return sign_exponent ? 2 : 1;
  u64 o = order_of_exponent(uniformizer_exponent, exponent_modulus);
  for (u64 e : unit_exponents) o = lcm(o, order_of_exponent(e, exponent_modulus));
  return o;
}

CycleValue LocalCharacter::conductor() const {
  if (place.is_real()) return CycleValue{FactoredInteger{}, sign_exponent == 1};
  return CycleValue{FactoredInteger({{place.prime, conductor_exponent}}), false};
}

LocalCharacter LocalCharacter::rescaled(u64 new_m) const {
  if (new_m % exponent_modulus != 0)
    throw DomainError("cannot rescale exponent modulus " + std::to_string(exponent_modulus) + " to " +
                      std::to_string(new_m));
  const u64 f = new_m / exponent_modulus;
  LocalCharacter out = *this;
  out.exponent_modulus = new_m;
  for (auto& e : out.unit_exponents) e *= f;
  out.uniformizer_exponent *= f;
  return out;
}

std::string LocalCharacter::to_string() const {
  std::ostringstream os;
  os << "local(" << place.to_string() << ", m=" << exponent_modulus;
  if (place.is_real()) {
    os << ", sign=" << sign_exponent << ")";
  } else {
    os << ", k=" << conductor_exponent << ", units=" << join(unit_exponents)
       << ", uniformizer=" << uniformizer_exponent << ")";
  }
  return os.str();
}

bool same_character(const LocalCharacter& a, const LocalCharacter& b) {
  if (!(a.place == b.place)) return false;
  if (a.conductor_exponent != b.conductor_exponent) return false;
  if (a.place.is_real()) return a.sign_exponent == b.sign_exponent;
  const u64 l = lcm(a.exponent_modulus, b.exponent_modulus);
  const auto sa = a.rescaled(l), sb = b.rescaled(l);
  return sa.unit_exponents == sb.unit_exponents && sa.uniformizer_exponent == sb.uniformizer_exponent;
}

u64 evaluate_local(const LocalCharacter& chi, const mpq_class& x) {
  if (x == 0) throw DomainError("evaluate_local: x must be nonzero");
  const u64 m = chi.exponent_modulus;
  if (chi.place.is_real()) return (x < 0 && chi.sign_exponent) ? (m / 2) % m : 0;
  const u64 p = chi.place.prime;
  const i64 a = valuation(x.get_num(), p) - valuation(x.get_den(), p);
  u64 value = mul_mod(static_cast<u64>(mod(a, static_cast<i64>(m))), chi.uniformizer_exponent, m);
  if (chi.conductor_exponent > 0) {
    mpz_class pa;
    mpz_ui_pow_ui(pa.get_mpz_t(), p, static_cast<unsigned long>(a >= 0 ? a : -a));
    mpq_class unit = x;
    if (a > 0) unit /= pa;
    if (a < 0) unit *= pa;
    const auto c = prime_power_unit_group(p, chi.conductor_exponent);
    const auto d = component_dlog(c, residue_mod(unit, c.modulus));
    for (std::size_t i = 0; i < d.size(); ++i) value = (value + mul_mod(d[i], chi.unit_exponents[i], m)) % m;
  }
  return value;
}

int component_conductor_exponent(const UnitGroupComponent& c, const u64* e, u64 m) {
  if (c.generators.empty()) return 0;
  if (c.prime == 2) {
    if (c.exponent == 2) return e[0] % m != 0 ? 2 : 0;
    if (e[1] % m != 0) {
      u64 ord = order_of_exponent(e[1], m);
      int j = 0;
      while (ord > 1) {
        ord >>= 1;
        ++j;
      }
      return j + 2;
    }
    return e[0] % m != 0 ? 2 : 0;
  }
  if (e[0] % m == 0) return 0;
  u64 ord = order_of_exponent(e[0], m);
  int j = 0;
  while (ord % c.prime == 0) {
    ord /= c.prime;
    ++j;
  }
  return j + 1;
}

std::vector<std::vector<u64>> primitive_component_characters(const UnitGroupComponent& c, u64 m) {
  const std::size_t n = c.generators.size();
  std::vector<u64> step(n), count(n);
  for (std::size_t j = 0; j < n; ++j) {
    count[j] = gcd(m, c.orders[j]);
    step[j] = m / count[j];
  }
  std::vector<std::vector<u64>> out;
  std::vector<u64> idx(n, 0), e(n, 0);
  while (true) {
    if (component_conductor_exponent(c, e.data(), m) == c.exponent) out.push_back(e);
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (++idx[j] < count[j]) {
        e[j] = idx[j] * step[j];
        break;
      }
      idx[j] = 0;
      e[j] = 0;
      if (j == 0) return out;
    }
    if (n == 0) return out;
  }
}

std::vector<u64> restrict_component(const UnitGroupComponent& big, const u64* e, u64 m, int k) {
  const auto small = prime_power_unit_group(big.prime, k);
  std::vector<u64> out;
  out.reserve(small.generators.size());
  for (u64 h : small.generators) {
    const auto d = component_dlog(big, h);
    u64 v = 0;
    for (std::size_t j = 0; j < d.size(); ++j) v = (v + mul_mod(d[j], e[j], m)) % m;
    out.push_back(v);
  }
  return out;
}

DirichletCharacter::DirichletCharacter(u64 modulus, std::vector<u64> exponents, u64 exponent_modulus)
    : DirichletCharacter(unit_group(modulus), std::move(exponents), exponent_modulus) {}

DirichletCharacter::DirichletCharacter(UnitGroupStructure group, std::vector<u64> exponents,
                                       u64 exponent_modulus)
    : group_(std::move(group)), m_(exponent_modulus), exponents_(std::move(exponents)) {
  if (m_ == 0) throw MalformedCharacterError("exponent modulus must be positive");
  if (exponents_.size() != group_.rank())
    throw MalformedCharacterError("modulus " + std::to_string(group_.modulus()) + " needs " +
                                  std::to_string(group_.rank()) + " exponents, got " +
                                  std::to_string(exponents_.size()));
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    exponents_[i] %= m_;
    if (mul_mod(exponents_[i], group_.orders()[i], m_) != 0)
      throw MalformedCharacterError("exponent " + std::to_string(exponents_[i]) + " on generator " +
                                    std::to_string(group_.generators()[i]) + " of order " +
                                    std::to_string(group_.orders()[i]) + " is not a character of exponent " +
                                    std::to_string(m_));
  }
}

DirichletCharacter DirichletCharacter::trivial(u64 modulus, u64 exponent_modulus) {
  auto g = unit_group(modulus);
  std::vector<u64> zeros(g.rank(), 0);
  return DirichletCharacter(std::move(g), std::move(zeros), exponent_modulus);
}

DirichletCharacter make_dirichlet(u64 modulus, std::vector<u64> exponents, u64 exponent_modulus) {
  return DirichletCharacter(modulus, std::move(exponents), exponent_modulus);
}

std::optional<u64> DirichletCharacter::evaluate(i64 n) const {
  const u64 N = modulus();
  const u64 r = static_cast<u64>(mod(n, static_cast<i64>(N)));
  if (gcd(r, N) != 1 && N != 1) return std::nullopt;
  const auto d = group_.dlog(r);
  u64 v = 0;
  for (std::size_t i = 0; i < d.size(); ++i) v = (v + mul_mod(d[i], exponents_[i], m_)) % m_;
  return v;
}

std::optional<u64> DirichletCharacter::evaluate(const DlogTable& table, u64 n) const {
  if (!table.is_unit(n)) return std::nullopt;
  const u64* d = table.exponents(n);
  u64 v = 0;
  for (std::size_t i = 0; i < exponents_.size(); ++i) v = (v + mul_mod(d[i], exponents_[i], m_)) % m_;
  return v;
}

bool DirichletCharacter::is_trivial() const {
  for (u64 e : exponents_) {
    if (e != 0) return false;
  }
  return true;
}

u64 DirichletCharacter::order() const {
  u64 o = 1;
  for (u64 e : exponents_) o = lcm(o, order_of_exponent(e, m_));
  return o;
}

DirichletCharacter DirichletCharacter::power(u64 k) const {
  std::vector<u64> e = exponents_;
  for (auto& x : e) x = mul_mod(x, k % m_, m_);
  return DirichletCharacter(group_, std::move(e), m_);
}

DirichletCharacter DirichletCharacter::rescaled(u64 new_m) const {
  if (new_m % m_ != 0) throw DomainError("exponent modulus must divide the new modulus");
  std::vector<u64> e = exponents_;
  for (auto& x : e) x *= new_m / m_;
  return DirichletCharacter(group_, std::move(e), new_m);
}

DirichletCharacter DirichletCharacter::primitive() const {
  std::vector<PrimePower> f;
  std::vector<u64> exps;
  for (std::size_t i = 0; i < group_.components().size(); ++i) {
    const auto& c = group_.components()[i];
    const u64* e = exponents_.data() + group_.first_generator(i);
    const int k = component_conductor_exponent(c, e, m_);
    if (k == 0) continue;
    f.push_back({c.prime, k});
    auto r = restrict_component(c, e, m_, k);
    exps.insert(exps.end(), r.begin(), r.end());
  }
  return DirichletCharacter(UnitGroupStructure(FactoredInteger(std::move(f))), std::move(exps), m_);
}

bool DirichletCharacter::is_primitive() const {
  for (std::size_t i = 0; i < group_.components().size(); ++i) {
    const auto& c = group_.components()[i];
    if (component_conductor_exponent(c, exponents_.data() + group_.first_generator(i), m_) != c.exponent)
      return false;
  }
  return true;
}

u64 DirichletCharacter::parity() const {
  const auto v = evaluate(-1);
  return (v && *v != 0) ? 1 : 0;
}

CycleValue DirichletCharacter::conductor() const {
  std::vector<PrimePower> f;
  for (std::size_t i = 0; i < group_.components().size(); ++i) {
    const auto& c = group_.components()[i];
    const int k = component_conductor_exponent(c, exponents_.data() + group_.first_generator(i), m_);
    if (k > 0) f.push_back({c.prime, k});
  }
  return CycleValue{FactoredInteger(std::move(f)), parity() == 1};
}

std::string DirichletCharacter::to_string() const {
  std::ostringstream os;
  os << "chi(mod " << modulus() << ", m=" << m_ << ", " << join(exponents_) << ")";
  return os.str();
}

LocalCharacter local_component(const DirichletCharacter& chi, const Place& v) {
  const u64 m = chi.exponent_modulus();
  if (v.is_real()) {
    auto out = LocalCharacter::trivial(v, m);
    out.sign_exponent = chi.parity();
    out.conductor_exponent = static_cast<int>(out.sign_exponent);
    return out;
  }
  const u64 p = v.prime;
  const auto& g = chi.group();
  const std::size_t idx = g.component_index(p);
  if (idx == UnitGroupStructure::npos) return LocalCharacter::unramified(p, m, *chi.evaluate(static_cast<i64>(p)));

  LocalCharacter out = LocalCharacter::trivial(v, m);
  const auto& c = g.components()[idx];
  const u64* e = chi.exponents().data() + g.first_generator(idx);
  out.conductor_exponent = component_conductor_exponent(c, e, m);
  out.unit_exponents = restrict_component(c, e, m, out.conductor_exponent);
  for (auto& x : out.unit_exponents) x = neg_mod(x, m);

  u64 uniformizer = 0;
  for (std::size_t j = 0; j < g.components().size(); ++j) {
    if (j == idx) continue;
    const auto& cj = g.components()[j];
    const auto d = component_dlog(cj, p % cj.modulus);
    const u64* ej = chi.exponents().data() + g.first_generator(j);
    for (std::size_t i = 0; i < d.size(); ++i) uniformizer = (uniformizer + mul_mod(d[i], ej[i], m)) % m;
  }
  out.uniformizer_exponent = uniformizer;
  return out;
}

bool verify_product_formula(const DirichletCharacter& chi, const mpq_class& x) {
  if (x == 0) throw DomainError("verify_product_formula: x must be nonzero");
  std::set<u64> primes;
  for (const auto& pp : chi.group().factorization().factors()) primes.insert(pp.prime);
  collect_primes(x.get_num(), primes);
  collect_primes(x.get_den(), primes);
  const u64 m = chi.exponent_modulus();
  u64 total = evaluate_local(local_component(chi, Place::infinity()), x);
  for (u64 p : primes) total = (total + evaluate_local(local_component(chi, Place::finite(p)), x)) % m;
  return total % m == 0;
}

FactoredInteger field_discriminant(const DirichletCharacter& chi) {
  FactoredInteger d;
  const u64 ord = chi.order();
  for (u64 i = 1; i < ord; ++i) d *= chi.power(i).conductor().finite_part;
  return d;
}

}  // namespace gw
