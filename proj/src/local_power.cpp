#include "gw/local_power.hpp"

#include <algorithm>

#include "gw/errors.hpp"
#include "gw/unit_group.hpp"

namespace gw {

Place Place::finite(u64 p) {
  if (!is_prime(p)) throw DomainError("place " + std::to_string(p) + " is not a prime");
  return Place{Kind::finite, p};
}

std::string Place::to_string() const { return is_real() ? "infinity" : std::to_string(prime); }

Place parse_place(const std::string& text) {
  if (text == "infinity") return Place::infinity();
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw DomainError("place '" + text + "' is neither 'infinity' nor a prime");
  u64 p = 0;
  try {
    p = std::stoull(text);
  } catch (const std::exception&) {
    throw DomainError("place '" + text + "' is out of range");
  }
  return Place::finite(p);
}

namespace {

// u is an m-th power in (Z/p^k)^x: every dlog coordinate divisible by gcd(m, order).
bool is_power_mod_prime_power(u64 u, u64 p, int k, u64 m) {
  const auto c = prime_power_unit_group(p, k);
  const auto e = component_dlog(c, u);
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] % gcd(m, c.orders[i]) != 0) return false;
  }
  return true;
}

}  // namespace

bool lth_power_test_local(const mpq_class& x_in, const Place& v, u64 m) {
  mpq_class x = x_in;
  x.canonicalize();
  if (x == 0) throw DomainError("lth_power_test_local: x must be nonzero");
  const auto [l, r] = prime_power_decomposition(m);
  if (l == 0) throw DomainError("exponent " + std::to_string(m) + " is not a prime power");
  if (v.is_real()) return x > 0 || m % 2 == 1;

  const u64 p = v.prime;
  const int a = valuation(x.get_num(), p) - valuation(x.get_den(), p);
  if (a % static_cast<i64>(m) != 0) return false;
  mpz_class pa;
  mpz_ui_pow_ui(pa.get_mpz_t(), p, static_cast<unsigned long>(a >= 0 ? a : -a));
  mpq_class unit = x;
  if (a > 0) unit /= pa;
  if (a < 0) unit *= pa;

  if (p != l) {
    const u64 g = gcd(m, p - 1);
    return powmod(residue_mod(unit, p), (p - 1) / g, p) == 1;
  }
  const int precision = (p == 2) ? r + 3 : 2 * r + 1;
  u128 pk = 1;
  for (int i = 0; i < precision; ++i) {
    pk *= p;
    if (pk > (static_cast<u128>(1) << 62)) throw RangeError("p-adic precision exceeds 62 bits");
  }
  return is_power_mod_prime_power(residue_mod(unit, static_cast<u64>(pk)), p, precision, m);
}

bool is_squarefree(i64 d) {
  if (d == 0) return false;
  u64 n = static_cast<u64>(d < 0 ? -d : d);
  for (const auto& pp : factor(n).factors()) {
    if (pp.exponent > 1) return false;
  }
  return true;
}

namespace {

bool is_rational_square(const mpq_class& q) {
  if (q < 0) return false;
  if (q == 0) return true;
  return mpz_perfect_square_p(q.get_num_mpz_t()) != 0 && mpz_perfect_square_p(q.get_den_mpz_t()) != 0;
}

mpq_class rational_sqrt(const mpq_class& q) {
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  mpq_class out(n, d);
  out.canonicalize();
  return out;
}

int v2(const mpz_class& n) { return static_cast<int>(mpz_scan1(n.get_mpz_t(), 0)); }

// Nonzero integer a is a square in Q_2.
bool is_2adic_rational_square(const mpz_class& a) {
  if (a == 0) throw DomainError("zero is not in Q_2^x");
  const int v = v2(a);
  if (v % 2 != 0) return false;
  mpz_class u = a >> v;
  mpz_class r = u % 8;
  if (r < 0) r += 8;
  return r == 1;
}

// Integral model of the completion of Q(sqrt d) at 2 for d not 1 mod 8:
// O = Z_2[w] with w = (1 + sqrt d)/2 (d = 5 mod 8, unramified, e = 1) or
// w = sqrt d (d = 2, 3 mod 4, ramified, e = 2).
struct TwoAdicModel {
  mpz_class d;
  bool unramified = false;
  bool d_is_2_mod_4 = false;
  int e = 1;
  mpz_class t, n;  // w^2 = t + n*w

  explicit TwoAdicModel(i64 dd) : d(static_cast<long>(dd)) {
    mpz_class r = d % 8;
    if (r < 0) r += 8;
    if (r == 5) {
      unramified = true;
      e = 1;
      t = (d - 1) / 4;
      n = 1;
    } else {
      e = 2;
      t = d;
      n = 0;
      d_is_2_mod_4 = (r == 2 || r == 6);
    }
  }

  struct Elt {
    mpz_class c0, c1;
  };

  Elt from_integers(const mpz_class& a, const mpz_class& b) const {
    if (unramified) return {a - b, 2 * b};
    return {a, b};
  }

  Elt mul(const Elt& x, const Elt& y) const {
    mpz_class p11 = x.c1 * y.c1;
    return {x.c0 * y.c0 + p11 * t, x.c0 * y.c1 + x.c1 * y.c0 + p11 * n};
  }

  Elt sub(const Elt& x, const Elt& y) const { return {x.c0 - y.c0, x.c1 - y.c1}; }

  // Normalized valuation; `cap` stands in for +infinity.
  int valuation(const Elt& x, int cap) const {
    auto vv = [cap](const mpz_class& z) { return z == 0 ? cap : v2(z); };
    if (unramified) return std::min({vv(x.c0), vv(x.c1), cap});
    if (d_is_2_mod_4) return std::min({2 * vv(x.c0), 2 * vv(x.c1) + 1, cap});
    // Basis (1, pi) with pi = 1 + sqrt d.
    return std::min({2 * vv(x.c0 - x.c1), 2 * vv(x.c1) + 1, cap});
  }

  Elt pi_squared() const {
    if (d_is_2_mod_4) return {d, 0};
    return {1 + d, 2};
  }

  Elt conj(const Elt& x) const {
    if (unramified) return {x.c0 + x.c1, -x.c1};
    return {x.c0, -x.c1};
  }

  Elt reduce(const Elt& x, const mpz_class& modulus) const {
    Elt out{x.c0 % modulus, x.c1 % modulus};
    if (out.c0 < 0) out.c0 += modulus;
    if (out.c1 < 0) out.c1 += modulus;
    return out;
  }

  Elt inverse_mod(const Elt& y, int bits) const {
    const mpz_class modulus = mpz_class(1) << bits;
    Elt c = conj(y);
    Elt nrm = mul(y, c);  // rational, c1 == 0
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), nrm.c0.get_mpz_t(), modulus.get_mpz_t()) == 0)
      throw InternalContradiction("2-adic unit with even norm");
    return reduce({c.c0 * inv, c.c1 * inv}, modulus);
  }
};

bool unit_is_square(const TwoAdicModel& model, const TwoAdicModel::Elt& u, int precision_bits) {
  const int threshold = 2 * model.e + 1;
  for (int y0 = 0; y0 < 8; ++y0) {
    for (int y1 = 0; y1 < 8; ++y1) {
      TwoAdicModel::Elt y{y0, y1};
      auto diff = model.sub(u, model.mul(y, y));
      if (model.valuation(diff, threshold) < threshold) continue;
      // Hensel lift: y <- y + ((u - y^2)/2) / y, the error valuation grows from n to 2n - 2e.
      const int work_bits = precision_bits + 8;
      const mpz_class modulus = mpz_class(1) << work_bits;
      const int target = model.e * precision_bits;
      for (int iter = 0; iter < 64; ++iter) {
        diff = model.reduce(model.sub(u, model.mul(y, y)), modulus);
        if (model.valuation(diff, target) >= target) return true;
        if (diff.c0 % 2 != 0 || diff.c1 % 2 != 0)
          throw InternalContradiction("Hensel step lost divisibility by 2");
        TwoAdicModel::Elt half{diff.c0 / 2, diff.c1 / 2};
        auto delta = model.mul(half, model.inverse_mod(y, work_bits));
        y = model.reduce({y.c0 + delta.c0, y.c1 + delta.c1}, modulus);
      }
      throw InternalContradiction("Hensel lifting of a 2-adic square root did not converge");
    }
  }
  return false;
}

mpz_class lcm_den(const QuadraticElement& x) {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), x.a.get_den_mpz_t(), x.b.get_den_mpz_t());
  return l;
}

}  // namespace

bool is_square_in_quadratic(const QuadraticElement& x, i64 d) {
  if (d == 1) {
    if (!x.is_rational()) throw DomainError("d = 1 denotes Q; element must be rational");
    return is_rational_square(x.a);
  }
  if (!is_squarefree(d)) throw DomainError("d must be squarefree");
  const mpq_class dq(static_cast<long>(d));
  if (x.b == 0) {
    if (is_rational_square(x.a)) return true;
    return is_rational_square(x.a / dq);
  }
  const mpq_class norm = x.a * x.a - dq * x.b * x.b;
  if (!is_rational_square(norm)) return false;
  const mpq_class n = rational_sqrt(norm);
  // x = (y0 + y1 sqrt d)^2 forces {(a + n)/2, (a - n)/2} = {y0^2, d y1^2}.
  for (const mpq_class& t : {mpq_class((x.a + n) / 2), mpq_class((x.a - n) / 2)}) {
    if (t == 0) continue;
    if (is_rational_square(t)) {
      const mpq_class y0 = rational_sqrt(t);
      const mpq_class y1 = x.b / (2 * y0);
      if (y0 * y0 + dq * y1 * y1 == x.a) return true;
    }
    if (is_rational_square(t / dq)) {
      const mpq_class y1 = rational_sqrt(t / dq);
      const mpq_class y0 = x.b / (2 * y1);
      if (y0 * y0 + dq * y1 * y1 == x.a) return true;
    }
  }
  return false;
}

bool is_square_in_2adic_quadratic(const QuadraticElement& x, i64 d, int precision_bits) {
  if (x.is_zero()) throw DomainError("is_square_in_2adic_quadratic: x must be nonzero");
  if (d != 1 && !is_squarefree(d)) throw DomainError("d must be squarefree");
  // Clearing denominators multiplies by a rational square.
  const mpz_class den = lcm_den(x);
  const mpz_class den2 = den * den;
  const mpz_class a = mpz_class(x.a * den2);
  const mpz_class b = mpz_class(x.b * den2);

  i64 dm8 = d % 8;
  if (dm8 < 0) dm8 += 8;
  if (d == 1) return is_2adic_rational_square(a + b);
  if (dm8 == 1) {
    // Split: sqrt d -> r in Z_2 with r = 1 mod 4, known to growing precision.
    const mpz_class dz(static_cast<long>(d));
    for (int bits = 64;; bits *= 2) {
      const mpz_class modulus = mpz_class(1) << bits;
      mpz_class r = 1;
      for (int k = 3; k < bits; ++k) {
        mpz_class lifted_mod = mpz_class(1) << (k + 1);
        mpz_class err = (r * r - dz) % lifted_mod;
        if (err != 0) r += mpz_class(1) << (k - 1);
      }
      mpz_class value = (a + b * r) % modulus;
      if (value < 0) value += modulus;
      if (value != 0 && v2(value) < bits - 4) return is_2adic_rational_square(value);
      if (bits > 1 << 16) throw InternalContradiction("2-adic valuation did not stabilize");
    }
  }

  TwoAdicModel model(d);
  auto elt = model.from_integers(a, b);
  const int cap = 1 << 20;
  int v = model.valuation(elt, cap);
  if (v % 2 != 0) return false;
  const int four = 2 * model.e;
  while (v >= four) {
    elt = {elt.c0 / 4, elt.c1 / 4};
    v -= four;
  }
  if (v != 0) {
    // Ramified with v = 2: multiply by the square pi^2, then divide by 4.
    elt = model.mul(elt, model.pi_squared());
    elt = {elt.c0 / 4, elt.c1 / 4};
    v = model.valuation(elt, cap);
    if (v != 0) throw InternalContradiction("unit normalization failed");
  }
  return unit_is_square(model, elt, precision_bits);
}

}  // namespace gw
