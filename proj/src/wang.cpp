#include "gw/wang.hpp"

#include <algorithm>
#include <array>

#include "gw/errors.hpp"

namespace gw {

FieldDescriptor FieldDescriptor::quadratic(i64 d) {
  if (d == 0 || d == 1 || !is_squarefree(d))
    throw DomainError("Qsqrt:" + std::to_string(d) + " needs a squarefree d other than 0 and 1");
  return FieldDescriptor{d};
}

u64 FieldDescriptor::discriminant() const {
  if (is_rationals()) return 1;
  const u64 a = static_cast<u64>(d < 0 ? -d : d);
  return mod(d, 4) == 1 ? a : 4 * a;
}

std::string FieldDescriptor::to_string() const {
  return is_rationals() ? "Q" : "Qsqrt:" + std::to_string(d);
}

FieldDescriptor parse_field(const std::string& text) {
  if (text == "Q") return FieldDescriptor::rationals();
  const std::string prefix = "Qsqrt:";
  if (text.rfind(prefix, 0) != 0) throw DomainError("field '" + text + "' is neither 'Q' nor 'Qsqrt:d'");
  const std::string tail = text.substr(prefix.size());
  std::size_t used = 0;
  i64 d = 0;
  try {
    d = std::stoll(tail, &used);
  } catch (const std::exception&) {
    throw DomainError("field '" + text + "': d is not an integer");
  }
  if (used != tail.size()) throw DomainError("field '" + text + "': d is not an integer");
  return FieldDescriptor::quadratic(d);
}

int field_s_invariant(const FieldDescriptor& K) {
  // eta_4 = 0 always lies in K; eta_8 = sqrt 2 only for d = 2; eta_16 has degree 4.
  return K.d == 2 ? 3 : 2;
}

namespace {

QuadraticElement mul(const QuadraticElement& x, const QuadraticElement& y, i64 d) {
  const mpq_class dq(static_cast<long>(d));
  return QuadraticElement(x.a * y.a + dq * x.b * y.b, x.a * y.b + x.b * y.a);
}

QuadraticElement power(QuadraticElement base, u64 e, i64 d) {
  QuadraticElement out(1);
  while (e) {
    if (e & 1) out = mul(out, base, d);
    base = mul(base, base, d);
    e >>= 1;
  }
  return out;
}

// -1, 2 + eta_{2^s}, -(2 + eta_{2^s}).
std::array<QuadraticElement, 3> test_elements(int s) {
  const QuadraticElement t = (s == 3) ? QuadraticElement(2, 1) : QuadraticElement(2);
  return {QuadraticElement(-1), t, QuadraticElement(-t.a, -t.b)};
}

bool contains(const std::vector<Place>& S, const Place& v) { return std::find(S.begin(), S.end(), v) != S.end(); }

}  // namespace

SpecialCaseReport special_case(const FieldDescriptor& K, u64 m, const std::vector<Place>& S) {
  if (m == 0) throw DomainError("m must be positive");
  SpecialCaseReport rep;
  rep.s = field_s_invariant(K);
  const auto elts = test_elements(rep.s);

  // A prime over 2 lies in S0 iff all three are local nonsquares there. When
  // 2 splits the elements are rational, so both places over 2 agree.
  const bool local_nonsquares = std::all_of(elts.begin(), elts.end(), [&](const QuadraticElement& x) {
    return !is_square_in_2adic_quadratic(x, K.d);
  });
  if (local_nonsquares) rep.S0.push_back(Place::finite(2));

  int t = 0;
  for (u64 mm = m; mm % 2 == 0; mm /= 2) ++t;

  const bool b = std::all_of(elts.begin(), elts.end(),
                             [&](const QuadraticElement& x) { return !is_square_in_quadratic(x, K.d); });
  const bool c = t > rep.s;
  const bool d = std::all_of(rep.S0.begin(), rep.S0.end(), [&](const Place& v) { return contains(S, v); });
  if (!b) {
    rep.failed_condition = 'b';
  } else if (!c) {
    rep.failed_condition = 'c';
  } else if (!d) {
    rep.failed_condition = 'd';
  } else {
    rep.occurs = true;
    if (m / 2 > (u64{1} << 24)) throw RangeError("a0 = eta^m is too large to write down for m = " + std::to_string(m));
    // eta_{2^{s+1}}^2 = 2 + eta_{2^s}, and m is even.
    rep.a0 = power(elts[1], m / 2, K.d);
  }
  return rep;
}

bool is_rational_mth_power(const mpq_class& x_in, u64 m) {
  if (m == 0) throw DomainError("m must be positive");
  mpq_class x = x_in;
  x.canonicalize();
  if (x == 0) throw DomainError("zero is not in Q^x");
  if (x < 0 && m % 2 == 0) return false;
  const auto root_exact = [m](const mpz_class& n) {
    mpz_class r;
    const mpz_class a = abs(n);
    return mpz_root(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(m)) != 0;
  };
  return root_exact(x.get_num()) && root_exact(x.get_den());
}

bool membership_P_m_S(const mpq_class& x, u64 m, const std::vector<Place>& S) {
  if (prime_power_decomposition(m).first == 0) throw DomainError("m = " + std::to_string(m) + " is not a prime power");
  if (is_rational_mth_power(x, m)) return true;
  const auto rep = special_case(FieldDescriptor::rationals(), m, S);
  if (!rep.occurs) return false;
  return is_rational_mth_power(x / rep.a0->a, m);
}

u64 witness_prime(const mpq_class& x, u64 m, const std::vector<Place>& S, u64 cap) {
  if (membership_P_m_S(x, m, S))
    throw NoWitnessError(x.get_str() + " lies in P(" + std::to_string(m) + ", S); no prime outside S detects it");
  for (u64 p = 2; p <= cap; p = next_prime(p)) {
    if (contains(S, Place::finite(p))) continue;
    if (!lth_power_test_local(x, Place::finite(p), m)) return p;
  }
  throw SearchCapError("no witness prime below " + std::to_string(cap));
}

std::string to_string(const QuadraticElement& x, i64 d) {
  if (x.b == 0) return x.a.get_str();
  std::string out = x.a == 0 ? "" : x.a.get_str();
  if (x.b > 0 && x.a != 0) out += "+";
  out += x.b.get_str() + "*sqrt(" + std::to_string(d) + ")";
  return out;
}

}  // namespace gw
