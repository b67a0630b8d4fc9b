#include "gw/grunwald.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <set>
#include <unordered_map>

#include "gw/errors.hpp"
#include "gw/linalg.hpp"

namespace gw {

namespace {

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }
u64 neg_mod(u64 a, u64 m) { return a % m == 0 ? 0 : m - a % m; }
u64 sub_mod(u64 a, u64 b, u64 m) { return (a % m + neg_mod(b, m)) % m; }

bool contains(const std::vector<Place>& S, const Place& v) { return std::find(S.begin(), S.end(), v) != S.end(); }
bool contains(const std::vector<u64>& v, u64 x) { return std::find(v.begin(), v.end(), x) != v.end(); }

std::pair<u64, int> exponent_split(u64 m) {
  const auto lr = prime_power_decomposition(m);
  if (lr.first == 0) throw DomainError("m = " + std::to_string(m) + " is not a prime power");
  return lr;
}

u64 dot(const std::vector<u64>& a, const u64* b, u64 m) {
  u64 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = (s + mul_mod(a[i], b[i], m)) % m;
  return s;
}

std::vector<u64> dlog_in(const UnitGroupComponent& c, i64 x) {
  return component_dlog(c, static_cast<u64>(mod(x, static_cast<i64>(c.modulus))));
}

}  // namespace

// ---------------------------------------------------------------------------
// Instances

std::vector<Place> GrunwaldInstance::S() const {
  std::vector<Place> out;
  for (const auto& chi : places) out.push_back(chi.place);
  std::sort(out.begin(), out.end());
  return out;
}

const LocalCharacter* GrunwaldInstance::prescribed(const Place& v) const {
  for (const auto& chi : places) {
    if (chi.place == v) return &chi;
  }
  return nullptr;
}

u64 GrunwaldInstance::norm_S() const {
  u64 n = 1;
  for (const auto& chi : places) {
    if (chi.place.is_finite()) {
      if (n > UINT64_MAX / chi.place.prime) throw RangeError("N_S exceeds 64 bits");
      n *= chi.place.prime;
    }
  }
  return n;
}

void GrunwaldInstance::validate() const {
  if (!field.is_rationals())
    throw ValidationError("field: the solver supports only Q, got " + field.to_string());
  if (prime_power_decomposition(m).first == 0)
    throw ValidationError("m: " + std::to_string(m) + " is not a prime power");
  for (std::size_t i = 0; i < places.size(); ++i) {
    const auto& chi = places[i];
    const std::string where = "places[" + std::to_string(i) + "] (" + chi.place.to_string() + ")";
    if (chi.exponent_modulus != m)
      throw ValidationError(where + ": exponent modulus " + std::to_string(chi.exponent_modulus) + " != m");
    try {
      chi.validate();
    } catch (const MalformedCharacterError& e) {
      throw ValidationError(where + ": " + e.what());
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (places[j].place == chi.place) throw ValidationError(where + ": place listed twice");
    }
  }
}

GrunwaldInstance GrunwaldInstance::rescaled(u64 new_m) const {
  GrunwaldInstance out = *this;
  out.m = new_m;
  for (auto& chi : out.places) chi = chi.rescaled(new_m);
  return out;
}

// ---------------------------------------------------------------------------
// P*(m, S) and auxiliary primes

namespace {

struct PStarGroup {
  std::vector<i64> gens;
  std::vector<u64> orders;
  std::vector<std::vector<u64>> elements;  // coefficient vectors, odometer order
};

PStarGroup p_star_group(u64 m, const std::vector<Place>& S) {
  PStarGroup g;
  if (m % 2 == 0) {
    g.gens.push_back(-1);
    g.orders.push_back(2);
  }
  std::vector<u64> primes;
  for (const auto& v : S) {
    if (v.is_finite()) primes.push_back(v.prime);
  }
  std::sort(primes.begin(), primes.end());
  for (u64 p : primes) {
    g.gens.push_back(static_cast<i64>(p));
    g.orders.push_back(m);
  }
  u64 total = 1;
  for (u64 o : g.orders) {
    if (total > (u64{1} << 22) / o) throw RangeError("P*(m,S)/Q^{xm} has more than 2^22 cosets");
    total *= o;
  }
  std::vector<u64> c(g.gens.size(), 0);
  for (u64 t = 0; t < total; ++t) {
    g.elements.push_back(c);
    for (std::size_t j = c.size(); j-- > 0;) {
      if (++c[j] < g.orders[j]) break;
      c[j] = 0;
    }
  }
  return g;
}

mpq_class representative(const PStarGroup& g, const std::vector<u64>& c) {
  mpz_class x = 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    mpz_class pw;
    const long base = static_cast<long>(g.gens[i]);
    mpz_class b = base;
    mpz_pow_ui(pw.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(c[i]));
    x *= pw;
  }
  return mpq_class(x);
}

}  // namespace

std::vector<mpq_class> p_star_basis(u64 m, const std::vector<Place>& S) {
  exponent_split(m);
  std::vector<mpq_class> out;
  if (m % 2 == 0) out.emplace_back(-1);
  std::vector<u64> primes;
  for (const auto& v : S) {
    if (v.is_finite()) primes.push_back(v.prime);
  }
  std::sort(primes.begin(), primes.end());
  for (u64 p : primes) out.emplace_back(static_cast<unsigned long>(p));
  return out;
}

std::vector<mpq_class> p_star_cosets(u64 m, const std::vector<Place>& S) {
  exponent_split(m);
  const auto g = p_star_group(m, S);
  std::vector<mpq_class> out;
  out.reserve(g.elements.size());
  for (const auto& c : g.elements) out.push_back(representative(g, c));
  return out;
}

std::vector<u64> auxiliary_primes(u64 m, const std::vector<Place>& S, u64 prime_cap) {
  const auto [l, r] = exponent_split(m);
  const auto g = p_star_group(m, S);
  const bool special = special_case(FieldDescriptor::rationals(), m, S).occurs;
  const std::size_t target = special ? 2 : 1;

  std::vector<std::size_t> survivors(g.elements.size());
  for (std::size_t i = 0; i < survivors.size(); ++i) survivors[i] = i;
  std::vector<u64> aux;
  for (u64 q = 2; survivors.size() > target; q = next_prime(q)) {
    if (q > prime_cap) throw SearchCapError("auxiliary primes: survivors remain beyond " + std::to_string(prime_cap));
    if (contains(S, Place::finite(q)) || m % q == 0) continue;
    const u64 h = gcd(m, q - 1);
    if (h == 1) continue;
    // x is an m-th power at q iff its index in (Z/q)^x is divisible by h.
    const auto c = prime_power_unit_group(q, 1);
    std::vector<u64> d;
    for (i64 x : g.gens) d.push_back(dlog_in(c, x)[0] % h);
    std::vector<std::size_t> kept;
    for (std::size_t i : survivors) {
      if (dot(d, g.elements[i].data(), h) == 0) kept.push_back(i);
    }
    if (kept.size() < survivors.size()) {
      aux.push_back(q);
      survivors = std::move(kept);
    }
  }
  if (l == 2 && r >= 3) {
    if (!contains(S, Place::finite(2))) {
      aux.push_back(2);
    } else {
      u64 q = 3;
      while (contains(S, Place::finite(q)) || contains(aux, q) || (q % 8 != 3 && q % 8 != 5)) q = next_prime(q);
      aux.push_back(q);
    }
  }
  return aux;
}

// ---------------------------------------------------------------------------
// Cycle and obstruction

CycleValue build_cycle(const GrunwaldInstance& instance, const std::vector<u64>& aux) {
  const auto [l, r] = exponent_split(instance.m);
  CycleValue c;
  for (const auto& chi : instance.places) {
    if (chi.place.is_finite() && chi.conductor_exponent > 0)
      c.finite_part *= FactoredInteger({{chi.place.prime, chi.conductor_exponent}});
    if (chi.place.is_real()) c.real_bit = true;
  }
  c.finite_part *= FactoredInteger({{l, r + 2}});
  for (u64 q : aux) {
    if (instance.prescribed(Place::finite(q))) throw DomainError("auxiliary prime " + std::to_string(q) + " lies in S");
    c.finite_part *= FactoredInteger({{q, 1}});
  }
  if (instance.m % 2 == 0) c.real_bit = true;
  return c;
}

u64 wang_obstruction(const GrunwaldInstance& instance) {
  const auto rep = special_case(FieldDescriptor::rationals(), instance.m, instance.S());
  if (!rep.occurs) return 0;
  u64 total = 0;
  for (const auto& chi : instance.places) total = (total + evaluate_local(chi, rep.a0->a)) % instance.m;
  return total;
}

// ---------------------------------------------------------------------------
// Oracle step: characters of conductor exactly N

namespace {

struct OracleData {
  u64 M = 1;
  std::vector<u64> primes;                    // finite places of S
  std::vector<int> k;                         // prescribed conductor exponents
  std::vector<std::vector<u64>> fixed_units;  // component exponents forced at S primes
  std::vector<u64> targets;                   // uniformizer values, then the sign value
  bool has_real = false;
};

OracleData oracle_data(const GrunwaldInstance& work) {
  OracleData d;
  d.M = work.m;
  for (const auto& v : work.S()) {
    const auto& chi = *work.prescribed(v);
    if (v.is_real()) continue;
    d.primes.push_back(v.prime);
    d.k.push_back(chi.conductor_exponent);
    std::vector<u64> units;
    for (u64 e : chi.unit_exponents) units.push_back(neg_mod(e, d.M));
    d.fixed_units.push_back(units);
    d.targets.push_back(chi.uniformizer_exponent);
  }
  if (const auto* chi = work.prescribed(Place::infinity())) {
    d.has_real = true;
    d.targets.push_back(chi->sign_exponent ? d.M / 2 : 0);
  }
  return d;
}

struct ComponentChoices {
  std::vector<std::vector<u64>> exps;     // empty: no admissible character at this prime power
  std::vector<std::vector<u64>> contrib;  // per choice, one entry per constraint
};

ComponentChoices component_choices(const OracleData& d, u64 p, int k) {
  const std::size_t D = d.targets.size();
  const auto c = prime_power_unit_group(p, k);
  ComponentChoices ch;
  const auto it = std::find(d.primes.begin(), d.primes.end(), p);
  if (it != d.primes.end()) {
    const auto i = static_cast<std::size_t>(it - d.primes.begin());
    if (d.k[i] == k) ch.exps.push_back(d.fixed_units[i]);
  } else {
    ch.exps = primitive_component_characters(c, d.M);
  }
  if (ch.exps.empty()) return ch;
  std::vector<std::vector<u64>> logs(D);
  for (std::size_t j = 0; j < d.primes.size(); ++j) {
    if (d.primes[j] != p) logs[j] = dlog_in(c, static_cast<i64>(d.primes[j]));
  }
  if (d.has_real) logs[D - 1] = dlog_in(c, -1);
  for (const auto& e : ch.exps) {
    std::vector<u64> w(D, 0);
    for (std::size_t j = 0; j < D; ++j) {
      if (!logs[j].empty()) w[j] = dot(logs[j], e.data(), d.M);
    }
    ch.contrib.push_back(std::move(w));
  }
  return ch;
}

// Component data per prime power, shared by every modulus of a search.
// extend() is serial; after extend(n), lookups of prime powers <= n only read.
class ComponentCache {
 public:
  explicit ComponentCache(const OracleData& d) : d_(d) {}

  void extend(u64 end) {
    if (end <= upto_) return;
    for (u64 q = upto_ + 1; q <= end; ++q) {
      if (is_prime(q)) table_.emplace(q, component_choices(d_, q, 1));
    }
    for (u64 p : primes_up_to(static_cast<u64>(std::sqrt(static_cast<double>(end))) + 1)) {
      u128 q = static_cast<u128>(p) * p;
      for (int k = 2; q <= end; ++k, q *= p) {
        if (q > upto_) table_.emplace(static_cast<u64>(q), component_choices(d_, p, k));
      }
    }
    upto_ = end;
  }

  const ComponentChoices& get(u64 p, int k) {
    const u64 q = ipow(p, static_cast<unsigned>(k));
    auto it = table_.find(q);
    if (it == table_.end()) it = table_.emplace(q, component_choices(d_, p, k)).first;
    return it->second;
  }

  const ComponentChoices& find(u64 p, int k) const {
    const auto it = table_.find(ipow(p, static_cast<unsigned>(k)));
    if (it == table_.end()) throw InternalContradiction("component cache not extended far enough");
    return it->second;
  }

 private:
  const OracleData& d_;
  std::unordered_map<u64, ComponentChoices> table_;
  u64 upto_ = 1;
};

// Lexicographically least exponent vector mod N satisfying the constraints.
template <class Lookup>
std::optional<std::vector<u64>> oracle_at(const OracleData& d, Lookup&& lookup, u64 N) {
  for (std::size_t i = 0; i < d.primes.size(); ++i) {
    const u64 p = d.primes[i];
    u64 n = N;
    int v = 0;
    while (n % p == 0) {
      n /= p;
      ++v;
    }
    if (v != d.k[i]) return std::nullopt;
  }
  const std::size_t D = d.targets.size();
  std::vector<const ComponentChoices*> comps;
  for (const auto& pp : factor(N).factors()) {
    const ComponentChoices& ch = lookup(pp.prime, pp.exponent);
    if (ch.exps.empty()) return std::nullopt;
    comps.push_back(&ch);
  }

  // reach[i]: sums the components i.. can contribute. Prunes the depth-first search,
  // which then visits components in prime order so the first hit is lexicographically least.
  const std::size_t C = comps.size();
  auto add = [&](const std::vector<u64>& a, const std::vector<u64>& b) {
    std::vector<u64> r(D);
    for (std::size_t j = 0; j < D; ++j) r[j] = (a[j] + b[j]) % d.M;
    return r;
  };
  std::vector<std::set<std::vector<u64>>> reach(C + 1);
  reach[C].insert(std::vector<u64>(D, 0));
  for (std::size_t i = C; i-- > 0;) {
    const std::set<std::vector<u64>> own(comps[i]->contrib.begin(), comps[i]->contrib.end());
    for (const auto& a : own)
      for (const auto& b : reach[i + 1]) reach[i].insert(add(a, b));
  }
  std::vector<std::size_t> pick(C, 0);
  auto dfs = [&](auto&& self, std::size_t i, const std::vector<u64>& acc) -> bool {
    if (i == C) return acc == d.targets;
    for (std::size_t t = 0; t < comps[i]->exps.size(); ++t) {
      const auto next = add(acc, comps[i]->contrib[t]);
      std::vector<u64> rest(D);
      for (std::size_t j = 0; j < D; ++j) rest[j] = sub_mod(d.targets[j], next[j], d.M);
      if (!reach[i + 1].count(rest)) continue;
      pick[i] = t;
      if (self(self, i + 1, next)) return true;
    }
    return false;
  };
  if (!reach[0].count(d.targets)) return std::nullopt;
  if (!dfs(dfs, 0, std::vector<u64>(D, 0))) return std::nullopt;
  std::vector<u64> out;
  for (std::size_t i = 0; i < C; ++i) {
    const auto& e = comps[i]->exps[pick[i]];
    out.insert(out.end(), e.begin(), e.end());
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Linear solve mod the cycle

namespace {

void check_components(const DirichletCharacter& chi, const GrunwaldInstance& work, const char* who) {
  for (const auto& want : work.places) {
    const auto got = local_component(chi, want.place);
    if (!same_character(got, want))
      throw InternalContradiction(std::string(who) + ": component at " + want.place.to_string() + " is " +
                                  got.to_string() + ", prescribed " + want.to_string());
  }
}

// (Z/c)^x for the finite part of a cycle, component by component, so that the
// cycle itself need not fit in 64 bits.
struct CycleUnits {
  std::vector<UnitGroupComponent> comps;
  std::vector<std::size_t> offset;
  std::size_t rank = 0;

  explicit CycleUnits(const FactoredInteger& f) {
    for (const auto& pp : f.factors()) {
      comps.push_back(prime_power_unit_group(pp.prime, pp.exponent));
      offset.push_back(rank);
      rank += comps.back().generators.size();
    }
  }
  std::size_t index(u64 p) const {
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (comps[i].prime == p) return i;
    }
    return UnitGroupStructure::npos;
  }
  std::vector<u64> orders() const {
    std::vector<u64> o;
    for (const auto& c : comps) o.insert(o.end(), c.orders.begin(), c.orders.end());
    return o;
  }
  void put_dlog(std::vector<u64>& row, std::size_t i, i64 x) const {
    const auto d = dlog_in(comps[i], x);
    std::copy(d.begin(), d.end(), row.begin() + static_cast<std::ptrdiff_t>(offset[i]));
  }
  // Conductor of x, saturating; exact for everything that fits in 64 bits.
  u128 conductor(const std::vector<u64>& x, u64 M) const {
    u128 f = 1;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const int k = component_conductor_exponent(comps[i], x.data() + offset[i], M);
      for (int j = 0; j < k; ++j) f = f > ~u128{0} / comps[i].prime ? ~u128{0} : f * comps[i].prime;
    }
    return f;
  }
  DirichletCharacter primitive(const std::vector<u64>& x, u64 M) const {
    std::vector<PrimePower> f;
    std::vector<u64> exps;
    u128 N = 1;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const int k = component_conductor_exponent(comps[i], x.data() + offset[i], M);
      if (k == 0) continue;
      for (int j = 0; j < k; ++j) N *= comps[i].prime;
      if (N > UINT64_MAX) throw RangeError("solution conductor exceeds 64 bits");
      f.push_back({comps[i].prime, k});
      const auto r = restrict_component(comps[i], x.data() + offset[i], M, k);
      exps.insert(exps.end(), r.begin(), r.end());
    }
    return DirichletCharacter(UnitGroupStructure(FactoredInteger(std::move(f))), std::move(exps), M);
  }
};

// Divisors of f in increasing order, those above `limit` dropped.
std::vector<u64> divisors_up_to(const FactoredInteger& f, u64 limit) {
  std::vector<u64> out{1};
  for (const auto& pp : f.factors()) {
    const std::size_t n = out.size();
    u128 pk = 1;
    for (int k = 1; k <= pp.exponent; ++k) {
      pk *= pp.prime;
      if (pk > limit) break;
      for (std::size_t i = 0; i < n; ++i) {
        const u128 d = pk * out[i];
        if (d <= limit) out.push_back(static_cast<u64>(d));
      }
    }
    if (out.size() > (std::size_t{1} << 24)) throw RangeError("cycle has too many divisors to scan");
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::optional<GrunwaldSolution> solve_character_with_exponent(const GrunwaldInstance& instance,
                                                              const CycleValue& cycle, u64 M,
                                                              u64 enumeration_limit) {
  instance.validate();
  if (M % instance.m != 0) throw DomainError("exponent must be a multiple of m");
  exponent_split(M);
  const GrunwaldInstance work = instance.rescaled(M);
  const CycleUnits G(cycle.finite_part);
  const std::size_t n = G.rank;
  const auto orders = G.orders();

  std::vector<std::vector<u64>> A;
  std::vector<u64> b;
  auto row = [&]() -> std::vector<u64>& {
    A.emplace_back(n, 0);
    b.push_back(0);
    return A.back();
  };
  for (std::size_t j = 0; j < n; ++j) {
    if (orders[j] % M == 0) continue;
    row()[j] = orders[j] % M;
  }
  for (const auto& chi : work.places) {
    if (chi.place.is_real()) {
      auto& a = row();
      for (std::size_t i = 0; i < G.comps.size(); ++i) G.put_dlog(a, i, -1);
      b.back() = chi.sign_exponent ? M / 2 : 0;
      continue;
    }
    const u64 p = chi.place.prime;
    const std::size_t idx = G.index(p);
    if (idx == UnitGroupStructure::npos && chi.is_ramified())
      throw InternalContradiction("cycle misses the conductor of the prescribed character at " + std::to_string(p));
    if (idx != UnitGroupStructure::npos) {
      const auto& c = G.comps[idx];
      for (std::size_t j = 0; j < c.generators.size(); ++j) {
        auto& a = row();
        a[G.offset[idx] + j] = 1;
        b.back() = neg_mod(evaluate_local(chi, mpq_class(static_cast<unsigned long>(c.generators[j]))), M);
      }
    }
    auto& a = row();
    for (std::size_t i = 0; i < G.comps.size(); ++i) {
      if (i != idx) G.put_dlog(a, i, static_cast<i64>(p));
    }
    b.back() = chi.uniformizer_exponent;
  }

  const auto sol = solve_mod_prime_power(A, b, n, M);
  if (!sol) return std::nullopt;

  GrunwaldSolution out;
  if (sol->count(enumeration_limit) <= enumeration_limit) {
    std::vector<u64> best = sol->particular;
    u128 best_f = G.conductor(best, M);
    std::vector<u64> x = sol->particular;
    std::vector<u64> coef(sol->kernel.size(), 0);
    while (true) {
      std::size_t i = 0;
      for (; i < coef.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) x[j] = (x[j] + sol->kernel[i][j]) % M;
        if (++coef[i] < sol->kernel_orders[i]) break;
        coef[i] = 0;  // order * kernel[i] = 0, so x is back where it started in this coordinate
      }
      if (i == coef.size()) break;
      const u128 f = G.conductor(x, M);
      if (f < best_f || (f == best_f && x < best)) {
        best_f = f;
        best = x;
      }
    }
    out.character = G.primitive(best, M);
  } else {
    // Too many solutions to list: every solution is induced from a primitive
    // character whose conductor divides the cycle, so scan those divisors upward.
    const OracleData d = oracle_data(work);
    ComponentCache cache(d);
    auto lookup = [&](u64 p, int k) -> const ComponentChoices& { return cache.get(p, k); };
    std::optional<DirichletCharacter> found;
    for (u64 N : divisors_up_to(cycle.finite_part, UINT64_MAX)) {
      if (auto e = oracle_at(d, lookup, N)) {
        found = DirichletCharacter(N, *e, M);
        break;
      }
    }
    if (!found) throw InternalContradiction("solvable system without a primitive solution dividing " + cycle.to_string());
    out.character = *found;
  }
  out.exponent_achieved = M;
  out.cycle = cycle;
  check_components(out.character, work, "solve_character");
  return out;
}

GrunwaldSolution solve_character(const GrunwaldInstance& instance, const CycleValue& cycle) {
  const u64 obstruction = wang_obstruction(instance);
  const bool special = special_case(FieldDescriptor::rationals(), instance.m, instance.S()).occurs;
  if (auto s = solve_character_with_exponent(instance, cycle, instance.m)) {
    if (obstruction != 0)
      throw InternalContradiction("exponent-m solution found although prod chi_v(a0) != 1");
    s->special_case_flag = special;
    return *s;
  }
  if (obstruction != 0) {
    if (auto s = solve_character_with_exponent(instance, cycle, 2 * instance.m)) {
      s->special_case_flag = true;
      return *s;
    }
  }
  throw InternalContradiction("no character with the prescribed components modulo the cycle " + cycle.to_string());
}

GrunwaldSolution construct(const GrunwaldInstance& instance) {
  instance.validate();
  const auto S = instance.S();
  const bool special = special_case(FieldDescriptor::rationals(), instance.m, S).occurs;
  const bool obstructed = wang_obstruction(instance) != 0;
  const GrunwaldInstance work = obstructed ? instance.rescaled(2 * instance.m) : instance;
  if (obstructed && wang_obstruction(work) != 0)
    throw InternalContradiction("prescribed data stays obstructed at exponent 2m");
  const auto aux = auxiliary_primes(work.m, S);
  const auto cycle = build_cycle(work, aux);
  auto sol = solve_character_with_exponent(work, cycle, work.m);
  if (!sol) throw InternalContradiction("no character with the prescribed components modulo " + cycle.to_string());
  sol->special_case_flag = special;
  sol->aux_primes = aux;
  return *sol;
}

// ---------------------------------------------------------------------------
// Exhaustive oracle

std::optional<DirichletCharacter> oracle_search(const GrunwaldInstance& instance, u64 exponent, u64 cap,
                                                Execution exec) {
  instance.validate();
  if (exponent % instance.m != 0) throw DomainError("exponent must be a multiple of m");
  exponent_split(exponent);
  const GrunwaldInstance work = instance.rescaled(exponent);
  const OracleData d = oracle_data(work);
  ComponentCache cache(d);
  auto lookup = [&](u64 p, int k) -> const ComponentChoices& { return cache.find(p, k); };

  auto finish = [&](u64 N, const std::vector<u64>& e) {
    DirichletCharacter chi(N, e, exponent);
    check_components(chi, work, "oracle_search");
    return chi;
  };

  if (exec == Execution::serial) {
    for (u64 N = 1; N <= cap; ++N) {
      cache.extend(N);
      if (auto e = oracle_at(d, lookup, N)) return finish(N, *e);
    }
    return std::nullopt;
  }

  constexpr u64 kBlock = 4096;
  for (u64 start = 1; start <= cap; start += kBlock) {
    const u64 end = std::min(cap, start + kBlock - 1);
    const auto len = static_cast<std::int64_t>(end - start + 1);
    cache.extend(end);
    std::vector<std::optional<std::vector<u64>>> found(static_cast<std::size_t>(len));
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < len; ++i) {
      try {
        found[static_cast<std::size_t>(i)] = oracle_at(d, lookup, start + static_cast<u64>(i));
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    for (std::int64_t i = 0; i < len; ++i) {
      if (found[static_cast<std::size_t>(i)]) return finish(start + static_cast<u64>(i), *found[static_cast<std::size_t>(i)]);
    }
  }
  return std::nullopt;
}

GrunwaldSolution oracle_minimal(const GrunwaldInstance& instance, u64 cap, Execution exec, bool allow_widening) {
  instance.validate();
  const bool special = special_case(FieldDescriptor::rationals(), instance.m, instance.S()).occurs;
  GrunwaldSolution out;
  out.special_case_flag = special;
  for (u64 M : {instance.m, 2 * instance.m}) {
    if (M != instance.m && !(allow_widening && special)) break;
    if (auto chi = oracle_search(instance, M, cap, exec)) {
      out.character = *chi;
      out.exponent_achieved = M;
      out.cycle = out.character.conductor();
      return out;
    }
  }
  throw NotFoundBelowCap("no character with the prescribed components has conductor <= " + std::to_string(cap));
}

// ---------------------------------------------------------------------------
// Bound report

BoundReport bound_report(const GrunwaldInstance& instance, const GrunwaldSolution& solution, double epsilon,
                         bool delta_refinement) {
  const auto [l, r] = exponent_split(instance.m);
  const auto S = instance.S();
  int finite = 0;
  for (const auto& v : S) finite += v.is_finite() ? 1 : 0;
  const int s_union_inf = finite + 1;

  BoundReport rep;
  rep.D = 0;  // the S-class group of Q is trivial
  rep.delta_prime = (l % 2 == 1) ? 1 : 0;
  rep.delta = (instance.m == 2) ? 0 : 1;
  if (delta_refinement && rep.delta == 1 && !contains(S, Place::finite(l))) rep.delta = 0;
  rep.e = s_union_inf + rep.D - rep.delta_prime;
  rep.selmer_rank = rep.e;
  const u64 degree = instance.m / l * (l - 1);  // [Q(zeta_m):Q]
  rep.E1 = degree * static_cast<u64>(rep.e) + static_cast<u64>(rep.delta);

  const double log_ns = std::log(static_cast<double>(instance.norm_S()));
  double log_prescribed = 0;
  for (const auto& chi : instance.places) {
    if (chi.place.is_finite()) log_prescribed += chi.conductor_exponent * std::log(static_cast<double>(chi.place.prime));
  }
  rep.bound_TM1_shape = static_cast<double>(instance.m) * s_union_inf * (log_ns + r * std::log(static_cast<double>(l)));
  rep.bound_TM2_exponent = static_cast<double>(rep.E1) * (0.5 + epsilon);
  rep.bound_TM2_log_shape = rep.bound_TM2_exponent * log_ns + log_prescribed;
  rep.bound_TM3_log_shape =
      2.0 * (rep.e + rep.delta) * std::log(log_ns + std::log(static_cast<double>(l))) + log_prescribed;
  rep.bpi = solution.conductor();
  rep.achieved_log_conductor = std::log(static_cast<double>(rep.bpi));
  rep.tm1_ratio = rep.achieved_log_conductor / rep.bound_TM1_shape;
  rep.bpv = solution.cycle.finite_part.fits_u64() ? solution.cycle.finite_part.value() : 0;
  return rep;
}

}  // namespace gw
