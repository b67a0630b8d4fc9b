#include "gw/mult_one.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>

#include "gw/errors.hpp"

namespace gw {

namespace {

bool excluded(const std::vector<Place>& S, u64 p) {
  return std::find(S.begin(), S.end(), Place::finite(p)) != S.end();
}

u64 norm_of(const std::vector<Place>& S) {
  u64 n = 1;
  for (const auto& v : S) n *= v.norm();
  return n;
}

// chi(q) as a zeta_m-exponent from the dlog of q.
u64 value(const std::vector<u64>& exps, const std::vector<u64>& dlog, u64 m) {
  u64 s = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) s = (s + static_cast<u64>(static_cast<u128>(exps[i]) * dlog[i] % m)) % m;
  return s;
}

// Primitive characters of conductor exactly N, lexicographic in the exponent vector.
std::vector<std::vector<u64>> primitive_characters(const UnitGroupStructure& G) {
  const u64 m = G.exponent();
  std::vector<std::vector<std::vector<u64>>> parts;
  for (const auto& c : G.components()) {
    parts.push_back(primitive_component_characters(c, m));
    if (parts.back().empty()) return {};
  }
  std::vector<std::vector<u64>> out;
  std::vector<std::size_t> idx(parts.size(), 0);
  while (true) {
    std::vector<u64> e;
    for (std::size_t i = 0; i < parts.size(); ++i) e.insert(e.end(), parts[i][idx[i]].begin(), parts[i][idx[i]].end());
    out.push_back(std::move(e));
    std::size_t j = parts.size();
    while (j-- > 0) {
      if (++idx[j] < parts[j].size()) break;
      idx[j] = 0;
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

std::vector<ScanRecord> scan_conductor(u64 N, const std::vector<Place>& S, double eps, u64 cap) {
  std::vector<ScanRecord> out;
  if (N < 3 || N % 4 == 2) return out;
  const UnitGroupStructure G(factor(N));
  const auto chars = primitive_characters(G);
  if (chars.empty()) return out;
  const u64 m = G.exponent();
  const u64 ns = norm_of(S);
  const double log_A = std::log(static_cast<double>(N)) + std::log(static_cast<double>(ns));
  const double scale_B = std::pow(static_cast<double>(N), 0.5 + eps) * std::pow(static_cast<double>(ns), eps);

  // Candidate primes with their dlogs, extended on demand.
  std::vector<std::pair<u64, std::vector<u64>>> candidates;
  u64 last = 1;
  auto candidate = [&](std::size_t i) -> const std::pair<u64, std::vector<u64>>* {
    while (candidates.size() <= i) {
      last = next_prime(last);
      if (last > cap) return nullptr;
      if (N % last == 0 || excluded(S, last)) continue;
      candidates.emplace_back(last, G.dlog(last));
    }
    return &candidates[i];
  };

  for (const auto& e : chars) {
    ScanRecord rec;
    rec.conductor = N;
    rec.modulus = N;
    rec.exponent_modulus = m;
    rec.exponents = e;
    rec.S_norm = ns;
    rec.log_A = log_A;
    for (std::size_t i = 0;; ++i) {
      const auto* c = candidate(i);
      if (!c) {
        rec.capped = true;
        break;
      }
      if (value(e, c->second, m) != 0) {
        rec.least_prime = c->first;
        break;
      }
    }
    if (!rec.capped) {
      const double p = static_cast<double>(rec.least_prime);
      rec.ratio_A = std::log(p) / log_A;
      rec.ratio_B = p / scale_B;
      rec.ratio_C = p / (log_A * log_A);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

PrimeWitness least_nonsplit_prime(const DirichletCharacter& chi, const std::vector<Place>& S, u64 cap) {
  const auto prim = chi.primitive();
  if (prim.is_trivial()) throw NoWitnessError("least_nonsplit_prime: the character is trivial");
  const u64 N = prim.modulus();
  for (u64 p = 2; p <= cap; p = next_prime(p)) {
    if (N % p == 0 || excluded(S, p)) continue;
    const u64 v = *prim.evaluate(static_cast<i64>(p));
    if (v != 0) return {p, p, v};
  }
  throw SearchCapError("least_nonsplit_prime: no prime below " + std::to_string(cap));
}

u64 analytic_conductor_S(const DirichletCharacter& chi, const std::vector<Place>& S) {
  return chi.conductor().norm() * norm_of(S);
}

std::vector<ScanRecord> scan_family(u64 max_conductor, const std::vector<Place>& S, double epsilon, u64 cap,
                                    Execution exec) {
  if (!(epsilon > 0)) throw DomainError("scan: epsilon must be positive");
  std::vector<std::vector<ScanRecord>> per(max_conductor + 1);
  if (exec == Execution::serial) {
    for (u64 N = 1; N <= max_conductor; ++N) per[N] = scan_conductor(N, S, epsilon, cap);
  } else {
    const auto n = static_cast<std::int64_t>(max_conductor);
    std::exception_ptr failure;
    // Larger conductors cost more; hand them out first.
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = n; i >= 1; --i) {
      try {
        per[static_cast<std::size_t>(i)] = scan_conductor(static_cast<u64>(i), S, epsilon, cap);
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
  std::vector<ScanRecord> out;
  for (auto& v : per) std::move(v.begin(), v.end(), std::back_inserter(out));
  return out;
}

void write_scan_csv(std::ostream& out, const std::vector<ScanRecord>& records) {
  out << "conductor,modulus,char_exponents,S,least_prime,log_A,ratio_A,ratio_B,ratio_C\n";
  char buf[160];
  for (const auto& r : records) {
    out << r.conductor << ',' << r.modulus << ',';
    for (std::size_t i = 0; i < r.exponents.size(); ++i) out << (i ? ";" : "") << r.exponents[i];
    out << ',' << r.S_norm << ',';
    if (r.capped) {
      std::snprintf(buf, sizeof buf, "capped,%.9f,,,", r.log_A);
    } else {
      std::snprintf(buf, sizeof buf, "%llu,%.9f,%.9f,%.9f,%.9f", static_cast<unsigned long long>(r.least_prime),
                    r.log_A, r.ratio_A, r.ratio_B, r.ratio_C);
    }
    out << buf << '\n';
  }
}

ScanSummary summarize_scan(const std::vector<ScanRecord>& records, u64 max_conductor) {
  ScanSummary s;
  s.decile_max_ratio_C.assign(10, 0.0);
  for (const auto& r : records) {
    ++s.records;
    if (r.capped) {
      ++s.capped;
      continue;
    }
    s.max_ratio_A = std::max(s.max_ratio_A, r.ratio_A);
    s.max_ratio_B = std::max(s.max_ratio_B, r.ratio_B);
    if (r.ratio_C > s.max_ratio_C) {
      s.max_ratio_C = r.ratio_C;
      s.argmax_ratio_C = r.conductor;
    }
    const auto d = std::min<u64>(9, (r.conductor - 1) * 10 / std::max<u64>(max_conductor, 1));
    s.decile_max_ratio_C[d] = std::max(s.decile_max_ratio_C[d], r.ratio_C);
  }
  return s;
}

}  // namespace gw
