#include "fsim/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace fsim {

Ensemble::Ensemble(u64 j, u64 p_j, u64 p_j1, std::vector<EnsembleEntry> entries)
    : j_(j), p_j_(p_j), p_j1_(p_j1), entries_(std::move(entries)) {
  for (const auto& e : entries_) ++per_x_counts_[e.x];
}

u64 Ensemble::count_for(u64 x) const {
  auto it = per_x_counts_.find(x);
  return it == per_x_counts_.end() ? 0 : it->second;
}

u64 Ensemble::cumulative_count(u64 x) const {
  u64 total = 0;
  for (const auto& [p, c] : per_x_counts_) {
    if (p > x) break;
    total += c;
  }
  return total;
}

std::pair<u64, u64> prime_window(u64 j) {
  if (j < 1) throw std::invalid_argument("prime_window requires j >= 1");
  double dj = static_cast<double>(std::max<u64>(j + 1, 6));
  // PNT upper bound p_n < n(ln n + ln ln n) for n >= 6
  u64 bound = static_cast<u64>(dj * (std::log(dj) + std::log(std::log(dj)))) + 16;
  PrimeTable table(bound);
  return {table.nth_prime(j), table.nth_prime(j + 1)};
}

u64 ensemble_sieve_limit(u64 j) {
  auto [pj, pj1] = prime_window(j);
  (void)pj;
  return (pj1 * pj1 - 1) / 2;
}

Ensemble build_ensemble(u64 j, const PiOracle& oracle) {
  auto [pj, pj1] = prime_window(j);
  u64 lo = pj * pj, hi = pj1 * pj1;  // window [lo, hi)
  u64 y_max = (hi - 1) / 2;
  const PrimeTable& table = oracle.table();
  if (table.limit() < y_max)
    throw CapacityExceeded("sieve limit below ensemble cofactor range");

  std::vector<EnsembleEntry> entries;
  table.for_primes(2, pj, [&](u64 x) {
    u64 ylo = std::max(x, (lo + x - 1) / x);
    u64 yhi = (hi - 1) / x;
    table.for_primes(ylo, yhi, [&](u64 y) {
      entries.push_back({x, y, x * y, table.pi(x), table.pi(y)});
    });
  });
  return Ensemble(j, pj, pj1, std::move(entries));
}

std::optional<std::pair<u64, u64>> membership(u64 n, u64 j,
                                              const PiOracle& oracle) {
  if (n < 4) return std::nullopt;
  auto [pj, pj1] = prime_window(j);
  if (n < pj * pj || n >= pj1 * pj1) return std::nullopt;
  const PrimeTable& table = oracle.table();
  u64 root = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while ((root + 1) * (root + 1) <= n) ++root;
  while (root * root > n) --root;
  for (u64 x = 2; x <= root; x = table.next_prime(x)) {
    if (n % x) continue;
    u64 y = n / x;
    if (y > table.limit()) throw CapacityExceeded("membership cofactor beyond sieve");
    if (table.is_prime(y)) return std::make_pair(x, y);
    return std::nullopt;  // smallest prime factor leaves a composite cofactor
  }
  return std::nullopt;  // n prime (or 1 factor repeated beyond the window)
}

CardinalityEstimate cardinality_estimate(u64 j, const PiOracle& oracle) {
  if (j < 2) throw std::invalid_argument("cardinality_estimate requires j >= 2");
  auto [pj, pj1] = prime_window(j);
  (void)pj1;
  double sq_n = static_cast<double>(pj);
  CardinalityEstimate est{};
  est.evaluated = sq_n * (std::log(std::log(sq_n)) + 1.0);
  est.prime_sum = 0.0;
  oracle.table().for_primes(2, pj, [&](u64 p) {
    est.prime_sum += sq_n / static_cast<double>(p);
  });
  return est;
}

std::vector<CoprimeStat> coprime_statistics(const Ensemble& e) {
  if (e.size() == 0) throw std::invalid_argument("empty ensemble");
  double sq_n = static_cast<double>(e.p_j());
  std::vector<CoprimeStat> stats;
  stats.reserve(e.per_x_counts().size());
  for (const auto& [x, c] : e.per_x_counts())
    stats.push_back({x, c, sq_n / static_cast<double>(x)});
  return stats;
}

void write_ensemble_csv(const Ensemble& e, std::ostream& out) {
  out << "x,y,n_k,pi_x,pi_y\n";
  for (const auto& entry : e.entries())
    out << entry.x << ',' << entry.y << ',' << entry.n_k << ',' << entry.pi_x
        << ',' << entry.pi_y << '\n';
}

}  // namespace fsim
