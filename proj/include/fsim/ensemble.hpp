#ifndef FSIM_ENSEMBLE_HPP
#define FSIM_ENSEMBLE_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fsim/primes.hpp"

namespace fsim {

struct EnsembleEntry {
  u64 x;     // smaller prime factor
  u64 y;     // larger prime cofactor
  u64 n_k;   // x * y
  u64 pi_x;
  u64 pi_y;

  bool operator==(const EnsembleEntry&) const = default;
};

// F(j): all prime pairs (x, y), x <= y, with p_j^2 <= x*y < p_{j+1}^2.
class Ensemble {
 public:
  Ensemble(u64 j, u64 p_j, u64 p_j1, std::vector<EnsembleEntry> entries);

  u64 j() const { return j_; }
  u64 p_j() const { return p_j_; }
  u64 p_j1() const { return p_j1_; }
  u64 size() const { return entries_.size(); }
  const std::vector<EnsembleEntry>& entries() const { return entries_; }
  const std::map<u64, u64>& per_x_counts() const { return per_x_counts_; }

  // entries with this smaller factor, 0 when absent
  u64 count_for(u64 x) const;
  // #entries whose smaller factor is <= x
  u64 cumulative_count(u64 x) const;

 private:
  u64 j_, p_j_, p_j1_;
  std::vector<EnsembleEntry> entries_;  // ascending (x, y)
  std::map<u64, u64> per_x_counts_;
};

// (p_j, p_{j+1}) via a bootstrap sieve sized from the PNT bound.
std::pair<u64, u64> prime_window(u64 j);

// Sieve limit build_ensemble needs: largest possible cofactor (p_{j+1}^2-1)/2.
u64 ensemble_sieve_limit(u64 j);

Ensemble build_ensemble(u64 j, const PiOracle& oracle);

std::optional<std::pair<u64, u64>> membership(u64 n, u64 j,
                                              const PiOracle& oracle);

struct CardinalityEstimate {
  double evaluated;   // sqrt(N)(log log sqrt(N) + 1)
  double prime_sum;   // sum over primes p <= sqrt(N) of sqrt(N)/p
};

CardinalityEstimate cardinality_estimate(u64 j, const PiOracle& oracle);

struct CoprimeStat {
  u64 x;
  u64 observed;
  double predicted;  // sqrt(N)/x
};

std::vector<CoprimeStat> coprime_statistics(const Ensemble& e);

// header "x,y,n_k,pi_x,pi_y", ascending (x, y)
void write_ensemble_csv(const Ensemble& e, std::ostream& out);

}  // namespace fsim

#endif
