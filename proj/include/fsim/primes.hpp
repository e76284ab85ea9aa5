#ifndef FSIM_PRIMES_HPP
#define FSIM_PRIMES_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace fsim {

using u64 = std::uint64_t;

struct CapacityExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sieve of Eratosthenes over the odd integers, built segment by segment.
// Storage is one bit per odd number plus a cumulative prime count every
// 8 words, so pi() needs at most 8 popcounts.
class PrimeTable {
 public:
  explicit PrimeTable(u64 limit);

  u64 limit() const { return limit_; }
  bool is_prime(u64 n) const;
  u64 pi(u64 x) const;                 // #primes <= x, requires x <= limit
  u64 nth_prime(u64 n) const;          // throws CapacityExceeded past limit
  u64 next_prime(u64 n) const;         // smallest prime > n
  u64 prev_prime(u64 n) const;         // largest prime < n, n > 2
  u64 prime_count() const { return pi(limit_); }

  // Calls f(p) for every prime p in [lo, hi].
  template <typename F>
  void for_primes(u64 lo, u64 hi, F&& f) const {
    if (hi > limit_) throw CapacityExceeded("for_primes beyond sieve limit");
    if (lo <= 2 && hi >= 2) f(u64{2});
    u64 start = std::max<u64>(lo | 1, 3);
    for (u64 n = start; n <= hi; n += 2)
      if (bit(n >> 1)) f(n);
  }

 private:
  bool bit(u64 odd_index) const {
    return (bits_[odd_index >> 6] >> (odd_index & 63)) & 1;
  }

  u64 limit_;
  std::vector<u64> bits_;       // bit i <-> 2i+1 is prime (bit 0 cleared: 1)
  std::vector<u64> block_pi_;   // primes below each 8-word block, 2 included
};

inline PrimeTable sieve(u64 limit) { return PrimeTable(limit); }

// Exact prime count for arguments beyond any reasonable sieve, by the
// recursive "count numbers with no small prime factor" method in
// O(x^(3/4)) time and O(sqrt x) space.
u64 pi_sublinear(u64 x);

// Exact pi(x) at any scale: sieve table below its limit, sublinear counting
// above, with a persistent cache of large results.
class PiOracle {
 public:
  explicit PiOracle(std::shared_ptr<const PrimeTable> table,
                    std::filesystem::path cache_path = {});

  u64 pi(u64 x) const;
  const PrimeTable& table() const { return *table_; }
  void save_cache() const;

 private:
  void load_cache();

  std::shared_ptr<const PrimeTable> table_;
  std::filesystem::path cache_path_;
  mutable std::map<u64, u64> cache_;
  mutable std::mutex mutex_;
};

}  // namespace fsim

#endif
