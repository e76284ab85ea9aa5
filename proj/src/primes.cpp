#include "fsim/primes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace fsim {

namespace {
constexpr u64 kSegmentOdds = 1u << 20;  // odds per sieving segment
constexpr u64 kBlockWords = 8;          // words per cumulative-count block
}  // namespace

PrimeTable::PrimeTable(u64 limit) : limit_(limit) {
  if (limit < 2) throw std::invalid_argument("sieve limit must be >= 2");
  u64 n_odds = limit / 2 + 1;  // odd numbers 1, 3, ..., <= limit
  u64 n_words = (n_odds + 63) / 64;
  bits_.assign(n_words, ~u64{0});
  // mask bits beyond limit in the last word
  u64 tail = n_odds % 64;
  if (tail) bits_.back() &= (~u64{0} >> (64 - tail));
  bits_[0] &= ~u64{1};  // 1 is not prime

  // base primes up to sqrt(limit)
  u64 root = static_cast<u64>(std::sqrt(static_cast<double>(limit)));
  while ((root + 1) * (root + 1) <= limit) ++root;
  std::vector<char> base(root + 1, 1);
  std::vector<u64> base_primes;
  for (u64 i = 3; i <= root; i += 2) {
    if (!base[i]) continue;
    if (i * i <= root)
      for (u64 k = i * i; k <= root; k += 2 * i) base[k] = 0;
    base_primes.push_back(i);
  }

  // cross off odd composites segment by segment
  for (u64 seg_lo = 0; seg_lo < n_odds; seg_lo += kSegmentOdds) {
    u64 seg_hi = std::min(seg_lo + kSegmentOdds, n_odds);  // odd indices
    u64 lo_val = 2 * seg_lo + 1, hi_val = 2 * (seg_hi - 1) + 1;
    for (u64 p : base_primes) {
      if (p * p > hi_val) break;
      u64 start = p * p;
      if (start < lo_val) {
        u64 m = (lo_val + p - 1) / p;
        if ((m & 1) == 0) ++m;
        start = m * p;
      }
      for (u64 v = start; v <= hi_val; v += 2 * p)
        bits_[(v >> 1) >> 6] &= ~(u64{1} << ((v >> 1) & 63));
    }
  }

  // cumulative counts: primes (2 included) strictly below each block
  u64 n_blocks = (n_words + kBlockWords - 1) / kBlockWords;
  block_pi_.resize(n_blocks);
  u64 running = 1;  // the prime 2
  for (u64 b = 0; b < n_blocks; ++b) {
    block_pi_[b] = running;
    u64 end = std::min((b + 1) * kBlockWords, n_words);
    for (u64 w = b * kBlockWords; w < end; ++w)
      running += std::popcount(bits_[w]);
  }
}

bool PrimeTable::is_prime(u64 n) const {
  if (n > limit_) throw CapacityExceeded("is_prime beyond sieve limit");
  if (n == 2) return true;
  if (n < 2 || (n & 1) == 0) return false;
  return bit(n >> 1);
}

u64 PrimeTable::pi(u64 x) const {
  if (x > limit_) throw CapacityExceeded("pi beyond sieve limit");
  if (x < 2) return 0;
  if (x == 2) return 1;
  u64 last = (x & 1) ? (x >> 1) : ((x - 1) >> 1);  // index of last odd <= x
  u64 word = last >> 6;
  u64 count = block_pi_[word / kBlockWords];
  for (u64 w = (word / kBlockWords) * kBlockWords; w < word; ++w)
    count += std::popcount(bits_[w]);
  u64 keep = (last & 63) + 1;
  u64 mask = keep == 64 ? ~u64{0} : ((u64{1} << keep) - 1);
  count += std::popcount(bits_[word] & mask);
  return count;
}

u64 PrimeTable::nth_prime(u64 n) const {
  if (n == 0) throw std::invalid_argument("nth_prime requires n >= 1");
  if (n == 1) return 2;
  if (n > prime_count()) throw CapacityExceeded("nth_prime beyond sieve");
  // binary search on blocks, then walk
  u64 lo = 0, hi = block_pi_.size();
  while (hi - lo > 1) {
    u64 mid = (lo + hi) / 2;
    if (block_pi_[mid] < n) lo = mid;
    else hi = mid;
  }
  u64 count = block_pi_[lo];
  for (u64 w = lo * kBlockWords; w < bits_.size(); ++w) {
    u64 bits = bits_[w];
    u64 pc = std::popcount(bits);
    if (count + pc < n) { count += pc; continue; }
    while (bits) {
      int b = std::countr_zero(bits);
      bits &= bits - 1;
      if (++count == n) return 2 * (64 * w + b) + 1;
    }
  }
  throw CapacityExceeded("nth_prime beyond sieve");
}

u64 PrimeTable::next_prime(u64 n) const {
  for (u64 v = n + 1;; ++v) {
    if (v > limit_) throw CapacityExceeded("next_prime beyond sieve");
    if (is_prime(v)) return v;
  }
}

u64 PrimeTable::prev_prime(u64 n) const {
  if (n <= 2) throw std::invalid_argument("no prime below 2");
  for (u64 v = std::min(n - 1, limit_);; --v)
    if (is_prime(v)) return v;
}

// ---------------------------------------------------------------------------

u64 pi_sublinear(u64 x) {
  if (x < 2) return 0;
  // S(v) starts as (count of 2..v) and after sieving by all primes
  // p <= sqrt(x) holds pi(v) for every key value v = x / i.
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(x)));
  while ((r + 1) * (r + 1) <= x) ++r;
  while (r * r > x) --r;

  std::vector<u64> sbig(r + 1);   // S(x / i) for i = 1..r
  std::vector<u64> ssml(r + 1);   // S(v) for v = 0..r
  for (u64 i = 1; i <= r; ++i) sbig[i] = x / i - 1;
  for (u64 v = 0; v <= r; ++v) ssml[v] = v ? v - 1 : 0;

  for (u64 p = 2; p <= r; ++p) {
    if (ssml[p] == ssml[p - 1]) continue;  // p not prime
    u64 sp = ssml[p - 1];                  // pi(p - 1)
    u64 p2 = p * p;
    u64 imax = std::min(r, x / p2);
    for (u64 i = 1; i <= imax; ++i) {
      u64 d = i * p;
      u64 term = (d <= r) ? sbig[d] : ssml[x / d];
      sbig[i] -= term - sp;
    }
    for (u64 v = r; v >= p2; --v) ssml[v] -= ssml[v / p] - sp;
  }
  return sbig[1];
}

// ---------------------------------------------------------------------------

PiOracle::PiOracle(std::shared_ptr<const PrimeTable> table,
                   std::filesystem::path cache_path)
    : table_(std::move(table)), cache_path_(std::move(cache_path)) {
  if (!table_) throw std::invalid_argument("PiOracle requires a table");
  if (!cache_path_.empty()) load_cache();
}

u64 PiOracle::pi(u64 x) const {
  if (x <= table_->limit()) return table_->pi(x);
  std::lock_guard lock(mutex_);
  auto it = cache_.find(x);
  if (it != cache_.end()) return it->second;
  u64 value = pi_sublinear(x);
  cache_.emplace(x, value);
  return value;
}

void PiOracle::load_cache() {
  std::ifstream in(cache_path_);
  if (!in) return;  // absent cache is fine
  std::string line;
  u64 prev = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    u64 x, count;
    char tab;
    if (!(ls >> x) || !ls.get(tab) || tab != '\t' || !(ls >> count))
      throw std::runtime_error("malformed pi cache line: " + line);
    if (x < prev) throw std::runtime_error("pi cache not sorted");
    prev = x;
    cache_.emplace(x, count);
  }
}

void PiOracle::save_cache() const {
  if (cache_path_.empty()) return;
  std::lock_guard lock(mutex_);
  std::ofstream out(cache_path_, std::ios::trunc);
  for (auto& [x, count] : cache_) out << x << '\t' << count << '\n';
}

}  // namespace fsim
