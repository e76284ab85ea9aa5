#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "fsim/primes.hpp"

using namespace fsim;

namespace {

bool trial_division_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

const PrimeTable& table_1e6() {
  static PrimeTable table(1000000);
  return table;
}

}  // namespace

TEST_CASE("sieve basics") {
  PrimeTable small(100);
  CHECK(small.pi(100) == 25);
  CHECK(small.pi(1) == 0);
  CHECK(small.pi(2) == 1);
  CHECK(small.is_prime(2));
  CHECK(small.is_prime(97));
  CHECK(!small.is_prime(1));
  CHECK(!small.is_prime(91));
  CHECK_THROWS_AS(PrimeTable(1), std::invalid_argument);
  CHECK_THROWS_AS(small.pi(101), CapacityExceeded);
}

TEST_CASE("nth_prime and neighbors") {
  PrimeTable table(2100);
  CHECK(table.nth_prime(1) == 2);
  CHECK(table.nth_prime(2) == 3);
  CHECK(table.nth_prime(304) == 2003);
  CHECK(table.nth_prime(305) == 2011);  // capacity: 2011 <= 2100
  CHECK(table.pi(2003) == 304);
  CHECK(table.pi(2002) == 303);
  CHECK(table.next_prime(2003) == 2011);
  CHECK(table.prev_prime(2003) == 1999);
  CHECK_THROWS_AS(table.nth_prime(0), std::invalid_argument);
  CHECK_THROWS_AS(table.nth_prime(100000), CapacityExceeded);
}

TEST_CASE("primality matches trial division below 1e4") {
  const PrimeTable& table = table_1e6();
  for (u64 n = 0; n <= 10000; ++n)
    CHECK(table.is_prime(n) == trial_division_prime(n));
}

TEST_CASE("pi round trips through nth_prime") {
  const PrimeTable& table = table_1e6();
  for (u64 n : {u64{1}, u64{10}, u64{100}, u64{1000}, u64{10000}, u64{78498}}) {
    u64 p = table.nth_prime(n);
    CHECK(table.pi(p) == n);
    CHECK(table.pi(p - 1) == n - 1);
  }
}

TEST_CASE("for_primes enumerates a window") {
  const PrimeTable& table = table_1e6();
  std::vector<u64> got;
  table.for_primes(90, 110, [&](u64 p) { got.push_back(p); });
  CHECK(got == std::vector<u64>{97, 101, 103, 107, 109});
  got.clear();
  table.for_primes(2, 11, [&](u64 p) { got.push_back(p); });
  CHECK(got == std::vector<u64>{2, 3, 5, 7, 11});
}

TEST_CASE("sublinear counter agrees with the sieve") {
  const PrimeTable& table = table_1e6();
  CHECK(pi_sublinear(1000000) == 78498);
  CHECK(pi_sublinear(2) == 1);
  CHECK(pi_sublinear(1) == 0);
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<u64> dist(2, 1000000);
  for (int i = 0; i < 1000; ++i) {
    u64 x = dist(rng);
    CHECK(pi_sublinear(x) == table.pi(x));
  }
}

TEST_CASE("sublinear counter at large arguments") {
  CHECK(pi_sublinear(100000000) == 5761455);
}

TEST_CASE("oracle dispatches between sieve and sublinear") {
  auto table = std::make_shared<const PrimeTable>(100000);
  PiOracle oracle(table);
  CHECK(oracle.pi(99991) == table->pi(99991));
  CHECK(oracle.pi(1000000) == 78498);  // beyond the table
  CHECK(oracle.pi(1000000) == 78498);  // cached path
}

TEST_CASE("oracle cache round trip") {
  auto path = std::filesystem::temp_directory_path() / "fsim_pi_cache_test.txt";
  std::filesystem::remove(path);
  auto table = std::make_shared<const PrimeTable>(1000);
  {
    PiOracle oracle(table, path);
    CHECK(oracle.pi(200000) == 17984);
    oracle.save_cache();
  }
  {
    PiOracle oracle(table, path);
    CHECK(oracle.pi(200000) == 17984);
  }
  std::filesystem::remove(path);
}
