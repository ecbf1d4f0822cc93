#include <doctest.h>

#include "bohr/arith.hpp"
#include "oracles.hpp"

using namespace bohr;

TEST_CASE("factorize basics") {
  const auto& t = PrimeTable::standard();
  CHECK(t.factorize(1).empty());

  auto f12 = t.factorize(12);
  REQUIRE(f12.size() == 2);
  CHECK(f12[0] == std::pair<Index, std::uint32_t>{2, 2});
  CHECK(f12[1] == std::pair<Index, std::uint32_t>{3, 1});

  // 9699690 is the product of the first 8 primes; verified by direct
  // multiplication right here. Beyond the default limit, so a bigger table.
  Index primorial = 1;
  for (std::size_t j = 1; j <= 8; ++j) primorial *= t.prime_at(j);
  CHECK(primorial == 9699690);
  PrimeTable wide(10'000'000);
  auto f = wide.factorize(9699690);
  REQUIRE(f.size() == 8);
  for (std::size_t j = 0; j < 8; ++j) {
    CHECK(f[j].first == wide.prime_at(j + 1));
    CHECK(f[j].second == 1);
  }

  CHECK_THROWS_AS(t.factorize(0), domain_error);
  CHECK_THROWS_AS(t.factorize(t.limit() + 1), domain_error);
}

TEST_CASE("multi_index and index_of") {
  const auto& t = PrimeTable::standard();
  CHECK(t.multi_index(1).exponents.empty());
  CHECK(t.multi_index(12).exponents == std::vector<std::uint32_t>{2, 1});
  CHECK(t.multi_index(50).exponents == std::vector<std::uint32_t>{1, 0, 2});
  CHECK(t.index_of(t.multi_index(50)) == 50);

  CHECK(t.index_of(MultiIndex{}) == 1);
  CHECK(t.index_of(MultiIndex{{2, 1}}) == 12);
  CHECK(t.index_of(MultiIndex{{0, 0, 0, 1}}) == 7);

  // overflow beyond the table limit is a hard error
  CHECK_THROWS_AS(t.index_of(MultiIndex{{64}}), domain_error);
}

TEST_CASE("round trip on an initial segment") {
  const auto& t = PrimeTable::standard();
  for (Index n = 1; n <= 5000; ++n) CHECK(t.index_of(t.multi_index(n)) == n);
}

TEST_CASE("semigroup homomorphism alpha(mn) = alpha(m) + alpha(n)") {
  const auto& t = PrimeTable::standard();
  std::mt19937 rng(7);
  std::uniform_int_distribution<Index> pick(1, 999);
  for (int i = 0; i < 500; ++i) {
    Index m = pick(rng), n = pick(rng);
    CHECK(t.multi_index(m * n) == t.multi_index(m) + t.multi_index(n));
  }
}

TEST_CASE("mobius") {
  const auto& t = PrimeTable::standard();
  CHECK(t.mobius(1) == 1);
  CHECK(t.mobius(6) == 1);
  CHECK(t.mobius(12) == 0);
  CHECK(t.mobius(30) == -1);

  // sum_{k|n} mu(k) vanishes for n >= 2 and equals 1 at n = 1
  for (Index n = 1; n <= 2000; ++n) {
    int sum = 0;
    for (Index k : t.divisors(n)) sum += t.mobius(k);
    CHECK(sum == (n == 1 ? 1 : 0));
  }
}

TEST_CASE("divisors") {
  const auto& t = PrimeTable::standard();
  CHECK(t.divisors(1) == std::vector<Index>{1});
  CHECK(t.divisors(12) == std::vector<Index>{1, 2, 3, 4, 6, 12});
  CHECK(t.divisors(28) == oracle::divisors_brute(28));

  std::mt19937 rng(11);
  std::uniform_int_distribution<Index> pick(1, 4000);
  for (int i = 0; i < 50; ++i) {
    Index n = pick(rng);
    CHECK(t.divisors(n) == oracle::divisors_brute(n));
    std::size_t count = 1;
    for (const auto& [p, e] : t.factorize(n)) count *= e + 1;
    CHECK(t.divisors(n).size() == count);
  }
}

TEST_CASE("prime table determinism and positions") {
  PrimeTable small(100);
  CHECK(small.primes() == std::vector<Index>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41,
                                             43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97});
  CHECK(small.position_of(7) == 4);
  CHECK_FALSE(small.position_of(8).has_value());
  CHECK(small.is_prime(97));
  CHECK_FALSE(small.is_prime(91));
}
