#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bohr/errors.hpp"

namespace bohr {

using Index = std::uint64_t;

// Exponent vector of a prime factorization: position j (1-based) holds the
// exponent of the j-th prime. Canonical form trims trailing zeros, so the
// index 1 is the empty vector.
struct MultiIndex {
  std::vector<std::uint32_t> exponents;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<std::uint32_t> e) : exponents(std::move(e)) { trim(); }

  void trim() {
    while (!exponents.empty() && exponents.back() == 0) exponents.pop_back();
  }
  std::uint32_t at(std::size_t position) const {  // 1-based
    return position >= 1 && position <= exponents.size() ? exponents[position - 1] : 0;
  }
  std::size_t width() const { return exponents.size(); }
  std::uint64_t degree() const {
    std::uint64_t d = 0;
    for (auto e : exponents) d += e;
    return d;
  }
  bool operator==(const MultiIndex& other) const = default;

  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r;
    r.exponents.resize(std::max(a.exponents.size(), b.exponents.size()), 0);
    for (std::size_t i = 0; i < r.exponents.size(); ++i)
      r.exponents[i] = a.at(i + 1) + b.at(i + 1);
    return r;
  }
};

// Smallest-prime-factor sieve plus the prime list it induces. Built once,
// read-only afterwards; every operation below is pure.
class PrimeTable {
 public:
  static constexpr Index kDefaultLimit = 1'000'000;

  explicit PrimeTable(Index limit = kDefaultLimit);

  // Shared instance with the default limit.
  static const PrimeTable& standard();

  Index limit() const { return limit_; }
  const std::vector<Index>& primes() const { return primes_; }
  std::size_t prime_count() const { return primes_.size(); }

  bool is_prime(Index n) const;
  // j-th prime, 1-based position.
  Index prime_at(std::size_t position) const;
  // 1-based position of p in the prime sequence, nullopt if p is not prime
  // or beyond the table.
  std::optional<std::size_t> position_of(Index p) const;

  // Ascending (prime, exponent) pairs with product n. n=1 gives an empty list.
  std::vector<std::pair<Index, std::uint32_t>> factorize(Index n) const;

  MultiIndex multi_index(Index n) const;
  // Inverse of multi_index; range error once the product exceeds limit().
  Index index_of(const MultiIndex& alpha) const;

  // 0 on square factors, else (-1)^(number of prime factors).
  int mobius(Index n) const;

  // All divisors of n, ascending. Enumerated from the exponent vector.
  std::vector<Index> divisors(Index n) const;

 private:
  void check_range(Index n) const;

  Index limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<Index> primes_;
  std::unordered_map<Index, std::size_t> positions_;
};

}  // namespace bohr
