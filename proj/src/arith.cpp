#include "bohr/arith.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace bohr {

PrimeTable::PrimeTable(Index limit) : limit_(limit) {
  if (limit < 2) throw validation_error("PrimeTable limit must be at least 2");
  if (limit > std::numeric_limits<std::uint32_t>::max())
    throw validation_error("PrimeTable limit exceeds sieve capacity");
  spf_.assign(limit_ + 1, 0);
  for (Index i = 2; i <= limit_; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(i);
      for (Index j = i * i; j <= limit_; j += i)
        if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
    }
  }
  positions_.reserve(primes_.size());
  for (std::size_t k = 0; k < primes_.size(); ++k) positions_[primes_[k]] = k + 1;
}

const PrimeTable& PrimeTable::standard() {
  static const PrimeTable table(kDefaultLimit);
  return table;
}

void PrimeTable::check_range(Index n) const {
  if (n < 1 || n > limit_)
    throw domain_error("integer " + std::to_string(n) + " outside factorizable range [1, " +
                       std::to_string(limit_) + "]");
}

bool PrimeTable::is_prime(Index n) const {
  check_range(n);
  return n >= 2 && spf_[n] == n;
}

Index PrimeTable::prime_at(std::size_t position) const {
  if (position < 1 || position > primes_.size())
    throw domain_error("prime position " + std::to_string(position) + " beyond table");
  return primes_[position - 1];
}

std::optional<std::size_t> PrimeTable::position_of(Index p) const {
  auto it = positions_.find(p);
  if (it == positions_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<Index, std::uint32_t>> PrimeTable::factorize(Index n) const {
  check_range(n);
  std::vector<std::pair<Index, std::uint32_t>> factors;
  while (n > 1) {
    Index p = spf_[n];
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    factors.emplace_back(p, e);
  }
  return factors;
}

MultiIndex PrimeTable::multi_index(Index n) const {
  auto factors = factorize(n);
  MultiIndex alpha;
  if (factors.empty()) return alpha;
  std::size_t top = *position_of(factors.back().first);
  alpha.exponents.assign(top, 0);
  for (const auto& [p, e] : factors) alpha.exponents[*position_of(p) - 1] = e;
  return alpha;
}

Index PrimeTable::index_of(const MultiIndex& alpha) const {
  if (alpha.width() > primes_.size())
    throw domain_error("multi-index position beyond prime table");
  Index n = 1;
  for (std::size_t j = 1; j <= alpha.width(); ++j) {
    Index p = primes_[j - 1];
    for (std::uint32_t e = 0; e < alpha.at(j); ++e) {
      if (n > limit_ / p)
        throw domain_error("index_of overflows the factorizable range");
      n *= p;
    }
  }
  return n;
}

int PrimeTable::mobius(Index n) const {
  check_range(n);
  int sign = 1;
  while (n > 1) {
    Index p = spf_[n];
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return sign;
}

std::vector<Index> PrimeTable::divisors(Index n) const {
  auto factors = factorize(n);
  std::vector<Index> divs{1};
  for (const auto& [p, e] : factors) {
    std::size_t base = divs.size();
    Index pk = 1;
    for (std::uint32_t k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace bohr
