#pragma once

#include <set>
#include <string>
#include <vector>

#include "bohr/hardy.hpp"
#include "bohr/series.hpp"

namespace bohr {

// Partition of the primes: explicit disjoint blocks plus, when
// rest_singletons is set, an implicit singleton block for every unlisted
// prime. S-multiplicative reduces to one block S plus singletons.
struct PrimePartition {
  std::vector<std::vector<Index>> blocks;
  bool rest_singletons = true;

  static PrimePartition singletons() { return {{}, true}; }
  static PrimePartition single_block(std::vector<Index> s) {
    return {{std::move(s)}, true};
  }
  void validate(const PrimeTable& table) const;
  // 0 = not in an explicit block (implicit singleton), else 1-based block id.
  std::size_t block_of(Index p) const;
};

enum class MultClass {
  TotallyMultiplicative,
  Multiplicative,
  SMultiplicative,
  DeltaMultiplicative,
};

struct ClassCandidate {
  MultClass kind = MultClass::Multiplicative;
  std::vector<Index> s_set;       // SMultiplicative
  PrimePartition partition;       // DeltaMultiplicative

  static ClassCandidate totally() { return {MultClass::TotallyMultiplicative, {}, {}}; }
  static ClassCandidate multiplicative() { return {MultClass::Multiplicative, {}, {}}; }
  static ClassCandidate s_mult(std::vector<Index> s) {
    return {MultClass::SMultiplicative, std::move(s), {}};
  }
  static ClassCandidate delta(PrimePartition part) {
    return {MultClass::DeltaMultiplicative, {}, std::move(part)};
  }
};

struct MultiplicativityReport {
  bool holds = false;
  MultClass kind = MultClass::Multiplicative;
  Complex scale{1.0, 0.0};  // a_1; identities checked on F / a_1
  std::vector<std::pair<Index, Index>> violations;  // lexicographic, capped
  std::size_t violation_count = 0;
  std::size_t checked_pairs = 0;
  Index n_max = 0;  // certified only within this truncation
};

// Exhaustively verifies |a_mn - a_m a_n| <= tol (1 + |a_m a_n|) over all
// eligible pairs with m*n <= n_max, on the a_1-normalized coefficients.
// Classification error when a_1 = 0.
MultiplicativityReport classify(const BohrSeries& f, const ClassCandidate& candidate,
                                double tol = 1e-10,
                                const PrimeTable& table = PrimeTable::standard());

// f_p(z) = sum_k a_{p^k} z^k, degree floor(log_p n_max).
TaylorPoly prime_factor_series(const BohrSeries& f, Index p,
                               const PrimeTable& table = PrimeTable::standard());

// Factors of a Delta-multiplicative series: one per explicit block, then one
// per supported implicit singleton prime. The first factor carries a_1, so
// the Dirichlet product of the factors reconstructs f on the truncation.
// Structure error (with violations) when classification fails.
std::vector<BohrSeries> partition_factorize(const BohrSeries& f,
                                            const PrimePartition& partition,
                                            double tol = 1e-10,
                                            const PrimeTable& table = PrimeTable::standard());

// Primes dividing some index with a nonzero coefficient.
std::set<Index> variable_support(const BohrSeries& f,
                                 const PrimeTable& table = PrimeTable::standard());

// Partial sums of sum |a_n| n^eps at dyadic checkpoints. Diagnostic only.
std::vector<std::pair<Index, double>> growth_class(const BohrSeries& f, double eps);

std::string mult_class_name(MultClass c);

}  // namespace bohr
