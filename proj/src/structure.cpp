#include "bohr/structure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace bohr {

void PrimePartition::validate(const PrimeTable& table) const {
  std::set<Index> seen;
  for (const auto& block : blocks) {
    if (block.empty()) throw validation_error("empty partition block");
    for (Index p : block) {
      if (!table.is_prime(p))
        throw validation_error("partition entry " + std::to_string(p) + " is not prime");
      if (!seen.insert(p).second)
        throw validation_error("prime " + std::to_string(p) + " appears in two blocks");
    }
  }
}

std::size_t PrimePartition::block_of(Index p) const {
  for (std::size_t b = 0; b < blocks.size(); ++b)
    if (std::find(blocks[b].begin(), blocks[b].end(), p) != blocks[b].end()) return b + 1;
  return 0;
}

namespace {

constexpr std::size_t kMaxStoredViolations = 16;

// Eligibility of the pair (m, n) for the candidate's identity.
class PairFilter {
 public:
  PairFilter(const ClassCandidate& c, const PrimeTable& table, Index n_max)
      : kind_(c.kind), table_(table) {
    if (kind_ == MultClass::SMultiplicative) {
      s_.assign(n_max + 1, false);
      for (Index p : c.s_set) {
        if (!table.is_prime(p))
          throw validation_error("S entry " + std::to_string(p) + " is not prime");
        if (p <= n_max) s_[p] = true;
      }
    } else if (kind_ == MultClass::DeltaMultiplicative) {
      c.partition.validate(table);
      partition_ = &c.partition;
    }
  }

  bool eligible(Index m, Index n) const {
    switch (kind_) {
      case MultClass::TotallyMultiplicative:
        return true;
      case MultClass::Multiplicative:
        return std::gcd(m, n) == 1;
      case MultClass::SMultiplicative: {
        // P(m) and P(n) may only share primes outside S.
        for (const auto& [p, e] : table_.factorize(std::gcd(m, n)))
          if (s_[p]) return false;
        return true;
      }
      case MultClass::DeltaMultiplicative: {
        auto fm = table_.factorize(m);
        auto fn = table_.factorize(n);
        // Explicit blocks: m and n may not both touch the same block.
        std::vector<bool> m_hits(partition_->blocks.size(), false);
        for (const auto& [p, e] : fm) {
          std::size_t b = partition_->block_of(p);
          if (b > 0) m_hits[b - 1] = true;
        }
        for (const auto& [p, e] : fn) {
          std::size_t b = partition_->block_of(p);
          if (b > 0 && m_hits[b - 1]) return false;
        }
        // Implicit singletons: no shared prime outside the explicit blocks.
        for (const auto& [p, e] : table_.factorize(std::gcd(m, n)))
          if (partition_->block_of(p) == 0) return false;
        return true;
      }
    }
    return false;
  }

 private:
  MultClass kind_;
  const PrimeTable& table_;
  std::vector<bool> s_;
  const PrimePartition* partition_ = nullptr;
};

std::vector<Complex> dense_normalized(const BohrSeries& f, Complex a1) {
  std::vector<Complex> dense(f.n_max() + 1, Complex{0.0, 0.0});
  for (const auto& [n, c] : f.terms()) dense[n] = c / a1;
  return dense;
}

}  // namespace

MultiplicativityReport classify(const BohrSeries& f, const ClassCandidate& candidate,
                                double tol, const PrimeTable& table) {
  if (f.n_max() > table.limit())
    throw domain_error("series truncation exceeds the prime table limit");
  Complex a1 = f.is_zero() ? Complex{0.0, 0.0} : f.coeff(1);
  if (a1 == Complex{0.0, 0.0})
    throw domain_error("multiplicative classification requires a nonzero a_1");
  if (candidate.kind == MultClass::DeltaMultiplicative &&
      !candidate.partition.rest_singletons) {
    // Without the implicit singleton rule the explicit blocks must cover
    // every prime the series touches.
    for (Index p : variable_support(f, table))
      if (candidate.partition.block_of(p) == 0)
        throw validation_error("partition does not cover prime " + std::to_string(p) +
                               " and the singleton rule is disabled");
  }

  MultiplicativityReport report;
  report.kind = candidate.kind;
  report.scale = a1;
  report.n_max = f.n_max();

  auto dense = dense_normalized(f, a1);
  PairFilter filter(candidate, table, f.n_max());
  Index n_max = f.n_max();
  for (Index m = 2; m * m <= n_max; ++m) {
    for (Index n = m; n <= n_max / m; ++n) {
      if (!filter.eligible(m, n)) continue;
      ++report.checked_pairs;
      Complex product = dense[m] * dense[n];
      double err = std::abs(dense[m * n] - product);
      if (err > tol * (1.0 + std::abs(product))) {
        ++report.violation_count;
        if (report.violations.size() < kMaxStoredViolations)
          report.violations.push_back({m, n});
      }
    }
  }
  report.holds = report.violation_count == 0;
  return report;
}

TaylorPoly prime_factor_series(const BohrSeries& f, Index p, const PrimeTable& table) {
  if (!table.is_prime(p))
    throw validation_error(std::to_string(p) + " is not prime");
  std::vector<Complex> c;
  for (Index pk = 1; pk <= f.n_max(); pk *= p) {
    c.push_back(f.coeff(pk));
    if (pk > f.n_max() / p) break;
  }
  return TaylorPoly(std::move(c));
}

std::vector<BohrSeries> partition_factorize(const BohrSeries& f,
                                            const PrimePartition& partition, double tol,
                                            const PrimeTable& table) {
  auto report = classify(f, ClassCandidate::delta(partition), tol, table);
  if (!report.holds) {
    std::ostringstream msg;
    msg << "series is not Delta-multiplicative within truncation; " << report.violation_count
        << " violations, first:";
    for (const auto& [m, n] : report.violations) msg << " (" << m << "," << n << ")";
    throw domain_error(msg.str());
  }

  // Block id for every supported prime: explicit blocks first, implicit
  // singletons for the rest in ascending prime order.
  auto support = variable_support(f, table);
  std::vector<std::vector<Index>> groups(partition.blocks.size());
  for (std::size_t b = 0; b < partition.blocks.size(); ++b) groups[b] = partition.blocks[b];
  for (Index p : support)
    if (partition.block_of(p) == 0) groups.push_back({p});

  Complex a1 = report.scale;
  std::vector<BohrSeries> factors;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    std::set<Index> block(groups[g].begin(), groups[g].end());
    std::vector<BohrSeries::Term> terms;
    for (const auto& [n, c] : f.terms()) {
      bool inside = true;
      for (const auto& [p, e] : table.factorize(n))
        if (!block.count(p)) {
          inside = false;
          break;
        }
      if (inside) terms.push_back({n, c / a1});
    }
    // Index 1 has no prime factors, so the normalized a_1 = 1 lands in
    // every factor, as the paper's N_k semigroups require.
    auto factor = BohrSeries::from_terms(f.n_max(), std::move(terms));
    factors.push_back(g == 0 ? factor.scaled(a1) : factor);
  }
  if (factors.empty()) factors.push_back(f);
  return factors;
}

std::set<Index> variable_support(const BohrSeries& f, const PrimeTable& table) {
  if (f.n_max() > table.limit())
    throw domain_error("series truncation exceeds the prime table limit");
  std::set<Index> support;
  for (const auto& [n, c] : f.terms())
    for (const auto& [p, e] : table.factorize(n)) support.insert(p);
  return support;
}

std::vector<std::pair<Index, double>> growth_class(const BohrSeries& f, double eps) {
  if (eps <= 0.0) throw validation_error("growth exponent must be positive");
  std::vector<std::pair<Index, double>> checkpoints;
  KahanSum sum;
  Index next = 2;
  auto it = f.terms().begin();
  while (next <= f.n_max()) {
    for (; it != f.terms().end() && it->first < next; ++it)
      sum.add(std::abs(it->second) * std::pow(static_cast<double>(it->first), eps));
    checkpoints.push_back({next, sum.value()});
    if (next > f.n_max() / 2) break;
    next *= 2;
  }
  for (; it != f.terms().end(); ++it)
    sum.add(std::abs(it->second) * std::pow(static_cast<double>(it->first), eps));
  if (checkpoints.empty() || checkpoints.back().first != f.n_max())
    checkpoints.push_back({f.n_max(), sum.value()});
  else
    checkpoints.back().second = sum.value();
  return checkpoints;
}

std::string mult_class_name(MultClass c) {
  switch (c) {
    case MultClass::TotallyMultiplicative: return "TotallyMultiplicative";
    case MultClass::Multiplicative: return "Multiplicative";
    case MultClass::SMultiplicative: return "SMultiplicative";
    case MultClass::DeltaMultiplicative: return "DeltaMultiplicative";
  }
  return "?";
}

}  // namespace bohr
