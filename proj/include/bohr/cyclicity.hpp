#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bohr/structure.hpp"

namespace bohr {

enum class CyclicityStatus { Cyclic, NotCyclic, Unknown };

// Rule ids R1..R8 are a stable public contract:
//   R1 zero certificate            R5 Delta-multiplicative split
//   R2 totally multiplicative      R6 kernel division
//   R3 multiplicative (Hartman)    R7 univariate polynomial factor
//   R4 S-multiplicative            R8 finite-variable polynomial
struct TraceStep {
  std::string rule;
  std::string detail;
  std::string conclusion;
};

// A verified zero of the certifying series (the working residual after the
// strips listed in the trace; Cor 6.3 / Thm 6.1 transfer non-cyclicity back
// to the input). modulus is |W(zero)| on that series, always <= zero_tol.
struct ZeroCertificate {
  Point zero;
  double modulus = 0.0;
  double bound = 0.0;  // 1 / ||K_zero||, a lower bound for delta
  std::string series = "input";
};

struct FactorWitness {
  Index prime = 0;            // variable the factor lives on
  std::vector<Complex> factor;  // q coefficients, ascending
  OuterVerdict verdict;
};

struct CyclicityVerdict {
  CyclicityStatus status = CyclicityStatus::Unknown;
  std::vector<TraceStep> trace;
  std::optional<ZeroCertificate> zero_certificate;
  std::vector<FactorWitness> factor_witnesses;
  std::string blocking;  // Unknown: first blocking step
  Complex scale{1.0, 0.0};  // a_1 removed before rule evaluation
};

// Kernel divisor for rule R6: a finite point, or the prime-reciprocal rule
// lambda_p = 1/p realized as the closed-form coefficient series a_n = 1/n.
struct KernelHint {
  std::optional<Point> point;
  bool prime_reciprocal = false;
};

// Hints are trusted but verified: zeros are re-evaluated, partitions and S
// sets re-classified before their rules fire.
struct DecideHints {
  std::vector<Point> zeros;
  std::optional<KernelHint> kernel;
  std::optional<PrimePartition> partition;
  std::optional<std::vector<Index>> s_set;
};

struct EngineConfig {
  double zero_tol = 1e-10;        // absolute, on the a_1-normalized series
  double class_tol = 1e-10;
  double outer_tol = 1e-9;        // root annulus half-width
  double szego_threshold = 1e-4;
  std::size_t szego_nodes = 4096;
  std::size_t grid_per_variable = 32;  // radial x angular seeds
  std::size_t max_factor_degree = 4;   // R7 candidates
  std::size_t max_strips = 8;
  std::size_t max_search_variables = 3;
  long search_budget = 20000;          // evaluations for local descent
  std::size_t max_depth = 6;           // R5 recursion
};

struct ZeroSearchResult {
  std::optional<Point> zero;  // |F(zero)| <= zero_tol, strictly interior
  double min_modulus = 0.0;   // best |F| seen (evidence, not a certificate)
  Point argmin;
  long evaluations = 0;
};

// Grid seeding plus derivative-free descent over the variables the series
// actually uses (all must lie among the first variable_count positions).
// Absence of a find is a valid result, not a no-zero certificate.
ZeroSearchResult zero_search(const BohrSeries& f, std::size_t variable_count,
                             long budget = 20000, double zero_tol = 1e-10,
                             const EngineConfig& config = {},
                             const PrimeTable& table = PrimeTable::standard());

// Certified lower bound 1/||K_zero|| for delta(F) from a verified zero.
// Precondition error if |F(zero)| exceeds zero_tol.
double noncyclicity_bound(const BohrSeries& f, const Point& zero, double zero_tol = 1e-10,
                          const PrimeTable& table = PrimeTable::standard());

// The rule cascade. Deterministic for fixed hints and config; scaling the
// input by any nonzero constant leaves status and trace shape unchanged.
CyclicityVerdict decide(const BohrSeries& f, const DecideHints& hints = {},
                        const EngineConfig& config = {},
                        const PrimeTable& table = PrimeTable::standard());

std::string status_name(CyclicityStatus s);
std::string verdict_to_json(const CyclicityVerdict& v);

}  // namespace bohr
