#pragma once

#include <functional>
#include <optional>

#include "bohr/cyclicity.hpp"
#include "bohr/delta.hpp"
#include "bohr/series.hpp"

namespace bohr {

// F_theta and G_theta of the indicator dilation problem, tied together by
// F = G * K_p on the common truncation.
struct KozlovPair {
  double theta = 1.0;
  BohrSeries f;
  BohrSeries g;
};

// a_n = (sqrt(2)/pi) (1 - cos(n theta pi)) / n.
BohrSeries kozlov_f(double theta, Index n_max);

// Closed form of F_theta * K_p^{-1}:
//   a_1 = (sqrt(2)/pi)(1 - cos(theta pi)),
//   a_n = -(sqrt(2)/pi)(1/n) sum_{k|n} mu(k) cos((n/k) theta pi), n >= 2.
BohrSeries kozlov_g(double theta, Index n_max,
                    const PrimeTable& table = PrimeTable::standard());

// Same quantity by exact convolution with the Mobius series; the two paths
// agree to ~1e-12 and the pair invariant G * K_p = F is verified on
// construction (throws solver_error beyond tol).
KozlovPair kozlov_pair(double theta, Index n_max, double tol = 1e-10,
                       const PrimeTable& table = PrimeTable::standard());

// |G coefficient at prime p| for p <= prime_bound; nonzero entries witness
// dependence on that variable.
std::vector<std::pair<Index, double>> finite_support_evidence(
    const BohrSeries& g, Index prime_bound, const PrimeTable& table = PrimeTable::standard());

// Sine-basis coefficients of the odd extension of chi_(0,theta):
// a_n = sqrt(2) (1 - cos(n pi theta)) / (n pi); the Fourier-side route to
// kozlov_f.
BohrSeries indicator_sine_coeffs(double theta, Index n_max);

// Cyclicity of F_theta via the engine, stripping K_p first (the lab knows
// F = G K_p by construction).
CyclicityVerdict kozlov_verdict(double theta, Index n_max, const EngineConfig& config = {},
                                const PrimeTable& table = PrimeTable::standard());

// Quadrature description for ingest_odd_periodic.
struct QuadratureSpec {
  // Composite midpoint on (0,1) with `nodes` points; must satisfy the
  // anti-aliasing rule nodes >= 4 * n_max.
  std::size_t nodes = 0;
  // When breakpoints are supplied the input is treated as piecewise
  // constant between them and integrated in closed form (exact).
  std::vector<double> breakpoints;  // interior breakpoints, ascending
};

// a_n ~= integral_0^1 psi(x) sqrt(2) sin(n pi x) dx.
BohrSeries ingest_odd_periodic(const std::function<double(double)>& psi, Index n_max,
                               const QuadratureSpec& quadrature);

// b_n = (1 - m [m|n]) / n, the coefficient rule of (zeta^alpha(m) - 1) times
// the negated prime-reciprocal kernel. Verified against the convolution.
BohrSeries noor_series(std::size_t m, Index n_max);

struct NoorExperiment {
  std::size_t m = 2;
  BohrSeries series;
  double factorization_error = 0.0;  // closed form vs explicit convolution
  std::vector<DeltaEstimate> sweep;
};

NoorExperiment noor_experiment(std::size_t m, const std::vector<std::size_t>& dictionary_sizes,
                               Index window);

}  // namespace bohr
