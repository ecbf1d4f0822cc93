#include "bohr/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bohr {

namespace {

constexpr double kSqrt2OverPi = std::numbers::sqrt2 / std::numbers::pi;

void check_theta(double theta) {
  if (!(theta > 0.0) || theta > 1.0)
    throw validation_error("theta must lie in (0, 1]");
}

}  // namespace

BohrSeries kozlov_f(double theta, Index n_max) {
  check_theta(theta);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  return BohrSeries::from_rule(n_max, [theta](Index n) {
    double arg = static_cast<double>(n) * theta * std::numbers::pi;
    double x = 1.0 - std::cos(arg);
    // Cosine arguments carry O(n eps) rounding; values below that floor are
    // exact zeros of the formula (e.g. every even n at theta = 1).
    if (x <= 32.0 * eps * (1.0 + arg)) x = 0.0;
    return Complex{kSqrt2OverPi * x / static_cast<double>(n), 0.0};
  });
}

BohrSeries kozlov_g(double theta, Index n_max, const PrimeTable& table) {
  check_theta(theta);
  if (n_max > table.limit()) throw domain_error("n_max exceeds the prime table limit");
  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::vector<BohrSeries::Term> terms;
  terms.push_back({1, Complex{kSqrt2OverPi * (1.0 - std::cos(theta * std::numbers::pi)), 0.0}});
  for (Index n = 2; n <= n_max; ++n) {
    KahanSum acc;
    std::size_t cosines = 0;
    for (Index k : table.divisors(n)) {
      int mu = table.mobius(k);
      if (mu == 0) continue;
      ++cosines;
      acc.add(mu * std::cos(static_cast<double>(n / k) * theta * std::numbers::pi));
    }
    double sum = acc.value();
    double arg = static_cast<double>(n) * theta * std::numbers::pi;
    // Each cosine carries O(n eps) argument rounding; a |sum| below the
    // accumulated floor is an exact cancellation of the formula.
    if (std::abs(sum) <= 32.0 * static_cast<double>(cosines) * eps * (1.0 + arg)) continue;
    terms.push_back({n, Complex{-kSqrt2OverPi * sum / static_cast<double>(n), 0.0}});
  }
  return BohrSeries::from_terms(n_max, std::move(terms));
}

KozlovPair kozlov_pair(double theta, Index n_max, double tol, const PrimeTable& table) {
  KozlovPair pair;
  pair.theta = theta;
  pair.f = kozlov_f(theta, n_max);
  pair.g = kozlov_g(theta, n_max, table);

  auto g_by_convolution = dirichlet_multiply(pair.f, harmonic_kernel_inverse(n_max, table));
  double route_gap = max_coeff_distance(pair.g, g_by_convolution);
  if (route_gap > tol)
    throw solver_error("Kozlov G: closed form and convolution disagree by " +
                       std::to_string(route_gap));

  auto f_back = dirichlet_multiply(pair.g, harmonic_kernel(n_max));
  double pair_gap = max_coeff_distance(pair.f, f_back);
  if (pair_gap > tol)
    throw solver_error("Kozlov pair invariant G*K_p = F violated by " +
                       std::to_string(pair_gap));
  return pair;
}

std::vector<std::pair<Index, double>> finite_support_evidence(const BohrSeries& g,
                                                              Index prime_bound,
                                                              const PrimeTable& table) {
  std::vector<std::pair<Index, double>> evidence;
  for (Index p : table.primes()) {
    if (p > prime_bound || p > g.n_max()) break;
    evidence.push_back({p, std::abs(g.coeff(p))});
  }
  return evidence;
}

BohrSeries indicator_sine_coeffs(double theta, Index n_max) {
  check_theta(theta);
  // <chi_(0,theta), sqrt(2) sin(n pi x)> integrated in closed form.
  return BohrSeries::from_rule(n_max, [theta](Index n) {
    double npi = static_cast<double>(n) * std::numbers::pi;
    return Complex{std::numbers::sqrt2 * (1.0 - std::cos(npi * theta)) / npi, 0.0};
  });
}

CyclicityVerdict kozlov_verdict(double theta, Index n_max, const EngineConfig& config,
                                const PrimeTable& table) {
  auto pair = kozlov_pair(theta, n_max, 1e-10, table);
  DecideHints hints;
  hints.kernel = KernelHint{std::nullopt, true};
  return decide(pair.f, hints, config, table);
}

BohrSeries ingest_odd_periodic(const std::function<double(double)>& psi, Index n_max,
                               const QuadratureSpec& quadrature) {
  if (n_max < 1) throw validation_error("n_max must be positive");

  if (!quadrature.breakpoints.empty() || quadrature.nodes == 0) {
    // Piecewise-constant closed form: psi is sampled once per cell and
    // integral psi sqrt(2) sin(n pi x) dx is exact per cell.
    std::vector<double> cuts{0.0};
    for (double b : quadrature.breakpoints) {
      if (!(b > cuts.back()) || b >= 1.0)
        throw validation_error("breakpoints must be ascending inside (0, 1)");
      cuts.push_back(b);
    }
    cuts.push_back(1.0);
    std::vector<double> values;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      values.push_back(psi(0.5 * (cuts[i] + cuts[i + 1])));
    return BohrSeries::from_rule(n_max, [&](Index n) {
      double npi = static_cast<double>(n) * std::numbers::pi;
      KahanSum acc;
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        acc.add(values[i] * (std::cos(npi * cuts[i]) - std::cos(npi * cuts[i + 1])));
      return Complex{std::numbers::sqrt2 * acc.value() / npi, 0.0};
    });
  }

  if (quadrature.nodes < 4 * n_max)
    throw validation_error("quadrature resolution " + std::to_string(quadrature.nodes) +
                           " violates the anti-aliasing rule (need >= 4*n_max = " +
                           std::to_string(4 * n_max) + ")");
  std::size_t r = quadrature.nodes;
  std::vector<double> samples(r);
  for (std::size_t i = 0; i < r; ++i)
    samples[i] = psi((static_cast<double>(i) + 0.5) / static_cast<double>(r));
  return BohrSeries::from_rule(n_max, [&](Index n) {
    double npi = static_cast<double>(n) * std::numbers::pi;
    KahanSum acc;
    for (std::size_t i = 0; i < r; ++i) {
      double x = (static_cast<double>(i) + 0.5) / static_cast<double>(r);
      acc.add(samples[i] * std::sin(npi * x));
    }
    return Complex{std::numbers::sqrt2 * acc.value() / static_cast<double>(r), 0.0};
  });
}

BohrSeries noor_series(std::size_t m, Index n_max) {
  if (m < 2) throw validation_error("Noor experiment requires m >= 2");
  return BohrSeries::from_rule(n_max, [m](Index n) {
    double v = n % m == 0 ? 1.0 - static_cast<double>(m) : 1.0;
    return Complex{v / static_cast<double>(n), 0.0};
  });
}

NoorExperiment noor_experiment(std::size_t m, const std::vector<std::size_t>& dictionary_sizes,
                               Index window) {
  NoorExperiment exp;
  exp.m = m;
  exp.series = noor_series(m, window);

  // (zeta^alpha(m) - 1) * (-K_p), the factorization behind the rule.
  auto psi = harmonic_kernel(window).scaled(Complex{-1.0, 0.0});
  auto factor = linear_combine({{Complex{1.0, 0.0}, BohrSeries::monomial(m, Complex{1.0, 0.0}, window)},
                                {Complex{-1.0, 0.0}, BohrSeries::unit(window)}});
  auto by_convolution = dirichlet_multiply(factor, psi);
  exp.factorization_error = max_coeff_distance(exp.series, by_convolution);
  if (exp.factorization_error > 1e-12)
    throw solver_error("Noor series factorization check failed");

  exp.sweep = delta_sweep(exp.series, dictionary_sizes, window);
  return exp;
}

}  // namespace bohr
