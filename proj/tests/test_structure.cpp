#include <doctest.h>

#include <cmath>
#include <random>

#include "bohr/structure.hpp"
#include "oracles.hpp"

using namespace bohr;

namespace {

BohrSeries alternating_series(Index n_max, double s = 1.0) {
  return BohrSeries::from_rule(n_max, [s](Index n) {
    double sign = n % 2 == 0 ? 1.0 : -1.0;
    return Complex{sign / std::pow(double(n), s), 0.0};
  });
}

Point random_point(std::mt19937& rng, std::size_t vars) {
  std::uniform_real_distribution<double> mod(0.0, 0.85), angle(0.0, 6.28318);
  Point p;
  for (std::size_t j = 1; j <= vars; ++j) p.set(j, std::polar(mod(rng), angle(rng)));
  return p;
}

}  // namespace

TEST_CASE("classify: totally multiplicative") {
  auto kp = harmonic_kernel(500);
  auto rep = classify(kp, ClassCandidate::totally());
  CHECK(rep.holds);
  CHECK(rep.checked_pairs > 0);
  CHECK(rep.violations.empty());

  // kernels are totally multiplicative by construction, exactly
  std::mt19937 rng(61);
  for (int i = 0; i < 10; ++i) {
    auto k = kernel(random_point(rng, 4), 300);
    CHECK(classify(k, ClassCandidate::totally(), 1e-12).holds);
  }
}

TEST_CASE("classify: multiplicative but not totally") {
  auto mob = harmonic_kernel_inverse(400);
  CHECK(classify(mob, ClassCandidate::multiplicative()).holds);
  auto rep = classify(mob, ClassCandidate::totally());
  CHECK_FALSE(rep.holds);
  REQUIRE_FALSE(rep.violations.empty());
  CHECK(rep.violations.front() == std::pair<Index, Index>{2, 2});  // a_4 = 0 != a_2^2
}

TEST_CASE("classify: the alternating harmonic series is {2}-multiplicative") {
  auto alt = alternating_series(400);
  CHECK(classify(alt, ClassCandidate::s_mult({2})).holds);

  auto totally = classify(alt, ClassCandidate::totally());
  CHECK_FALSE(totally.holds);
  CHECK(totally.violations.front() == std::pair<Index, Index>{2, 2});

  // With S = all odd primes the pair (2, 6) is S-coprime and the identity
  // fails there; the sign flip lives on the shared factor of 2.
  std::vector<Index> odd;
  for (Index p : PrimeTable::standard().primes()) {
    if (p > 400) break;
    if (p != 2) odd.push_back(p);
  }
  auto wrong = classify(alt, ClassCandidate::s_mult(odd));
  CHECK_FALSE(wrong.holds);

  // {2}-multiplicative implies multiplicative (coprime pairs are never both
  // even, so the sign character splits there)
  CHECK(classify(alt, ClassCandidate::multiplicative()).holds);
}

TEST_CASE("classify: errors and scaling") {
  CHECK_THROWS_AS(classify(BohrSeries::monomial(2, Complex{1, 0}, 10),
                           ClassCandidate::totally()),
                  domain_error);
  // scale is reported and identities are checked after normalization
  auto kp = harmonic_kernel(100).scaled(Complex{0, 2});
  auto rep = classify(kp, ClassCandidate::totally());
  CHECK(rep.holds);
  CHECK(std::abs(rep.scale - Complex{0, 2}) <= 1e-15);
}

TEST_CASE("prime_factor_series") {
  auto kp = harmonic_kernel(1000);
  auto f2 = prime_factor_series(kp, 2);
  CHECK(f2.degree_max() == 9);  // 2^9 <= 1000 < 2^10
  for (std::size_t k = 0; k <= 9; ++k)
    CHECK(f2.coeff(k).real() == doctest::Approx(std::pow(0.5, k)).epsilon(1e-14));

  auto fu = prime_factor_series(BohrSeries::unit(100), 5);
  CHECK(fu.coeff(0) == Complex{1, 0});
  CHECK_FALSE(fu.effective_degree().value_or(0) > 0);

  // totally multiplicative restriction with a_2 = -1/2
  Point lam;
  lam.set(1, Complex{-0.5, 0});
  auto f = prime_factor_series(kernel(lam, 64), 2);
  for (std::size_t k = 0; k <= 6; ++k)
    CHECK(f.coeff(k).real() == doctest::Approx(std::pow(-0.5, k)).epsilon(1e-14));

  CHECK_THROWS_AS(prime_factor_series(kp, 6), validation_error);
}

TEST_CASE("partition_factorize: singleton partition of a kernel") {
  Point lam;
  lam.set(1, Complex{0.5, 0});
  lam.set(2, Complex{1.0 / 3, 0});
  lam.set(3, Complex{0.2, 0});
  auto k = kernel(lam, 200);
  auto factors = partition_factorize(k, PrimePartition::singletons());
  REQUIRE(factors.size() == 3);
  // each factor is the geometric series of one variable
  for (const auto& f : factors) {
    auto support = variable_support(f);
    REQUIRE(support.size() == 1);
    Index p = *support.begin();
    for (const auto& [n, c] : f.terms()) {
      Index m = n;
      while (m % p == 0) m /= p;
      CHECK(m == 1);
      CHECK(std::abs(c - Complex{1.0 / double(n), 0}) <= 1e-14);
    }
  }
  // reconstruction
  auto prod = dirichlet_multiply(dirichlet_multiply(factors[0], factors[1]), factors[2]);
  CHECK(max_coeff_distance(prod, k) <= 1e-10 * norm(k));

  auto unit_factors = partition_factorize(BohrSeries::unit(50), PrimePartition::singletons());
  for (const auto& f : unit_factors)
    CHECK(max_coeff_distance(f, BohrSeries::unit(50)) == 0.0);
}

TEST_CASE("partition_factorize: a {2,3}-block product") {
  // G depends jointly on zeta_1, zeta_2; the rest is a kernel over other primes
  auto g23 = BohrSeries::from_terms(
      600, {{1, Complex{1, 0}}, {2, Complex{1, 0}}, {3, Complex{1, 0}}, {6, Complex{-1, 0}}});
  Point rest;
  rest.set(3, Complex{0.2, 0});
  rest.set(4, Complex{1.0 / 7, 0});
  auto f = dirichlet_multiply(g23, kernel(rest, 600));

  auto partition = PrimePartition::single_block({2, 3});
  auto rep = classify(f, ClassCandidate::delta(partition));
  CHECK(rep.holds);

  auto factors = partition_factorize(f, partition);
  REQUIRE(factors.size() == 3);
  BohrSeries prod = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) prod = dirichlet_multiply(prod, factors[i]);
  CHECK(max_coeff_distance(prod, f) <= 1e-10 * norm(f));

  // classification failure reports violations
  CHECK_THROWS_AS(partition_factorize(f, PrimePartition::singletons()), domain_error);
}

TEST_CASE("refinement monotonicity: finer partitions imply coarser ones") {
  std::mt19937 rng(67);
  std::uniform_real_distribution<double> val(-0.8, 0.8);
  for (int trial = 0; trial < 20; ++trial) {
    // random Delta'-multiplicative series: product of sparse factors on
    // disjoint singleton blocks {2}, {3}, {5}
    auto make_factor = [&](Index p) {
      std::vector<BohrSeries::Term> t{{1, Complex{1, 0}}};
      Index pk = p;
      while (pk <= 400) {
        t.push_back({pk, Complex{val(rng), val(rng)}});
        if (pk > 400 / p) break;
        pk *= p;
      }
      return BohrSeries::from_terms(400, std::move(t));
    };
    auto f = dirichlet_multiply(dirichlet_multiply(make_factor(2), make_factor(3)),
                                make_factor(5));
    auto fine = PrimePartition::singletons();
    CHECK(classify(f, ClassCandidate::delta(fine), 1e-10).holds);
    // coarsen: merge {2,3} into one block
    auto coarse = PrimePartition::single_block({2, 3});
    CHECK(classify(f, ClassCandidate::delta(coarse), 1e-10).holds);
  }
}

TEST_CASE("multiplicative series reconstruct prime-power coefficients") {
  auto mob = harmonic_kernel_inverse(300);
  for (Index p : {Index{2}, Index{3}, Index{5}, Index{7}}) {
    auto fp = prime_factor_series(mob, p);
    for (std::size_t k = 0; k <= fp.degree_max(); ++k) {
      Index pk = 1;
      for (std::size_t i = 0; i < k; ++i) pk *= p;
      CHECK(std::abs(fp.coeff(k) - mob.coeff(pk)) == 0.0);
    }
  }
}

TEST_CASE("variable_support") {
  CHECK(variable_support(BohrSeries::unit(10)).empty());
  auto f = BohrSeries::from_terms(10, {{2, Complex{1, 0}}, {4, Complex{1, 0}}});
  CHECK(variable_support(f) == std::set<Index>{2});
}

TEST_CASE("partition validation") {
  PrimePartition dup{{{2, 3}, {3, 5}}, true};
  CHECK_THROWS_AS(dup.validate(PrimeTable::standard()), validation_error);
  PrimePartition nonprime{{{4}}, true};
  CHECK_THROWS_AS(nonprime.validate(PrimeTable::standard()), validation_error);

  // disabling the singleton rule demands full coverage
  auto kp = harmonic_kernel(30);
  PrimePartition partial{{{2, 3}}, false};
  CHECK_THROWS_AS(classify(kp, ClassCandidate::delta(partial)), validation_error);
  PrimePartition full{{{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}}, false};
  CHECK(classify(kp, ClassCandidate::delta(full)).holds);
}

TEST_CASE("growth_class") {
  auto poly = BohrSeries::from_terms(4096, {{1, Complex{1, 0}}, {3, Complex{2, 0}}});
  auto g = growth_class(poly, 0.5);
  REQUIRE(g.size() >= 3);
  CHECK(g.back().second == doctest::Approx(g[3].second));  // eventually constant

  auto slow = growth_class(harmonic_kernel(4096), 0.5);  // sum n^{-1/2}, divergent
  double prev = 0;
  for (auto& [n, v] : slow) {
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(slow.back().second > 100.0);

  auto fast = growth_class(
      BohrSeries::from_rule(4096, [](Index n) { return Complex{1.0 / double(n * n), 0}; }), 0.5);
  CHECK(fast.back().second < 2.7);  // zeta(1.5)-like limit

  CHECK_THROWS_AS(growth_class(poly, 0.0), validation_error);
}
