#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bohr/dilation.hpp"

using namespace bohr;

namespace {
constexpr double pi = std::numbers::pi;
constexpr double rt2 = std::numbers::sqrt2;
}  // namespace

TEST_CASE("kozlov_f closed form") {
  auto f1 = kozlov_f(1.0, 16);
  CHECK(f1.coeff(1).real() == doctest::Approx(2.0 * rt2 / pi).epsilon(1e-14));
  CHECK(f1.coeff(2) == Complex{0, 0});  // 1 - cos(2 pi)

  auto fh = kozlov_f(0.5, 16);
  CHECK(fh.coeff(2).real() == doctest::Approx(rt2 / pi).epsilon(1e-14));

  CHECK_THROWS_AS(kozlov_f(0.0, 16), validation_error);
  CHECK_THROWS_AS(kozlov_f(1.5, 16), validation_error);
}

TEST_CASE("kozlov_g supports and values") {
  Index n_max = 800;
  double c = 1.0 / (rt2 * pi);

  auto g_half = kozlov_g(0.5, n_max);
  CHECK(g_half.coeff(1).real() == doctest::Approx(rt2 / pi).epsilon(1e-12));
  CHECK(g_half.coeff(2).real() == doctest::Approx(c).epsilon(1e-12));
  CHECK(g_half.coeff(4).real() == doctest::Approx(-c).epsilon(1e-12));
  for (const auto& [n, v] : g_half.terms())
    if (n != 1 && n != 2 && n != 4) CHECK(std::abs(v) <= 1e-12);

  auto g_23 = kozlov_g(2.0 / 3.0, n_max);
  CHECK(g_23.coeff(1).real() == doctest::Approx(3.0 * c).epsilon(1e-12));
  CHECK(g_23.coeff(3).real() == doctest::Approx(-c).epsilon(1e-12));
  for (const auto& [n, v] : g_23.terms())
    if (n != 1 && n != 3) CHECK(std::abs(v) <= 1e-12);

  auto g_13 = kozlov_g(1.0 / 3.0, n_max);
  CHECK(g_13.coeff(1).real() == doctest::Approx(c).epsilon(1e-12));
  CHECK(g_13.coeff(2).real() == doctest::Approx(c).epsilon(1e-12));
  CHECK(g_13.coeff(3).real() == doctest::Approx(c).epsilon(1e-12));
  CHECK(g_13.coeff(6).real() == doctest::Approx(-c).epsilon(1e-12));
  for (const auto& [n, v] : g_13.terms())
    if (n != 1 && n != 2 && n != 3 && n != 6) CHECK(std::abs(v) <= 1e-12);

  auto g_1 = kozlov_g(1.0, n_max);
  CHECK(g_1.coeff(1).real() == doctest::Approx(4.0 * c).epsilon(1e-12));
  CHECK(g_1.coeff(2).real() == doctest::Approx(-2.0 * c).epsilon(1e-12));
  for (const auto& [n, v] : g_1.terms())
    if (n != 1 && n != 2) CHECK(std::abs(v) <= 1e-12);
}

TEST_CASE("kozlov_pair: the two routes agree and G * K_p = F at n_max = 10^4") {
  for (double theta : {1.0, 0.5, 1.0 / 3.0, 2.0 / 3.0, 0.25, 0.4}) {
    Index n_max = 10000;
    auto pair = kozlov_pair(theta, n_max);
    auto f_back = dirichlet_multiply(pair.g, harmonic_kernel(n_max));
    CHECK(max_coeff_distance(pair.f, f_back) <= 1e-10);
    auto g_conv = dirichlet_multiply(pair.f, harmonic_kernel_inverse(n_max));
    CHECK(max_coeff_distance(pair.g, g_conv) <= 1e-12);
  }
}

TEST_CASE("finite_support_evidence") {
  Index n_max = 600;
  auto g_half = kozlov_g(0.5, n_max);
  for (const auto& [p, mag] : finite_support_evidence(g_half, 100)) {
    if (p >= 3) CHECK(mag <= 1e-12);  // cos(p pi/2) = 0 = cos(pi/2) for odd p
  }

  auto g_quarter = kozlov_g(0.25, n_max);
  auto ev = finite_support_evidence(g_quarter, 10);
  REQUIRE(ev.size() >= 2);
  CHECK(ev[1].first == 3);
  CHECK(ev[1].second == doctest::Approx(2.0 / (3.0 * pi)).epsilon(1e-12));
  // oracle: (sqrt2/pi)(1/3)|cos(3 pi/4) - cos(pi/4)| = (sqrt2/pi)(sqrt2/3)
  CHECK(ev[1].second ==
        doctest::Approx((rt2 / pi) * std::abs(std::cos(3 * pi / 4) - std::cos(pi / 4)) / 3.0)
            .epsilon(1e-12));

  // irrational theta: every sampled prime coefficient is nonzero
  auto g_irr = kozlov_g(1.0 / pi, n_max);
  for (const auto& [p, mag] : finite_support_evidence(g_irr, 50)) CHECK(mag > 1e-6);
}

TEST_CASE("indicator_sine_coeffs matches kozlov_f") {
  for (double theta : {1.0, 0.5, 1.0 / 3.0, 0.7}) {
    auto a = indicator_sine_coeffs(theta, 300);
    auto b = kozlov_f(theta, 300);
    CHECK(max_coeff_distance(a, b) <= 1e-12);
  }
  auto s = indicator_sine_coeffs(1.0 / 3.0, 10);
  CHECK(s.coeff(3).real() == doctest::Approx(2.0 * rt2 / (3.0 * pi)).epsilon(1e-14));
  CHECK(indicator_sine_coeffs(0.5, 10).coeff(4) == Complex{0, 0});
}

TEST_CASE("kozlov verdicts") {
  Index n_max = 2000;
  for (double theta : {1.0, 0.5, 2.0 / 3.0}) {
    auto v = kozlov_verdict(theta, n_max);
    CHECK(v.status == CyclicityStatus::Cyclic);
    REQUIRE_FALSE(v.trace.empty());
    CHECK(v.trace.front().rule == "R6");
    CHECK(v.trace.back().rule == "R2");
  }
  auto v13 = kozlov_verdict(1.0 / 3.0, n_max);
  CHECK(v13.status == CyclicityStatus::NotCyclic);
  CHECK(v13.trace.front().rule == "R6");
  REQUIRE(v13.zero_certificate.has_value());
  CHECK(v13.zero_certificate->modulus <= 1e-10);
}

TEST_CASE("ingest: piecewise-constant closed form reproduces kozlov_f") {
  QuadratureSpec spec;
  spec.breakpoints = {0.5};
  auto got = ingest_odd_periodic([](double x) { return x < 0.5 ? 1.0 : 0.0; }, 400, spec);
  CHECK(max_coeff_distance(got, kozlov_f(0.5, 400)) <= 1e-10);
}

TEST_CASE("ingest: midpoint quadrature on psi(x) = x") {
  QuadratureSpec spec;
  Index n_max = 64;
  spec.nodes = 1 << 14;  // generous resolution, low-order coefficients tight
  auto got = ingest_odd_periodic([](double x) { return x; }, n_max, spec);
  for (Index n = 1; n <= 8; ++n) {
    double expect = -rt2 * (n % 2 == 0 ? 1.0 : -1.0) / (double(n) * pi);
    CHECK(got.coeff(n).real() == doctest::Approx(expect).epsilon(1e-6));
  }
  // aliasing guard
  QuadratureSpec bad;
  bad.nodes = 100;
  CHECK_THROWS_AS(ingest_odd_periodic([](double x) { return x; }, 64, bad), validation_error);
}

TEST_CASE("ingest: a pure sine mode lands on a single coefficient") {
  QuadratureSpec spec;
  spec.nodes = 4096;
  auto got = ingest_odd_periodic([](double x) { return std::sin(pi * x); }, 32, spec);
  CHECK(got.coeff(1).real() == doctest::Approx(1.0 / rt2).epsilon(1e-10));
  for (Index n = 2; n <= 32; ++n) CHECK(std::abs(got.coeff(n)) <= 1e-10);
}

TEST_CASE("noor_series values and factorization") {
  auto b2 = noor_series(2, 100);
  for (Index n = 1; n <= 100; ++n) {
    double expect = (n % 2 == 0 ? -1.0 : 1.0) / double(n);
    CHECK(b2.coeff(n).real() == doctest::Approx(expect).epsilon(1e-15));
  }
  auto b3 = noor_series(3, 100);
  CHECK(b3.coeff(3).real() == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));

  CHECK_THROWS_AS(noor_series(1, 100), validation_error);

  auto exp = noor_experiment(2, {1, 2, 4, 8}, 512);
  CHECK(exp.factorization_error <= 1e-15);
  CHECK(exp.sweep.size() == 4);
  CHECK(exp.sweep.back().value <= exp.sweep.front().value);
}
