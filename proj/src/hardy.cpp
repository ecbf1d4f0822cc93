#include "bohr/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <json.hpp>

namespace bohr {

TaylorPoly::TaylorPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(Complex{0.0, 0.0});
}

TaylorPoly TaylorPoly::zero(std::size_t degree_max) {
  return TaylorPoly(std::vector<Complex>(degree_max + 1, Complex{0.0, 0.0}));
}

TaylorPoly TaylorPoly::one(std::size_t degree_max) {
  auto p = zero(degree_max);
  std::vector<Complex> c = p.coeffs();
  c[0] = Complex{1.0, 0.0};
  return TaylorPoly(std::move(c));
}

std::optional<std::size_t> TaylorPoly::effective_degree(double tol) const {
  for (std::size_t k = coeffs_.size(); k-- > 0;)
    if (std::abs(coeffs_[k]) > tol) return k;
  return std::nullopt;
}

Complex TaylorPoly::operator()(Complex z) const {
  Complex acc{0.0, 0.0};
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * z + coeffs_[k];
  return acc;
}

TaylorPoly TaylorPoly::resized(std::size_t degree_max) const {
  std::vector<Complex> c(degree_max + 1, Complex{0.0, 0.0});
  for (std::size_t k = 0; k <= degree_max && k < coeffs_.size(); ++k) c[k] = coeffs_[k];
  return TaylorPoly(std::move(c));
}

double TaylorPoly::one_norm() const {
  KahanSum s;
  for (const auto& c : coeffs_) s.add(std::abs(c));
  return s.value();
}

double TaylorPoly::two_norm() const {
  KahanSum s;
  for (const auto& c : coeffs_) s.add(std::norm(c));
  return std::sqrt(s.value());
}

TaylorPoly taylor_add(const TaylorPoly& f, const TaylorPoly& g) {
  std::vector<Complex> c(std::max(f.coeffs().size(), g.coeffs().size()), Complex{0.0, 0.0});
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = f.coeff(k) + g.coeff(k);
  return TaylorPoly(std::move(c));
}

TaylorPoly taylor_scale(Complex s, const TaylorPoly& f) {
  std::vector<Complex> c = f.coeffs();
  for (auto& x : c) x *= s;
  return TaylorPoly(std::move(c));
}

TaylorPoly taylor_multiply(const TaylorPoly& f, const TaylorPoly& g) {
  std::vector<Complex> c(f.coeffs().size() + g.coeffs().size() - 1, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (f.coeffs()[i] == Complex{0.0, 0.0}) continue;
    for (std::size_t j = 0; j < g.coeffs().size(); ++j) c[i + j] += f.coeffs()[i] * g.coeffs()[j];
  }
  return TaylorPoly(std::move(c));
}

std::vector<Complex> polynomial_roots(const TaylorPoly& p) {
  auto deg = p.effective_degree();
  if (!deg) throw validation_error("root finding on the zero polynomial");
  std::size_t d = *deg;
  if (d == 0) throw validation_error("root finding needs degree >= 1");

  std::vector<Complex> roots;
  if (d == 1) {
    roots.push_back(-p.coeff(0) / p.coeff(1));
  } else {
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
    Complex lead = p.coeff(d);
    for (std::size_t k = 0; k < d; ++k) companion(k, d - 1) = -p.coeff(k) / lead;
    for (std::size_t k = 1; k < d; ++k) companion(k, k - 1) = Complex{1.0, 0.0};
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success)
      throw solver_error("companion-matrix eigensolver failed");
    for (std::size_t k = 0; k < d; ++k) roots.push_back(solver.eigenvalues()(k));
  }

  // Newton refinement pass.
  auto derivative_at = [&](Complex z) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = d; k >= 1; --k) acc = acc * z + static_cast<double>(k) * p.coeff(k);
    return acc;
  };
  for (auto& r : roots) {
    for (int iter = 0; iter < 3; ++iter) {
      Complex fr = p(r);
      Complex dfr = derivative_at(r);
      if (std::abs(dfr) < 1e-300) break;
      Complex step = fr / dfr;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      r -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(r))) break;
    }
  }
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  double bound = 1e-8 * (1.0 + p.one_norm());
  for (const auto& r : roots)
    if (!(std::abs(p(r)) <= bound))
      throw solver_error("polynomial root residual exceeds contract");
  return roots;
}

OuterVerdict is_outer_polynomial(const TaylorPoly& p, double tol) {
  if (p.is_zero()) throw validation_error("outerness of the zero polynomial");
  OuterVerdict v;
  auto deg = p.effective_degree();
  if (*deg == 0) {
    v.status = OuterStatus::Outer;
    return v;
  }
  auto roots = polynomial_roots(p);
  double worst_deficit = 0.0;
  for (const auto& r : roots) {
    double a = std::abs(r);
    if (a <= 1.0 - tol) {
      if (!v.witness_root || a < std::abs(*v.witness_root)) v.witness_root = r;
    }
    worst_deficit = std::max(worst_deficit, 1.0 - a);
  }
  if (v.witness_root) {
    v.status = OuterStatus::NotOuter;
  } else {
    v.status = OuterStatus::Outer;
    v.defect = std::max(0.0, worst_deficit);
  }
  return v;
}

double szego_defect(const TaylorPoly& f, std::size_t quadrature_points) {
  if (f.is_zero()) throw validation_error("Szego defect of the zero polynomial");
  if (quadrature_points < 2) throw validation_error("need at least 2 quadrature nodes");
  double f0 = std::abs(f(Complex{0.0, 0.0}));
  if (f0 == 0.0) return std::numeric_limits<double>::infinity();

  // Midpoint nodes never include z = 1, so boundary zeros of real
  // polynomials like 1 - z stay off the grid; exact hits still bump the
  // node count.
  std::size_t nodes = quadrature_points;
  for (int attempt = 0; attempt < 8; ++attempt, ++nodes) {
    KahanSum acc;
    bool hit_zero = false;
    for (std::size_t j = 0; j < nodes; ++j) {
      double theta = 2.0 * std::numbers::pi * (static_cast<double>(j) + 0.5) /
                     static_cast<double>(nodes);
      double mod = std::abs(f(Complex{std::cos(theta), std::sin(theta)}));
      if (mod == 0.0) {
        hit_zero = true;
        break;
      }
      acc.add(std::log(mod));
    }
    if (hit_zero) continue;
    double mean = acc.value() / static_cast<double>(nodes);
    return std::max(0.0, mean - std::log(f0));
  }
  throw solver_error("Szego quadrature kept hitting exact zeros of f");
}

TaylorPoly power_dilation(std::size_t n, const TaylorPoly& f,
                          std::optional<std::size_t> cutoff) {
  if (n < 1) throw validation_error("power dilation order must be positive");
  std::size_t out_degree = cutoff.value_or(n * f.degree_max());
  std::vector<Complex> c(out_degree + 1, Complex{0.0, 0.0});
  for (std::size_t j = 0; j < f.coeffs().size(); ++j) {
    std::size_t idx = n * j;
    if (idx > out_degree) break;
    c[idx] = f.coeffs()[j];
  }
  return TaylorPoly(std::move(c));
}

TaylorPoly shift(const TaylorPoly& f) {
  std::vector<Complex> c(f.coeffs().size(), Complex{0.0, 0.0});
  for (std::size_t k = 0; k + 1 < f.coeffs().size(); ++k) c[k + 1] = f.coeffs()[k];
  return TaylorPoly(std::move(c));
}

TaylorPoly noor_w(std::size_t n, const TaylorPoly& f, std::optional<std::size_t> cutoff) {
  if (n < 1) throw validation_error("W_n order must be positive");
  std::size_t out_degree = cutoff.value_or(n * f.degree_max() + n - 1);
  std::vector<Complex> c(out_degree + 1, Complex{0.0, 0.0});
  for (std::size_t j = 0; j < f.coeffs().size(); ++j) {
    if (f.coeffs()[j] == Complex{0.0, 0.0}) continue;
    for (std::size_t r = 0; r < n; ++r) {
      std::size_t idx = n * j + r;
      if (idx > out_degree) break;
      c[idx] += f.coeffs()[j];
    }
  }
  return TaylorPoly(std::move(c));
}

TaylorPoly log_series(LogKind kind, std::size_t m, std::size_t cutoff) {
  if (m < 1) throw validation_error("log series order must be positive");
  std::vector<Complex> c(cutoff + 1, Complex{0.0, 0.0});
  switch (kind) {
    case LogKind::LogOneMinusZm:
      for (std::size_t j = 1; m * j <= cutoff; ++j)
        c[m * j] = Complex{-1.0 / static_cast<double>(j), 0.0};
      break;
    case LogKind::PhiM:
      c[0] = Complex{-std::log(static_cast<double>(m)), 0.0};
      for (std::size_t i = 1; i <= cutoff; ++i) {
        double v = 1.0 / static_cast<double>(i);       // -log(1-z) term
        if (i % m == 0) v -= static_cast<double>(m) / static_cast<double>(i);
        c[i] = Complex{v, 0.0};
      }
      break;
  }
  return TaylorPoly(std::move(c));
}

BohrSeries bohr_lift(const TaylorPoly& f, Index n_max) {
  if (f.coeff(0) != Complex{0.0, 0.0})
    throw domain_error("Bohr lift requires f(0) = 0; subtract the constant term first");
  std::vector<BohrSeries::Term> terms;
  for (std::size_t k = 1; k < f.coeffs().size() && k <= n_max; ++k)
    if (f.coeffs()[k] != Complex{0.0, 0.0}) terms.push_back({k, f.coeffs()[k]});
  return BohrSeries::from_terms(n_max, std::move(terms));
}

using nlohmann::json;

TaylorPoly read_taylor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open taylor file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw validation_error(path + ": " + e.what());
  }
  if (!doc.contains("format") || doc["format"] != "taylor/1")
    throw validation_error(path + ": unsupported format");
  if (!doc.contains("degree_max") || !doc["degree_max"].is_number_integer())
    throw validation_error(path + ": bad degree_max");
  std::size_t degree = doc["degree_max"].get<std::size_t>();
  if (!doc.contains("coeffs") || !doc["coeffs"].is_array() ||
      doc["coeffs"].size() != degree + 1)
    throw validation_error(path + ": coeffs must have degree_max+1 entries");
  std::vector<Complex> c;
  for (const auto& entry : doc["coeffs"]) {
    if (!entry.is_array() || entry.size() != 2)
      throw validation_error(path + ": coefficient entries are [re, im]");
    c.push_back(Complex{entry[0].get<double>(), entry[1].get<double>()});
  }
  return TaylorPoly(std::move(c));
}

void write_taylor(const TaylorPoly& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot write taylor file: " + path);
  json coeffs = json::array();
  for (const auto& c : f.coeffs()) coeffs.push_back({c.real(), c.imag()});
  json doc{{"format", "taylor/1"}, {"degree_max", f.degree_max()}, {"coeffs", coeffs}};
  out << doc.dump(2) << "\n";
}

}  // namespace bohr
