#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "bohr/series.hpp"

namespace bohr {

// Truncated one-variable power series in H^2(D), dense coefficients
// c_0 .. c_degree_max.
class TaylorPoly {
 public:
  TaylorPoly() : coeffs_(1, Complex{0.0, 0.0}) {}
  explicit TaylorPoly(std::vector<Complex> coeffs);
  static TaylorPoly zero(std::size_t degree_max);
  static TaylorPoly one(std::size_t degree_max = 0);

  std::size_t degree_max() const { return coeffs_.size() - 1; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : Complex{0.0, 0.0};
  }

  // Degree after dropping trailing zeros; nullopt for the zero polynomial.
  std::optional<std::size_t> effective_degree(double tol = 0.0) const;
  bool is_zero(double tol = 0.0) const { return !effective_degree(tol).has_value(); }

  Complex operator()(Complex z) const;  // Horner
  TaylorPoly resized(std::size_t degree_max) const;
  double one_norm() const;
  double two_norm() const;

  bool operator==(const TaylorPoly& other) const = default;

 private:
  std::vector<Complex> coeffs_;
};

TaylorPoly taylor_add(const TaylorPoly& f, const TaylorPoly& g);
TaylorPoly taylor_scale(Complex c, const TaylorPoly& f);
// Full product, degree sum (no truncation surprises for tests).
TaylorPoly taylor_multiply(const TaylorPoly& f, const TaylorPoly& g);

enum class OuterStatus { Outer, NotOuter, Indeterminate };

struct OuterVerdict {
  OuterStatus status = OuterStatus::Indeterminate;
  // NotOuter: an interior root (or defect); Outer: largest interior deficit
  // max(0, 1-|root|) over all roots, or the defect value.
  std::optional<Complex> witness_root;
  double defect = 0.0;
  bool within_truncation = false;  // verdict taken on a non-polynomial truncation
};

// All roots with multiplicity of the trimmed polynomial, companion-matrix
// eigenvalues plus Newton refinement. Residual contract:
// |p(root)| <= 1e-8 * (1 + one_norm(p)). Zero polynomial is an error.
std::vector<Complex> polynomial_roots(const TaylorPoly& p);

// Root-annulus test: NotOuter iff some root has |root| <= 1 - tol. Boundary
// roots count as outer (1 - z is outer).
OuterVerdict is_outer_polynomial(const TaylorPoly& p, double tol = 1e-9);

// (1/2pi) int log|f(e^{i t})| dt - log|f(0)|, clamped at 0. Midpoint nodes;
// the node count is bumped if f vanishes exactly on a node. f(0) = 0 gives
// +infinity (a certain NotOuter signal).
double szego_defect(const TaylorPoly& f, std::size_t quadrature_points = 4096);

// T_n: f(z) -> f(z^n). Output cutoff defaults to n * degree_max.
TaylorPoly power_dilation(std::size_t n, const TaylorPoly& f,
                          std::optional<std::size_t> cutoff = std::nullopt);

// Hardy shift M_z, truncating at the polynomial's own cutoff.
TaylorPoly shift(const TaylorPoly& f);

// W_n f(z) = (1 + z + ... + z^{n-1}) f(z^n).
TaylorPoly noor_w(std::size_t n, const TaylorPoly& f,
                  std::optional<std::size_t> cutoff = std::nullopt);

enum class LogKind {
  LogOneMinusZm,  // log(1 - z^m): coefficient -1/j at index m*j
  PhiM,           // log(1-z^m) - log(1-z) - log m
};

TaylorPoly log_series(LogKind kind, std::size_t m, std::size_t cutoff);

// B f = sum f_hat(n) zeta^{alpha(n)}; requires f(0) = 0.
BohrSeries bohr_lift(const TaylorPoly& f, Index n_max);

// JSON schema {"format":"taylor/1","degree_max":D,"coeffs":[[re,im],...]}.
TaylorPoly read_taylor(const std::string& path);
void write_taylor(const TaylorPoly& f, const std::string& path);

}  // namespace bohr
