#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "bohr/arith.hpp"
#include "bohr/errors.hpp"

namespace bohr {

using Complex = std::complex<double>;

// Finitely supported point of the infinite polydisk. Keys are 1-based
// variable positions (position j belongs to the j-th prime); absent
// positions evaluate as 0. All moduli strictly below 1.
class Point {
 public:
  Point() = default;
  explicit Point(const std::map<std::size_t, Complex>& entries);

  static Point origin() { return Point(); }

  void set(std::size_t position, Complex value);
  Complex at(std::size_t position) const;  // 0 when absent
  bool has(std::size_t position) const;
  const std::vector<std::pair<std::size_t, Complex>>& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  std::size_t max_position() const { return entries_.empty() ? 0 : entries_.back().first; }

  bool operator==(const Point& other) const = default;

 private:
  std::vector<std::pair<std::size_t, Complex>> entries_;  // sorted by position, nonzero
};

// Symbolic tail rule lambda_j = scale / p_j^exponent, used only by
// kernel_bounded where a finite support cannot express the question.
struct TailRule {
  double scale = 0.0;
  double exponent = 1.0;
};

// Truncated power series over the infinite polydisk, indexed by positive
// integers n <= n_max via the prime-factorization correspondence. Sparse,
// canonical (terms sorted by index, exact zeros pruned), immutable value.
class BohrSeries {
 public:
  using Term = std::pair<Index, Complex>;

  BohrSeries() : n_max_(1) {}

  static BohrSeries zero(Index n_max);
  static BohrSeries unit(Index n_max);
  static BohrSeries monomial(Index n, Complex coefficient, Index n_max);
  // Terms need not be sorted; duplicate indices are rejected.
  static BohrSeries from_terms(Index n_max, std::vector<Term> terms, double prune = 0.0);
  // a_n = f(n) for every 1 <= n <= n_max (exact zeros dropped).
  static BohrSeries from_rule(Index n_max, const std::function<Complex(Index)>& f);

  Index n_max() const { return n_max_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t support_size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // 0 when absent; domain error outside [1, n_max].
  Complex coeff(Index n) const;

  // Same support with coefficients below prune_threshold (absolute) removed.
  BohrSeries pruned(double prune_threshold) const;
  BohrSeries truncated(Index new_n_max) const;
  BohrSeries scaled(Complex factor) const;

  bool operator==(const BohrSeries& other) const = default;

 private:
  static void canonicalize(std::vector<Term>& terms, double prune);

  Index n_max_;
  std::vector<Term> terms_;
};

struct Evaluation {
  Complex value;
  double tail_bound = 0.0;
};

// Coefficientwise linear combination; n_max of the result is the minimum
// over the inputs. Argument error on an empty list.
BohrSeries linear_combine(const std::vector<std::pair<Complex, BohrSeries>>& terms,
                          double prune = 0.0);

// Dirichlet convolution (a*b)_n = sum_{d|n} a_d b_{n/d}, exact for every
// n <= min(n_max): all divisor pairs lie inside both truncations.
BohrSeries dirichlet_multiply(const BohrSeries& f, const BohrSeries& g);

// Convolution inverse: g_1 = 1/a_1, g_n = -(1/a_1) sum_{d|n, d>1} a_d g_{n/d}.
BohrSeries invert(const BohrSeries& f, const PrimeTable& table = PrimeTable::standard());

double norm(const BohrSeries& f);

// Absolutely convergent evaluation at a finitely supported point. Variables
// absent from lambda count as 0. tail_bound = ||K_lambda|| * dropped_norm,
// where dropped_norm is a caller-supplied bound on the coefficients lost to
// truncation (0 means the series is genuinely finite and the value exact).
Evaluation evaluate(const BohrSeries& f, const Point& lambda, double dropped_norm = 0.0,
                    const PrimeTable& table = PrimeTable::standard());

// Reproducing kernel K_lambda truncated at n_max: a_n = conj(lambda)^alpha(n).
BohrSeries kernel(const Point& lambda, Index n_max,
                  const PrimeTable& table = PrimeTable::standard());
// a_n = mobius(n) * conj(lambda)^alpha(n); exact convolution inverse of kernel().
BohrSeries kernel_inverse(const Point& lambda, Index n_max,
                          const PrimeTable& table = PrimeTable::standard());
// Closed form sqrt(prod 1/(1-|lambda_j|^2)).
double kernel_norm(const Point& lambda);

// Lemma: K_lambda is bounded iff sum |lambda_j| < infinity. Trivially true
// for finite support; rule-based for symbolic tails.
bool kernel_bounded(const Point& lambda);
bool kernel_bounded(const TailRule& rule);

// Keeps exactly the coefficients whose index is p_1..p_k-smooth.
BohrSeries restrict_to_first_variables(const BohrSeries& f, std::size_t k,
                                       const PrimeTable& table = PrimeTable::standard());

// The prime-reciprocal kernel a_n = 1/n (Bohr image of the sawtooth) and its
// Mobius inverse a_n = mu(n)/n. These realize the non-finitely-supported
// point (1/2, 1/3, 1/5, ...) as closed-form coefficient rules.
BohrSeries harmonic_kernel(Index n_max);
BohrSeries harmonic_kernel_inverse(Index n_max,
                                   const PrimeTable& table = PrimeTable::standard());

// Largest componentwise difference on the union of supports.
double max_coeff_distance(const BohrSeries& f, const BohrSeries& g);

// Compensated (Kahan) accumulator; keeps summation order-deterministic
// results reproducible across platforms.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

}  // namespace bohr
