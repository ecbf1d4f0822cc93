#include "bohr/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bohr {

namespace {

void check_unit_disk(Complex v, std::size_t position) {
  if (std::abs(v) >= 1.0)
    throw domain_error("point entry at position " + std::to_string(position) +
                       " has modulus >= 1");
}

}  // namespace

Point::Point(const std::map<std::size_t, Complex>& entries) {
  for (const auto& [pos, v] : entries) set(pos, v);
}

void Point::set(std::size_t position, Complex value) {
  if (position < 1) throw domain_error("point positions are 1-based");
  check_unit_disk(value, position);
  auto it = std::lower_bound(entries_.begin(), entries_.end(), position,
                             [](const auto& e, std::size_t p) { return e.first < p; });
  if (value == Complex{0.0, 0.0}) {
    if (it != entries_.end() && it->first == position) entries_.erase(it);
    return;
  }
  if (it != entries_.end() && it->first == position)
    it->second = value;
  else
    entries_.insert(it, {position, value});
}

Complex Point::at(std::size_t position) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), position,
                             [](const auto& e, std::size_t p) { return e.first < p; });
  return it != entries_.end() && it->first == position ? it->second : Complex{0.0, 0.0};
}

bool Point::has(std::size_t position) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), position,
                             [](const auto& e, std::size_t p) { return e.first < p; });
  return it != entries_.end() && it->first == position;
}

void BohrSeries::canonicalize(std::vector<Term>& terms, double prune) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < terms.size(); ++i)
    if (terms[i].first == terms[i - 1].first)
      throw validation_error("duplicate index " + std::to_string(terms[i].first) +
                             " in series terms");
  std::erase_if(terms, [prune](const Term& t) {
    return t.second == Complex{0.0, 0.0} || std::abs(t.second) <= prune;
  });
}

BohrSeries BohrSeries::zero(Index n_max) {
  if (n_max < 1) throw validation_error("n_max must be positive");
  BohrSeries s;
  s.n_max_ = n_max;
  return s;
}

BohrSeries BohrSeries::unit(Index n_max) { return monomial(1, Complex{1.0, 0.0}, n_max); }

BohrSeries BohrSeries::monomial(Index n, Complex coefficient, Index n_max) {
  BohrSeries s = zero(n_max);
  if (n < 1 || n > n_max)
    throw domain_error("monomial index " + std::to_string(n) + " outside [1, n_max]");
  if (coefficient != Complex{0.0, 0.0}) s.terms_.push_back({n, coefficient});
  return s;
}

BohrSeries BohrSeries::from_terms(Index n_max, std::vector<Term> terms, double prune) {
  BohrSeries s = zero(n_max);
  for (const auto& [n, c] : terms)
    if (n < 1 || n > n_max)
      throw validation_error("series index " + std::to_string(n) + " outside [1, " +
                             std::to_string(n_max) + "]");
  canonicalize(terms, prune);
  s.terms_ = std::move(terms);
  return s;
}

BohrSeries BohrSeries::from_rule(Index n_max, const std::function<Complex(Index)>& f) {
  BohrSeries s = zero(n_max);
  s.terms_.reserve(n_max);
  for (Index n = 1; n <= n_max; ++n) {
    Complex c = f(n);
    if (c != Complex{0.0, 0.0}) s.terms_.push_back({n, c});
  }
  return s;
}

Complex BohrSeries::coeff(Index n) const {
  if (n < 1 || n > n_max_)
    throw domain_error("coefficient index " + std::to_string(n) + " outside [1, n_max]");
  auto it = std::lower_bound(terms_.begin(), terms_.end(), n,
                             [](const Term& t, Index k) { return t.first < k; });
  return it != terms_.end() && it->first == n ? it->second : Complex{0.0, 0.0};
}

BohrSeries BohrSeries::pruned(double prune_threshold) const {
  BohrSeries s = zero(n_max_);
  for (const auto& t : terms_)
    if (std::abs(t.second) > prune_threshold) s.terms_.push_back(t);
  return s;
}

BohrSeries BohrSeries::truncated(Index new_n_max) const {
  BohrSeries s = zero(new_n_max);
  for (const auto& t : terms_)
    if (t.first <= new_n_max) s.terms_.push_back(t);
  return s;
}

BohrSeries BohrSeries::scaled(Complex factor) const {
  BohrSeries s = zero(n_max_);
  if (factor == Complex{0.0, 0.0}) return s;
  s.terms_.reserve(terms_.size());
  for (const auto& t : terms_) s.terms_.push_back({t.first, factor * t.second});
  return s;
}

BohrSeries linear_combine(const std::vector<std::pair<Complex, BohrSeries>>& terms,
                          double prune) {
  if (terms.empty()) throw validation_error("linear_combine requires at least one term");
  Index n_max = terms.front().second.n_max();
  for (const auto& [c, s] : terms) n_max = std::min(n_max, s.n_max());
  std::map<Index, Complex> acc;
  for (const auto& [c, s] : terms)
    for (const auto& [n, a] : s.terms())
      if (n <= n_max) acc[n] += c * a;
  std::vector<BohrSeries::Term> out(acc.begin(), acc.end());
  std::erase_if(out, [prune](const BohrSeries::Term& t) {
    return t.second == Complex{0.0, 0.0} || std::abs(t.second) <= prune;
  });
  return BohrSeries::from_terms(n_max, std::move(out));
}

BohrSeries dirichlet_multiply(const BohrSeries& f, const BohrSeries& g) {
  Index n_max = std::min(f.n_max(), g.n_max());
  std::vector<Complex> acc(n_max + 1, Complex{0.0, 0.0});
  // Ascending outer index, ascending inner index: a fixed summation order.
  for (const auto& [m, a] : f.terms()) {
    if (m > n_max) break;
    Index bound = n_max / m;
    for (const auto& [k, b] : g.terms()) {
      if (k > bound) break;
      acc[m * k] += a * b;
    }
  }
  std::vector<BohrSeries::Term> out;
  for (Index n = 1; n <= n_max; ++n)
    if (acc[n] != Complex{0.0, 0.0}) out.push_back({n, acc[n]});
  return BohrSeries::from_terms(n_max, std::move(out));
}

BohrSeries invert(const BohrSeries& f, const PrimeTable& table) {
  Complex a1 = f.is_zero() ? Complex{0.0, 0.0} : f.coeff(1);
  if (a1 == Complex{0.0, 0.0})
    throw domain_error("series is not invertible: coefficient at n=1 vanishes");
  Index n_max = f.n_max();
  if (n_max > table.limit())
    throw domain_error("series truncation exceeds the prime table limit");
  Complex inv_a1 = Complex{1.0, 0.0} / a1;

  // g is built ascending; once g_m is final its contributions a_d * g_m are
  // pushed onto every n = d*m, so acc[n] is complete when n is reached.
  std::vector<Complex> acc(n_max + 1, Complex{0.0, 0.0});
  std::vector<Complex> g(n_max + 1, Complex{0.0, 0.0});
  const auto& terms = f.terms();
  for (Index m = 1; m <= n_max; ++m) {
    g[m] = m == 1 ? inv_a1 : -inv_a1 * acc[m];
    if (g[m] == Complex{0.0, 0.0}) continue;
    for (const auto& [d, a] : terms) {
      if (d < 2) continue;
      if (d > n_max / m) break;
      acc[d * m] += a * g[m];
    }
  }
  std::vector<BohrSeries::Term> out;
  for (Index n = 1; n <= n_max; ++n)
    if (g[n] != Complex{0.0, 0.0}) out.push_back({n, g[n]});
  return BohrSeries::from_terms(n_max, std::move(out));
}

double norm(const BohrSeries& f) {
  KahanSum sum;
  for (const auto& [n, a] : f.terms()) sum.add(std::norm(a));
  return std::sqrt(sum.value());
}

Evaluation evaluate(const BohrSeries& f, const Point& lambda, double dropped_norm,
                    const PrimeTable& table) {
  if (f.n_max() > table.limit())
    throw domain_error("series truncation exceeds the prime table limit");
  KahanSum re, im;
  for (const auto& [n, a] : f.terms()) {
    Complex mono{1.0, 0.0};
    bool vanishes = false;
    for (const auto& [p, e] : table.factorize(n)) {
      std::size_t pos = *table.position_of(p);
      if (!lambda.has(pos)) {
        vanishes = true;  // absent variable evaluates as 0
        break;
      }
      Complex base = lambda.at(pos);
      for (std::uint32_t k = 0; k < e; ++k) mono *= base;
    }
    if (vanishes) continue;
    Complex term = a * mono;
    re.add(term.real());
    im.add(term.imag());
  }
  Evaluation result;
  result.value = Complex{re.value(), im.value()};
  result.tail_bound = dropped_norm > 0.0 ? kernel_norm(lambda) * dropped_norm : 0.0;
  return result;
}

namespace {

// Depth-first enumeration of integers composed of the point's variables.
void smooth_recurse(const Point& lambda, const PrimeTable& table, std::size_t entry,
                    Index n, Complex coeff, Index n_max, bool squarefree_mobius,
                    std::vector<BohrSeries::Term>& out) {
  if (entry == lambda.entries().size()) {
    out.push_back({n, coeff});
    return;
  }
  const auto& [pos, value] = lambda.entries()[entry];
  Index p = table.prime_at(pos);
  smooth_recurse(lambda, table, entry + 1, n, coeff, n_max, squarefree_mobius, out);
  Complex base = std::conj(value);
  Complex c = coeff;
  Index m = n;
  std::uint32_t power = 0;
  while (m <= n_max / p) {
    m *= p;
    ++power;
    c *= base;
    if (squarefree_mobius) {
      if (power > 1) break;
      smooth_recurse(lambda, table, entry + 1, m, -c, n_max, squarefree_mobius, out);
      break;
    }
    smooth_recurse(lambda, table, entry + 1, m, c, n_max, squarefree_mobius, out);
  }
}

}  // namespace

BohrSeries kernel(const Point& lambda, Index n_max, const PrimeTable& table) {
  if (n_max < 1) throw validation_error("n_max must be positive");
  std::vector<BohrSeries::Term> out;
  smooth_recurse(lambda, table, 0, 1, Complex{1.0, 0.0}, n_max, false, out);
  return BohrSeries::from_terms(n_max, std::move(out));
}

BohrSeries kernel_inverse(const Point& lambda, Index n_max, const PrimeTable& table) {
  if (n_max < 1) throw validation_error("n_max must be positive");
  std::vector<BohrSeries::Term> out;
  smooth_recurse(lambda, table, 0, 1, Complex{1.0, 0.0}, n_max, true, out);
  return BohrSeries::from_terms(n_max, std::move(out));
}

double kernel_norm(const Point& lambda) {
  double prod = 1.0;
  for (const auto& [pos, v] : lambda.entries()) {
    double m2 = std::norm(v);
    if (m2 >= 1.0)
      throw domain_error("kernel norm undefined: |lambda| >= 1 at position " +
                         std::to_string(pos));
    prod *= 1.0 / (1.0 - m2);
  }
  return std::sqrt(prod);
}

bool kernel_bounded(const Point&) {
  return true;  // finite support always sums
}

bool kernel_bounded(const TailRule& rule) {
  if (rule.scale == 0.0) return true;
  if (!std::isfinite(rule.scale) || !std::isfinite(rule.exponent))
    throw validation_error("unsupported tail rule");
  // sum |c| / p_j^k converges exactly when k > 1 (prime zeta); k <= 1
  // diverges with the prime harmonic series.
  return rule.exponent > 1.0;
}

BohrSeries restrict_to_first_variables(const BohrSeries& f, std::size_t k,
                                       const PrimeTable& table) {
  if (f.n_max() > table.limit())
    throw domain_error("series truncation exceeds the prime table limit");
  std::vector<BohrSeries::Term> out;
  for (const auto& t : f.terms()) {
    auto factors = table.factorize(t.first);
    bool keep = true;
    for (const auto& [p, e] : factors)
      if (*table.position_of(p) > k) {
        keep = false;
        break;
      }
    if (keep) out.push_back(t);
  }
  return BohrSeries::from_terms(f.n_max(), std::move(out));
}

BohrSeries harmonic_kernel(Index n_max) {
  return BohrSeries::from_rule(
      n_max, [](Index n) { return Complex{1.0 / static_cast<double>(n), 0.0}; });
}

BohrSeries harmonic_kernel_inverse(Index n_max, const PrimeTable& table) {
  if (n_max > table.limit())
    throw domain_error("n_max exceeds the prime table limit");
  return BohrSeries::from_rule(n_max, [&table](Index n) {
    return Complex{table.mobius(n) / static_cast<double>(n), 0.0};
  });
}

double max_coeff_distance(const BohrSeries& f, const BohrSeries& g) {
  double worst = 0.0;
  auto fi = f.terms().begin();
  auto gi = g.terms().begin();
  while (fi != f.terms().end() || gi != g.terms().end()) {
    if (gi == g.terms().end() || (fi != f.terms().end() && fi->first < gi->first)) {
      worst = std::max(worst, std::abs(fi->second));
      ++fi;
    } else if (fi == f.terms().end() || gi->first < fi->first) {
      worst = std::max(worst, std::abs(gi->second));
      ++gi;
    } else {
      worst = std::max(worst, std::abs(fi->second - gi->second));
      ++fi;
      ++gi;
    }
  }
  return worst;
}

}  // namespace bohr
