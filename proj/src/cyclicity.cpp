#include "bohr/cyclicity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace bohr {

namespace {

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(12);
  s << x;
  return s.str();
}

std::string fmt(Complex z) {
  if (z.imag() == 0.0) return fmt(z.real());
  std::ostringstream s;
  s << fmt(z.real()) << (z.imag() >= 0 ? "+" : "") << fmt(z.imag()) << "i";
  return s.str();
}

std::string fmt(const Point& p) {
  std::ostringstream s;
  s << "(";
  bool first = true;
  for (const auto& [pos, v] : p.entries()) {
    if (!first) s << ", ";
    first = false;
    s << pos << ":" << fmt(v);
  }
  s << ")";
  return s.str();
}

std::string fmt(const TaylorPoly& q) {
  std::ostringstream s;
  s << "[";
  for (std::size_t k = 0; k < q.coeffs().size(); ++k) {
    if (k) s << ", ";
    s << fmt(q.coeffs()[k]);
  }
  s << "]";
  return s.str();
}

double max_coeff_magnitude(const BohrSeries& f) {
  double m = 0.0;
  for (const auto& [n, c] : f.terms()) m = std::max(m, std::abs(c));
  return m;
}

// Horner-style evaluation over a fixed variable subset with exponent
// vectors cached once; zero_search calls this thousands of times.
class CachedEvaluator {
 public:
  CachedEvaluator(const BohrSeries& f, const std::vector<std::size_t>& positions,
                  const PrimeTable& table)
      : positions_(positions) {
    for (const auto& [n, a] : f.terms()) {
      Term t;
      t.coeff = a;
      for (const auto& [p, e] : table.factorize(n)) {
        std::size_t pos = *table.position_of(p);
        auto it = std::find(positions_.begin(), positions_.end(), pos);
        if (it == positions_.end())
          throw domain_error("series depends on a variable outside the search set");
        t.powers.push_back({static_cast<std::size_t>(it - positions_.begin()),
                            static_cast<std::uint32_t>(e)});
      }
      terms_.push_back(std::move(t));
    }
  }

  Complex eval(const std::vector<Complex>& x) const {
    KahanSum re, im;
    for (const auto& t : terms_) {
      Complex m = t.coeff;
      for (const auto& [dim, e] : t.powers) {
        Complex base = x[dim];
        for (std::uint32_t k = 0; k < e; ++k) m *= base;
      }
      re.add(m.real());
      im.add(m.imag());
    }
    return {re.value(), im.value()};
  }

  const std::vector<std::size_t>& positions() const { return positions_; }

 private:
  struct Term {
    Complex coeff;
    std::vector<std::pair<std::size_t, std::uint32_t>> powers;
  };
  std::vector<std::size_t> positions_;
  std::vector<Term> terms_;
};

Point make_point(const std::vector<std::size_t>& positions, const std::vector<Complex>& x) {
  Point p;
  for (std::size_t d = 0; d < positions.size(); ++d) p.set(positions[d], x[d]);
  return p;
}

bool lex_less(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

TaylorPoly trimmed(const TaylorPoly& f, double tol) {
  auto deg = f.effective_degree(tol);
  std::size_t d = deg ? *deg : 0;
  std::vector<Complex> c(f.coeffs().begin(), f.coeffs().begin() + d + 1);
  for (auto& v : c)
    if (std::abs(v) <= tol) v = Complex{0.0, 0.0};
  return TaylorPoly(std::move(c));
}

}  // namespace

ZeroSearchResult zero_search(const BohrSeries& f, std::size_t variable_count, long budget,
                             double zero_tol, const EngineConfig& config,
                             const PrimeTable& table) {
  if (f.is_zero()) throw validation_error("zero search on the zero series");
  ZeroSearchResult result;
  result.argmin = Point::origin();
  result.min_modulus = std::abs(evaluate(f, Point::origin(), 0.0, table).value);

  auto support = variable_support(f, table);
  std::vector<std::size_t> positions;
  for (Index p : support) {
    std::size_t pos = *table.position_of(p);
    if (pos > variable_count)
      throw domain_error("series depends on variable position " + std::to_string(pos) +
                         " beyond the requested count " + std::to_string(variable_count));
    positions.push_back(pos);
  }
  std::sort(positions.begin(), positions.end());
  if (positions.empty()) return result;  // constant series

  const double interior = 1.0 - config.outer_tol;
  long evals = 0;

  auto consider = [&](const Point& cand, double value) {
    if (value < result.min_modulus) {
      result.min_modulus = value;
      result.argmin = cand;
    }
  };

  // Axis stage: roots of each one-variable restriction are exact zeros of
  // the truncated series on that axis. Sub-noise trailing coefficients are
  // ignored when picking the polynomial degree; candidates are verified by
  // full evaluation regardless.
  const double axis_floor = 1e-3 * config.class_tol * std::max(1.0, max_coeff_magnitude(f));
  for (Index p : support) {
    TaylorPoly fp = trimmed(prime_factor_series(f, p, table), axis_floor);
    auto deg = fp.effective_degree();
    if (!deg || *deg < 1) continue;
    auto roots = polynomial_roots(fp);
    for (const auto& r : roots) {
      if (std::abs(r) > interior) continue;
      Point cand;
      cand.set(*table.position_of(p), r);
      double v = std::abs(evaluate(f, cand, 0.0, table).value);
      ++evals;
      consider(cand, v);
      if (v <= zero_tol) {
        result.zero = cand;
        result.evaluations = evals;
        return result;
      }
    }
  }

  if (positions.size() > config.max_search_variables) {
    result.evaluations = evals;
    return result;
  }

  CachedEvaluator ev(f, positions, table);
  const std::size_t dims = positions.size();

  // Grid seeds: radial x angular per variable.
  std::size_t angular = std::max<std::size_t>(4, config.grid_per_variable / 4);
  std::vector<Complex> ring;
  for (double r : {0.2, 0.45, 0.675, 0.85})
    for (std::size_t a = 0; a < angular; ++a) {
      double th = 2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(angular);
      ring.push_back(Complex{r * std::cos(th), r * std::sin(th)});
    }
  ring.push_back(Complex{0.0, 0.0});

  std::vector<Complex> best(dims, Complex{0.0, 0.0});
  double best_v = std::abs(ev.eval(best));
  ++evals;
  std::vector<std::size_t> idx(dims, 0);
  std::vector<Complex> x(dims);
  while (true) {
    for (std::size_t d = 0; d < dims; ++d) x[d] = ring[idx[d]];
    double v = std::abs(ev.eval(x));
    ++evals;
    if (v < best_v || (v == best_v && lex_less(x, best))) {
      best_v = v;
      best = x;
    }
    std::size_t d = 0;
    while (d < dims && ++idx[d] == ring.size()) idx[d++] = 0;
    if (d == dims) break;
  }

  // Derivative-free compass descent on |F|, radially clamped inside.
  double step = 0.15;
  x = best;
  while (step > 1e-13 && evals < budget && best_v > zero_tol * 0.01) {
    bool improved = false;
    std::vector<Complex> trial_best = best;
    double trial_v = best_v;
    for (std::size_t d = 0; d < dims; ++d) {
      const Complex moves[4] = {Complex{step, 0.0}, Complex{-step, 0.0},
                                Complex{0.0, step}, Complex{0.0, -step}};
      for (const auto& mv : moves) {
        x = best;
        x[d] += mv;
        double mod = std::abs(x[d]);
        if (mod > interior) x[d] *= interior / mod;
        double v = std::abs(ev.eval(x));
        ++evals;
        if (v < trial_v || (v == trial_v && lex_less(x, trial_best))) {
          trial_v = v;
          trial_best = x;
          improved = true;
        }
      }
    }
    if (improved) {
      best = trial_best;
      best_v = trial_v;
    } else {
      step *= 0.5;
    }
  }

  Point cand = make_point(positions, best);
  consider(cand, best_v);
  if (best_v <= zero_tol) result.zero = cand;
  result.evaluations = evals;
  return result;
}

double noncyclicity_bound(const BohrSeries& f, const Point& zero, double zero_tol,
                          const PrimeTable& table) {
  double v = std::abs(evaluate(f, zero, 0.0, table).value);
  if (v > zero_tol)
    throw domain_error("noncyclicity_bound: |F(zero)| = " + fmt(v) +
                       " exceeds zero_tol; the point is not a verified zero");
  return 1.0 / kernel_norm(zero);
}

namespace {

struct StripCandidate {
  Index prime = 0;
  std::size_t position = 0;
  TaylorPoly q;
  BohrSeries residual;
  std::string residual_kind;
};

// Coefficients at or below this floor are division/rounding artifacts of
// the normalized working series, not data. Structural scans ignore them;
// certificates are still verified against the full series.
double noise_floor(const BohrSeries& work, const EngineConfig& cfg) {
  return 1e-3 * cfg.class_tol * std::max(1.0, max_coeff_magnitude(work));
}

std::set<Index> effective_support(const BohrSeries& work, double floor,
                                  const PrimeTable& table) {
  std::set<Index> support;
  for (const auto& [n, c] : work.terms()) {
    if (std::abs(c) <= floor) continue;
    for (const auto& [p, e] : table.factorize(n)) support.insert(p);
  }
  return support;
}

BohrSeries restrict_to_primes(const BohrSeries& work, const std::set<Index>& primes,
                              const PrimeTable& table) {
  std::vector<BohrSeries::Term> terms;
  for (const auto& t : work.terms()) {
    bool inside = true;
    for (const auto& [p, e] : table.factorize(t.first))
      if (!primes.count(p)) {
        inside = false;
        break;
      }
    if (inside) terms.push_back(t);
  }
  return BohrSeries::from_terms(work.n_max(), std::move(terms));
}

bool approx_unit(const BohrSeries& s, double tol) {
  for (const auto& [n, c] : s.terms()) {
    if (n == 1) {
      if (std::abs(c - Complex{1.0, 0.0}) > tol) return false;
    } else if (std::abs(c) > tol) {
      return false;
    }
  }
  return !s.is_zero();
}

// Kernel point check for a totally multiplicative (normalized) series:
// every prime coefficient needs modulus < 1 to be conj of a disk point.
bool kernel_moduli_ok(const BohrSeries& s, const std::set<Index>& support, double* worst) {
  double w = 0.0;
  for (Index p : support) w = std::max(w, std::abs(s.coeff(p)));
  if (worst) *worst = w;
  return w < 1.0;
}

// R7 candidate: a degree <= max_factor_degree polynomial q in one variable
// with F = q * (reproducing kernel or unit). q is read off the prime-factor
// series assuming a geometric residual tail; the division is exact Dirichlet
// arithmetic and the residual is re-classified before acceptance.
std::optional<StripCandidate> detect_strip(const BohrSeries& work,
                                           const std::set<Index>& support,
                                           const EngineConfig& cfg, const PrimeTable& table) {
  int divisions = 0;
  for (Index p : support) {
    TaylorPoly fp = prime_factor_series(work, p, table);
    std::size_t K = fp.degree_max();
    if (K < 1) continue;
    double scale = 0.0;
    for (const auto& c : fp.coeffs()) scale = std::max(scale, std::abs(c));
    std::optional<std::size_t> last_degree;
    for (std::size_t d = 1; d <= std::min(cfg.max_factor_degree, K); ++d) {
      Complex c{0.0, 0.0};
      if (d < K && std::abs(fp.coeff(d)) > cfg.class_tol * scale)
        c = fp.coeff(d + 1) / fp.coeff(d);
      if (std::abs(c) >= 1.0) continue;
      bool consistent = true;
      for (std::size_t k = d + 1; k <= K; ++k)
        if (std::abs(fp.coeff(k) - c * fp.coeff(k - 1)) >
            cfg.class_tol * (1.0 + std::abs(fp.coeff(k - 1)))) {
          consistent = false;
          break;
        }
      if (!consistent) continue;

      std::vector<Complex> qc(d + 1);
      qc[0] = fp.coeff(0);
      for (std::size_t k = 1; k <= d; ++k) qc[k] = fp.coeff(k) - c * fp.coeff(k - 1);
      TaylorPoly q = trimmed(TaylorPoly(std::move(qc)), cfg.class_tol * (1.0 + scale));
      auto qdeg = q.effective_degree();
      if (!qdeg || *qdeg == 0) continue;  // purely geometric: kernel territory
      if (last_degree && *last_degree == *qdeg) continue;
      last_degree = *qdeg;
      if (++divisions > 32) return std::nullopt;

      std::vector<BohrSeries::Term> qterms;
      Index pk = 1;
      for (std::size_t k = 0; k <= *qdeg; ++k) {
        if (q.coeffs()[k] != Complex{0.0, 0.0}) qterms.push_back({pk, q.coeffs()[k]});
        if (k < *qdeg) pk *= p;
      }
      auto qseries = BohrSeries::from_terms(work.n_max(), std::move(qterms));
      auto residual = dirichlet_multiply(work, invert(qseries, table));

      StripCandidate cand;
      cand.prime = p;
      cand.position = *table.position_of(p);
      cand.q = q;
      if (approx_unit(residual, cfg.class_tol * 10.0)) {
        cand.residual = BohrSeries::unit(work.n_max());
        cand.residual_kind = "unit";
        return cand;
      }
      auto rep = classify(residual, ClassCandidate::totally(), cfg.class_tol, table);
      if (rep.holds) {
        auto rsupport = variable_support(residual, table);
        if (kernel_moduli_ok(residual, rsupport, nullptr)) {
          cand.residual = residual;
          cand.residual_kind = "kernel";
          return cand;
        }
      }
    }
  }
  return std::nullopt;
}

struct PrimeFactorScan {
  bool concluded = false;  // a decisive NotOuter was found
  bool any_indeterminate = false;
  std::string indeterminate_note;
  std::optional<ZeroCertificate> cert;
  std::vector<FactorWitness> witnesses;
  std::size_t outer_count = 0;
};

// Hartman/Kozlov machinery shared by R3 and R4: every prime-factor series
// (restricted to `filter` when given) must be outer.
PrimeFactorScan scan_prime_factors(const BohrSeries& work, const std::set<Index>& support,
                                   const std::optional<std::set<Index>>& filter,
                                   const EngineConfig& cfg, const PrimeTable& table) {
  PrimeFactorScan scan;
  const double floor = noise_floor(work, cfg);
  for (Index p : support) {
    if (filter && !filter->count(p)) continue;
    TaylorPoly fp_full = prime_factor_series(work, p, table);
    TaylorPoly fp = trimmed(fp_full, floor);
    auto deg = fp.effective_degree();
    if (!deg || *deg == 0) continue;  // constant restriction: trivially outer
    bool at_boundary = *deg == fp_full.degree_max();  // tail not observable

    auto verdict = is_outer_polynomial(fp, cfg.outer_tol);
    verdict.within_truncation = at_boundary;
    if (verdict.status == OuterStatus::NotOuter) {
      Point cand;
      cand.set(*table.position_of(p), *verdict.witness_root);
      double v = std::abs(evaluate(work, cand, 0.0, table).value);
      if (v <= cfg.zero_tol) {
        scan.concluded = true;
        scan.cert = ZeroCertificate{cand, v, 1.0 / kernel_norm(cand)};
        scan.witnesses.push_back({p, fp.coeffs(), verdict});
        return scan;
      }
      scan.any_indeterminate = true;
      scan.indeterminate_note = "interior root of f_" + std::to_string(p) +
                                " did not re-verify as a zero (|F| = " + fmt(v) + ")";
      continue;
    }

    double min_root_mod = 2.0;
    if (verdict.status == OuterStatus::Outer && at_boundary) {
      for (const auto& r : polynomial_roots(fp)) min_root_mod = std::min(min_root_mod, std::abs(r));
      if (min_root_mod < 1.05) {
        // Truncated transcendental restriction with near-boundary roots:
        // cross-check with the Szego defect before trusting the root test.
        double defect = szego_defect(fp, cfg.szego_nodes);
        if (defect > 10.0 * cfg.szego_threshold) {
          OuterVerdict by_defect;
          by_defect.status = OuterStatus::NotOuter;
          by_defect.defect = defect;
          by_defect.within_truncation = true;
          scan.concluded = true;
          scan.witnesses.push_back({p, fp.coeffs(), by_defect});
          return scan;
        }
        if (defect > cfg.szego_threshold) {
          scan.any_indeterminate = true;
          scan.indeterminate_note =
              "f_" + std::to_string(p) + " truncation has Szego defect " + fmt(defect) +
              " in the indeterminate band";
          continue;
        }
      }
    }
    ++scan.outer_count;
  }
  return scan;
}

struct BilinearOutcome {
  enum Kind { NotApplicable, Cyclic, Inconclusive } kind = NotApplicable;
  std::string note;
};

// Total-degree <= 2 case analysis for F = 1 + b z + c w + a z w: the zero
// set solves w = -(1 + b z)/(c + a z), a Moebius image of the disk; F has a
// zero in the open bidisk exactly when that image meets the open disk.
BilinearOutcome bilinear_certificate(const BohrSeries& work, const std::set<Index>& support) {
  BilinearOutcome out;
  if (support.size() != 2) return out;
  auto it = support.begin();
  Index s = *it++;
  Index t = *it;
  if (s * t > work.n_max()) return out;
  for (const auto& [n, cc] : work.terms())
    if (n != 1 && n != s && n != t && n != s * t) return out;

  Complex b = work.coeff(s);
  Complex c = work.coeff(t);
  Complex a = work.coeff(s * t);
  const double margin = 1e-9;

  Complex center;
  double radius = 0.0;
  bool region_is_interior = true;
  if (std::abs(a) <= margin) {
    if (std::abs(c) <= margin) return out;  // univariate, not ours
    center = -Complex{1.0, 0.0} / c;
    radius = std::abs(b / c);
  } else {
    Complex pole = -c / a;
    double pm = std::abs(pole);
    if (std::abs(pm - 1.0) < margin) {
      out.kind = BilinearOutcome::Inconclusive;
      out.note = "Moebius pole on the unit circle";
      return out;
    }
    auto moebius = [&](Complex z) { return -(Complex{1.0, 0.0} + b * z) / (c + a * z); };
    // Circumcircle of three boundary images.
    Complex z1{1.0, 0.0};
    Complex z2{-0.5, std::sqrt(3.0) / 2.0};
    Complex z3{-0.5, -std::sqrt(3.0) / 2.0};
    Complex w1 = moebius(z1), w2 = moebius(z2), w3 = moebius(z3);
    Complex d1 = w2 - w1, d2 = w3 - w1;
    double det = d1.real() * d2.imag() - d1.imag() * d2.real();
    if (std::abs(det) < 1e-14) {
      out.kind = BilinearOutcome::Inconclusive;
      out.note = "degenerate boundary image";
      return out;
    }
    double m1 = std::norm(w2) - std::norm(w1);
    double m2 = std::norm(w3) - std::norm(w1);
    center = Complex{(m1 * d2.imag() - m2 * d1.imag()) / (2.0 * det),
                     (m2 * d1.real() - m1 * d2.real()) / (2.0 * det)};
    radius = std::abs(w1 - center);
    if (pm < 1.0) {
      region_is_interior = false;  // pole inside: image of the disk is the exterior
    } else {
      region_is_interior = std::abs(moebius(Complex{0.0, 0.0}) - center) < radius;
    }
  }

  double gap = region_is_interior ? std::abs(center) - (1.0 + radius)
                                  : radius - (std::abs(center) + 1.0);
  if (gap >= margin) {
    out.kind = BilinearOutcome::Cyclic;
    out.note = std::string("zero locus ") +
               (region_is_interior ? "disk" : "exterior region") + " center " + fmt(center) +
               " radius " + fmt(radius) + " misses the open disk (gap " + fmt(gap) + ")";
  } else {
    out.kind = BilinearOutcome::Inconclusive;
    out.note = "image region within margin of the unit disk (gap " + fmt(gap) + ")";
  }
  return out;
}

// Certified no-zero test on the closed polydisk by subdivision with a
// derivative (Lipschitz) bound. Sufficient only: boundary zeros defeat it.
bool subdivision_no_zero(const BohrSeries& work, const std::vector<std::size_t>& positions,
                         const PrimeTable& table, std::size_t max_cells) {
  if (positions.empty() || positions.size() > 2) return false;
  CachedEvaluator ev(work, positions, table);
  std::size_t dims = positions.size();

  std::vector<double> lip(dims, 0.0);
  for (const auto& [n, c] : work.terms())
    for (const auto& [p, e] : table.factorize(n)) {
      auto it = std::find(positions.begin(), positions.end(), *table.position_of(p));
      lip[it - positions.begin()] += std::abs(c) * e;
    }

  struct Cell {
    std::vector<Complex> center;
    double half = 1.0;
  };
  std::vector<Cell> stack{{std::vector<Complex>(dims, Complex{0.0, 0.0}), 1.0}};
  std::size_t processed = 0;
  while (!stack.empty()) {
    if (++processed > max_cells) return false;
    Cell cell = stack.back();
    stack.pop_back();
    bool outside = false;
    std::vector<Complex> probe = cell.center;
    for (std::size_t d = 0; d < dims; ++d) {
      double m = std::abs(cell.center[d]);
      if (m - cell.half * std::numbers::sqrt2 > 1.0) {
        outside = true;  // cell misses the closed disk entirely
        break;
      }
      if (m > 1.0) probe[d] *= 1.0 / m;  // clamp onto the disk
    }
    if (outside) continue;
    double slack = 0.0;
    for (std::size_t d = 0; d < dims; ++d)
      slack += lip[d] * 2.0 * std::numbers::sqrt2 * cell.half;
    if (std::abs(ev.eval(probe)) > slack) continue;  // certified on this cell
    if (cell.half < 1e-4) return false;
    // split into 4^dims children (2 per real coordinate)
    std::size_t kids = std::size_t{1} << (2 * dims);
    for (std::size_t mask = 0; mask < kids; ++mask) {
      Cell child;
      child.half = cell.half / 2.0;
      child.center = cell.center;
      for (std::size_t d = 0; d < dims; ++d) {
        double dr = (mask >> (2 * d)) & 1 ? child.half : -child.half;
        double di = (mask >> (2 * d + 1)) & 1 ? child.half : -child.half;
        child.center[d] += Complex{dr, di};
      }
      stack.push_back(std::move(child));
    }
  }
  return true;
}

std::string describe_report(const MultiplicativityReport& rep) {
  std::ostringstream s;
  s << mult_class_name(rep.kind) << " within n_max=" << rep.n_max << " ("
    << rep.checked_pairs << " pairs";
  if (rep.violation_count) {
    s << ", " << rep.violation_count << " violations, first";
    for (std::size_t i = 0; i < std::min<std::size_t>(rep.violations.size(), 3); ++i)
      s << " (" << rep.violations[i].first << "," << rep.violations[i].second << ")";
  }
  s << ")";
  return s.str();
}

CyclicityVerdict decide_impl(const BohrSeries& input, const DecideHints& hints,
                             const EngineConfig& cfg, const PrimeTable& table,
                             std::size_t depth);

// R5: recurse on the factors of a Delta-multiplicative split. Returns true
// when the rule concluded (verdict filled in).
bool try_partition_rule(const BohrSeries& work, const PrimePartition& partition,
                        CyclicityVerdict& verdict, const EngineConfig& cfg,
                        const PrimeTable& table, std::size_t depth) {
  auto rep = classify(work, ClassCandidate::delta(partition), cfg.class_tol, table);
  if (!rep.holds) {
    verdict.trace.push_back({"R5", describe_report(rep), "partition hint rejected"});
    return false;
  }
  auto factors = partition_factorize(work, partition, cfg.class_tol, table);
  verdict.trace.push_back({"R5", describe_report(rep),
                           "split into " + std::to_string(factors.size()) +
                               " variable-disjoint factors; cyclic iff all factors are"});
  bool any_unknown = false;
  std::string unknown_note;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    auto sub = decide_impl(factors[i], DecideHints{}, cfg, table, depth + 1);
    for (auto& step : sub.trace)
      verdict.trace.push_back({step.rule, "factor " + std::to_string(i + 1) + ": " + step.detail,
                               step.conclusion});
    if (sub.status == CyclicityStatus::NotCyclic) {
      verdict.status = CyclicityStatus::NotCyclic;
      if (sub.zero_certificate) {
        // A zero of a factor is a zero of the product: re-verify on work.
        double v = std::abs(evaluate(work, sub.zero_certificate->zero, 0.0, table).value);
        if (v <= cfg.zero_tol)
          verdict.zero_certificate =
              ZeroCertificate{sub.zero_certificate->zero, v, sub.zero_certificate->bound};
      }
      for (auto& w : sub.factor_witnesses) verdict.factor_witnesses.push_back(w);
      return true;
    }
    if (sub.status == CyclicityStatus::Unknown) {
      any_unknown = true;
      if (unknown_note.empty()) unknown_note = "factor " + std::to_string(i + 1) + ": " + sub.blocking;
    }
  }
  if (any_unknown) {
    verdict.status = CyclicityStatus::Unknown;
    verdict.blocking = unknown_note;
    return true;
  }
  verdict.status = CyclicityStatus::Cyclic;
  return true;
}

CyclicityVerdict decide_impl(const BohrSeries& input, const DecideHints& hints,
                             const EngineConfig& cfg, const PrimeTable& table,
                             std::size_t depth) {
  CyclicityVerdict verdict;
  if (input.is_zero()) throw validation_error("decide: the zero series has no verdict");
  if (input.n_max() > table.limit())
    throw domain_error("series truncation exceeds the prime table limit");

  double magnitude = max_coeff_magnitude(input);
  Complex a1 = input.coeff(1);

  // R1 on the origin: F(0) = a_1.
  if (std::abs(a1) <= cfg.zero_tol * magnitude) {
    verdict.status = CyclicityStatus::NotCyclic;
    verdict.zero_certificate = ZeroCertificate{Point::origin(), std::abs(a1), 1.0};
    verdict.trace.push_back({"R1", "F(0) = a_1 = " + fmt(a1),
                             "zero at the origin; cyclic vectors have no zeros"});
    return verdict;
  }

  verdict.scale = a1;
  BohrSeries work = input.scaled(Complex{1.0, 0.0} / a1);

  // R1 on hinted zeros (verified before use).
  for (const auto& z : hints.zeros) {
    double v = std::abs(evaluate(work, z, 0.0, table).value);
    if (v <= cfg.zero_tol) {
      verdict.status = CyclicityStatus::NotCyclic;
      verdict.zero_certificate = ZeroCertificate{z, v, 1.0 / kernel_norm(z)};
      verdict.trace.push_back(
          {"R1", "hinted zero " + fmt(z) + ", |F(zero)|/|a_1| = " + fmt(v),
           "verified zero certificate; bound " + fmt(1.0 / kernel_norm(z))});
      return verdict;
    }
    verdict.trace.push_back({"R1", "hinted zero " + fmt(z) + " re-evaluates to " + fmt(v),
                             "hint rejected (exceeds zero_tol)"});
  }

  std::string cert_series = "input/a_1";

  // R6: strip a hinted kernel divisor; Cor 6.3 makes this an equivalence.
  if (hints.kernel) {
    BohrSeries inv;
    std::string which;
    if (hints.kernel->prime_reciprocal) {
      inv = harmonic_kernel_inverse(work.n_max(), table);
      which = "K_p (prime-reciprocal rule a_n = 1/n)";
    } else if (hints.kernel->point) {
      inv = kernel_inverse(*hints.kernel->point, work.n_max(), table);
      which = "K_lambda at " + fmt(*hints.kernel->point);
    } else {
      throw validation_error("kernel hint carries neither a point nor the rule flag");
    }
    work = dirichlet_multiply(work, inv);
    Complex r1 = work.coeff(1);
    if (std::abs(r1) <= cfg.class_tol)
      throw solver_error("kernel division produced a vanishing constant term");
    work = work.scaled(Complex{1.0, 0.0} / r1);
    cert_series = "input after kernel division";
    verdict.trace.push_back({"R6", "divide by " + which,
                             "F K is cyclic iff F is; deciding the quotient"});
  }

  // Hinted structural rules run before the generic cascade: a supplied S or
  // partition asserts sharper structure than the search below would find.
  if (hints.s_set) {
    auto support = effective_support(work, noise_floor(work, cfg), table);
    auto rep4 = classify(work, ClassCandidate::s_mult(*hints.s_set), cfg.class_tol, table);
    if (rep4.holds) {
      std::set<Index> s_filter(hints.s_set->begin(), hints.s_set->end());
      double worst = 0.0;
      for (Index p : support)
        if (!s_filter.count(p)) worst = std::max(worst, std::abs(work.coeff(p)));
      if (worst >= 1.0) {
        verdict.trace.push_back({"R4", describe_report(rep4),
                                 "off-S coefficient modulus " + fmt(worst) +
                                     " >= 1: no square-summable extension"});
        verdict.status = CyclicityStatus::Unknown;
        verdict.blocking = "S-multiplicative with |a_q| >= 1 off S";
        return verdict;
      }
      auto scan = scan_prime_factors(work, support, s_filter, cfg, table);
      if (scan.concluded) {
        verdict.status = CyclicityStatus::NotCyclic;
        if (scan.cert) {
          scan.cert->series = cert_series;
          verdict.zero_certificate = scan.cert;
        }
        for (auto& w : scan.witnesses) verdict.factor_witnesses.push_back(w);
        verdict.trace.push_back({"R4", describe_report(rep4),
                                 "some F_p (p in S) is not outer; F is not cyclic"});
        return verdict;
      }
      if (!scan.any_indeterminate) {
        verdict.status = CyclicityStatus::Cyclic;
        verdict.trace.push_back(
            {"R4", describe_report(rep4),
             "every F_p (p in S) outer, off-S factors geometric; F is cyclic"});
        return verdict;
      }
      verdict.trace.push_back({"R4", describe_report(rep4), scan.indeterminate_note});
      verdict.status = CyclicityStatus::Unknown;
      verdict.blocking = scan.indeterminate_note;
      return verdict;
    }
    verdict.trace.push_back({"R4", describe_report(rep4), "S hint rejected"});
  }

  if (hints.partition && depth < cfg.max_depth) {
    if (try_partition_rule(work, *hints.partition, verdict, cfg, table, depth)) return verdict;
  }

  // Strip loop: R2 (kernel) and R7 (outer univariate polynomial factor).
  std::size_t strips = 0;
  while (true) {
    auto support = effective_support(work, noise_floor(work, cfg), table);

    auto rep2 = classify(work, ClassCandidate::totally(), cfg.class_tol, table);
    if (rep2.holds) {
      double worst = 0.0;
      if (kernel_moduli_ok(work, support, &worst)) {
        verdict.status = CyclicityStatus::Cyclic;
        verdict.trace.push_back(
            {"R2", describe_report(rep2),
             support.empty()
                 ? "constant series; trivially the kernel at the origin"
                 : "reproducing kernel (max_p |lambda_p| = " + fmt(worst) + "); kernels are cyclic"});
        return verdict;
      }
      verdict.trace.push_back({"R2", describe_report(rep2),
                               "totally multiplicative but |a_p| = " + fmt(worst) +
                                   " >= 1: no square-summable kernel extension"});
    }

    if (strips >= cfg.max_strips) break;
    auto cand = detect_strip(work, support, cfg, table);
    if (!cand) break;

    auto outer = is_outer_polynomial(cand->q, cfg.outer_tol);
    if (outer.status == OuterStatus::NotOuter) {
      // Interior root of the factor: certify with a root of the full
      // one-variable restriction, an exact zero of the truncated series.
      TaylorPoly fp =
          trimmed(prime_factor_series(work, cand->prime, table), noise_floor(work, cfg));
      std::optional<ZeroCertificate> cert;
      if (fp.effective_degree().value_or(0) >= 1) {
        for (const auto& r : polynomial_roots(fp)) {
          if (std::abs(r) > 1.0 - cfg.outer_tol) continue;
          Point z;
          z.set(cand->position, r);
          double v = std::abs(evaluate(work, z, 0.0, table).value);
          if (v <= cfg.zero_tol && (!cert || std::abs(r) < std::abs(cert->zero.at(cand->position)))) {
            cert = ZeroCertificate{z, v, 1.0 / kernel_norm(z), cert_series};
          }
        }
      }
      verdict.status = CyclicityStatus::NotCyclic;
      verdict.zero_certificate = cert;
      verdict.factor_witnesses.push_back({cand->prime, cand->q.coeffs(), outer});
      verdict.trace.push_back(
          {"R7",
           "factor q(zeta_" + std::to_string(cand->position) + ") = " + fmt(cand->q) +
               " on prime " + std::to_string(cand->prime),
           "factor has an interior root " + fmt(*outer.witness_root) +
               "; FG cyclic iff both are, so F is not cyclic"});
      return verdict;
    }

    ++strips;
    verdict.factor_witnesses.push_back({cand->prime, cand->q.coeffs(), outer});
    verdict.trace.push_back(
        {"R7",
         "strip outer factor q(zeta_" + std::to_string(cand->position) + ") = " + fmt(cand->q) +
             " (prime " + std::to_string(cand->prime) + ", residual " + cand->residual_kind + ")",
         "FG cyclic iff both cyclic; q outer, recurse on the cofactor"});
    work = cand->residual;
    cert_series = "input after factor strips";
  }

  auto support = effective_support(work, noise_floor(work, cfg), table);

  // R3: multiplicative coefficients (Hartman/Kozlov).
  auto rep3 = classify(work, ClassCandidate::multiplicative(), cfg.class_tol, table);
  if (rep3.holds) {
    auto scan = scan_prime_factors(work, support, std::nullopt, cfg, table);
    if (scan.concluded) {
      verdict.status = CyclicityStatus::NotCyclic;
      if (scan.cert) {
        scan.cert->series = cert_series;
        verdict.zero_certificate = scan.cert;
      }
      for (auto& w : scan.witnesses) verdict.factor_witnesses.push_back(w);
      verdict.trace.push_back({"R3", describe_report(rep3),
                               "prime-factor series f_" +
                                   std::to_string(scan.witnesses.back().prime) +
                                   " is not outer; F is not cyclic"});
      return verdict;
    }
    if (!scan.any_indeterminate) {
      verdict.status = CyclicityStatus::Cyclic;
      verdict.trace.push_back({"R3", describe_report(rep3),
                               "all " + std::to_string(scan.outer_count) +
                                   " prime-factor series are outer; F is cyclic"});
      return verdict;
    }
    verdict.trace.push_back({"R3", describe_report(rep3), scan.indeterminate_note});
    verdict.status = CyclicityStatus::Unknown;
    verdict.blocking = scan.indeterminate_note;
    return verdict;
  }

  // R8 / zero search.
  std::vector<std::size_t> positions;
  for (Index p : support) positions.push_back(*table.position_of(p));
  std::sort(positions.begin(), positions.end());

  if (!positions.empty() && positions.size() <= cfg.max_search_variables) {
    // Search the restriction to the effective variables; at a point
    // supported there the two series evaluate identically, so the
    // certificate transfers exactly.
    BohrSeries searchable = restrict_to_primes(work, support, table);
    auto sr = zero_search(searchable, positions.back(), cfg.search_budget, cfg.zero_tol, cfg,
                          table);
    if (sr.zero) {
      double v = std::abs(evaluate(work, *sr.zero, 0.0, table).value);
      if (v <= cfg.zero_tol) {
        verdict.status = CyclicityStatus::NotCyclic;
        verdict.zero_certificate =
            ZeroCertificate{*sr.zero, v, 1.0 / kernel_norm(*sr.zero), cert_series};
        verdict.trace.push_back({"R1",
                                 "zero search found " + fmt(*sr.zero) + " with |F| = " +
                                     fmt(v) + " after " + std::to_string(sr.evaluations) +
                                     " evaluations",
                                 "verified zero certificate"});
        return verdict;
      }
    }
    verdict.trace.push_back({"R8",
                             "zero search over " + std::to_string(positions.size()) +
                                 " variables: min |F| = " + fmt(sr.min_modulus) + " at " +
                                 fmt(sr.argmin),
                             "no zero found (not a no-zero certificate)"});

    // No-zero certificates are only sound when nothing was dropped by the
    // effective-support restriction.
    if (searchable.support_size() == work.support_size()) {
      auto bl = bilinear_certificate(searchable, support);
      if (bl.kind == BilinearOutcome::Cyclic) {
        verdict.status = CyclicityStatus::Cyclic;
        verdict.trace.push_back(
            {"R8", bl.note, "zero-free polynomial in finitely many variables is cyclic"});
        return verdict;
      }
      if (bl.kind == BilinearOutcome::Inconclusive)
        verdict.trace.push_back({"R8", bl.note, "bilinear analysis inconclusive"});

      if (subdivision_no_zero(searchable, positions, table, 40000)) {
        verdict.status = CyclicityStatus::Cyclic;
        verdict.trace.push_back(
            {"R8",
             "subdivision with a derivative bound certifies min |F| > 0 on "
             "the closed polydisk",
             "zero-free polynomial in finitely many variables is cyclic"});
        return verdict;
      }
    }
    verdict.status = CyclicityStatus::Unknown;
    verdict.blocking = "no zero found and no no-zero certificate available";
    return verdict;
  }

  if (!positions.empty()) {
    // Too many variables for a joint search; the per-axis scan is still sound.
    for (Index p : support) {
      TaylorPoly fp = trimmed(prime_factor_series(work, p, table), noise_floor(work, cfg));
      if (fp.effective_degree().value_or(0) < 1) continue;
      for (const auto& r : polynomial_roots(fp)) {
        if (std::abs(r) > 1.0 - cfg.outer_tol) continue;
        Point z;
        z.set(*table.position_of(p), r);
        double v = std::abs(evaluate(work, z, 0.0, table).value);
        if (v <= cfg.zero_tol) {
          verdict.status = CyclicityStatus::NotCyclic;
          verdict.zero_certificate = ZeroCertificate{z, v, 1.0 / kernel_norm(z), cert_series};
          verdict.trace.push_back({"R1", "axis zero at " + fmt(z), "verified zero certificate"});
          return verdict;
        }
      }
    }
    verdict.status = CyclicityStatus::Unknown;
    verdict.blocking = "series depends on " + std::to_string(positions.size()) +
                       " variables within the truncation; joint zero search is out of reach "
                       "and no structural rule applied";
    verdict.trace.push_back({"R8", verdict.blocking, "unknown"});
    return verdict;
  }

  verdict.status = CyclicityStatus::Unknown;
  verdict.blocking = "no rule applied";
  return verdict;
}

}  // namespace

CyclicityVerdict decide(const BohrSeries& f, const DecideHints& hints,
                        const EngineConfig& config, const PrimeTable& table) {
  return decide_impl(f, hints, config, table, 0);
}

std::string status_name(CyclicityStatus s) {
  switch (s) {
    case CyclicityStatus::Cyclic: return "Cyclic";
    case CyclicityStatus::NotCyclic: return "NotCyclic";
    case CyclicityStatus::Unknown: return "Unknown";
  }
  return "?";
}

std::string verdict_to_json(const CyclicityVerdict& v) {
  nlohmann::json doc;
  doc["status"] = status_name(v.status);
  doc["scale"] = {{"re", v.scale.real()}, {"im", v.scale.imag()}};
  doc["trace"] = nlohmann::json::array();
  for (const auto& step : v.trace)
    doc["trace"].push_back(
        {{"rule", step.rule}, {"detail", step.detail}, {"conclusion", step.conclusion}});
  if (v.zero_certificate) {
    nlohmann::json zero = nlohmann::json::array();
    for (const auto& [pos, val] : v.zero_certificate->zero.entries())
      zero.push_back({{"position", pos}, {"re", val.real()}, {"im", val.imag()}});
    doc["certificate"] = {{"type", "zero"},
                          {"zero", zero},
                          {"modulus", v.zero_certificate->modulus},
                          {"bound", v.zero_certificate->bound},
                          {"series", v.zero_certificate->series}};
  }
  if (!v.factor_witnesses.empty()) {
    doc["factors"] = nlohmann::json::array();
    for (const auto& w : v.factor_witnesses) {
      nlohmann::json coeffs = nlohmann::json::array();
      for (const auto& c : w.factor) coeffs.push_back({c.real(), c.imag()});
      std::string st = w.verdict.status == OuterStatus::Outer
                           ? "Outer"
                           : (w.verdict.status == OuterStatus::NotOuter ? "NotOuter"
                                                                        : "Indeterminate");
      doc["factors"].push_back({{"prime", w.prime}, {"coeffs", coeffs}, {"outer", st}});
    }
  }
  if (!v.blocking.empty()) doc["blocking"] = v.blocking;
  return doc.dump(2);
}

}  // namespace bohr
