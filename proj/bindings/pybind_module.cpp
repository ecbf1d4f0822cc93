#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bohr/cyclicity.hpp"
#include "bohr/delta.hpp"
#include "bohr/dilation.hpp"
#include "bohr/hardy.hpp"
#include "bohr/series_io.hpp"

namespace py = pybind11;
using namespace bohr;

namespace {

Point point_from_dict(const std::map<std::size_t, Complex>& entries) {
  return Point(entries);
}

std::map<std::size_t, Complex> point_to_dict(const Point& p) {
  std::map<std::size_t, Complex> out;
  for (const auto& [pos, v] : p.entries()) out[pos] = v;
  return out;
}

DecideHints hints_from_args(const std::vector<std::map<std::size_t, Complex>>& zeros,
                            bool kernel_pp,
                            const std::optional<std::map<std::size_t, Complex>>& kernel_point,
                            const std::optional<std::vector<std::vector<Index>>>& partition,
                            const std::optional<std::vector<Index>>& s_set) {
  DecideHints hints;
  for (const auto& z : zeros) hints.zeros.push_back(point_from_dict(z));
  if (kernel_pp) hints.kernel = KernelHint{std::nullopt, true};
  if (kernel_point) hints.kernel = KernelHint{point_from_dict(*kernel_point), false};
  if (partition) {
    PrimePartition part;
    part.blocks = *partition;
    hints.partition = part;
  }
  if (s_set) hints.s_set = *s_set;
  return hints;
}

py::dict verdict_to_pydict(const CyclicityVerdict& v) {
  py::dict out;
  out["status"] = status_name(v.status);
  py::list trace;
  for (const auto& s : v.trace) {
    py::dict step;
    step["rule"] = s.rule;
    step["detail"] = s.detail;
    step["conclusion"] = s.conclusion;
    trace.append(step);
  }
  out["trace"] = trace;
  if (v.zero_certificate) {
    py::dict cert;
    cert["zero"] = point_to_dict(v.zero_certificate->zero);
    cert["modulus"] = v.zero_certificate->modulus;
    cert["bound"] = v.zero_certificate->bound;
    cert["series"] = v.zero_certificate->series;
    out["certificate"] = cert;
  }
  if (!v.blocking.empty()) out["blocking"] = v.blocking;
  out["scale"] = v.scale;
  return out;
}

py::dict estimate_to_pydict(const DeltaEstimate& e) {
  py::dict out;
  out["N"] = e.dictionary_size;
  out["M"] = e.window;
  out["value"] = e.value;
  out["cond"] = e.conditioning;
  out["rank"] = e.rank;
  out["coefficients"] = e.coefficients;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bohr-series toolkit: cyclic vectors in the Hardy space over the "
            "infinite polydisk";

  py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<bohr::domain_error>(m, "DomainError", PyExc_ValueError);
  py::register_exception<solver_error>(m, "SolverError", PyExc_RuntimeError);

  py::class_<PrimeTable>(m, "PrimeTable")
      .def(py::init<Index>(), py::arg("limit") = PrimeTable::kDefaultLimit)
      .def_property_readonly("limit", &PrimeTable::limit)
      .def("factorize", &PrimeTable::factorize)
      .def("multi_index",
           [](const PrimeTable& t, Index n) { return t.multi_index(n).exponents; })
      .def("index_of",
           [](const PrimeTable& t, const std::vector<std::uint32_t>& e) {
             return t.index_of(MultiIndex{std::vector<std::uint32_t>(e)});
           })
      .def("mobius", &PrimeTable::mobius)
      .def("divisors", &PrimeTable::divisors)
      .def("is_prime", &PrimeTable::is_prime)
      .def("prime_at", &PrimeTable::prime_at);

  m.def("factorize", [](Index n) { return PrimeTable::standard().factorize(n); });
  m.def("multi_index",
        [](Index n) { return PrimeTable::standard().multi_index(n).exponents; });
  m.def("index_of", [](const std::vector<std::uint32_t>& e) {
    return PrimeTable::standard().index_of(MultiIndex{std::vector<std::uint32_t>(e)});
  });
  m.def("mobius", [](Index n) { return PrimeTable::standard().mobius(n); });
  m.def("divisors", [](Index n) { return PrimeTable::standard().divisors(n); });

  py::class_<BohrSeries>(m, "BohrSeries")
      .def_static("zero", &BohrSeries::zero, py::arg("n_max"))
      .def_static("unit", &BohrSeries::unit, py::arg("n_max"))
      .def_static("monomial", &BohrSeries::monomial, py::arg("n"), py::arg("coefficient"),
                  py::arg("n_max"))
      .def_static(
          "from_terms",
          [](Index n_max, const std::map<Index, Complex>& terms) {
            std::vector<BohrSeries::Term> t(terms.begin(), terms.end());
            return BohrSeries::from_terms(n_max, std::move(t));
          },
          py::arg("n_max"), py::arg("coeffs"))
      .def_property_readonly("n_max", &BohrSeries::n_max)
      .def_property_readonly("support_size", &BohrSeries::support_size)
      .def("coeff", &BohrSeries::coeff)
      .def("terms",
           [](const BohrSeries& f) {
             std::map<Index, Complex> out;
             for (const auto& [n, c] : f.terms()) out[n] = c;
             return out;
           })
      .def("truncated", &BohrSeries::truncated)
      .def("scaled", &BohrSeries::scaled)
      .def("pruned", &BohrSeries::pruned)
      .def("__eq__", [](const BohrSeries& a, const BohrSeries& b) { return a == b; })
      .def("__repr__", [](const BohrSeries& f) {
        return "<BohrSeries n_max=" + std::to_string(f.n_max()) + " support=" +
               std::to_string(f.support_size()) + ">";
      });

  m.def("linear_combine",
        [](const std::vector<std::pair<Complex, BohrSeries>>& terms) {
          return linear_combine(terms);
        });
  m.def("dirichlet_multiply", &dirichlet_multiply);
  m.def("invert", [](const BohrSeries& f) { return invert(f); });
  m.def("norm", [](const BohrSeries& f) { return norm(f); });
  m.def(
      "evaluate",
      [](const BohrSeries& f, const std::map<std::size_t, Complex>& point, double dropped) {
        auto r = evaluate(f, point_from_dict(point), dropped);
        return py::make_tuple(r.value, r.tail_bound);
      },
      py::arg("series"), py::arg("point"), py::arg("dropped_norm") = 0.0);
  m.def(
      "kernel",
      [](const std::map<std::size_t, Complex>& point, Index n_max) {
        return kernel(point_from_dict(point), n_max);
      },
      py::arg("point"), py::arg("n_max"));
  m.def(
      "kernel_inverse",
      [](const std::map<std::size_t, Complex>& point, Index n_max) {
        return kernel_inverse(point_from_dict(point), n_max);
      },
      py::arg("point"), py::arg("n_max"));
  m.def("kernel_norm", [](const std::map<std::size_t, Complex>& point) {
    return kernel_norm(point_from_dict(point));
  });
  m.def("kernel_bounded_finite", [](const std::map<std::size_t, Complex>& point) {
    return kernel_bounded(point_from_dict(point));
  });
  m.def(
      "kernel_bounded_rule",
      [](double scale, double exponent) { return kernel_bounded(TailRule{scale, exponent}); },
      py::arg("scale"), py::arg("exponent"));
  m.def("restrict_to_first_variables", [](const BohrSeries& f, std::size_t k) {
    return restrict_to_first_variables(f, k);
  });
  m.def("harmonic_kernel", &harmonic_kernel);
  m.def("harmonic_kernel_inverse",
        [](Index n_max) { return harmonic_kernel_inverse(n_max); });
  m.def("max_coeff_distance", &max_coeff_distance);
  m.def("read_series", [](const std::string& path) { return read_series(path); });
  m.def("write_series",
        [](const BohrSeries& f, const std::string& path) { write_series(f, path); });

  py::class_<TaylorPoly>(m, "TaylorPoly")
      .def(py::init<std::vector<Complex>>())
      .def_property_readonly("degree_max", &TaylorPoly::degree_max)
      .def_property_readonly("coeffs", [](const TaylorPoly& p) { return p.coeffs(); })
      .def("__call__", [](const TaylorPoly& p, Complex z) { return p(z); });

  m.def("polynomial_roots", &polynomial_roots);
  m.def(
      "is_outer_polynomial",
      [](const TaylorPoly& p, double tol) {
        auto v = is_outer_polynomial(p, tol);
        py::dict out;
        out["status"] = v.status == OuterStatus::Outer
                            ? "Outer"
                            : (v.status == OuterStatus::NotOuter ? "NotOuter"
                                                                 : "Indeterminate");
        if (v.witness_root) out["witness_root"] = *v.witness_root;
        out["defect"] = v.defect;
        return out;
      },
      py::arg("p"), py::arg("tol") = 1e-9);
  m.def("szego_defect", &szego_defect, py::arg("f"), py::arg("quadrature_points") = 4096);
  m.def("power_dilation", &power_dilation, py::arg("n"), py::arg("f"),
        py::arg("cutoff") = std::nullopt);
  m.def("shift", &shift);
  m.def("noor_w", &noor_w, py::arg("n"), py::arg("f"), py::arg("cutoff") = std::nullopt);
  m.def(
      "log_series",
      [](const std::string& kind, std::size_t mm, std::size_t cutoff) {
        if (kind == "log1mzm") return log_series(LogKind::LogOneMinusZm, mm, cutoff);
        if (kind == "phi") return log_series(LogKind::PhiM, mm, cutoff);
        throw validation_error("log_series kind must be log1mzm or phi");
      },
      py::arg("kind"), py::arg("m"), py::arg("cutoff"));
  m.def("bohr_lift", &bohr_lift, py::arg("f"), py::arg("n_max"));

  m.def(
      "classify",
      [](const BohrSeries& f, const std::string& kind,
         const std::optional<std::vector<Index>>& s_set,
         const std::optional<std::vector<std::vector<Index>>>& partition, double tol) {
        ClassCandidate cand;
        if (kind == "totally")
          cand = ClassCandidate::totally();
        else if (kind == "multiplicative")
          cand = ClassCandidate::multiplicative();
        else if (kind == "s")
          cand = ClassCandidate::s_mult(s_set.value_or(std::vector<Index>{}));
        else if (kind == "delta") {
          PrimePartition part;
          if (partition) part.blocks = *partition;
          cand = ClassCandidate::delta(part);
        } else {
          throw validation_error("classify kind must be totally|multiplicative|s|delta");
        }
        auto rep = classify(f, cand, tol);
        py::dict out;
        out["holds"] = rep.holds;
        out["kind"] = mult_class_name(rep.kind);
        out["scale"] = rep.scale;
        out["violations"] = rep.violations;
        out["violation_count"] = rep.violation_count;
        out["checked_pairs"] = rep.checked_pairs;
        out["n_max"] = rep.n_max;
        return out;
      },
      py::arg("series"), py::arg("kind"), py::arg("s_set") = std::nullopt,
      py::arg("partition") = std::nullopt, py::arg("tol") = 1e-10);
  m.def("prime_factor_series",
        [](const BohrSeries& f, Index p) { return prime_factor_series(f, p); });
  m.def(
      "partition_factorize",
      [](const BohrSeries& f, const std::vector<std::vector<Index>>& blocks, double tol) {
        PrimePartition part;
        part.blocks = blocks;
        return partition_factorize(f, part, tol);
      },
      py::arg("series"), py::arg("blocks"), py::arg("tol") = 1e-10);
  m.def("variable_support", [](const BohrSeries& f) {
    auto s = variable_support(f);
    return std::vector<Index>(s.begin(), s.end());
  });
  m.def("growth_class", &growth_class, py::arg("series"), py::arg("eps"));

  m.def(
      "decide",
      [](const BohrSeries& f, const std::vector<std::map<std::size_t, Complex>>& zeros,
         bool kernel_pp, const std::optional<std::map<std::size_t, Complex>>& kernel_point,
         const std::optional<std::vector<std::vector<Index>>>& partition,
         const std::optional<std::vector<Index>>& s_set) {
        auto hints = hints_from_args(zeros, kernel_pp, kernel_point, partition, s_set);
        return verdict_to_pydict(decide(f, hints));
      },
      py::arg("series"), py::arg("zeros") = std::vector<std::map<std::size_t, Complex>>{},
      py::arg("kernel_pp") = false, py::arg("kernel_point") = std::nullopt,
      py::arg("partition") = std::nullopt, py::arg("s_set") = std::nullopt);
  m.def(
      "noncyclicity_bound",
      [](const BohrSeries& f, const std::map<std::size_t, Complex>& zero, double tol) {
        return noncyclicity_bound(f, point_from_dict(zero), tol);
      },
      py::arg("series"), py::arg("zero"), py::arg("zero_tol") = 1e-10);
  m.def(
      "zero_search",
      [](const BohrSeries& f, std::size_t variable_count, long budget, double tol) {
        auto r = zero_search(f, variable_count, budget, tol);
        py::dict out;
        if (r.zero) out["zero"] = point_to_dict(*r.zero);
        out["min_modulus"] = r.min_modulus;
        out["argmin"] = point_to_dict(r.argmin);
        out["evaluations"] = r.evaluations;
        return out;
      },
      py::arg("series"), py::arg("variable_count"), py::arg("budget") = 20000,
      py::arg("zero_tol") = 1e-10);

  m.def(
      "delta_hat",
      [](const BohrSeries& f, std::size_t n, Index m) {
        return estimate_to_pydict(delta_hat(f, n, m));
      },
      py::arg("series"), py::arg("dictionary_size"), py::arg("window"));
  m.def(
      "delta_sweep",
      [](const BohrSeries& f, const std::vector<std::size_t>& sizes, Index m) {
        py::list out;
        for (const auto& e : delta_sweep(f, sizes, m)) out.append(estimate_to_pydict(e));
        return out;
      },
      py::arg("series"), py::arg("dictionary_sizes"), py::arg("window"));

  m.def("kozlov_f", &kozlov_f, py::arg("theta"), py::arg("n_max"));
  m.def("kozlov_g", [](double theta, Index n_max) { return kozlov_g(theta, n_max); },
        py::arg("theta"), py::arg("n_max"));
  m.def(
      "kozlov_pair",
      [](double theta, Index n_max) {
        auto p = kozlov_pair(theta, n_max);
        return py::make_tuple(p.f, p.g);
      },
      py::arg("theta"), py::arg("n_max"));
  m.def("finite_support_evidence",
        [](const BohrSeries& g, Index bound) { return finite_support_evidence(g, bound); });
  m.def("indicator_sine_coeffs", &indicator_sine_coeffs, py::arg("theta"), py::arg("n_max"));
  m.def(
      "kozlov_verdict",
      [](double theta, Index n_max) { return verdict_to_pydict(kozlov_verdict(theta, n_max)); },
      py::arg("theta"), py::arg("n_max"));
  m.def(
      "ingest_odd_periodic",
      [](const std::function<double(double)>& psi, Index n_max, std::size_t nodes,
         const std::vector<double>& breakpoints) {
        QuadratureSpec spec;
        spec.nodes = nodes;
        spec.breakpoints = breakpoints;
        return ingest_odd_periodic(psi, n_max, spec);
      },
      py::arg("psi"), py::arg("n_max"), py::arg("nodes") = 0,
      py::arg("breakpoints") = std::vector<double>{});
  m.def("noor_series", &noor_series, py::arg("m"), py::arg("n_max"));
  m.def(
      "noor_experiment",
      [](std::size_t mm, const std::vector<std::size_t>& sizes, Index window) {
        auto e = noor_experiment(mm, sizes, window);
        py::dict out;
        out["m"] = e.m;
        out["series"] = e.series;
        out["factorization_error"] = e.factorization_error;
        py::list sweep;
        for (const auto& est : e.sweep) sweep.append(estimate_to_pydict(est));
        out["sweep"] = sweep;
        return out;
      },
      py::arg("m"), py::arg("dictionary_sizes"), py::arg("window"));
}
