// bohrtk: series arithmetic, structure reports, cyclicity verdicts, delta
// sweeps and the dilation experiments, wired over the core library.
//
// Exit codes: 0 success, 2 input validation, 3 domain/precondition,
// 4 internal solver failure. A verdict of NotCyclic/Unknown is data, not a
// failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bohr/cyclicity.hpp"
#include "bohr/delta.hpp"
#include "bohr/dilation.hpp"
#include "bohr/series_io.hpp"

using nlohmann::json;
using namespace bohr;

namespace {

struct RunConfig {
  Index prime_limit = PrimeTable::kDefaultLimit;
  Index n_max = 10000;
  double zero_tol = 1e-10;
  double class_tol = 1e-10;
  double outer_tol = 1e-9;
  std::size_t szego_nodes = 4096;
  int threads = 1;
  std::string format = "json";
  std::uint64_t seed = 0;
  bool no_timestamp = false;

  EngineConfig engine() const {
    EngineConfig cfg;
    cfg.zero_tol = zero_tol;
    cfg.class_tol = class_tol;
    cfg.outer_tol = outer_tol;
    cfg.szego_nodes = szego_nodes;
    return cfg;
  }

  json echo() const {
    return json{{"prime_limit", prime_limit}, {"n_max", n_max},
                {"zero_tol", zero_tol},       {"class_tol", class_tol},
                {"outer_tol", outer_tol},     {"szego_nodes", szego_nodes},
                {"threads", threads},         {"format", format},
                {"seed", seed}};
  }

  void validate() const {
    if (zero_tol <= 0 || class_tol <= 0 || outer_tol <= 0)
      throw validation_error("tolerances must be positive");
    if (szego_nodes < 2) throw validation_error("szego_nodes must be at least 2");
    if (threads < 1) throw validation_error("threads must be positive");
    if (format != "json" && format != "csv")
      throw validation_error("format must be json or csv");
  }
};

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw validation_error(path + ": " + e.what());
  }
  if (doc.contains("prime_limit")) cfg.prime_limit = doc["prime_limit"].get<Index>();
  if (doc.contains("n_max")) cfg.n_max = doc["n_max"].get<Index>();
  if (doc.contains("zero_tol")) cfg.zero_tol = doc["zero_tol"].get<double>();
  if (doc.contains("class_tol")) cfg.class_tol = doc["class_tol"].get<double>();
  if (doc.contains("outer_tol")) cfg.outer_tol = doc["outer_tol"].get<double>();
  if (doc.contains("szego_nodes")) cfg.szego_nodes = doc["szego_nodes"].get<std::size_t>();
  if (doc.contains("threads")) cfg.threads = doc["threads"].get<int>();
  if (doc.contains("format")) cfg.format = doc["format"].get<std::string>();
  if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
}

// FNV-1a, enough to tie an output artifact to its input bytes.
std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "unreadable";
  std::uint64_t h = 1469598103934665603ull;
  char ch;
  while (in.get(ch)) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

json provenance(const RunConfig& cfg, const std::vector<std::string>& inputs) {
  json meta;
  meta["config"] = cfg.echo();
  meta["inputs"] = json::array();
  for (const auto& path : inputs)
    meta["inputs"].push_back({{"path", path}, {"fnv1a", file_digest(path)}});
  if (!cfg.no_timestamp) {
    auto now = std::chrono::system_clock::now().time_since_epoch();
    meta["timestamp"] =
        std::chrono::duration_cast<std::chrono::seconds>(now).count();
  }
  return meta;
}

void emit(const json& doc, const std::optional<std::string>& out_path) {
  if (out_path) {
    std::ofstream out(*out_path);
    if (!out) throw validation_error("cannot write output file: " + *out_path);
    out << doc.dump(2) << "\n";
  } else {
    std::cout << doc.dump(2) << "\n";
  }
}

void emit_text(const std::string& text, const std::optional<std::string>& out_path) {
  if (out_path) {
    std::ofstream out(*out_path);
    if (!out) throw validation_error("cannot write output file: " + *out_path);
    out << text;
  } else {
    std::cout << text;
  }
}

json series_summary(const BohrSeries& f) {
  return json{{"n_max", f.n_max()}, {"support", f.support_size()}, {"norm", norm(f)}};
}

std::string csv_provenance(const RunConfig& cfg, const std::vector<std::string>& inputs) {
  std::ostringstream head;
  head << "# config " << cfg.echo().dump() << "\n";
  for (const auto& p : inputs) head << "# input " << p << " fnv1a=" << file_digest(p) << "\n";
  if (!cfg.no_timestamp) {
    auto now = std::chrono::system_clock::now().time_since_epoch();
    head << "# timestamp "
         << std::chrono::duration_cast<std::chrono::seconds>(now).count() << "\n";
  }
  return head.str();
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoul(item));
    } catch (const std::exception&) {
      throw validation_error("bad list entry \"" + item + "\"");
    }
  }
  if (out.empty()) throw validation_error("empty list");
  return out;
}

double parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return std::stod(text);
    return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
  } catch (const std::exception&) {
    throw validation_error("bad rational literal \"" + text + "\"");
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Bohr-series toolkit: cyclicity of dilation systems"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags override it)");
  app.add_option("--prime-limit", cfg.prime_limit, "prime table limit");
  app.add_option("--nmax", cfg.n_max, "default truncation bound");
  app.add_option("--zero-tol", cfg.zero_tol, "zero certificate tolerance");
  app.add_option("--class-tol", cfg.class_tol, "classification tolerance");
  app.add_option("--outer-tol", cfg.outer_tol, "outerness root annulus");
  app.add_option("--szego-nodes", cfg.szego_nodes, "Szego quadrature nodes");
  app.add_option("--threads", cfg.threads, "internal parallelism cap");
  app.add_option("--format", cfg.format, "output format: json|csv");
  app.add_option("--seed", cfg.seed, "seed for randomized search order");
  app.add_flag("--no-timestamp", cfg.no_timestamp, "suppress timestamps in outputs");

  // series ------------------------------------------------------------
  auto* series = app.add_subcommand("series", "arithmetic on series files");
  series->require_subcommand(1);
  std::vector<std::string> series_files;
  std::optional<std::string> out_path;
  std::string point_text;
  std::size_t restrict_vars = 1;
  double dropped_norm = 0.0;

  auto* s_show = series->add_subcommand("show", "summarize a series file");
  s_show->add_option("file", series_files)->required()->expected(1);
  auto* s_mul = series->add_subcommand("mul", "Dirichlet product of two series");
  s_mul->add_option("files", series_files)->required()->expected(2);
  auto* s_inv = series->add_subcommand("inv", "convolution inverse");
  s_inv->add_option("file", series_files)->required()->expected(1);
  auto* s_norm = series->add_subcommand("norm", "l2 coefficient norm");
  s_norm->add_option("file", series_files)->required()->expected(1);
  auto* s_eval = series->add_subcommand("eval", "evaluate at a point");
  s_eval->add_option("file", series_files)->required()->expected(1);
  s_eval->add_option("--point", point_text, "pos:value,... (values decimal or a/b)")
      ->required();
  s_eval->add_option("--dropped-norm", dropped_norm,
                     "norm bound on truncated-away coefficients (tail bound)");
  auto* s_restrict = series->add_subcommand("restrict", "restrict to the first k variables");
  s_restrict->add_option("file", series_files)->required()->expected(1);
  s_restrict->add_option("--vars", restrict_vars, "variable count")->required();
  for (auto* sc : {s_show, s_mul, s_inv, s_norm, s_eval, s_restrict})
    sc->add_option("--out", [&out_path](const std::vector<std::string>& v) {
        out_path = v.front();
        return true;
      }, "write the result here instead of stdout");

  // decide --------------------------------------------------------------
  auto* dec = app.add_subcommand("decide", "cyclicity verdict with certificate trace");
  std::string decide_file;
  std::vector<std::string> zero_hints;
  bool kernel_pp = false;
  std::string kernel_point_text;
  std::string partition_text;
  std::string s_set_text;
  dec->add_option("file", decide_file)->required();
  dec->add_option("--zero", zero_hints, "candidate zero pos:value,... (repeatable)");
  dec->add_flag("--kernel-pp", kernel_pp,
                "strip the prime-reciprocal kernel (a_n = 1/n) first");
  dec->add_option("--kernel-point", kernel_point_text, "strip K_lambda at this point first");
  dec->add_option("--partition", partition_text,
                  "partition hint JSON file: {\"blocks\":[[2,3]],\"rest\":\"singletons\"}");
  dec->add_option("--s-set", s_set_text, "comma-separated primes for the S-multiplicative rule");
  dec->add_option("--out", [&out_path](const std::vector<std::string>& v) {
      out_path = v.front();
      return true;
    }, "write the verdict here");

  // delta ---------------------------------------------------------------
  auto* del = app.add_subcommand("delta", "least-squares cyclicity distance sweep");
  std::string delta_file;
  std::string n_list_text = "1,2,4,8,16,32,64";
  Index window = 0;
  del->add_option("file", delta_file)->required();
  del->add_option("--N-list", n_list_text, "ascending dictionary sizes");
  del->add_option("--M", window, "residual window (rows)")->required();
  del->add_option("--out", [&out_path](const std::vector<std::string>& v) {
      out_path = v.front();
      return true;
    }, "write the CSV here");

  // kozlov ---------------------------------------------------------------
  auto* koz = app.add_subcommand("kozlov", "indicator dilation fixtures and verdicts");
  std::string theta_text = "1/2";
  Index koz_nmax = 0;
  std::optional<std::string> report_dir;
  koz->add_option("--theta", theta_text, "theta in (0,1], decimal or a/b")->required();
  koz->add_option("--nmax", koz_nmax, "truncation bound (defaults to config n_max)");
  koz->add_option("--report", [&report_dir](const std::vector<std::string>& v) {
      report_dir = v.front();
      return true;
    }, "directory for F/G series fixtures");
  koz->add_option("--out", [&out_path](const std::vector<std::string>& v) {
      out_path = v.front();
      return true;
    }, "write the summary here");

  // noor -----------------------------------------------------------------
  auto* noor = app.add_subcommand("noor", "power-dilation completeness sweep");
  std::size_t noor_m = 2;
  std::string noor_list_text = "1,2,4,8,16,32,64,128,256";
  Index noor_window = 0;
  noor->add_option("--m", noor_m, "dilation order (>= 2)")->required();
  noor->add_option("--N-list", noor_list_text, "ascending dictionary sizes");
  noor->add_option("--M", noor_window, "residual window (defaults to config n_max)");
  noor->add_option("--out", [&out_path](const std::vector<std::string>& v) {
      out_path = v.front();
      return true;
    }, "write the CSV here");

  // ingest ----------------------------------------------------------------
  auto* ing = app.add_subcommand("ingest", "odd 2-periodic function -> series file");
  std::string psi_kind = "ramp";
  std::string indicator_theta = "1/2";
  std::size_t ingest_nodes = 0;
  Index ingest_nmax = 0;
  ing->add_option("--psi", psi_kind, "ramp | indicator | sin");
  ing->add_option("--theta", indicator_theta, "indicator width (for --psi indicator)");
  ing->add_option("--nodes", ingest_nodes, "midpoint nodes (>= 4*nmax; ramp/sin)");
  ing->add_option("--nmax", ingest_nmax, "truncation bound (defaults to config n_max)");
  ing->add_option("--out", [&out_path](const std::vector<std::string>& v) {
      out_path = v.front();
      return true;
    }, "series file to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!config_path.empty()) {
    RunConfig from_file;
    load_config_file(from_file, config_path);
    // flags already parsed into cfg win over the file: reload file first,
    // then re-apply explicit flags by re-parsing would be heavy; instead the
    // file fills only fields the user left at defaults.
    RunConfig defaults;
    auto keep = [](auto flag, auto def, auto file_v) {
      return flag != def ? flag : file_v;
    };
    cfg.prime_limit = keep(cfg.prime_limit, defaults.prime_limit, from_file.prime_limit);
    cfg.n_max = keep(cfg.n_max, defaults.n_max, from_file.n_max);
    cfg.zero_tol = keep(cfg.zero_tol, defaults.zero_tol, from_file.zero_tol);
    cfg.class_tol = keep(cfg.class_tol, defaults.class_tol, from_file.class_tol);
    cfg.outer_tol = keep(cfg.outer_tol, defaults.outer_tol, from_file.outer_tol);
    cfg.szego_nodes = keep(cfg.szego_nodes, defaults.szego_nodes, from_file.szego_nodes);
    cfg.threads = keep(cfg.threads, defaults.threads, from_file.threads);
    cfg.format = keep(cfg.format, defaults.format, from_file.format);
    cfg.seed = keep(cfg.seed, defaults.seed, from_file.seed);
  }
  cfg.validate();

  std::optional<PrimeTable> custom_table;
  if (cfg.prime_limit != PrimeTable::kDefaultLimit) custom_table.emplace(cfg.prime_limit);
  const PrimeTable& table = custom_table ? *custom_table : PrimeTable::standard();

  if (s_show->parsed()) {
    auto f = read_series(series_files[0]);
    json doc = series_summary(f);
    doc["meta"] = provenance(cfg, {series_files[0]});
    emit(doc, out_path);
  } else if (s_mul->parsed()) {
    auto a = read_series(series_files[0]);
    auto b = read_series(series_files[1]);
    auto c = dirichlet_multiply(a, b);
    if (out_path)
      write_series(c, *out_path);
    else
      write_series(c, std::cout);
  } else if (s_inv->parsed()) {
    auto a = read_series(series_files[0]);
    auto g = invert(a, table);
    if (out_path)
      write_series(g, *out_path);
    else
      write_series(g, std::cout);
  } else if (s_norm->parsed()) {
    auto a = read_series(series_files[0]);
    json doc{{"norm", norm(a)}};
    doc["meta"] = provenance(cfg, {series_files[0]});
    emit(doc, out_path);
  } else if (s_eval->parsed()) {
    auto a = read_series(series_files[0]);
    auto lambda = parse_point(point_text);
    auto r = evaluate(a, lambda, dropped_norm, table);
    json doc{{"point", format_point(lambda)},
             {"value", {{"re", r.value.real()}, {"im", r.value.imag()}}},
             {"abs", std::abs(r.value)},
             {"tail_bound", r.tail_bound}};
    doc["meta"] = provenance(cfg, {series_files[0]});
    emit(doc, out_path);
  } else if (s_restrict->parsed()) {
    auto a = read_series(series_files[0]);
    auto r = restrict_to_first_variables(a, restrict_vars, table);
    if (out_path)
      write_series(r, *out_path);
    else
      write_series(r, std::cout);
  } else if (dec->parsed()) {
    auto f = read_series(decide_file);
    DecideHints hints;
    for (const auto& z : zero_hints) hints.zeros.push_back(parse_point(z));
    if (kernel_pp && !kernel_point_text.empty())
      throw validation_error("--kernel-pp and --kernel-point are mutually exclusive");
    if (kernel_pp) hints.kernel = KernelHint{std::nullopt, true};
    if (!kernel_point_text.empty())
      hints.kernel = KernelHint{parse_point(kernel_point_text), false};
    if (!s_set_text.empty()) {
      std::vector<Index> s;
      for (auto n : parse_size_list(s_set_text)) s.push_back(n);
      hints.s_set = s;
    }
    if (!partition_text.empty()) {
      std::ifstream in(partition_text);
      if (!in) throw validation_error("cannot open partition file: " + partition_text);
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::parse_error& e) {
        throw validation_error(partition_text + ": " + e.what());
      }
      PrimePartition part;
      if (!doc.contains("blocks") || !doc["blocks"].is_array())
        throw validation_error(partition_text + ": \"blocks\" must be an array");
      for (const auto& block : doc["blocks"])
        part.blocks.push_back(block.get<std::vector<Index>>());
      part.rest_singletons = !doc.contains("rest") || doc["rest"] == "singletons";
      hints.partition = part;
    }
    auto v = decide(f, hints, cfg.engine(), table);
    json doc = json::parse(verdict_to_json(v));
    doc["meta"] = provenance(cfg, {decide_file});
    emit(doc, out_path);
  } else if (del->parsed()) {
    auto f = read_series(delta_file);
    auto sweep = delta_sweep(f, parse_size_list(n_list_text), window);
    emit_text(csv_provenance(cfg, {delta_file}) + sweep_csv(sweep), out_path);
  } else if (koz->parsed()) {
    double theta = parse_rational(theta_text);
    Index n_max = koz_nmax ? koz_nmax : cfg.n_max;
    auto pair = kozlov_pair(theta, n_max, 1e-10, table);
    auto verdict = kozlov_verdict(theta, n_max, cfg.engine(), table);
    json doc;
    doc["theta"] = theta;
    doc["n_max"] = n_max;
    doc["F"] = series_summary(pair.f);
    doc["G"] = series_summary(pair.g);
    json support = json::array();
    for (const auto& [n, c] : pair.g.terms()) support.push_back(n);
    doc["G_support"] = support;
    json evidence = json::array();
    for (const auto& [p, mag] : finite_support_evidence(pair.g, std::min<Index>(100, n_max)))
      evidence.push_back({{"prime", p}, {"magnitude", mag}});
    doc["prime_evidence"] = evidence;
    doc["verdict"] = json::parse(verdict_to_json(verdict));
    doc["meta"] = provenance(cfg, {});
    if (report_dir) {
      std::string safe = theta_text;
      for (auto& ch : safe)
        if (ch == '/') ch = '_';
      std::string stem = *report_dir + "/theta_" + safe;
      write_series(pair.f, stem + "_F.json");
      write_series(pair.g, stem + "_G.json");
      doc["fixtures"] = {stem + "_F.json", stem + "_G.json"};
    }
    emit(doc, out_path);
  } else if (noor->parsed()) {
    Index m_window = noor_window ? noor_window : cfg.n_max;
    auto exp = noor_experiment(noor_m, parse_size_list(noor_list_text), m_window);
    std::ostringstream head;
    head << csv_provenance(cfg, {});
    head << "# m=" << exp.m << " factorization_error=" << exp.factorization_error << "\n";
    emit_text(head.str() + sweep_csv(exp.sweep), out_path);
  } else if (ing->parsed()) {
    Index n_max = ingest_nmax ? ingest_nmax : cfg.n_max;
    BohrSeries out;
    if (psi_kind == "ramp") {
      QuadratureSpec spec;
      spec.nodes = ingest_nodes ? ingest_nodes : 4 * n_max;
      out = ingest_odd_periodic([](double x) { return x; }, n_max, spec);
    } else if (psi_kind == "indicator") {
      double theta = parse_rational(indicator_theta);
      QuadratureSpec spec;
      spec.breakpoints = {theta};
      out = ingest_odd_periodic([theta](double x) { return x < theta ? 1.0 : 0.0; }, n_max,
                                spec);
    } else if (psi_kind == "sin") {
      QuadratureSpec spec;
      spec.nodes = ingest_nodes ? ingest_nodes : 4 * n_max;
      out = ingest_odd_periodic([](double x) { return std::sin(std::numbers::pi * x); },
                                n_max, spec);
    } else {
      throw validation_error("unknown --psi kind \"" + psi_kind + "\"");
    }
    write_series(out, *out_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const bohr::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const solver_error& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal failure: " << e.what() << "\n";
    return 4;
  }
}
