#include "bohr/series_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bohr {

using nlohmann::json;

namespace {

json parse_json(std::istream& in, const std::string& origin) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw validation_error(origin + ": " + e.what());
  }
}

}  // namespace

BohrSeries read_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open series file: " + path);
  return read_series(in, path);
}

BohrSeries read_series(std::istream& in, const std::string& origin) {
  json doc = parse_json(in, origin);
  if (!doc.is_object() || !doc.contains("format") || !doc["format"].is_string())
    throw validation_error(origin + ": missing \"format\" tag");
  std::string format = doc["format"];
  if (format != "bohr-series/1")
    throw validation_error(origin + ": unsupported format \"" + format + "\"");
  if (!doc.contains("n_max") || !doc["n_max"].is_number_integer() ||
      doc["n_max"].get<std::int64_t>() < 1)
    throw validation_error(origin + ": \"n_max\" must be a positive integer");
  Index n_max = doc["n_max"].get<Index>();
  if (!doc.contains("coeffs") || !doc["coeffs"].is_array())
    throw validation_error(origin + ": \"coeffs\" must be an array");

  std::vector<BohrSeries::Term> terms;
  std::size_t record = 0;
  for (const auto& entry : doc["coeffs"]) {
    ++record;
    auto where = origin + ": coeffs[" + std::to_string(record - 1) + "]";
    if (!entry.is_object() || !entry.contains("n") || !entry.contains("re") ||
        !entry.contains("im"))
      throw validation_error(where + ": expected {\"n\",\"re\",\"im\"}");
    if (!entry["n"].is_number_integer() || entry["n"].get<std::int64_t>() < 1)
      throw validation_error(where + ": index must be a positive integer");
    Index n = entry["n"].get<Index>();
    if (n > n_max)
      throw validation_error(where + ": index " + std::to_string(n) + " exceeds n_max");
    if (!entry["re"].is_number() || !entry["im"].is_number())
      throw validation_error(where + ": coefficient components must be numbers");
    terms.push_back({n, Complex{entry["re"].get<double>(), entry["im"].get<double>()}});
  }
  try {
    return BohrSeries::from_terms(n_max, std::move(terms));
  } catch (const validation_error& e) {
    throw validation_error(origin + ": " + e.what());
  }
}

void write_series(const BohrSeries& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot write series file: " + path);
  write_series(f, out);
}

void write_series(const BohrSeries& f, std::ostream& out) {
  json coeffs = json::array();
  for (const auto& [n, c] : f.terms())
    coeffs.push_back({{"n", n}, {"re", c.real()}, {"im", c.imag()}});
  json doc{{"format", "bohr-series/1"}, {"n_max", f.n_max()}, {"coeffs", coeffs}};
  out << doc.dump(2) << "\n";
}

namespace {

double parse_value(const std::string& token, const std::string& context) {
  auto slash = token.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      double v = std::stod(token, &used);
      if (used != token.size()) throw validation_error("");
      return v;
    }
    std::string num = token.substr(0, slash);
    std::string den = token.substr(slash + 1);
    double a = std::stod(num, &used);
    if (used != num.size()) throw validation_error("");
    double b = std::stod(den, &used);
    if (used != den.size() || b == 0.0) throw validation_error("");
    return a / b;
  } catch (const std::exception&) {
    throw validation_error("bad point value \"" + token + "\" in " + context);
  }
}

}  // namespace

Point parse_point(const std::string& text) {
  Point p;
  if (text.empty()) return p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw validation_error("point entry \"" + item + "\" is not pos:value");
    std::size_t pos = 0;
    try {
      pos = std::stoul(item.substr(0, colon));
    } catch (const std::exception&) {
      throw validation_error("bad point position in \"" + item + "\"");
    }
    if (pos < 1) throw validation_error("point positions are 1-based");
    p.set(pos, Complex{parse_value(item.substr(colon + 1), text), 0.0});
  }
  return p;
}

std::string format_point(const Point& lambda) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [pos, v] : lambda.entries()) {
    if (!first) out << ",";
    first = false;
    out << pos << ":" << v.real();
    if (v.imag() != 0.0) out << (v.imag() > 0 ? "+" : "") << v.imag() << "i";
  }
  return out.str();
}

}  // namespace bohr
