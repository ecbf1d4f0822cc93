#pragma once

#include <iosfwd>
#include <string>

#include "bohr/series.hpp"

namespace bohr {

// JSON schema: {"format":"bohr-series/1","n_max":N,
//               "coeffs":[{"n":..,"re":..,"im":..},...]}
// Writing emits ascending indices; reading tolerates any order but rejects
// duplicates, n < 1 and n > n_max. Coefficients are binary64 components,
// so a write/read round-trip is lossless.
BohrSeries read_series(const std::string& path);
BohrSeries read_series(std::istream& in, const std::string& origin = "<stream>");
void write_series(const BohrSeries& f, const std::string& path);
void write_series(const BohrSeries& f, std::ostream& out);

// Point literals "pos:value,pos:value" with decimal or a/b rational values
// (parsed exactly, converted once to binary64).
Point parse_point(const std::string& text);
std::string format_point(const Point& lambda);

}  // namespace bohr
