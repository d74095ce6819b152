#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "freiman/freiman_map.hpp"
#include "freiman/gap.hpp"
#include "freiman/intset.hpp"
#include "freiman/numeric.hpp"

namespace freiman {

using Json = nlohmann::ordered_json;

/// Whole file as a string; InputError names the path on failure.
std::string read_file(const std::string& path);

/// One integer per line (blank lines and '#' comments skipped), or a JSON
/// array of integers or integer strings. Repeated values are rejected with
/// the line (or array position) of the repeat.
IntSet parse_set(std::string_view text, const std::string& source = "<input>");
IntSet read_set_file(const std::string& path);

/// {"base": ..., "dirs": [...], "bounds": [...]}; integers as numbers or strings.
Gap gap_from_json(const Json& j, const std::string& source = "<gap>");
Gap read_gap_file(const std::string& path);
Json gap_to_json(const Gap& g);

Integer integer_from_json(const Json& j, const std::string& where);

Json to_json(const Integer& x);
Json to_json(const Rational& q);
Json to_json(const IntSet& s);
Json to_json(const VectorXz& v);

/// Numeric claims carry a kind: exact values are reproducible to the last
/// digit, measured ones are floating-point summaries.
Json exact(const Json& value);
Json measured(double value);

/// [[x, phi(x)], ...] with both entries as strings.
Json table_to_json(const MapTable& t);
MapTable table_from_json(const Json& j);

Json verdict_to_json(const Freiman2Verdict& v);

}  // namespace freiman
