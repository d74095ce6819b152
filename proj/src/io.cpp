#include "freiman/io.hpp"

#include <fstream>
#include <sstream>

#include "freiman/error.hpp"

namespace freiman {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Json quad_to_json(const Quadruple& q) {
  Json out = Json::array();
  for (const auto& x : q) out.push_back(x.str());
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Integer integer_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    return Integer(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    auto v = try_parse_integer(j.get<std::string>());
    if (v) return *v;
  }
  throw InputError(where + ": expected an integer, got " + j.dump() +
                   (j.is_number_float() ? " (write large integers as strings)" : ""));
}

IntSet parse_set(std::string_view text, const std::string& source) {
  std::vector<Integer> values;
  std::map<Integer, std::size_t> first_seen;
  auto add = [&](Integer v, std::size_t where, const char* unit) {
    auto [it, fresh] = first_seen.emplace(v, where);
    if (!fresh) {
      throw InputError(source + ": " + unit + " " + std::to_string(where) + ": value " + v.str() +
                       " repeats " + unit + " " + std::to_string(it->second));
    }
    values.push_back(std::move(v));
  };

  const std::string_view body = trim(text);
  if (!body.empty() && body.front() == '[') {
    Json j;
    try {
      j = Json::parse(body);
    } catch (const Json::parse_error& e) {
      throw InputError(source + ": invalid JSON: " + e.what());
    }
    for (std::size_t i = 0; i < j.size(); ++i) {
      add(integer_from_json(j[i], source + ": element " + std::to_string(i + 1)), i + 1,
          "element");
    }
  } else {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      std::string_view line = text.substr(pos, end - pos);
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (!line.empty()) {
        auto v = try_parse_integer(line);
        if (!v) {
          throw InputError(source + ": line " + std::to_string(line_no) +
                           ": not an integer: '" + std::string(line) + "'");
        }
        add(std::move(*v), line_no, "line");
      }
      pos = end + 1;
    }
  }
  return IntSet::from_unique(std::move(values));
}

IntSet read_set_file(const std::string& path) { return parse_set(read_file(path), path); }

Gap gap_from_json(const Json& j, const std::string& source) {
  if (!j.is_object()) throw InputError(source + ": GAP must be a JSON object");
  for (const char* key : {"base", "dirs", "bounds"}) {
    if (!j.contains(key)) throw InputError(source + ": missing key '" + key + "'");
  }
  if (!j["dirs"].is_array() || !j["bounds"].is_array()) {
    throw InputError(source + ": 'dirs' and 'bounds' must be arrays");
  }
  Integer base = integer_from_json(j["base"], source + ": base");
  std::vector<Integer> dirs;
  for (std::size_t i = 0; i < j["dirs"].size(); ++i) {
    dirs.push_back(integer_from_json(j["dirs"][i], source + ": dirs[" + std::to_string(i) + "]"));
  }
  std::vector<std::int64_t> bounds;
  for (std::size_t i = 0; i < j["bounds"].size(); ++i) {
    const Integer b =
        integer_from_json(j["bounds"][i], source + ": bounds[" + std::to_string(i) + "]");
    if (!fits_int64(b)) throw InputError(source + ": bound " + b.str() + " is too large");
    bounds.push_back(to_int64(b));
  }
  try {
    return Gap(std::move(base), std::move(dirs), std::move(bounds));
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  }
}

Gap read_gap_file(const std::string& path) {
  const std::string text = read_file(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": invalid JSON: " + e.what());
  }
  return gap_from_json(j, path);
}

Json gap_to_json(const Gap& g) {
  Json dirs = Json::array();
  for (const auto& d : g.dirs()) dirs.push_back(d.str());
  Json bounds = Json::array();
  for (auto b : g.bounds()) bounds.push_back(std::to_string(b));
  return Json{{"base", g.base().str()}, {"dirs", dirs}, {"bounds", bounds}};
}

Json to_json(const Integer& x) { return x.str(); }
Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const IntSet& s) {
  Json out = Json::array();
  for (const auto& x : s.elements()) out.push_back(x.str());
  return out;
}

Json to_json(const VectorXz& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).str());
  return out;
}

Json exact(const Json& value) { return Json{{"kind", "exact"}, {"value", value}}; }

Json measured(double value) { return Json{{"kind", "measured"}, {"value", value}}; }

Json table_to_json(const MapTable& t) {
  Json out = Json::array();
  for (const auto& [x, y] : t) out.push_back(Json::array({x.str(), y.str()}));
  return out;
}

MapTable table_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("map table must be an array of pairs");
  MapTable t;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "map table entry " + std::to_string(i + 1);
    if (!j[i].is_array() || j[i].size() != 2) throw InputError(where + ": expected [x, y]");
    Integer x = integer_from_json(j[i][0], where);
    Integer y = integer_from_json(j[i][1], where);
    if (!t.emplace(x, y).second) throw InputError(where + ": repeated domain value " + x.str());
  }
  return t;
}

Json verdict_to_json(const Freiman2Verdict& v) {
  Json out{{"passed", v.passed()},
           {"order_preserving", v.order_preserving},
           {"homomorphism", v.homomorphism},
           {"isomorphism", v.isomorphism}};
  if (v.order_violation) {
    out["order_violation"] = Json::array({(*v.order_violation)[0].str(), (*v.order_violation)[1].str()});
  }
  if (v.homomorphism_violation) out["homomorphism_violation"] = quad_to_json(*v.homomorphism_violation);
  if (v.isomorphism_violation) out["isomorphism_violation"] = quad_to_json(*v.isomorphism_violation);
  return out;
}

}  // namespace freiman
