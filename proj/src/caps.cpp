#include "freiman/caps.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "freiman/error.hpp"
#include "freiman/numeric.hpp"

namespace freiman {

namespace {

std::int64_t Caps::*field_for(std::string_view key) {
  if (key == "gap_volume") return &Caps::gap_volume;
  if (key == "cone_box") return &Caps::cone_box;
  if (key == "ray_subsets") return &Caps::ray_subsets;
  if (key == "verify_size") return &Caps::verify_size;
  if (key == "pipeline_verify_size") return &Caps::pipeline_verify_size;
  if (key == "plunnecke_terms") return &Caps::plunnecke_terms;
  if (key == "triple_budget") return &Caps::triple_budget;
  if (key == "search_budget") return &Caps::search_budget;
  if (key == "shift_budget") return &Caps::shift_budget;
  if (key == "energy_pairs") return &Caps::energy_pairs;
  if (key == "root_denominator") return &Caps::root_denominator;
  return nullptr;
}

}  // namespace

const std::vector<std::string>& Caps::keys() {
  static const std::vector<std::string> names = {
      "gap_volume",    "cone_box",      "ray_subsets",  "verify_size",
      "pipeline_verify_size", "plunnecke_terms", "triple_budget", "search_budget",
      "shift_budget",  "energy_pairs",  "root_denominator"};
  return names;
}

void Caps::set(std::string_view key, std::int64_t value) {
  auto field = field_for(key);
  if (!field) throw InputError("unknown cap '" + std::string(key) + "'");
  if (value <= 0) throw InputError("cap '" + std::string(key) + "' must be positive");
  this->*field = value;
}

std::int64_t Caps::get(std::string_view key) const {
  auto field = field_for(key);
  if (!field) throw InputError("unknown cap '" + std::string(key) + "'");
  return this->*field;
}

void Caps::apply_assignments(std::string_view text) {
  while (!text.empty()) {
    auto comma = text.find(',');
    auto item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw InputError("cap assignment '" + std::string(item) + "' is not key=value");
    }
    Integer value = parse_integer(item.substr(eq + 1));
    if (!fits_int64(value)) throw InputError("cap value out of range: " + std::string(item));
    set(item.substr(0, eq), to_int64(value));
  }
}

void Caps::apply_environment() {
  for (const auto& key : keys()) {
    std::string var = "FREIMAN_CAPS_" + key;
    std::transform(var.begin(), var.end(), var.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (const char* value = std::getenv(var.c_str())) {
      auto parsed = try_parse_integer(value);
      if (!parsed || !fits_int64(*parsed)) {
        throw InputError(var + " is not an integer: '" + value + "'");
      }
      set(key, to_int64(*parsed));
    }
  }
}

std::map<std::string, std::int64_t> Caps::as_map() const {
  std::map<std::string, std::int64_t> out;
  for (const auto& key : keys()) out[key] = get(key);
  return out;
}

}  // namespace freiman
