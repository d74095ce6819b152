#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace freiman {

/// Computation budgets. Every operation that can blow up takes its limit
/// from here and raises CapExceeded instead of running away.
struct Caps {
  std::int64_t gap_volume = 1'000'000;        // coefficient boxes enumerated
  std::int64_t cone_box = 10'000'000;         // oracle search points, (2b+1)^k
  std::int64_t ray_subsets = 50'000'000;      // (k-1)-subsets of cone rows
  std::int64_t verify_size = 300;             // |X| for standalone verification
  std::int64_t pipeline_verify_size = 3000;  // |X| for verification inside pipelines and reports
  std::int64_t plunnecke_terms = 4;           // l + m
  std::int64_t triple_budget = 100'000'000;   // step-two triple search work
  std::int64_t search_budget = 200'000'000;   // AP provider search work
  std::int64_t shift_budget = 100'000'000;    // diagonal shift search work
  std::int64_t energy_pairs = 100'000'000;    // pair sums materialized per energy call
  std::int64_t root_denominator = 4096;       // largest s in an exponent r/s

  /// Key names accepted by set(); the order is stable for reporting.
  static const std::vector<std::string>& keys();

  /// Rejects unknown keys and nonpositive values.
  void set(std::string_view key, std::int64_t value);
  std::int64_t get(std::string_view key) const;

  /// Parses "key=value[,key=value...]".
  void apply_assignments(std::string_view text);

  /// Applies FREIMAN_CAPS_<KEY> variables from the environment.
  void apply_environment();

  std::map<std::string, std::int64_t> as_map() const;
};

}  // namespace freiman
