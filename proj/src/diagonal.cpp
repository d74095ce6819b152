#include <algorithm>
#include <cmath>
#include <set>

#include "freiman/error.hpp"
#include "freiman/select.hpp"

namespace freiman {

bool is_diagonal(const std::vector<std::vector<Integer>>& rows) {
  for (std::size_t p = 0; p < rows.size(); ++p) {
    for (std::size_t q = p + 1; q < rows.size(); ++q) {
      const auto& x = rows[p];
      const auto& y = rows[q];
      if (x.size() != y.size() || x.empty()) return false;
      const int sign = x[0] < y[0] ? -1 : (x[0] > y[0] ? 1 : 0);
      if (sign == 0) return false;
      for (std::size_t i = 1; i < x.size(); ++i) {
        const int si = x[i] < y[i] ? -1 : (x[i] > y[i] ? 1 : 0);
        if (si != sign) return false;
      }
    }
  }
  return true;
}

DiagonalSet diagonal_product(const std::vector<DiagonalInput>& inputs, const Caps& caps) {
  if (inputs.empty()) throw InputError("diagonal product needs at least one set");
  DiagonalSet out;
  std::vector<IntSet> images;
  std::vector<MapTable> inverses;
  Integer span = 0;
  for (const auto& in : inputs) {
    if (in.set.empty()) throw InputError("empty set in diagonal product");
    MapTable table;
    if (in.provider) {
      CondenseResult cr = condense_set(in.set, *in.provider, caps);
      table = cr.map.table(cr.subset);
      out.condensed.push_back(std::move(cr));
    } else {
      for (const auto& x : in.set.elements()) table.emplace_hint(table.end(), x, x);
      out.condensed.push_back(std::nullopt);
    }
    Integer low = table.begin()->second;
    for (const auto& [x, y] : table) low = std::min(low, y);
    for (auto& [x, y] : table) y -= low;
    std::vector<Integer> image;
    for (const auto& [x, y] : table) image.push_back(y);
    IntSet b = IntSet::from_unique(std::move(image));
    span = std::max(span, b.max() - b.min());
    inverses.push_back(invert(table));
    out.maps.push_back(std::move(table));
    images.push_back(std::move(b));
  }
  out.interval_length = span + 1;

  // Running intersection; each shift maximizes the overlap, ties to the smallest t.
  IntSet core = images[0];
  out.shifts.push_back(0);
  std::int64_t used = 0;
  for (std::size_t i = 1; i < images.size(); ++i) {
    const IntSet& b = images[i];
    used += static_cast<std::int64_t>(core.size() * b.size());
    if (used > caps.shift_budget) {
      throw CapExceeded("shift search exceeds budget " + std::to_string(caps.shift_budget));
    }
    std::vector<Integer> diffs;
    diffs.reserve(core.size() * b.size());
    for (const auto& x : core.elements()) {
      for (const auto& y : b.elements()) diffs.push_back(x - y);
    }
    std::sort(diffs.begin(), diffs.end());
    Integer best_t = diffs.front();
    std::size_t best = 0;
    for (std::size_t p = 0; p < diffs.size();) {
      std::size_t q = p;
      while (q < diffs.size() && diffs[q] == diffs[p]) ++q;
      if (q - p > best) {
        best = q - p;
        best_t = diffs[p];
      }
      p = q;
    }
    std::vector<Integer> kept;
    for (const auto& x : core.elements()) {
      if (b.contains(x - best_t)) kept.push_back(x);
    }
    if (kept.empty()) {
      throw Error("intersection became empty at set " + std::to_string(i + 1));
    }
    core = IntSet::from_unique(std::move(kept));
    out.shifts.push_back(best_t);
  }
  out.core = core;

  for (const auto& x : core.elements()) {
    std::vector<Integer> row;
    for (std::size_t i = 0; i < images.size(); ++i) {
      auto it = inverses[i].find(x - out.shifts[i]);
      if (it == inverses[i].end()) {
        throw Error("pull-back misses " + (x - out.shifts[i]).str() + " in set " +
                    std::to_string(i + 1));
      }
      row.push_back(it->second);
    }
    out.rows.push_back(std::move(row));
  }

  if (!is_diagonal(out.rows)) throw VerificationError("rows are not a diagonal set");
  std::set<std::vector<Integer>> sums;
  for (std::size_t p = 0; p < out.rows.size(); ++p) {
    for (std::size_t q = p; q < out.rows.size(); ++q) {
      std::vector<Integer> s(out.rows[p].size());
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = out.rows[p][i] + out.rows[q][i];
      sums.insert(std::move(s));
    }
  }
  out.sumset_size = sums.size();
  out.core_sumset_size = sumset(core, core).size();
  if (out.sumset_size != out.core_sumset_size) {
    throw VerificationError("|C+C| = " + std::to_string(out.sumset_size) + " but |C'+C'| = " +
                            std::to_string(out.core_sumset_size));
  }
  if (Integer(out.sumset_size) > 2 * out.interval_length) {
    throw VerificationError("|C+C| = " + std::to_string(out.sumset_size) +
                            " exceeds twice the interval length " + out.interval_length.str());
  }
  double log_prod = 0;
  for (const auto& in : inputs) log_prod += std::log(static_cast<double>(in.set.size()));
  out.density_constant = static_cast<double>(out.rows.size()) /
                         std::exp(log_prod / static_cast<double>(inputs.size()));
  return out;
}

}  // namespace freiman
