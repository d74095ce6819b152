#include "freiman/gap.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "freiman/error.hpp"

namespace freiman {

std::string describe(const CoeffVector& x) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  os << ')';
  return os.str();
}

namespace {

void check_volume(const Gap& g, const Caps& caps) {
  if (g.volume() > caps.gap_volume) {
    throw CapExceeded("GAP volume " + g.volume().str() + " exceeds cap gap_volume=" +
                      std::to_string(caps.gap_volume));
  }
}

}  // namespace

Gap::Gap(Integer base, std::vector<Integer> dirs, std::vector<std::int64_t> bounds)
    : base_(std::move(base)), dirs_(std::move(dirs)), bounds_(std::move(bounds)) {
  if (dirs_.size() != bounds_.size()) {
    throw InputError("GAP has " + std::to_string(dirs_.size()) + " directions but " +
                     std::to_string(bounds_.size()) + " bounds");
  }
  for (std::size_t i = 0; i < dirs_.size(); ++i) {
    if (bounds_[i] < 0) {
      throw InputError("GAP bound " + std::to_string(i) + " is negative (" +
                       std::to_string(bounds_[i]) + ")");
    }
    if (dirs_[i] == 0 && bounds_[i] > 0) {
      throw InputError("GAP direction " + std::to_string(i) + " is zero with positive bound");
    }
    if (dirs_[i] < 0) dirs_[i] = -dirs_[i];
  }
}

Gap Gap::progression(const Integer& step, std::int64_t bound) {
  return Gap(Integer(0), {step}, {bound});
}

Integer Gap::volume() const {
  Integer v = 1;
  for (auto l : bounds_) v *= Integer(2 * l + 1);
  return v;
}

Integer Gap::value(const CoeffVector& x) const {
  if (x.size() != dirs_.size()) throw InputError("coefficient vector has wrong dimension");
  Integer v = base_;
  for (std::size_t i = 0; i < x.size(); ++i) v += dirs_[i] * x[i];
  return v;
}

bool Gap::in_box(const CoeffVector& x) const {
  if (x.size() != bounds_.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < -bounds_[i] || x[i] > bounds_[i]) return false;
  }
  return true;
}

std::vector<GapPoint> enumerate(const Gap& g, const Caps& caps) {
  check_volume(g, caps);
  std::vector<GapPoint> out;
  out.reserve(g.volume().convert_to<std::size_t>());
  for_each_coefficient(g.bounds(), [&](const CoeffVector& x) { out.push_back({x, g.value(x)}); });
  return out;
}

std::optional<std::pair<CoeffVector, CoeffVector>> find_collision(const Gap& g,
                                                                  const Caps& caps) {
  auto points = enumerate(g, caps);
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return points[a].value < points[b].value;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (points[order[i]].value == points[order[i - 1]].value) {
      return std::make_pair(points[order[i - 1]].coeffs, points[order[i]].coeffs);
    }
  }
  return std::nullopt;
}

bool is_proper(const Gap& g, const Caps& caps) { return !find_collision(g, caps).has_value(); }

Gap scaled(const Gap& g, const Rational& factor) {
  if (factor <= 0) throw InputError("GAP scale factor must be positive");
  std::vector<std::int64_t> bounds;
  bounds.reserve(g.dim());
  for (auto l : g.bounds()) bounds.push_back(to_int64(floor_of(factor * Rational(l))));
  return Gap(g.base(), g.dirs(), std::move(bounds));
}

Gap translate(const Gap& g, const Integer& t) { return Gap(g.base() + t, g.dirs(), g.bounds()); }

IntSet point_set(const Gap& g, const Caps& caps) {
  std::vector<Integer> values;
  for (auto& p : enumerate(g, caps)) values.push_back(std::move(p.value));
  return IntSet::from_values(std::move(values));
}

GapIndex::GapIndex(const Gap& g, const Caps& caps) : gap_(g) {
  auto points = enumerate(g, caps);
  std::sort(points.begin(), points.end(),
            [](const GapPoint& a, const GapPoint& b) { return a.value < b.value; });
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].value == points[i - 1].value) {
      throw InputError("decomposition not unique: coefficients " +
                       describe(points[i - 1].coeffs) + " and " + describe(points[i].coeffs) +
                       " both give " + points[i].value.str());
    }
  }
  values_.reserve(points.size());
  coeffs_.reserve(points.size());
  for (auto& p : points) {
    values_.push_back(std::move(p.value));
    coeffs_.push_back(std::move(p.coeffs));
  }
}

std::optional<CoeffVector> GapIndex::decompose(const Integer& x) const {
  auto it = std::lower_bound(values_.begin(), values_.end(), x);
  if (it == values_.end() || *it != x) return std::nullopt;
  return coeffs_[static_cast<std::size_t>(it - values_.begin())];
}

bool GapIndex::contains(const Integer& x) const {
  return std::binary_search(values_.begin(), values_.end(), x);
}

std::optional<CoeffVector> decompose(const Gap& g, const Integer& x, const Caps& caps) {
  return GapIndex(g, caps).decompose(x);
}

}  // namespace freiman
