#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <optional>
#include <utility>
#include <vector>

#include "freiman/caps.hpp"
#include "freiman/intset.hpp"
#include "freiman/numeric.hpp"

namespace freiman {

using CoeffVector = std::vector<std::int64_t>;

/// Generalized arithmetic progression {base + sum x_i dirs_i : |x_i| <= bounds_i}.
///
/// Construction sign-normalizes every direction to be nonnegative; since the
/// coefficient boxes are symmetric this leaves the point set unchanged.
class Gap {
 public:
  Gap() = default;
  Gap(Integer base, std::vector<Integer> dirs, std::vector<std::int64_t> bounds);

  /// The AP {x * step : |x| <= bound}.
  static Gap progression(const Integer& step, std::int64_t bound);

  const Integer& base() const { return base_; }
  const std::vector<Integer>& dirs() const { return dirs_; }
  const std::vector<std::int64_t>& bounds() const { return bounds_; }
  std::size_t dim() const { return dirs_.size(); }

  /// prod (2 L_i + 1).
  Integer volume() const;

  Integer value(const CoeffVector& x) const;
  bool in_box(const CoeffVector& x) const;

  bool operator==(const Gap&) const = default;

 private:
  Integer base_ = 0;
  std::vector<Integer> dirs_;
  std::vector<std::int64_t> bounds_;
};

/// "(x_1,...,x_k)".
std::string describe(const CoeffVector& x);

struct GapPoint {
  CoeffVector coeffs;
  Integer value;
};

/// Calls f(x) for every x in the box |x_i| <= bounds_i, lexicographically
/// (first coordinate most significant). An empty box yields the empty vector
/// once.
template <typename F>
void for_each_coefficient(const std::vector<std::int64_t>& bounds, F&& f) {
  CoeffVector x(bounds.size());
  for (std::size_t i = 0; i < bounds.size(); ++i) x[i] = -bounds[i];
  while (true) {
    f(static_cast<const CoeffVector&>(x));
    std::size_t i = bounds.size();
    while (true) {
      if (i == 0) return;
      --i;
      if (x[i] < bounds[i]) {
        ++x[i];
        break;
      }
      x[i] = -bounds[i];
    }
  }
}

/// Every coefficient vector in lexicographic order (first coordinate most
/// significant, each running from -L_i to L_i), with its value.
std::vector<GapPoint> enumerate(const Gap& g, const Caps& caps = {});

/// Two distinct coefficient vectors with the same value, if any.
std::optional<std::pair<CoeffVector, CoeffVector>> find_collision(const Gap& g,
                                                                  const Caps& caps = {});

bool is_proper(const Gap& g, const Caps& caps = {});

/// Bounds mapped to floor(L_i * factor); base and directions kept. Coordinates
/// that collapse to bound zero are retained.
Gap scaled(const Gap& g, const Rational& factor);

Gap translate(const Gap& g, const Integer& t);

/// Distinct values of the GAP as a set.
IntSet point_set(const Gap& g, const Caps& caps = {});

/// Value-to-coefficient lookup for a proper GAP, built once by enumeration.
class GapIndex {
 public:
  /// Throws InputError("decomposition not unique ...") if g is not proper.
  explicit GapIndex(const Gap& g, const Caps& caps = {});

  const Gap& gap() const { return gap_; }
  std::optional<CoeffVector> decompose(const Integer& x) const;
  bool contains(const Integer& x) const;
  std::size_t size() const { return values_.size(); }
  /// Sorted distinct values.
  const std::vector<Integer>& values() const { return values_; }

 private:
  Gap gap_;
  std::vector<Integer> values_;
  std::vector<CoeffVector> coeffs_;
};

/// The unique coefficient vector with value x, or nullopt when x is not in g.
std::optional<CoeffVector> decompose(const Gap& g, const Integer& x, const Caps& caps = {});

}  // namespace freiman
