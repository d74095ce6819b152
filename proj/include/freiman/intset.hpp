#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "freiman/caps.hpp"
#include "freiman/numeric.hpp"

namespace freiman {

/// Finite set of integers, stored strictly increasing.
///
/// Positions are 1-based: `at(1)` is the smallest element. A subset built
/// from an IntSet is a new IntSet and is indexed by its own order.
class IntSet {
 public:
  IntSet() = default;

  /// Sorts and removes repeated values.
  static IntSet from_values(std::vector<Integer> values);
  /// Sorts; throws InputError if a value repeats.
  static IntSet from_unique(std::vector<Integer> values);
  static IntSet from_int64(const std::vector<std::int64_t>& values);
  /// {first, first+step, ..., first+(length-1)*step}, step != 0.
  static IntSet progression(const Integer& first, const Integer& step, std::size_t length);
  /// [lo, hi] as a set.
  static IntSet interval(const Integer& lo, const Integer& hi);

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  std::span<const Integer> elements() const { return elems_; }
  const std::vector<Integer>& values() const { return elems_; }

  /// 1-based access.
  const Integer& at(std::size_t index) const;
  const Integer& min() const;
  const Integer& max() const;

  bool contains(const Integer& x) const;
  /// 1-based position of x, or 0 when absent.
  std::size_t index_of(const Integer& x) const;

  IntSet translated(const Integer& t) const;
  IntSet negated() const;
  IntSet dilated(const Integer& factor) const;

  /// Elements with magnitude at most 2^61, so pair sums fit in 64 bits.
  bool small_magnitude() const;

  bool operator==(const IntSet&) const = default;

 private:
  std::vector<Integer> elems_;
};

IntSet sumset(const IntSet& a, const IntSet& b);
IntSet difference_set(const IntSet& a, const IntSet& b);
/// l*A - m*A for l, m >= 0 with l + m >= 1.
IntSet iterated_combination(const IntSet& a, unsigned l, unsigned m);

/// |A+A| / |A|.
Rational doubling(const IntSet& a);

/// Ordered quadruples (i,j,k,l) with a_i + a_j = a_k + a_l.
Integer additive_energy(const IntSet& a, const Caps& caps = {});
/// Ordered quadruples with a_i + a_j = a_k + a_l and i + j = k + l.
Integer indexed_energy(const IntSet& a, const Caps& caps = {});

bool is_arithmetic_progression(const IntSet& a);

struct EnergyReport {
  std::size_t n = 0;
  std::size_t sumset_size = 0;
  Rational doubling;
  Integer additive_energy;
  Integer indexed_energy;

  /// n^2 <= EI <= E <= n^3 and E * |A+A| >= n^4.
  bool sandwich_holds() const;
};

EnergyReport energy_report(const IntSet& a, const Caps& caps = {});

/// Checks |lA - mA| <= K^(l+m) |A| with K = |A+A|/|A|, in exact arithmetic.
bool plunnecke_check(const IntSet& a, unsigned l, unsigned m, const Caps& caps = {});

}  // namespace freiman
