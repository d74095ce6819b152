#include "freiman/intset.hpp"

#include <algorithm>
#include <cstdint>

#include "freiman/error.hpp"

namespace freiman {

namespace {

const Integer& small_limit() {
  static const Integer limit = Integer(1) << 61;
  return limit;
}

void require_nonempty(const IntSet& a) {
  if (a.empty()) throw InputError("empty set");
}

std::vector<std::int64_t> as_int64(const IntSet& a) {
  std::vector<std::int64_t> out;
  out.reserve(a.size());
  for (const auto& x : a.elements()) out.push_back(x.convert_to<std::int64_t>());
  return out;
}

template <typename T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

template <typename T>
std::vector<T> pair_sums(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(x + y);
  }
  return sorted_unique(std::move(out));
}

void check_pairs(std::size_t n, const Caps& caps) {
  const auto pairs = static_cast<long double>(n) * static_cast<long double>(n);
  if (pairs > static_cast<long double>(caps.energy_pairs)) {
    throw CapExceeded("energy of a " + std::to_string(n) +
                      "-element set exceeds cap energy_pairs=" +
                      std::to_string(caps.energy_pairs));
  }
}

// Sum of squared ordered-pair multiplicities, where the ordered pairs are
// given as sorted off-diagonal sums (each standing for two ordered pairs)
// and sorted diagonal sums (one ordered pair each).
template <typename T>
std::uint64_t squared_multiplicities(std::vector<T>& off, const std::vector<T>& diag) {
  std::sort(off.begin(), off.end());
  std::uint64_t total = 0;
  std::size_t i = 0, j = 0;
  while (i < off.size() || j < diag.size()) {
    const T& s = (j == diag.size() || (i < off.size() && off[i] < diag[j])) ? off[i] : diag[j];
    std::uint64_t count = 0;
    while (i < off.size() && off[i] == s) {
      count += 2;
      ++i;
    }
    while (j < diag.size() && diag[j] == s) {
      count += 1;
      ++j;
    }
    total += count * count;
  }
  return total;
}

template <typename T>
std::uint64_t additive_energy_impl(const std::vector<T>& a) {
  const std::size_t n = a.size();
  std::vector<T> off;
  off.reserve(n * (n - 1) / 2);
  std::vector<T> diag;
  diag.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    diag.push_back(a[i] + a[i]);
    for (std::size_t j = i + 1; j < n; ++j) off.push_back(a[i] + a[j]);
  }
  return squared_multiplicities(off, diag);
}

template <typename T>
std::uint64_t indexed_energy_impl(const std::vector<T>& a) {
  const std::size_t n = a.size();
  std::uint64_t total = 0;
  std::vector<T> off;
  std::vector<T> diag;
  // 0-based positions p + q = t; the index-sum key of the 1-based
  // convention is t + 2, so grouping by t is the same partition.
  for (std::size_t t = 0; t + 2 <= 2 * n; ++t) {
    off.clear();
    diag.clear();
    const std::size_t lo = t >= n - 1 ? t - (n - 1) : 0;
    for (std::size_t p = lo; 2 * p < t; ++p) off.push_back(a[p] + a[t - p]);
    if (t % 2 == 0) diag.push_back(a[t / 2] + a[t / 2]);
    total += squared_multiplicities(off, diag);
  }
  return total;
}

}  // namespace

IntSet IntSet::from_values(std::vector<Integer> values) {
  IntSet s;
  s.elems_ = sorted_unique(std::move(values));
  return s;
}

IntSet IntSet::from_unique(std::vector<Integer> values) {
  std::sort(values.begin(), values.end());
  auto dup = std::adjacent_find(values.begin(), values.end());
  if (dup != values.end()) throw InputError("duplicate element " + dup->str());
  IntSet s;
  s.elems_ = std::move(values);
  return s;
}

IntSet IntSet::from_int64(const std::vector<std::int64_t>& values) {
  std::vector<Integer> v(values.begin(), values.end());
  return from_values(std::move(v));
}

IntSet IntSet::progression(const Integer& first, const Integer& step, std::size_t length) {
  if (step == 0 && length > 1) throw InputError("progression step must be nonzero");
  std::vector<Integer> v;
  v.reserve(length);
  for (std::size_t i = 0; i < length; ++i) v.push_back(first + step * Integer(i));
  return from_values(std::move(v));
}

IntSet IntSet::interval(const Integer& lo, const Integer& hi) {
  std::vector<Integer> v;
  for (Integer x = lo; x <= hi; ++x) v.push_back(x);
  IntSet s;
  s.elems_ = std::move(v);
  return s;
}

const Integer& IntSet::at(std::size_t index) const {
  if (index == 0 || index > elems_.size()) {
    throw InputError("index " + std::to_string(index) + " outside 1.." +
                     std::to_string(elems_.size()));
  }
  return elems_[index - 1];
}

const Integer& IntSet::min() const {
  if (elems_.empty()) throw InputError("empty set");
  return elems_.front();
}

const Integer& IntSet::max() const {
  if (elems_.empty()) throw InputError("empty set");
  return elems_.back();
}

bool IntSet::contains(const Integer& x) const {
  return std::binary_search(elems_.begin(), elems_.end(), x);
}

std::size_t IntSet::index_of(const Integer& x) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), x);
  if (it == elems_.end() || *it != x) return 0;
  return static_cast<std::size_t>(it - elems_.begin()) + 1;
}

IntSet IntSet::translated(const Integer& t) const {
  IntSet s = *this;
  for (auto& x : s.elems_) x += t;
  return s;
}

IntSet IntSet::negated() const {
  IntSet s;
  s.elems_.reserve(elems_.size());
  for (auto it = elems_.rbegin(); it != elems_.rend(); ++it) s.elems_.push_back(-*it);
  return s;
}

IntSet IntSet::dilated(const Integer& factor) const {
  if (factor == 0) throw InputError("dilation by zero");
  std::vector<Integer> v;
  v.reserve(elems_.size());
  for (const auto& x : elems_) v.push_back(x * factor);
  return from_values(std::move(v));
}

bool IntSet::small_magnitude() const { return all_within(elems_, small_limit()); }

IntSet sumset(const IntSet& a, const IntSet& b) {
  require_nonempty(a);
  require_nonempty(b);
  if (a.small_magnitude() && b.small_magnitude()) {
    return IntSet::from_int64(pair_sums(as_int64(a), as_int64(b)));
  }
  return IntSet::from_values(pair_sums(a.values(), b.values()));
}

IntSet difference_set(const IntSet& a, const IntSet& b) { return sumset(a, b.negated()); }

IntSet iterated_combination(const IntSet& a, unsigned l, unsigned m) {
  require_nonempty(a);
  if (l + m == 0) return IntSet::from_values({Integer(0)});
  IntSet acc = l > 0 ? a : a.negated();
  unsigned plus = l > 0 ? l - 1 : 0;
  unsigned minus = l > 0 ? m : m - 1;
  for (unsigned i = 0; i < plus; ++i) acc = sumset(acc, a);
  for (unsigned i = 0; i < minus; ++i) acc = difference_set(acc, a);
  return acc;
}

Rational doubling(const IntSet& a) {
  require_nonempty(a);
  return Rational(Integer(sumset(a, a).size()), Integer(a.size()));
}

Integer additive_energy(const IntSet& a, const Caps& caps) {
  require_nonempty(a);
  check_pairs(a.size(), caps);
  if (a.small_magnitude()) return Integer(additive_energy_impl(as_int64(a)));
  return Integer(additive_energy_impl(a.values()));
}

Integer indexed_energy(const IntSet& a, const Caps& caps) {
  require_nonempty(a);
  check_pairs(a.size(), caps);
  if (a.small_magnitude()) return Integer(indexed_energy_impl(as_int64(a)));
  return Integer(indexed_energy_impl(a.values()));
}

bool is_arithmetic_progression(const IntSet& a) {
  const auto& v = a.values();
  for (std::size_t i = 2; i < v.size(); ++i) {
    if (v[i] - v[i - 1] != v[1] - v[0]) return false;
  }
  return true;
}

bool EnergyReport::sandwich_holds() const {
  const Integer size(n);
  const Integer sq = size * size;
  return sq <= indexed_energy && indexed_energy <= additive_energy &&
         additive_energy <= sq * size &&
         additive_energy * Integer(sumset_size) >= sq * sq;
}

EnergyReport energy_report(const IntSet& a, const Caps& caps) {
  require_nonempty(a);
  EnergyReport r;
  r.n = a.size();
  r.sumset_size = sumset(a, a).size();
  r.doubling = Rational(Integer(r.sumset_size), Integer(r.n));
  r.additive_energy = additive_energy(a, caps);
  r.indexed_energy = indexed_energy(a, caps);
  return r;
}

bool plunnecke_check(const IntSet& a, unsigned l, unsigned m, const Caps& caps) {
  require_nonempty(a);
  if (static_cast<std::int64_t>(l) + m > caps.plunnecke_terms) {
    throw CapExceeded("l + m = " + std::to_string(l + m) +
                      " exceeds cap plunnecke_terms=" + std::to_string(caps.plunnecke_terms));
  }
  const Integer size(a.size());
  const Integer doubled(sumset(a, a).size());
  const Integer combined(iterated_combination(a, l, m).size());
  // |lA - mA| <= (|A+A|/|A|)^(l+m) |A|, cross-multiplied by |A|^(l+m).
  return combined * pow_of(size, l + m) <= pow_of(doubled, l + m) * size;
}

}  // namespace freiman
