#include <algorithm>

#include "freiman/error.hpp"
#include "freiman/select.hpp"

namespace freiman {

namespace {

Rational good_bound_for(const Rational& delta, const Integer& n) {
  return delta * delta * Rational(n) / Rational(4);
}

Rational subset_bound_for(const Rational& delta, std::size_t source_size) {
  return delta * Rational(Integer(source_size)) / Rational(4);
}

}  // namespace

Rational EquidistResult::good_bound() const { return good_bound_for(delta_padded, n_padded); }
Rational EquidistResult::good_bound_raw() const { return good_bound_for(delta, n); }

Rational EquidistResult::subset_bound(std::size_t source_size) const {
  return subset_bound_for(delta_padded, source_size);
}
Rational EquidistResult::subset_bound_raw(std::size_t source_size) const {
  return subset_bound_for(delta, source_size);
}

EquidistResult equidistribute(const IntSet& a, const Integer& n,
                              const std::optional<Rational>& delta) {
  if (n < 1) throw InputError("n must be at least 1");
  if (a.empty()) throw InputError("delta must lie in (0, 1]: the set is empty");
  if (a.min() < 1 || a.max() > n) {
    throw InputError("set is not inside [1, " + n.str() + "]: contains " +
                     (a.min() < 1 ? a.min() : a.max()).str());
  }
  EquidistResult r;
  r.n = n;
  r.delta = Rational(Integer(a.size())) / Rational(n);
  if (delta) {
    if (*delta <= 0 || *delta > 1) throw InputError("delta must lie in (0, 1]");
    if (*delta != r.delta) {
      throw InputError("delta " + to_string(*delta) + " differs from |A|/n = " +
                       to_string(r.delta));
    }
  }
  r.width = to_int64(floor_of(Rational(2) / r.delta));
  const Integer d = r.width;
  r.n_padded = (n + d - 1) / d * d;
  r.delta_padded = Rational(Integer(a.size())) / Rational(r.n_padded);

  const Integer steps = r.n_padded / d;
  if (!fits_int64(steps)) throw CapExceeded("too many intervals: " + steps.str());
  const std::int64_t count = to_int64(steps);

  std::vector<Integer> chosen;
  const auto& xs = a.values();
  std::size_t pos = 0;
  for (std::int64_t j = 1; j <= count; ++j) {
    const Integer hi = d * j;  // I_j = [(j-1)d, jd)
    const std::size_t start = pos;
    while (pos < xs.size() && xs[pos] < hi) ++pos;
    const auto have = static_cast<std::int64_t>(chosen.size());
    if (have < j) {
      const auto need = static_cast<std::size_t>(j - have);
      const std::size_t take = std::min(need, pos - start);
      for (std::size_t q = start; q < start + take; ++q) chosen.push_back(xs[q]);
    }
    if (static_cast<std::int64_t>(chosen.size()) == j) r.good_indices.push_back(j);
  }
  r.subset = IntSet::from_unique(std::move(chosen));

  // Postconditions, exactly.
  for (auto j : r.good_indices) {
    const Integer hi = d * j;
    const auto below = static_cast<std::int64_t>(
        std::lower_bound(r.subset.values().begin(), r.subset.values().end(), hi) -
        r.subset.values().begin());
    if (below != j) {
      throw VerificationError("good index " + std::to_string(j) + " has " +
                              std::to_string(below) + " selected elements below " + hi.str());
    }
  }
  if (Rational(Integer(r.good_indices.size())) < r.good_bound()) {
    throw VerificationError("|J| = " + std::to_string(r.good_indices.size()) + " is below " +
                            to_string(r.good_bound()));
  }
  if (Rational(Integer(r.subset.size())) < r.subset_bound(a.size())) {
    throw VerificationError("|A'| = " + std::to_string(r.subset.size()) + " is below " +
                            to_string(r.subset_bound(a.size())));
  }
  return r;
}

EICertificate certify(const EquidistResult& r, const Caps& caps) {
  EICertificate c;
  c.m = r.subset.size();
  c.d = r.width;
  c.j_size = r.good_indices.size();
  c.ei_value = indexed_energy(r.subset, caps);
  const Rational j4 = Rational(pow_of(Integer(c.j_size), 4));
  const Rational md = Rational(Integer(c.m)) * Rational(Integer(c.d));
  c.floor_bound = j4 / (Rational(8) * md);
  c.printed_bound = j4 / (Rational(2) * md);
  return c;
}

EICertificate ei_certificate(const IntSet& a, const Integer& n, const Caps& caps,
                             EquidistResult* selection) {
  EquidistResult r = equidistribute(a, n);
  EICertificate c = certify(r, caps);
  if (!c.holds()) {
    throw VerificationError("EI(A') = " + c.ei_value.str() + " is below " +
                            to_string(c.floor_bound));
  }
  if (selection) *selection = std::move(r);
  return c;
}

Rational HighEIResult::ratio() const {
  if (subset.empty()) return Rational(0);
  return Rational(ei_value) / Rational(pow_of(Integer(subset.size()), 3));
}

HighEIResult high_ei_subset(const IntSet& a, const GapProvider& provider, const Caps& caps) {
  HighEIResult out;
  out.condense = condense_set(a, provider, caps);
  const CondenseResult& cr = out.condense;
  const MapTable table = cr.map.table(cr.subset);
  const MapTable inverse = invert(table);

  // Image shifted into [1, 2r+1], cut at floor(i N / 3).
  const Integer shift = cr.image_radius + 1;
  const Integer length = 2 * cr.image_radius + 1;
  std::vector<Integer> shifted;
  for (const auto& [x, y] : table) shifted.push_back(y + shift);
  std::sort(shifted.begin(), shifted.end());

  std::size_t best = 0;
  for (int i = 1; i <= 3; ++i) {
    const Integer lo = length * (i - 1) / 3;
    const Integer hi = length * i / 3;
    const auto cnt = static_cast<std::size_t>(
        std::upper_bound(shifted.begin(), shifted.end(), hi) -
        std::upper_bound(shifted.begin(), shifted.end(), lo));
    if (cnt > best) {
      best = cnt;
      out.third_index = i;
      out.third_offset = lo;
      out.third_length = hi - lo;
    }
  }
  std::vector<Integer> third;
  for (const auto& y : shifted) {
    if (y > out.third_offset && y <= out.third_offset + out.third_length) {
      third.push_back(y - out.third_offset);
    }
  }
  out.third = IntSet::from_unique(std::move(third));

  out.certificate = ei_certificate(out.third, out.third_length, caps, &out.selection);

  std::vector<Integer> pulled;
  for (const auto& y : out.selection.subset.elements()) {
    auto it = inverse.find(y + out.third_offset - shift);
    if (it == inverse.end()) throw Error("pull-back misses image value " + y.str());
    pulled.push_back(it->second);
  }
  out.subset = IntSet::from_unique(std::move(pulled));
  out.ei_value = indexed_energy(out.subset, caps);
  if (out.ei_value != out.certificate.ei_value) {
    throw VerificationError("EI of the pulled-back subset (" + out.ei_value.str() +
                            ") differs from EI of its image (" +
                            out.certificate.ei_value.str() + ")");
  }
  return out;
}

}  // namespace freiman
