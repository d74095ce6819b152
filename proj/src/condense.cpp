#include "freiman/condense.hpp"

#include <algorithm>

#include "freiman/cone.hpp"
#include "freiman/error.hpp"

namespace freiman {

namespace {

void charge(std::int64_t& used, std::int64_t amount, std::int64_t budget, const char* what) {
  used += amount;
  if (used > budget) {
    throw CapExceeded(std::string(what) + " exceeds budget " + std::to_string(budget));
  }
}

struct ShiftCounts {
  std::size_t best = 0;
  std::vector<Integer> optimal;  // sorted
};

template <typename T>
ShiftCounts count_shifts(std::vector<T> diffs, const std::vector<T>& targets) {
  std::sort(diffs.begin(), diffs.end());
  ShiftCounts out;
  std::vector<std::pair<T, std::size_t>> counts;
  auto it = diffs.begin();
  for (const auto& t : targets) {
    it = std::lower_bound(it, diffs.end(), t);
    auto end = std::upper_bound(it, diffs.end(), t);
    const auto c = static_cast<std::size_t>(end - it);
    out.best = std::max(out.best, c);
    counts.emplace_back(t, c);
    it = end;
  }
  for (const auto& [t, c] : counts) {
    if (c == out.best) out.optimal.push_back(Integer(t));
  }
  return out;
}

// For each s in T = A - (A + A): |{a in A : a + s in G}|, which is the
// multiplicity of s among the differences g - a.
ShiftCounts best_shifts(const IntSet& a, const std::vector<Integer>& gvalues, const IntSet& t) {
  const Integer limit = Integer(1) << 61;
  if (a.small_magnitude() && all_within(gvalues, limit) && all_within(t.values(), limit)) {
    std::vector<std::int64_t> diffs, targets;
    diffs.reserve(gvalues.size() * a.size());
    for (const auto& g : gvalues) {
      const auto gi = g.convert_to<std::int64_t>();
      for (const auto& x : a.elements()) diffs.push_back(gi - x.convert_to<std::int64_t>());
    }
    for (const auto& x : t.elements()) targets.push_back(x.convert_to<std::int64_t>());
    return count_shifts(std::move(diffs), targets);
  }
  std::vector<Integer> diffs;
  diffs.reserve(gvalues.size() * a.size());
  for (const auto& g : gvalues) {
    for (const auto& x : a.elements()) diffs.push_back(g - x);
  }
  return count_shifts(std::move(diffs), t.values());
}

IntSet step_two_targets(const IntSet& a, const Caps& caps) {
  std::int64_t used = 0;
  charge(used, static_cast<std::int64_t>(a.size() * a.size()), caps.triple_budget,
         "step-two target set");
  const IntSet twice = sumset(a, a);
  charge(used, static_cast<std::int64_t>(a.size() * twice.size()), caps.triple_budget,
         "step-two target set");
  return difference_set(a, twice);
}

}  // namespace

FreimanMap condense_gap(const Gap& g, const Caps& caps) {
  const Gap g0 = translate(g, -g.base());
  const ConeSystem sys = build_system(g0, caps);

  MapProvenance prov;
  prov.cone_dim = static_cast<std::size_t>(sys.dim);
  prov.cone_rows = static_cast<std::size_t>(sys.row_count());
  VectorXz dprime = VectorXz::Zero(static_cast<Eigen::Index>(g.dim()));
  if (sys.dim > 0) {
    const InteriorPoint ip = interior_integer_point(sys, caps);
    for (std::size_t c = 0; c < sys.coords.size(); ++c) {
      dprime(static_cast<Eigen::Index>(sys.coords[c])) = ip.point(static_cast<Eigen::Index>(c));
    }
    prov.ray_count = ip.ray_count;
    prov.rays = ip.rays;
    prov.reference_bound = ip.reference_bound;
    prov.reference_applies = ip.reference_applies;
  }
  for (std::size_t i = 0; i < g.dim(); ++i) {
    prov.image_bound += Integer(g.bounds()[i]) * abs_of(dprime(static_cast<Eigen::Index>(i)));
  }

  FreimanMap map(g0, dprime, g.base(), 0, prov, caps);
  if (g.volume() <= caps.pipeline_verify_size) {
    const IntSet points = point_set(g, caps);
    const MapTable table = map.table(points);
    const Freiman2Verdict v = verify_freiman2(table, points, caps.pipeline_verify_size);
    if (!v.passed()) {
      throw VerificationError("GAP map failed verification: " + v.summary());
    }
    for (const auto& [x, y] : table) {
      if (abs_of(y) > prov.image_bound) {
        throw VerificationError("GAP map image " + y.str() + " of " + x.str() +
                                " exceeds radius " + prov.image_bound.str());
      }
    }
    prov.verified_on_gap = true;
    map.set_provenance(prov);
  }
  return map;
}

GapProvider GapProvider::given(Gap g) {
  GapProvider p;
  p.mode_ = Mode::Given;
  p.gap_ = std::move(g);
  return p;
}

GapProvider GapProvider::ap_search() { return GapProvider{}; }

IntSet double_difference(const IntSet& a, const Caps& caps) {
  if (static_cast<std::int64_t>(a.size() * a.size()) > caps.energy_pairs) {
    throw CapExceeded("2A-2A of a " + std::to_string(a.size()) + "-element set exceeds cap " +
                      std::to_string(caps.energy_pairs));
  }
  const IntSet twice = sumset(a, a);
  if (static_cast<std::int64_t>(twice.size() * twice.size()) > caps.energy_pairs) {
    throw CapExceeded("2A-2A with |A+A| = " + std::to_string(twice.size()) + " exceeds cap " +
                      std::to_string(caps.energy_pairs));
  }
  return difference_set(twice, twice);
}

Gap provide_gap(const IntSet& a, const GapProvider& provider, const Caps& caps) {
  if (a.empty()) throw InputError("empty set");
  const IntSet dd = double_difference(a, caps);

  if (provider.mode() == GapProvider::Mode::Given) {
    // A symmetric proper GAP is centered at its base, so centering moves it to 0.
    const Gap g = translate(*provider.gap(), -provider.gap()->base());
    if (auto c = find_collision(g, caps)) {
      throw InputError("provided GAP is not proper: coefficients " + describe(c->first) + " and " +
                       describe(c->second) + " give the same value");
    }
    const IntSet points = point_set(g, caps);
    for (const auto& x : points.elements()) {
      if (!dd.contains(x)) throw InputError("provided GAP is not inside 2A-2A: " + x.str());
    }
    return g;
  }

  const IntSet targets = step_two_targets(a, caps);
  std::int64_t used = 0;
  std::size_t best = 0;
  std::optional<Gap> choice;
  for (const auto& d : dd.elements()) {
    if (d <= 0) continue;
    std::int64_t len = 1;
    while (dd.contains(d * (len + 1))) ++len;
    charge(used, len, caps.search_budget, "AP provider search");
    const auto ceiling = std::min<std::size_t>(a.size(), static_cast<std::size_t>(2 * len + 1));
    if (ceiling <= best) continue;
    std::vector<Integer> values;
    values.reserve(static_cast<std::size_t>(2 * len + 1));
    for (std::int64_t x = -len; x <= len; ++x) values.push_back(d * x);
    charge(used, static_cast<std::int64_t>(values.size() * a.size()), caps.search_budget,
           "AP provider search");
    const ShiftCounts sc = best_shifts(a, values, targets);
    if (sc.best > best) {
      best = sc.best;
      choice = Gap::progression(d, len);
    }
  }
  if (!choice) return Gap();
  return *choice;
}

TripleChoice choose_triple(const IntSet& a, const Gap& g, const Caps& caps) {
  if (a.empty()) throw InputError("empty set");
  const IntSet targets = step_two_targets(a, caps);
  const GapIndex index(g, caps);
  std::int64_t used = 0;
  charge(used, static_cast<std::int64_t>(index.size() * a.size()), caps.triple_budget,
         "step-two triple search");
  const ShiftCounts sc = best_shifts(a, index.values(), targets);

  TripleChoice out;
  out.count = sc.best;
  const auto& xs = a.values();
  for (const auto& b : xs) {
    for (const auto& c : xs) {
      for (const auto& d : xs) {
        charge(used, 1, caps.triple_budget, "step-two triple search");
        const Integer s = b - c - d;
        if (std::binary_search(sc.optimal.begin(), sc.optimal.end(), s)) {
          out.triple = {b, c, d};
          out.shift = s;
          return out;
        }
      }
    }
  }
  throw Error("no triple attains the best step-two count");
}

Rational CondenseResult::radius_constant() const {
  if (subset.empty()) return Rational(0);
  return Rational(image_radius) / Rational(Integer(subset.size()));
}

CondenseResult condense_set(const IntSet& a, const GapProvider& provider, const Caps& caps) {
  if (a.empty()) throw InputError("empty set");
  CondenseResult out;
  CondenseTrace& trace = out.trace;

  // G is symmetric with base 0. If G is proper then so is its 4x box, which
  // contains 4 G'', hence G'' is proper as well; build_system re-checks both.
  trace.gap = provide_gap(a, provider, caps);
  const Gap& g = trace.gap;
  trace.triple = choose_triple(a, g, caps);
  const Integer& s = trace.triple.shift;

  const GapIndex gindex(g, caps);
  std::vector<Integer> first;
  for (const auto& x : a.elements()) {
    if (gindex.contains(x + s)) first.push_back(x);
  }
  trace.first_subset_size = first.size();

  trace.quarter = scaled(g, Rational(1, 4));
  const Gap& quarter = trace.quarter;
  const GapIndex qindex(quarter, caps);
  const std::size_t k = g.dim();

  // Translates v = sum j_i q_i d_i over j in {0,..,3}^k, lexicographically;
  // a coordinate with q_i = 0 only takes j_i = 0.
  std::vector<int> top(k), j(k, 0);
  for (std::size_t i = 0; i < k; ++i) top[i] = quarter.bounds()[i] > 0 ? 3 : 0;
  std::size_t best = 0;
  bool have = false;
  std::int64_t used = 0;
  while (true) {
    Integer v = 0;
    for (std::size_t i = 0; i < k; ++i) v += Integer(j[i]) * quarter.bounds()[i] * g.dirs()[i];
    charge(used, static_cast<std::int64_t>(first.size()), caps.search_budget, "translate search");
    std::size_t count = 0;
    for (const auto& x : first) count += qindex.contains(x + s - v) ? 1 : 0;
    if (!have || count > best) {
      have = true;
      best = count;
      trace.translate_steps = j;
      trace.translate = v;
    }
    std::size_t i = k;
    while (i > 0 && j[i - 1] == top[i - 1]) {
      j[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
    ++j[i - 1];
  }

  std::vector<Integer> second;
  for (const auto& x : first) {
    if (qindex.contains(x + s - trace.translate)) second.push_back(x);
  }
  out.subset = IntSet::from_unique(std::move(second));
  out.map = condense_gap(quarter, caps).shifted(trace.translate - s, 0);
  out.retention = Rational(Integer(out.subset.size())) / Rational(Integer(a.size()));

  const MapTable table = out.map.table(out.subset);
  out.image_radius = 0;
  for (const auto& [x, y] : table) out.image_radius = std::max(out.image_radius, abs_of(y));
  out.verdict = verify_freiman2(table, out.subset, caps.pipeline_verify_size);
  if (!out.verdict.passed()) {
    throw VerificationError("condensed map failed verification on A'': " + out.verdict.summary());
  }
  return out;
}

}  // namespace freiman
