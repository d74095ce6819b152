// One line per acceptance criterion. Sizes, seeds and time limits are fixed
// here; the exit code is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <random>
#include <sstream>

#include "freiman/condense.hpp"
#include "freiman/cone.hpp"
#include "freiman/error.hpp"
#include "freiman/select.hpp"
#include "oracles.hpp"

using namespace freiman;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::vector<std::int64_t> to_int64s(const IntSet& s) {
  std::vector<std::int64_t> out;
  for (const auto& x : s.elements()) out.push_back(to_int64(x));
  return out;
}

bool oracle_verified(const FreimanMap& m, const IntSet& x) {
  std::vector<std::int64_t> ys;
  for (const auto& e : x.elements()) ys.push_back(to_int64(m(e)));
  return oracle::freiman2(to_int64s(x), ys);
}

std::string show(const Gap& g) {
  std::ostringstream os;
  os << "base " << g.base() << " dirs";
  for (const auto& d : g.dirs()) os << ' ' << d;
  os << " bounds";
  for (auto l : g.bounds()) os << ' ' << l;
  return os.str();
}

Integer factorial(unsigned n) {
  Integer f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

// Proper GAPs with 4x-scaled properness, k <= 3, L_i in [1, 3], d_i in [1, 3000].
std::vector<Gap> random_gaps() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> dir(1, 3000);
  std::uniform_int_distribution<std::int64_t> bound(1, 3);
  std::vector<Gap> out;
  while (out.size() < 200) {
    const std::size_t k = 1 + out.size() % 3;
    std::vector<Integer> d;
    std::vector<std::int64_t> l;
    for (std::size_t i = 0; i < k; ++i) {
      d.push_back(Integer(dir(rng)));
      l.push_back(bound(rng));
    }
    const Gap g(0, d, l);
    if (is_proper(scaled(g, Rational(4)))) out.push_back(g);
  }
  return out;
}

const std::vector<Gap>& gaps() {
  static const std::vector<Gap> g = random_gaps();
  return g;
}

Outcome energies() {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 500; ++t) {
    const auto xs = oracle::random_set(rng, 1 + t % 12, -40, 40);
    const IntSet a = IntSet::from_int64(xs);
    if (additive_energy(a) != oracle::energy(xs) || indexed_energy(a) != oracle::indexed_energy(xs)) {
      return {false, "mismatch on trial " + std::to_string(t)};
    }
  }
  return {true, "500 sets agree with the quadruple loop"};
}

Outcome sandwich() {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 1000; ++t) {
    const IntSet a = IntSet::from_int64(oracle::random_set(rng, 1 + t % 60, -500, 500));
    const EnergyReport r = energy_report(a);
    const Integer n(static_cast<long>(r.n));
    const bool ok = n * n <= r.indexed_energy && r.indexed_energy <= r.additive_energy &&
                    r.additive_energy <= n * n * n &&
                    r.additive_energy * Integer(static_cast<long>(r.sumset_size)) >= n * n * n * n;
    if (!ok) return {false, "sandwich fails on trial " + std::to_string(t)};
  }
  for (int t = 0; t < 100; ++t) {
    const IntSet ap = IntSet::progression(rng() % 1000, 1 + rng() % 50, 1 + t % 80);
    if (indexed_energy(ap) != additive_energy(ap)) return {false, "EI != E on AP " + std::to_string(t)};
  }
  return {true, "1000 sets satisfy the sandwich, 100 APs have EI = E"};
}

Outcome worked_example() {
  const IntSet a = IntSet::from_int64({0, 1, 2, 4});
  const Integer e = additive_energy(a), ei = indexed_energy(a);
  std::ostringstream os;
  os << "E = " << e << ", EI = " << ei;
  const bool ok = e == 36 && ei == 32 && oracle::energy({0, 1, 2, 4}) == 36 &&
                  oracle::indexed_energy({0, 1, 2, 4}) == 32;
  return {ok, os.str()};
}

Outcome condense_gaps() {
  std::size_t checked = 0, bounded = 0, beyond = 0;
  double worst = 0;
  for (const Gap& g : gaps()) {
    const FreimanMap m = condense_gap(g);
    const IntSet pts = point_set(g);
    if (!verify_freiman2(m.table(pts), pts, 4000).passed()) {
      return {false, "map fails verification on " + show(g)};
    }
    Integer radius = 0;
    for (const auto& x : pts.elements()) radius = std::max(radius, abs_of(m(x)));
    const unsigned k = static_cast<unsigned>(g.dim());
    Integer reference = factorial(k + 1) * pow_of(Integer(4), k);
    for (auto l : g.bounds()) reference *= l;
    const auto& p = m.provenance();
    if (p.ray_count <= k + 1) {
      if (radius > reference) return {false, "radius above the reference bound on " + show(g)};
      ++bounded;
    } else {
      if (!build_system(g).strictly_feasible(m.dprime())) {
        return {false, "d' not strictly feasible on " + show(g)};
      }
      ++beyond;
      worst = std::max(worst, to_double(radius) / to_double(reference));
    }
    ++checked;
  }
  std::ostringstream os;
  os << checked << " GAPs verified; " << bounded << " within (k+1)! 4^k prod L, " << beyond
     << " with more than k+1 rays (largest radius/reference " << std::setprecision(3) << worst << ")";
  return {true, os.str()};
}

Outcome cone_oracle() {
  Caps caps;
  caps.cone_box = 1'000'000'000'000;  // the shell search stops at the first hit
  for (const Gap& g : gaps()) {
    const ConeSystem s = build_system(g);
    const InteriorPoint p = interior_integer_point(s);
    if (!s.strictly_feasible(p.point)) return {false, "d' not strictly feasible on " + show(g)};
    std::int64_t box = 0;
    for (Eigen::Index i = 0; i < p.point.size(); ++i) box = std::max(box, to_int64(abs_of(p.point(i))));
    const auto o = oracle_min_point(s, box, caps);
    if (!o || !s.strictly_feasible(*o)) return {false, "oracle found no point on " + show(g)};
  }
  const InteriorPoint t = interior_integer_point(build_system(Gap(0, {1, 100}, {2, 2})));
  if (t.point.size() != 2 || t.point(0) != 1 || t.point(1) != 9) {
    return {false, "textbook d' is not (1, 9)"};
  }
  return {true, "200 systems: oracle and d' strictly feasible; textbook d' = (1, 9)"};
}

Outcome pipeline(double limit_per_input) {
  std::vector<std::pair<IntSet, GapProvider>> inputs;
  std::vector<std::string> names;
  for (std::int64_t l = 2; l <= 5; ++l) {
    std::vector<Integer> v;
    for (std::int64_t x = -l; x <= l; ++x)
      for (std::int64_t y = -l; y <= l; ++y) v.push_back(Integer(x + 100 * y));
    inputs.emplace_back(IntSet::from_values(v), GapProvider::given(Gap(0, {1, 100}, {2 * l, 2 * l})));
    names.push_back("2D GAP L=" + std::to_string(l));
  }
  for (std::int64_t len : {10, 100, 250, 500}) {
    inputs.emplace_back(IntSet::progression(7, 3, len), GapProvider::ap_search());
    names.push_back("AP length " + std::to_string(len));
  }
  std::ostringstream os;
  os << std::setprecision(3);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    const auto& [a, provider] = inputs[i];
    const CondenseResult r = condense_set(a, provider);
    const unsigned k = static_cast<unsigned>(r.trace.gap.dim());
    const IntSet image = r.map.image(r.subset);
    // The quadruple-loop oracle is O(n^4); above 200 elements the library
    // verdict (pair-sum tables) stands alone.
    const bool oracle_ok = r.subset.size() > 200 || oracle_verified(r.map, r.subset);
    const bool ok = r.verdict.passed() && oracle_ok &&
                    r.retention * Rational(pow_of(Integer(4), k)) >= 1 &&
                    additive_energy(r.subset) == additive_energy(image) &&
                    indexed_energy(r.subset) == indexed_energy(image);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= limit_per_input) return {false, names[i] + " over time"};
    if (!ok) return {false, names[i] + " fails"};
    os << names[i] << ": c=" << to_double(r.radius_constant()) << " (" << secs << " s); ";
  }
  return {true, os.str()};
}

struct Instance {
  IntSet a;
  Integer n;
  Rational delta;
};

std::vector<Instance> instances() {
  std::mt19937_64 rng(7);
  std::vector<Instance> out;
  for (int t = 0; t < 500; ++t) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(std::exp(std::uniform_real_distribution<double>(0, std::log(1e4))(rng)));
    const std::int64_t size = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n));
    const IntSet a = IntSet::from_int64(oracle::random_set(rng, static_cast<std::size_t>(size), 1, n));
    out.push_back({a, Integer(n), Rational(Integer(size), Integer(n))});
  }
  out.push_back({IntSet::from_int64({1, 2, 3, 4}), Integer(8), Rational(1, 2)});
  return out;
}

const std::vector<EquidistResult>& selections() {
  static const std::vector<EquidistResult> s = [] {
    std::vector<EquidistResult> out;
    for (const auto& in : instances()) out.push_back(equidistribute(in.a, in.n, in.delta));
    return out;
  }();
  return s;
}

Outcome equidistribution() {
  const auto ins = instances();
  const auto& sel = selections();
  std::size_t raw_good = 0;
  for (std::size_t i = 0; i < ins.size(); ++i) {
    const auto& r = sel[i];
    const auto xs = to_int64s(r.subset);
    for (auto j : r.good_indices) {
      std::int64_t below = 0;
      for (auto x : xs) below += x < j * r.width;
      if (below != j) return {false, "prefix count fails on instance " + std::to_string(i)};
    }
    for (auto x : xs)
      if (!ins[i].a.contains(Integer(x))) return {false, "A' not inside A"};
    const Rational j_size(Integer(static_cast<long>(r.good_indices.size())));
    const Rational a_size(Integer(static_cast<long>(r.subset.size())));
    const Rational raw = ins[i].delta * ins[i].delta * Rational(r.n_padded) / 4;
    if (j_size < r.good_bound() || a_size < r.subset_bound(ins[i].a.size())) {
      return {false, "size bound fails on instance " + std::to_string(i)};
    }
    raw_good += j_size >= raw && a_size >= ins[i].delta * Rational(Integer(static_cast<long>(ins[i].a.size()))) / 4;
  }
  const auto& hand = sel.back();
  if (hand.subset != IntSet::from_int64({1, 4}) || hand.good_indices != std::vector<std::int64_t>{1, 2}) {
    return {false, "hand-traced instance differs"};
  }
  std::ostringstream os;
  os << ins.size() << " instances hold with the padded density; " << raw_good
     << " also meet the unpadded density bounds; hand trace A'={1,4}, J={1,2}";
  return {true, os.str()};
}

Outcome certificates() {
  std::size_t printed = 0;
  for (const auto& r : selections()) {
    const EICertificate c = certify(r);
    const auto xs = to_int64s(r.subset);
    if (xs.size() <= 40 && c.ei_value != oracle::indexed_energy(xs)) return {false, "EI mismatch"};
    if (!c.holds()) return {false, "EI(A') below |J|^4/(8md)"};
    printed += c.printed_holds();
  }
  std::ostringstream os;
  os << selections().size() << " certificates hold; " << printed << " also meet |J|^4/(2md)";
  return {true, os.str()};
}

Outcome extremal() {
  const ExtremalSet e = extremal_set(16, Rational(1, 2));
  if (e.set != IntSet::from_int64({1, 2, 5, 8, 11, 14})) return {false, "n=16 family differs"};
  for (std::size_t i = 1; i <= e.set.size(); ++i) {
    if (e.set.at(i) != oracle::floor_power(Integer(static_cast<long>(i)), 3, 2)) {
      return {false, "floor differs from the oracle"};
    }
  }
  const auto rows = extremal_scan({Integer(1024), Integer(2048), Integer(4096), Integer(8192)});
  double lo = 1e300, hi = 0, floor = 1e300;
  for (const auto& row : rows) {
    if (Integer(static_cast<long>(row.sumset_size)) > 2 * row.family.n) return {false, "|A+A| > 2n"};
    if (row.energy * Integer(static_cast<long>(row.sumset_size)) < pow_of(Integer(static_cast<long>(row.size)), 4)) {
      return {false, "E |A+A| < |A|^4"};
    }
    lo = std::min(lo, row.indexed_ratio());
    hi = std::max(hi, row.indexed_ratio());
    floor = std::min(floor, row.energy_ratio());
  }
  // The ratio may not grow by more than a factor 2 along the scan.
  double grow = 0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      grow = std::max(grow, rows[j].indexed_ratio() / rows[i].indexed_ratio());
  std::ostringstream os;
  os << std::setprecision(3) << "EI/(|A|^2 ln^2|A|) in [" << lo << ", " << hi << "], max growth " << grow
     << "; E/|A|^3 floor " << floor;
  return {grow <= 2 && floor > 0, os.str()};
}

Outcome diagonal() {
  const IntSet a1 = IntSet::progression(0, 3, 50), a2 = IntSet::progression(0, 7, 50);
  const DiagonalSet d = diagonal_product({{a1, GapProvider::ap_search()}, {a2, GapProvider::ap_search()}});
  if (!oracle::diagonal(d.rows)) return {false, "rows are not diagonal"};
  if (Integer(static_cast<long>(d.sumset_size)) > 2 * d.interval_length) return {false, "|C+C| too large"};
  const double c = static_cast<double>(d.rows.size()) / std::sqrt(50.0 * 50.0);
  const DiagonalSet t = diagonal_product({{IntSet::interval(0, 3), std::nullopt}, {IntSet::interval(0, 3), std::nullopt}});
  if (t.rows.size() != 4 || t.sumset_size != 7 || !oracle::diagonal(t.rows)) return {false, "trivial case differs"};
  std::ostringstream os;
  os << std::setprecision(3) << "|C|=" << d.rows.size() << ", |C+C|=" << d.sumset_size << " <= 2*"
     << d.interval_length << ", c=" << c << "; trivial case 4 rows, |C+C|=7";
  return {true, os.str()};
}

Outcome plunnecke() {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    // Dense subsets of short progressions, plus a few random blocks.
    std::vector<std::int64_t> xs;
    const std::int64_t step = 1 + static_cast<std::int64_t>(rng() % 9);
    const std::int64_t len = 10 + static_cast<std::int64_t>(rng() % 40);
    for (std::int64_t i = 0; i < len; ++i)
      if (rng() % 3 != 0) xs.push_back(step * i);
    if (t % 4 == 0) xs.push_back(1000 + static_cast<std::int64_t>(rng() % 100));
    if (xs.empty()) xs.push_back(0);
    const IntSet a = IntSet::from_int64(xs);
    for (auto [l, m] : {std::pair{1u, 1u}, {2u, 1u}, {2u, 2u}}) {
      if (!plunnecke_check(a, l, m)) return {false, "fails on trial " + std::to_string(t)};
    }
  }
  return {true, "100 sets, (l,m) in {(1,1),(2,1),(2,2)}"};
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "energy oracle", 10, energies},
      {2, "sandwich and AP identities", 30, sandwich},
      {3, "worked indexed-energy gap", 10, worked_example},
      {4, "condensing of GAPs", 120, condense_gaps},
      {5, "cone oracle agreement", 120, cone_oracle},
      {6, "set-level pipeline", 480, [] { return pipeline(60); }},
      {7, "equidistribution", 30, equidistribution},
      {8, "indexed-energy certificate", 30, certificates},
      {9, "extremal family", 300, extremal},
      {10, "diagonal sets", 60, diagonal},
      {11, "Plunnecke inequality", 60, plunnecke},
  };
  int failures = 0;
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= c.limit) {
      o.ok = false;
      o.detail += " (over time)";
    }
    failures += !o.ok;
    std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << ": " << o.detail << " ["
              << std::fixed << std::setprecision(2) << secs << " s, limit " << std::defaultfloat
              << c.limit << " s]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
