#include <doctest.h>

#include <random>

#include "freiman/error.hpp"
#include "freiman/select.hpp"
#include "oracles.hpp"

using namespace freiman;

namespace {

void check_postconditions(const IntSet& a, const EquidistResult& r) {
  const auto& xs = r.subset.values();
  for (auto j : r.good_indices) {
    std::int64_t below = 0;
    for (const auto& x : xs) below += x < Integer(j * r.width);
    CHECK(below == j);
  }
  for (std::size_t p = 0; p < r.good_indices.size(); ++p)
    for (std::size_t q = p + 1; q < r.good_indices.size(); ++q) {
      const auto i = r.good_indices[p], j = r.good_indices[q];
      std::int64_t inside = 0;
      for (const auto& x : xs) inside += x >= Integer(i * r.width) && x < Integer(j * r.width);
      CHECK(inside == j - i);
    }
  for (const auto& x : xs) CHECK(a.contains(x));
  CHECK(Rational(Integer(r.good_indices.size())) >= r.good_bound());
  CHECK(Rational(Integer(r.subset.size())) >= r.subset_bound(a.size()));
  CHECK(r.n_padded % r.width == 0);
  CHECK(r.n_padded >= r.n);
  CHECK(r.width == to_int64(floor_of(Rational(2) / r.delta)));
}

}  // namespace

TEST_CASE("hand-traced selection") {
  const IntSet a = IntSet::from_int64({1, 2, 3, 4});
  const EquidistResult r = equidistribute(a, 8, Rational(1, 2));
  CHECK(r.width == 4);
  CHECK(r.subset == IntSet::from_int64({1, 4}));
  CHECK(r.good_indices == std::vector<std::int64_t>{1, 2});
  check_postconditions(a, r);
}

TEST_CASE("full interval and singleton") {
  const EquidistResult r = equidistribute(IntSet::interval(1, 20), 20, Rational(1));
  CHECK(r.width == 2);
  CHECK(r.subset.size() == 10);
  CHECK(r.good_indices.size() == 10);
  const EquidistResult one = equidistribute(IntSet::from_int64({1}), 1);
  CHECK(one.width == 2);
  CHECK(one.n_padded == 2);
  CHECK(one.subset == IntSet::from_int64({1}));
  CHECK(one.good_indices == std::vector<std::int64_t>{1});
}

TEST_CASE("selection input errors") {
  CHECK_THROWS_AS(equidistribute(IntSet::from_int64({0, 1}), 5), InputError);
  CHECK_THROWS_AS(equidistribute(IntSet::from_int64({1, 6}), 5), InputError);
  CHECK_THROWS_AS(equidistribute(IntSet::from_int64({1, 2}), 5, Rational(1, 2)), InputError);
  CHECK_THROWS_AS(equidistribute(IntSet(), 5), InputError);
}

TEST_CASE("randomized selections") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 300);
    const std::size_t size = 1 + static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(n));
    const IntSet a = IntSet::from_int64(oracle::random_set(rng, size, 1, n));
    const EquidistResult r = equidistribute(a, n);
    check_postconditions(a, r);
    const EICertificate c = certify(r);
    CHECK(c.ei_value == oracle::indexed_energy(
                            [&] {
                              std::vector<std::int64_t> v;
                              for (const auto& x : r.subset.elements()) v.push_back(to_int64(x));
                              return v;
                            }()));
    CHECK(c.holds());
  }
}

TEST_CASE("certificates") {
  const EICertificate full = ei_certificate(IntSet::interval(1, 64), 64);
  CHECK(full.holds());
  CHECK(full.ei_value > full.floor_bound * 4);
  std::vector<std::int64_t> evens;
  for (std::int64_t x = 2; x <= 64; x += 2) evens.push_back(x);
  CHECK(ei_certificate(IntSet::from_int64(evens), 64).holds());
  const EICertificate one = ei_certificate(IntSet::from_int64({1}), 1);
  CHECK(one.ei_value == 1);
  CHECK(one.floor_bound == Rational(1, 16));
  CHECK(one.printed_bound == Rational(1, 4));
}

TEST_CASE("high indexed energy subsets") {
  const HighEIResult ap = high_ei_subset(IntSet::progression(3, 2, 100), GapProvider::ap_search());
  CHECK(ap.ei_value == additive_energy(ap.subset));
  for (const auto& x : ap.subset.elements()) CHECK(IntSet::progression(3, 2, 100).contains(x));
  CHECK(ap.certificate.holds());

  std::vector<Integer> v;
  for (long x = -2; x <= 2; ++x)
    for (long y = -2; y <= 2; ++y) v.push_back(x + 100 * y);
  const HighEIResult g = high_ei_subset(IntSet::from_values(v), GapProvider::given(Gap(0, {1, 100}, {4, 4})));
  CHECK(Rational(g.ei_value) >= g.certificate.floor_bound);

  const HighEIResult one = high_ei_subset(IntSet::from_int64({9}), GapProvider::ap_search());
  CHECK(one.subset == IntSet::from_int64({9}));
  CHECK(one.ei_value == 1);
}

TEST_CASE("extremal family") {
  const ExtremalSet e = extremal_set(16, Rational(1, 2));
  CHECK(e.set == IntSet::from_int64({1, 2, 5, 8, 11, 14}));
  CHECK(e.count == 6);
  CHECK(extremal_set(40, Rational(0)).set == IntSet::interval(1, 40));
  CHECK_THROWS_AS(extremal_set(16, Rational(1)), InputError);
  CHECK_THROWS_AS(extremal_set(1, Rational(1, 2)), InputError);

  const Rational eps = auto_epsilon(1000);
  CHECK(eps == Rational(9, 64));
  const ExtremalSet big = extremal_set(1000, eps);
  const unsigned r = 73, s = 64;
  for (std::size_t i = 1; i <= big.set.size(); ++i) {
    CHECK(big.set.at(i) == oracle::floor_power(Integer(static_cast<long>(i)), r, s));
  }
  CHECK(oracle::power(big.count, r) <= oracle::power(Integer(1000), s));
  CHECK(oracle::power(big.count + 1, r) > oracle::power(Integer(1000), s));
  const EnergyReport rep = energy_report(big.set);
  CHECK(rep.sandwich_holds());

  Caps caps;
  caps.root_denominator = 8;
  CHECK_THROWS_AS(extremal_set(100, Rational(1, 9), caps), CapExceeded);
}

TEST_CASE("extremal scan") {
  const auto rows = extremal_scan({Integer(256), Integer(512)});
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(Integer(row.sumset_size) <= 2 * row.family.n);
    CHECK(row.energy * Integer(row.sumset_size) >= pow_of(Integer(row.size), 4));
  }
  std::ostringstream os;
  write_scan_csv(os, rows);
  CHECK(os.str().rfind("n,|A|,|A+A|,E,EI,E/|A|^3,EI/(|A|^2 ln^2|A|)", 0) == 0);
}

TEST_CASE("trivial diagonal") {
  const DiagonalSet d = diagonal_product({{IntSet::interval(0, 3), std::nullopt},
                                          {IntSet::interval(0, 3), std::nullopt}});
  CHECK(d.shifts == std::vector<Integer>{0, 0});
  CHECK(d.core == IntSet::interval(0, 3));
  REQUIRE(d.rows.size() == 4);
  for (long i = 0; i < 4; ++i) CHECK(d.rows[i] == std::vector<Integer>{i, i});
  CHECK(d.sumset_size == 7);
  CHECK(oracle::diagonal(d.rows));
}

TEST_CASE("diagonal of coprime progressions") {
  const DiagonalSet d = diagonal_product({{IntSet::progression(0, 3, 50), GapProvider::ap_search()},
                                          {IntSet::progression(0, 7, 50), GapProvider::ap_search()}});
  CHECK(oracle::diagonal(d.rows));
  CHECK(Integer(d.sumset_size) <= 2 * d.interval_length);
  CHECK(d.rows.size() >= 25);
  for (const auto& row : d.rows) {
    CHECK(row[0] % 3 == 0);
    CHECK(row[1] % 7 == 0);
  }
}

TEST_CASE("diagonal of one set and of shifted sets") {
  const DiagonalSet one = diagonal_product({{IntSet::from_int64({2, 5, 9}), std::nullopt}});
  CHECK(one.rows.size() == 3);
  const DiagonalSet shifted = diagonal_product({{IntSet::from_int64({0, 1, 2, 10}), std::nullopt},
                                                {IntSet::from_int64({0, 8, 9, 10}), std::nullopt}});
  CHECK(oracle::diagonal(shifted.rows));
  CHECK(shifted.rows.size() == 3);
  CHECK(shifted.shifts[1] == -8);
  CHECK_FALSE(is_diagonal({{Integer(0), Integer(1)}, {Integer(1), Integer(0)}}));
}
