#include <doctest.h>

#include <random>

#include "freiman/error.hpp"
#include "freiman/gap.hpp"
#include "oracles.hpp"

using namespace freiman;

TEST_CASE("enumeration") {
  const Gap g(0, {3}, {1});
  CHECK(point_set(g) == IntSet::from_int64({-3, 0, 3}));
  const auto pts = enumerate(Gap(0, {1, 100}, {2, 2}));
  REQUIRE(pts.size() == 25);
  CHECK(pts.front().coeffs == CoeffVector{-2, -2});
  CHECK(pts.front().value == -202);
  CHECK(pts[1].coeffs == CoeffVector{-2, -1});
  CHECK(point_set(Gap(0, {1, 100}, {2, 2})).size() == 25);
  CHECK(point_set(Gap(0, {1, 2}, {2, 2})).size() == 13);
}

TEST_CASE("properness") {
  CHECK(is_proper(Gap(0, {1, 100}, {2, 2})));
  CHECK_FALSE(is_proper(Gap(0, {1, 2}, {2, 2})));
  CHECK(is_proper(Gap(5, {4, 6, 0}, {0, 0, 0})));
  const auto c = find_collision(Gap(0, {1, 2}, {2, 2}));
  REQUIRE(c);
  CHECK(Gap(0, {1, 2}, {2, 2}).value(c->first) == Gap(0, {1, 2}, {2, 2}).value(c->second));
}

TEST_CASE("properness agrees with value counting") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::int64_t> dir(1, 40), bound(0, 3), dims(1, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto k = static_cast<std::size_t>(dims(rng));
    std::vector<std::int64_t> d(k), l(k);
    std::vector<Integer> dz;
    for (std::size_t i = 0; i < k; ++i) {
      d[i] = dir(rng);
      l[i] = bound(rng);
      dz.push_back(d[i]);
    }
    const Gap g(0, dz, l);
    const bool proper = oracle::gap_values(0, d, l).size() ==
                        static_cast<std::size_t>(oracle::gap_volume(l));
    CHECK(is_proper(g) == proper);
    if (is_proper(scaled(g, Rational(4)))) CHECK(proper);
  }
}

TEST_CASE("construction validation and sign normalization") {
  CHECK_THROWS_AS(Gap(0, {1, 2}, {1}), InputError);
  CHECK_THROWS_AS(Gap(0, {1}, {-1}), InputError);
  CHECK_THROWS_AS(Gap(0, {0}, {2}), InputError);
  const Gap g(0, {-3, 5}, {1, 2});
  CHECK(g.dirs() == std::vector<Integer>{3, 5});
  CHECK(point_set(g) == point_set(Gap(0, {3, 5}, {1, 2})));
  CHECK(g.volume() == 15);
}

TEST_CASE("scaling and translation") {
  CHECK(scaled(Gap(0, {1, 100}, {2, 2}), Rational(4)).bounds() == std::vector<std::int64_t>{8, 8});
  CHECK(scaled(Gap(0, {1, 100}, {7, 9}), Rational(1, 4)).bounds() ==
        std::vector<std::int64_t>{1, 2});
  CHECK(scaled(Gap(0, {3}, {0}), Rational(4)).bounds() == std::vector<std::int64_t>{0});
  const Gap g(0, {1, 100}, {2, 2});
  CHECK(translate(g, 5).base() == 5);
  CHECK(translate(translate(g, 5), -5) == g);
  CHECK(point_set(translate(g, 5)) == point_set(g).translated(5));
}

TEST_CASE("decomposition") {
  const Gap g(0, {1, 100}, {2, 2});
  CHECK(decompose(g, 201) == CoeffVector{1, 2});
  CHECK(decompose(g, 0) == CoeffVector{0, 0});
  CHECK_FALSE(decompose(g, 3));
  const GapIndex index(g);
  for (const auto& p : enumerate(g)) CHECK(index.decompose(p.value) == p.coeffs);
  CHECK(decompose(translate(g, 7), 7) == CoeffVector{0, 0});
  CHECK_THROWS_WITH_AS(GapIndex(Gap(0, {1, 2}, {2, 2})), doctest::Contains("decomposition not unique"),
                       InputError);
}

TEST_CASE("volume cap") {
  Caps caps;
  caps.gap_volume = 10;
  CHECK_THROWS_AS(enumerate(Gap(0, {1, 100}, {2, 2}), caps), CapExceeded);
}
