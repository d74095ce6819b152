#include <doctest.h>

#include <random>

#include "freiman/error.hpp"
#include "freiman/freiman_map.hpp"
#include "oracles.hpp"

using namespace freiman;

namespace {

MapTable table_of(const std::vector<std::pair<long, long>>& pairs) {
  MapTable t;
  for (auto [x, y] : pairs) t.emplace(x, y);
  return t;
}

IntSet domain_of(const MapTable& t) {
  std::vector<Integer> xs;
  for (const auto& [x, y] : t) xs.push_back(x);
  return IntSet::from_unique(xs);
}

}  // namespace

TEST_CASE("identity passes") {
  const IntSet x = IntSet::from_int64({-3, 0, 1, 7, 20});
  MapTable t;
  for (const auto& e : x.elements()) t.emplace(e, e);
  CHECK(verify_freiman2(t, x, 300).passed());
}

TEST_CASE("homomorphism failure carries the quadruple") {
  const MapTable t = table_of({{0, 0}, {1, 1}, {2, 3}});
  const auto v = verify_freiman2(t, domain_of(t), 300);
  CHECK(v.order_preserving);
  CHECK_FALSE(v.homomorphism);
  REQUIRE(v.homomorphism_violation);
  const auto& q = *v.homomorphism_violation;
  CHECK(q[0] + q[1] == q[2] + q[3]);
  CHECK(t.at(q[0]) + t.at(q[1]) != t.at(q[2]) + t.at(q[3]));
}

TEST_CASE("isomorphism with no collisions on either side") {
  const MapTable t = table_of({{0, 0}, {1, 1}, {5, 3}});
  const auto v = verify_freiman2(t, domain_of(t), 300);
  CHECK(v.passed());
}

TEST_CASE("order and isomorphism failures") {
  const MapTable swapped = table_of({{0, 1}, {1, 0}});
  CHECK_FALSE(verify_freiman2(swapped, domain_of(swapped), 300).order_preserving);
  const MapTable squashed = table_of({{0, 0}, {1, 1}, {3, 2}});
  const auto v = verify_freiman2(squashed, domain_of(squashed), 300);
  CHECK(v.homomorphism);
  CHECK_FALSE(v.isomorphism);
  REQUIRE(v.isomorphism_violation);
  CHECK(v.summary().find("agree but sums differ") != std::string::npos);
}

TEST_CASE("verdicts agree with the quadruple loop") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    const auto xs = oracle::random_set(rng, 2 + trial % 9, -20, 20);
    std::vector<std::int64_t> ys;
    const int shape = trial % 3;
    for (auto x : xs) {
      if (shape == 0) ys.push_back(3 * x + 1);
      if (shape == 1) ys.push_back(x * x * (x > 0 ? 1 : -1));
      if (shape == 2) ys.push_back(x + static_cast<std::int64_t>(rng() % 3));
    }
    MapTable t;
    for (std::size_t i = 0; i < xs.size(); ++i) t.emplace(xs[i], ys[i]);
    const auto v = verify_freiman2(t, IntSet::from_int64(xs), 300);
    CHECK(v.passed() == oracle::freiman2(xs, ys));
  }
}

TEST_CASE("undefined points and the cap") {
  const MapTable t = table_of({{0, 0}});
  CHECK_THROWS_AS(verify_freiman2(t, IntSet::from_int64({0, 1}), 300), InputError);
  MapTable big;
  for (long i = 0; i < 10; ++i) big.emplace(i, i);
  CHECK_THROWS_AS(verify_freiman2(big, domain_of(big), 5), CapExceeded);
}

TEST_CASE("coefficient-linear maps and shifts") {
  VectorXz dprime(2);
  dprime << 1, 9;
  const FreimanMap m(Gap(0, {1, 100}, {2, 2}), dprime, 0, 0, {});
  CHECK(m(201) == 19);
  CHECK(m(-102) == -11);
  CHECK_FALSE(m.try_apply(3));
  CHECK_THROWS_AS(m(3), InputError);
  const FreimanMap s = m.shifted(10, 5);
  CHECK(s(211) == 24);
  CHECK_FALSE(s.in_domain(201));
  CHECK_THROWS_AS(FreimanMap(Gap(1, {1}, {1}), VectorXz::Ones(1), 0, 0, {}), InputError);
}

TEST_CASE("translations preserve all verdicts") {
  VectorXz dprime(2);
  dprime << 1, 9;
  const FreimanMap m(Gap(0, {1, 100}, {2, 2}), dprime, 0, 0, {});
  const IntSet x = point_set(Gap(0, {1, 100}, {2, 2}));
  CHECK(verify_freiman2(m.table(x), x, 300).passed());
  const FreimanMap s = m.shifted(-37, 1000);
  const IntSet xs = x.translated(-37);
  CHECK(verify_freiman2(s.table(xs), xs, 300).passed());
}

TEST_CASE("inverse tables") {
  const MapTable t = table_of({{0, 5}, {2, 7}});
  const MapTable inv = invert(t);
  CHECK(inv.at(5) == 0);
  CHECK(inv.at(7) == 2);
  CHECK_THROWS_AS(invert(table_of({{0, 1}, {2, 1}})), InputError);
}
