#include <doctest.h>

#include "freiman/error.hpp"
#include "freiman/io.hpp"

using namespace freiman;

TEST_CASE("set parsing") {
  CHECK(parse_set("3\n# comment\n\n1\n  -7  \n") == IntSet::from_int64({-7, 1, 3}));
  CHECK(parse_set("[5, \"-2\", \"100000000000000000000\"]") ==
        IntSet::from_values({Integer(-2), Integer(5), Integer("100000000000000000000")}));
  CHECK_THROWS_WITH_AS(parse_set("1\n2\n\n1\n"), doctest::Contains("line 4: value 1 repeats line 1"),
                       InputError);
  CHECK_THROWS_WITH_AS(parse_set("1\nx\n", "s.txt"), doctest::Contains("s.txt"), InputError);
  CHECK_THROWS_AS(parse_set("[1, 1.5]"), InputError);
  CHECK_THROWS_WITH_AS(parse_set("[100000000000000000000]"), doctest::Contains("as strings"), InputError);
  CHECK_THROWS_AS(parse_set("[1, 1]"), InputError);
  CHECK_THROWS_AS(read_set_file("/nonexistent/path/set.txt"), InputError);
}

TEST_CASE("GAP JSON round trip") {
  const Gap g(-4, {1, Integer("123456789012345678901")}, {2, 3});
  const Json j = gap_to_json(g);
  CHECK(gap_from_json(j) == g);
  CHECK(gap_from_json(Json::parse(R"({"base": 0, "dirs": [1, 100], "bounds": [2, 2]})")) ==
        Gap(0, {1, 100}, {2, 2}));
  CHECK_THROWS_AS(gap_from_json(Json::parse(R"({"dirs": [1], "bounds": [2]})")), InputError);
  CHECK_THROWS_AS(gap_from_json(Json::parse(R"({"base": 0, "dirs": [1], "bounds": [-1]})")), InputError);
  CHECK_THROWS_AS(gap_from_json(Json::parse(R"({"base": 0, "dirs": [1, 2], "bounds": [1]})")), InputError);
}

TEST_CASE("claims and tables") {
  CHECK(exact(5).dump() == R"({"kind":"exact","value":5})");
  CHECK(measured(0.5)["kind"] == "measured");
  CHECK(to_json(Rational(3, 4)) == "3/4");
  MapTable t;
  t.emplace(Integer(-3), Integer(7));
  t.emplace(Integer("99999999999999999999"), Integer(1));
  const Json j = table_to_json(t);
  CHECK(j.dump() == R"([["-3","7"],["99999999999999999999","1"]])");
  CHECK(table_from_json(j) == t);
  CHECK_THROWS_AS(table_from_json(Json::parse("[[1, 2], [1, 3]]")), InputError);
  CHECK_THROWS_AS(table_from_json(Json::parse("[[1]]")), InputError);
}

TEST_CASE("verdict JSON") {
  MapTable t;
  t.emplace(Integer(0), Integer(0));
  t.emplace(Integer(1), Integer(1));
  t.emplace(Integer(2), Integer(3));
  IntSet domain = IntSet::from_int64({0, 1, 2});
  const Json j = verdict_to_json(verify_freiman2(t, domain, 300));
  CHECK(j["passed"] == false);
  CHECK(j["order_preserving"] == true);
  CHECK(j["homomorphism"] == false);
}
