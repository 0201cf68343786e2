#include <catch2/catch_amalgamated.hpp>

#include "isokit/text_format.hpp"

#include "oracles.hpp"

using namespace isokit;

TEST_CASE("group spec parsing") {
  REQUIRE(parse_group("Z6").orders == std::vector<int>{6});
  REQUIRE(parse_group("Z2xZ2xZ3").orders == std::vector<int>{2, 2, 3});
  REQUIRE(parse_group("z2Xz4").orders == std::vector<int>{2, 4});
  REQUIRE_THROWS_MATCHES(parse_group("Z1"), error, Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::bad_order;
                         }));
  for (const char* bad : {"", "Q5", "Z", "Z4x", "Z4yZ2", "4"}) {
    REQUIRE_THROWS_MATCHES(parse_group(bad), error, Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::parse_error;
                           }));
  }
}

TEST_CASE("group spec rendering round trips") {
  for (const char* name : {"Z6", "Z2xZ2xZ3", "Z12"}) {
    REQUIRE(render_group(parse_group(name)) == name);
  }
}

TEST_CASE("set parsing in cyclic groups") {
  Group z6 = make_group({{6}});
  GroupSubset s = parse_set("{0,3,5}", z6);
  REQUIRE(s.indices() == std::vector<int>{0, 3, 5});
  REQUIRE(parse_set("{}", z6).empty());
  REQUIRE(parse_set("{ 1 , 1 , 2 }", z6).size() == 2);  // duplicates collapse
  REQUIRE_THROWS_MATCHES(parse_set("{7}", z6), error, Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::index_out_of_range;
                         }));
  REQUIRE_THROWS_MATCHES(parse_set("{1,", z6), error, Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::parse_error;
                         }));
  REQUIRE_THROWS_MATCHES(parse_set("{(1,1)}", z6), error, Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::rank_mismatch;
                         }));
}

TEST_CASE("set parsing in product groups") {
  Group g = make_group({{2, 3}});
  GroupSubset s = parse_set("{(1,0),(0,2)}", g);
  REQUIRE(s.size() == 2);
  REQUIRE(s.contains(g.index_of({1, 0})));
  REQUIRE(s.contains(g.index_of({0, 2})));
  REQUIRE_THROWS_MATCHES(parse_set("{0,1}", g), error, Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::rank_mismatch;
                         }));
  REQUIRE_THROWS_MATCHES(parse_set("{(2,0)}", g), error, Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::index_out_of_range;
                         }));
  REQUIRE_THROWS_MATCHES(parse_set("{(1,0,0)}", g), error, Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::rank_mismatch;
                         }));
}

TEST_CASE("render and parse round trip") {
  for (const GroupSpec& spec : {GroupSpec{{6}}, GroupSpec{{2, 3}}, GroupSpec{{2, 2, 2}}}) {
    Group g = make_group(spec);
    for (std::uint64_t seed = 0; seed < 30; seed++) {
      GroupSubset x = oracle::random_subset(g, 97, seed);
      REQUIRE(parse_set(render_set(x), g) == x);
    }
  }
}
