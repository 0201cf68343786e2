#include <catch2/catch_amalgamated.hpp>

#include "isokit/group.hpp"
#include "isokit/set_algebra.hpp"
#include "isokit/subgroup.hpp"
#include "isokit/text_format.hpp"

#include "oracles.hpp"

using namespace isokit;

TEST_CASE("cyclic group arithmetic") {
  Group g = make_group({{4}});
  REQUIRE(g.order() == 4);
  REQUIRE(g.add(3, 2) == 1);
  REQUIRE(g.neg(1) == 3);
  REQUIRE(g.neg(0) == 0);
}

TEST_CASE("klein four group has exponent two") {
  Group g = make_group({{2, 2}});
  REQUIRE(g.order() == 4);
  for (int e = 1; e < 4; e++) REQUIRE(g.add(e, e) == 0);
}

TEST_CASE("Z2 x Z3 has an element of order six") {
  Group g = make_group({{2, 3}});
  int e = g.index_of({1, 1});
  int acc = e;
  int order = 1;
  while (acc != 0) {
    acc = g.add(acc, e);
    order++;
  }
  REQUIRE(order == 6);
}

TEST_CASE("spec validation") {
  REQUIRE_THROWS_MATCHES(make_group({{1}}), error,
                         Catch::Matchers::Predicate<error>([](const error& e) { return e.code() == errc::bad_order; }));
  REQUIRE_THROWS_MATCHES(make_group({{64, 65}}), error, Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::spec_too_large;
                         }));
  REQUIRE_NOTHROW(make_group({{64, 64}}));
  REQUIRE_THROWS_MATCHES(make_group({{8}}, 6), error, Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::spec_too_large;
                         }));
}

TEST_CASE("group axioms by scan") {
  for (const GroupSpec& spec : {GroupSpec{{8}}, GroupSpec{{3, 5}}, GroupSpec{{2, 2, 2}}, GroupSpec{{4, 4, 4}},
                                GroupSpec{{4, 8, 8}}, GroupSpec{{5, 7, 11}}}) {
    Group g = make_group(spec);
    const int n = g.order();
    long long bad = 0;
    if (n <= 256) {
      for (int a = 0; a < n; a++) {
        bad += g.add(a, 0) != a;
        bad += g.add(a, g.neg(a)) != 0;
        for (int b = 0; b < n; b++) {
          bad += g.add(a, b) != g.add(b, a);
          for (int c = 0; c < n; c++) bad += g.add(g.add(a, b), c) != g.add(a, g.add(b, c));
        }
      }
    } else {
      for (int i = 0; i < 20000; i++) {
        int a = static_cast<int>(oracle::rnd(7, 3 * i) % n);
        int b = static_cast<int>(oracle::rnd(7, 3 * i + 1) % n);
        int c = static_cast<int>(oracle::rnd(7, 3 * i + 2) % n);
        bad += g.add(a, b) != g.add(b, a);
        bad += g.add(g.add(a, b), c) != g.add(a, g.add(b, c));
        bad += g.add(a, g.neg(a)) != 0;
      }
    }
    INFO(render_group(spec));
    REQUIRE(bad == 0);
  }
}

TEST_CASE("index and coordinates are mutually inverse") {
  Group g = make_group({{3, 4, 2}});
  for (int i = 0; i < g.order(); i++) REQUIRE(g.index_of(g.coords_of(i)) == i);
  REQUIRE(g.index_of({-1, 5, 4}) == g.index_of({2, 1, 0}));
}

TEST_CASE("subgroup generation") {
  Group z6 = make_group({{6}});
  REQUIRE(subgroup_generated(z6, GroupSubset(z6, {2})).carrier == GroupSubset(z6, {0, 2, 4}));
  REQUIRE(subgroup_generated(z6, GroupSubset(z6)).carrier == GroupSubset(z6, {0}));
  Group k4 = make_group({{2, 2}});
  REQUIRE(subgroup_generated(k4, GroupSubset(k4, {1, 2})).carrier.size() == 4);
}

TEST_CASE("subgroup generation is idempotent") {
  Group g = make_group({{2, 6}});
  for (std::uint64_t seed = 0; seed < 25; seed++) {
    GroupSubset gens = oracle::random_subset(g, 11, seed, 30);
    Subgroup h = subgroup_generated(g, gens);
    REQUIRE(subgroup_generated(g, h.carrier).carrier == h.carrier);
    REQUIRE(carrier_is_subgroup(h.carrier));
    REQUIRE(g.order() % h.order() == 0);  // Lagrange
  }
}

TEST_CASE("quotient by an index-two subgroup") {
  Group z4 = make_group({{4}});
  Subgroup h = subgroup_generated(z4, GroupSubset(z4, {2}));
  QuotientMap q = quotient(z4, h);
  REQUIRE(q.order() == 2);
  REQUIRE(q.coset_index[0] == 0);
  GroupSubset odd(z4, {1, 3});
  REQUIRE(q.push(odd).size() == 1);
}

TEST_CASE("quotient by the trivial subgroup is the identity relabeling") {
  Group z6 = make_group({{6}});
  QuotientMap q = quotient(z6, subgroup_generated(z6, GroupSubset(z6)));
  REQUIRE(q.order() == 6);
  for (int i = 0; i < 6; i++) REQUIRE(q.coset_index[i] == i);
  for (int a = 0; a < 6; a++)
    for (int b = 0; b < 6; b++) REQUIRE(q.quotient_group.add(a, b) == z6.add(a, b));
}

TEST_CASE("quotient of the klein group") {
  Group g = make_group({{2, 2}});
  Subgroup h = subgroup_generated(g, GroupSubset(g, {1}));  // {(0,0),(1,0)}
  QuotientMap q = quotient(g, h);
  REQUIRE(q.order() == 2);
  REQUIRE(q.quotient_group.add(1, 1) == 0);
}

TEST_CASE("quotient rejects non-subgroups") {
  Group z6 = make_group({{6}});
  Subgroup bogus{GroupSubset(z6, {0, 2}), {}};
  REQUIRE_THROWS_MATCHES(quotient(z6, bogus), error, Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::not_a_subgroup;
                         }));
}

TEST_CASE("quotient order times subgroup order is the group order") {
  Group g = make_group({{2, 2, 3}});
  for (std::uint64_t seed = 0; seed < 20; seed++) {
    Subgroup h = subgroup_generated(g, oracle::random_subset(g, 13, seed, 25));
    QuotientMap q = quotient(g, h);
    REQUIRE(q.order() * h.order() == g.order());
    REQUIRE(q.quotient_group.order() == q.order());
  }
}

TEST_CASE("subgroup re-based as a group matches the parent arithmetic") {
  Group g = make_group({{4, 2}});
  Subgroup h = subgroup_generated(g, GroupSubset(g, {g.index_of({1, 0})}));
  SubgroupEmbedding em = subgroup_as_group(g, h);
  REQUIRE(em.sub.order() == 4);
  for (int i = 0; i < em.sub.order(); i++) {
    for (int j = 0; j < em.sub.order(); j++) {
      REQUIRE(em.to_parent[em.sub.add(i, j)] == g.add(em.to_parent[i], em.to_parent[j]));
    }
  }
}

TEST_CASE("table groups validate their axioms") {
  // A non-commutative or non-associative table must be rejected.
  REQUIRE_THROWS_AS(Group::from_table({0, 1, 1, 0, 0, 1, 1, 0, 1}), error);
  REQUIRE_NOTHROW(Group::from_table({0, 1, 1, 0}));
}
