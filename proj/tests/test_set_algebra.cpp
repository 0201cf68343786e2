#include <catch2/catch_amalgamated.hpp>

#include "isokit/set_algebra.hpp"

#include "oracles.hpp"

using namespace isokit;

TEST_CASE("sumset examples") {
  Group z5 = make_group({{5}});
  REQUIRE(sumset(GroupSubset(z5, {0, 1}), GroupSubset(z5, {0, 2})) == GroupSubset(z5, {0, 1, 2, 3}));
  Group z4 = make_group({{4}});
  GroupSubset sub(z4, {0, 2});
  REQUIRE(sumset(sub, sub) == sub);
}

TEST_CASE("sumset matches pairwise enumeration and the Cauchy-Davenport floor") {
  Group z7 = make_group({{7}});
  GroupSubset a(z7, {0, 1, 2}), b(z7, {0, 1, 2, 3});
  auto expected = oracle::sumset_pairs(z7, a.indices(), b.indices());
  GroupSubset got = sumset(a, b);
  REQUIRE(got.indices() == std::vector<int>(expected.begin(), expected.end()));
  REQUIRE(got.size() == 6);
  REQUIRE(got.size() >= std::min(7, a.size() + b.size() - 1));
}

TEST_CASE("sumset properties on random sets") {
  Group g = make_group({{2, 6}});
  for (std::uint64_t seed = 0; seed < 20; seed++) {
    GroupSubset a = oracle::random_subset(g, 17, 3 * seed);
    GroupSubset b = oracle::random_subset(g, 17, 3 * seed + 1);
    GroupSubset c = oracle::random_subset(g, 17, 3 * seed + 2);
    REQUIRE(sumset(a, b) == sumset(b, a));
    REQUIRE(sumset(sumset(a, b), c) == sumset(a, sumset(b, c)));
    REQUIRE(sumset(a, GroupSubset(g, {0})) == a);
    if (!a.empty() && !b.empty()) REQUIRE(sumset(a, b).size() >= std::max(a.size(), b.size()));
    auto expected = oracle::sumset_pairs(g, a.indices(), b.indices());
    REQUIRE(sumset(a, b).indices() == std::vector<int>(expected.begin(), expected.end()));
  }
}

TEST_CASE("sumset group mismatch") {
  Group z4 = make_group({{4}});
  Group k4 = make_group({{2, 2}});
  REQUIRE_THROWS_MATCHES(sumset(GroupSubset(z4, {0}), GroupSubset(k4, {0})), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::group_mismatch; }));
}

TEST_CASE("representation counts") {
  Group z5 = make_group({{5}});
  GroupSubset a(z5, {0, 1, 2, 3});
  REQUIRE(rep_count(a, a, 0) == 3);
  REQUIRE(rep_count(GroupSubset(z5), a, 2) == 0);
  Group z6 = make_group({{6}});
  GroupSubset whole = GroupSubset::whole(z6);
  for (int x = 0; x < 6; x++) REQUIRE(rep_count(whole, whole, x) == 6);
}

TEST_CASE("representation count total is |A| |B|") {
  Group g = make_group({{3, 3}});
  for (std::uint64_t seed = 0; seed < 10; seed++) {
    GroupSubset a = oracle::random_subset(g, 19, 2 * seed);
    GroupSubset b = oracle::random_subset(g, 19, 2 * seed + 1);
    int total = 0;
    for (int x = 0; x < g.order(); x++) {
      REQUIRE(rep_count(a, b, x) == oracle::rep_count_pairs(g, a.indices(), b.indices(), x));
      total += rep_count(a, b, x);
    }
    REQUIRE(total == a.size() * b.size());
  }
}

TEST_CASE("pigeonhole bound on representation counts") {
  Group z5 = make_group({{5}});
  GroupSubset a(z5, {0, 1, 2, 3});
  REQUIRE_FALSE(check_pigeonhole(a, a, 3).has_value());
  Group z6 = make_group({{6}});
  REQUIRE_FALSE(check_pigeonhole(GroupSubset::whole(z6), GroupSubset::whole(z6), 6).has_value());
  REQUIRE_THROWS_MATCHES(check_pigeonhole(GroupSubset(z5, {0}), GroupSubset(z5, {1}), 1), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::precondition_unmet; }));
}

TEST_CASE("pigeonhole on random pairs with |A|+|B| = |G|+2") {
  Group z8 = make_group({{8}});
  int found = 0;
  for (std::uint64_t seed = 0; found < 10 && seed < 400; seed++) {
    GroupSubset a = oracle::random_subset(z8, 23, 2 * seed, 60);
    GroupSubset b = oracle::random_subset(z8, 23, 2 * seed + 1, 60);
    if (a.size() + b.size() != 10) continue;
    found++;
    REQUIRE_FALSE(check_pigeonhole(a, b, 2).has_value());
    for (int x = 0; x < 8; x++) REQUIRE(oracle::rep_count_pairs(z8, a.indices(), b.indices(), x) >= 2);
  }
  REQUIRE(found == 10);
}

TEST_CASE("period examples") {
  Group z6 = make_group({{6}});
  REQUIRE(period(GroupSubset(z6, {0, 2, 4})).carrier == GroupSubset(z6, {0, 2, 4}));
  Group z5 = make_group({{5}});
  REQUIRE(period(GroupSubset(z5, {0, 1})).carrier == GroupSubset(z5, {0}));
  Group z4 = make_group({{4}});
  REQUIRE(period(GroupSubset::whole(z4)).order() == 4);
  REQUIRE_THROWS_MATCHES(period(GroupSubset(z5)), error, Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::empty_set;
                         }));
}

TEST_CASE("period is the maximal stabilizing subgroup") {
  Group g = make_group({{12}});
  for (std::uint64_t seed = 0; seed < 30; seed++) {
    GroupSubset a = oracle::random_subset(g, 29, seed);
    if (a.empty()) continue;
    Subgroup h = period(a);
    REQUIRE(sumset(a, h.carrier) == a);
    // Any strictly larger subgroup fails to stabilize: it contains a minimal
    // extension generated by the period plus one outside element.
    for (int e = 0; e < g.order(); e++) {
      if (h.carrier.contains(e)) continue;
      GroupSubset gens = h.carrier;
      gens.insert(e);
      Subgroup k = subgroup_generated(g, gens);
      REQUIRE(sumset(a, k.carrier) != a);
    }
    REQUIRE(h.carrier.is_subset_of(period(sumset(a, h.carrier)).carrier));
  }
}

TEST_CASE("coset decomposition examples") {
  Group z4 = make_group({{4}});
  Subgroup h = subgroup_generated(z4, GroupSubset(z4, {2}));
  HDecomposition d = h_decompose(GroupSubset(z4, {0, 1, 2}), h);
  REQUIRE(d.parts.size() == 2);
  REQUIRE(d.parts[0].coset_rep == 0);
  REQUIRE(d.parts[0].trace == GroupSubset(z4, {0, 2}));
  REQUIRE(d.parts[1].coset_rep == 1);
  REQUIRE(d.parts[1].trace == GroupSubset(z4, {1}));

  Group z6 = make_group({{6}});
  Subgroup h3 = subgroup_generated(z6, GroupSubset(z6, {3}));
  HDecomposition d6 = h_decompose(GroupSubset(z6, {1, 3, 4}), h3);
  REQUIRE(d6.parts.size() == 2);
  REQUIRE(d6.parts[0].trace == GroupSubset(z6, {3}));
  REQUIRE(d6.parts[1].trace == GroupSubset(z6, {1, 4}));

  Subgroup trivial = subgroup_generated(z6, GroupSubset(z6));
  HDecomposition singles = h_decompose(GroupSubset(z6, {1, 3, 4}), trivial);
  REQUIRE(singles.parts.size() == 3);
  for (const auto& p : singles.parts) REQUIRE(p.trace.size() == 1);
}

TEST_CASE("coset decomposition reassembles the set") {
  Group g = make_group({{2, 2, 3}});
  for (std::uint64_t seed = 0; seed < 20; seed++) {
    GroupSubset a = oracle::random_subset(g, 31, 2 * seed);
    if (a.empty()) continue;
    Subgroup h = subgroup_generated(g, oracle::random_subset(g, 31, 2 * seed + 1, 20));
    HDecomposition d = h_decompose(a, h);
    REQUIRE(d.reassemble() == a);
    for (const auto& p : d.parts) {
      REQUIRE(!p.trace.empty());
      REQUIRE(p.trace.is_subset_of(h.carrier.translate(p.coset_rep)));
      REQUIRE((h.carrier.translate(p.coset_rep) & a) == p.trace);
    }
  }
}
