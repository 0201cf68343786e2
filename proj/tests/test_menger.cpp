#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "isokit/isoperimetry.hpp"
#include "isokit/menger.hpp"

#include "oracles.hpp"

using namespace isokit;

namespace {

// x -> {a, b} -> y with loops.
Digraph diamond() {
  Digraph g(4);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 3);
  g.add_edge(2, 3);
  return g;
}

// x -> u -> v -> y.
Digraph chain() {
  Digraph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  return g;
}

}  // namespace

TEST_CASE("digraph text round trip and implied loops") {
  std::istringstream in("3\n0 1\n1 2\n2 0\n");
  DigraphReadResult r = read_digraph(in);
  REQUIRE_FALSE(r.loops_added);
  REQUIRE(r.graph.has_edge(0, 0));
  REQUIRE(r.graph.has_edge(2, 0));
  std::ostringstream out;
  write_digraph(out, r.graph);
  std::istringstream in2(out.str());
  REQUIRE(read_digraph(in2).graph == r.graph);

  std::istringstream missing("2\n1\n\n");
  DigraphReadResult r2 = read_digraph(missing);
  REQUIRE(r2.loops_added);
  REQUIRE(r2.graph.has_edge(0, 0));
  REQUIRE(r2.graph.has_edge(1, 1));
}

TEST_CASE("nonseparability on the diamond") {
  Digraph g = diamond();
  REQUIRE(is_k_nonseparable(g, 0, 3, 2).ok);
  auto r = is_k_nonseparable(g, 0, 3, 3);
  REQUIRE_FALSE(r.ok);
  REQUIRE(r.witness->count() == 1);
  REQUIRE(r.witness->test(0));
  REQUIRE_THROWS_MATCHES(is_k_nonseparable(g, 1, 1, 1), error, Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::same_vertex;
                         }));
}

TEST_CASE("flow verdicts match the subset-scan oracle on random digraphs") {
  int adjacent_skipped = 0;
  for (std::uint64_t seed = 0; seed < 120; seed++) {
    int n = 4 + static_cast<int>(oracle::rnd(61, seed) % 7);  // up to 10
    Digraph g = oracle::random_digraph(n, 1000 + seed);
    int x = static_cast<int>(oracle::rnd(62, seed) % n);
    int y = static_cast<int>(oracle::rnd(63, seed) % n);
    if (x == y) continue;
    if (g.has_edge(x, y)) {
      adjacent_skipped++;
      REQUIRE(is_k_nonseparable(g, x, y, n).ok);  // vacuous: no separating set
      continue;
    }
    int oracle_cut = oracle::min_cut_subsets(g, x, y);
    auto cut = min_vertex_cut(g, x, y);
    REQUIRE(cut.has_value());
    REQUIRE(cut->value == oracle_cut);
    for (int k = 0; k <= n; k++) {
      auto r = is_k_nonseparable(g, x, y, k);
      REQUIRE(r.ok == (oracle_cut >= k));
      if (!r.ok) {
        Bitset a = *r.witness;
        REQUIRE(a.test(x));
        REQUIRE_FALSE(g.gamma(a).test(y));
        REQUIRE(g.boundary(a).count() < k);
      }
    }
  }
  REQUIRE(adjacent_skipped > 0);
}

TEST_CASE("fans on the diamond") {
  Digraph g = diamond();
  Fan f = menger_fan(g, 0, 3, 2, FanEngine::Contraction);
  REQUIRE(f.size() == 2);
  REQUIRE(fan_valid(g, f));
  Fan f2 = menger_fan(g, 0, 3, 2, FanEngine::Flow);
  REQUIRE(f2.size() == 2);
  REQUIRE(fan_valid(g, f2));
  REQUIRE_THROWS_MATCHES(menger_fan(g, 0, 3, 3), error, Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::not_nonseparable;
                         }));
  REQUIRE_THROWS_MATCHES(menger_fan(g, 0, 1, 1), error, Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::edge_present;
                         }));
}

TEST_CASE("common neighbor path is adjoined") {
  // z = 1 is a common neighbor; 0 -> 3 -> 4 -> 2 is the disjoint longer route.
  Digraph g(5);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 3);
  g.add_edge(3, 4);
  g.add_edge(4, 2);
  Fan f = menger_fan(g, 0, 2, 2, FanEngine::Contraction);
  REQUIRE(fan_valid(g, f));
  bool has_short = false;
  for (const Path& p : f.paths) {
    if (p == Path{0, 1, 2}) has_short = true;
  }
  REQUIRE(has_short);
}

TEST_CASE("fan engines match the oracle cut on random digraphs") {
  int tested = 0;
  for (std::uint64_t seed = 0; tested < 60 && seed < 400; seed++) {
    int n = 5 + static_cast<int>(oracle::rnd(67, seed) % 6);  // up to 10
    Digraph g = oracle::random_digraph(n, 2000 + seed, 1, 3);
    int x = 0, y = n - 1;
    if (g.has_edge(x, y)) continue;
    int k = oracle::min_cut_subsets(g, x, y);
    if (k == 0 || k >= n) continue;
    tested++;
    Fan fc = menger_fan(g, x, y, k, FanEngine::Contraction);
    Fan ff = menger_fan(g, x, y, k, FanEngine::Flow);
    REQUIRE(fc.size() == k);
    REQUIRE(ff.size() == k);
    REQUIRE(fan_valid(g, fc));
    REQUIRE(fan_valid(g, ff));
    REQUIRE_FALSE(is_k_nonseparable(g, x, y, k + 1).ok);  // maximality
  }
  REQUIRE(tested == 60);
}

TEST_CASE("k-part extraction through an arc") {
  Digraph g = diamond();
  KPart p = find_k_part_through_arc(g, 0, 3, 2, 0, 1);
  REQUIRE(p.members.test(0));
  REQUIRE(g.boundary(p.members).test(1));
  REQUIRE(g.boundary(p.members).test(3) == false);
  REQUIRE(g.boundary(p.members).count() == 2);
  REQUIRE(kpart_valid(g, p));

  // An arc into the sink is critical but yields no k-part: the deletion
  // witness has y on its boundary, which the k-part definition forbids.
  REQUIRE_THROWS_MATCHES(find_k_part_through_arc(g, 0, 3, 2, 1, 3), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::precondition_unmet; }));

  Digraph c = chain();
  KPart pc = find_k_part_through_arc(c, 0, 3, 1, 1, 2);
  REQUIRE(pc.members == Bitset::of(4, {0, 1}));
  REQUIRE(c.boundary(pc.members) == Bitset::of(4, {2}));

  // In the diamond at k = 1 no single arc is critical.
  REQUIRE_THROWS_MATCHES(find_k_part_through_arc(g, 0, 3, 1, 0, 1), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::not_critical; }));
}

TEST_CASE("k-parts on random critical arcs keep their invariants") {
  int found = 0;
  for (std::uint64_t seed = 0; found < 40 && seed < 400; seed++) {
    int n = 5 + static_cast<int>(oracle::rnd(71, seed) % 5);
    Digraph g = oracle::random_digraph(n, 3000 + seed);
    int x = 0, y = n - 1;
    if (g.has_edge(x, y)) continue;
    int k = oracle::min_cut_subsets(g, x, y);
    if (k == 0 || k >= n) continue;
    for (int u = 0; u < n && found < 40; u++) {
      for (int v = 0; v < n && found < 40; v++) {
        if (u == v || v == y || !g.has_edge(u, v)) continue;
        Digraph trial = g;
        trial.remove_edge(u, v);
        if (oracle::min_cut_subsets(trial, x, y) >= k) continue;
        KPart p = find_k_part_through_arc(g, x, y, k, u, v);
        REQUIRE(kpart_valid(g, p));
        REQUIRE(p.members.test(u));
        REQUIRE(g.boundary(p.members).test(v));
        found++;
      }
    }
  }
  REQUIRE(found == 40);
}

TEST_CASE("part duality on fixed and enumerated parts") {
  Digraph g = diamond();
  KPart a{Bitset::of(4, {0}), 0, 3, 2};
  REQUIRE_FALSE(check_part_duality(g, a).has_value());
  Digraph c = chain();
  KPart pc{Bitset::of(4, {0, 1}), 0, 3, 1};
  REQUIRE_FALSE(check_part_duality(c, pc).has_value());
  KPart bogus{Bitset::of(4, {0, 1}), 0, 3, 2};
  REQUIRE_THROWS_MATCHES(check_part_duality(c, bogus), error, Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::not_a_part;
                         }));

  // Every k-part at the separation order of random graphs passes.
  int parts = 0;
  for (std::uint64_t seed = 0; seed < 120; seed++) {
    int n = 4 + static_cast<int>(oracle::rnd(73, seed) % 5);  // up to 8
    Digraph r = oracle::random_digraph(n, 4000 + seed);
    int x = 0, y = n - 1;
    if (r.has_edge(x, y)) continue;
    int mc = oracle::min_cut_subsets(r, x, y);
    if (mc >= n) continue;
    for (std::uint32_t mask = 1; mask < (1u << n); mask++) {
      if (!(mask & 1)) continue;
      Bitset members(n);
      for (int v = 0; v < n; v++)
        if (mask >> v & 1) members.set(v);
      if (r.gamma(members).test(y)) continue;
      if (r.boundary(members).count() != mc) continue;
      KPart p{members, x, y, mc};
      REQUIRE_FALSE(check_part_duality(r, p).has_value());
      parts++;
    }
  }
  REQUIRE(parts > 100);
}

TEST_CASE("strong matching on Cayley digraphs") {
  Group z5 = make_group({{5}});
  Digraph c5 = cayley_digraph(z5, GroupSubset(z5, {0, 1}));
  auto pairs = strong_matching(c5, Bitset::of(5, {0, 2}), 1);
  REQUIRE(pairs.size() == 1);
  REQUIRE(Bitset::of(5, {0, 2}).test(pairs[0].first));
  REQUIRE_FALSE(Bitset::of(5, {0, 2}).test(pairs[0].second));
  REQUIRE(c5.has_edge(pairs[0].first, pairs[0].second));

  Group z7 = make_group({{7}});
  Digraph c7 = cayley_digraph(z7, GroupSubset(z7, {0, 1, 3}));
  auto pairs7 = strong_matching(c7, Bitset::of(7, {0, 1}), 2);
  REQUIRE(pairs7.size() == 2);
  REQUIRE(pairs7[0].first != pairs7[1].first);
  REQUIRE(pairs7[0].second != pairs7[1].second);

  REQUIRE_THROWS_MATCHES(strong_matching(c7, Bitset::of(7, {0}), 2), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::precondition_unmet; }));
}

TEST_CASE("strong matching at full connectivity on random Cayley digraphs") {
  for (std::uint64_t seed = 0; seed < 40; seed++) {
    int n = 5 + static_cast<int>(oracle::rnd(79, seed) % 6);
    Group g = make_group(GroupSpec{{n}});
    GroupSubset s = oracle::random_subset(g, 83, seed, 40);
    s.insert(0);
    if (!generates(g, s)) continue;
    Digraph cay = cayley_digraph(g, s);
    int kappa = digraph_kappa1(cay);
    REQUIRE(kappa == kappa1(g, s, Kappa1Engine::Exhaustive));
    GroupSubset xs = oracle::random_subset(g, 89, seed);
    int k = std::min({kappa, xs.size(), n - xs.size()});
    if (k < 1) continue;
    Bitset x(n);
    xs.for_each([&](int e) { x.set(e); });
    auto pairs = strong_matching(cay, x, k);
    REQUIRE(static_cast<int>(pairs.size()) == k);
    Bitset seen_x(n), seen_y(n);
    for (auto [from, to] : pairs) {
      REQUIRE(x.test(from));
      REQUIRE_FALSE(x.test(to));
      REQUIRE(cay.has_edge(from, to));
      REQUIRE_FALSE(seen_x.test(from));
      REQUIRE_FALSE(seen_y.test(to));
      seen_x.set(from);
      seen_y.set(to);
    }
  }
}

TEST_CASE("strong matching agrees with the auxiliary two-terminal construction") {
  // The existence argument routes k paths from a virtual source glued to X
  // to a virtual sink glued to ∂(X); the fan's exit arcs are the matching.
  Group z7 = make_group({{7}});
  GroupSubset s(z7, {0, 1, 3});
  Digraph cay = cayley_digraph(z7, s);
  Bitset x = Bitset::of(7, {0, 1});
  const int k = 2;
  const int n = cay.size();
  Digraph aux(n + 2);
  int a = n, b = n + 1;
  x.for_each([&](int v) { aux.add_edge(a, v); });
  Bitset inside = cay.gamma(x);
  inside.for_each([&](int u) {
    cay.out(u).for_each([&](int v) {
      if (inside.test(v)) aux.add_edge(u, v);
    });
  });
  cay.boundary(x).for_each([&](int p) { aux.add_edge(p, b); });
  Fan fan = menger_fan(aux, a, b, k, FanEngine::Contraction);
  REQUIRE(fan.size() == k);
  REQUIRE(fan_valid(aux, fan));
}
