#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isokit/digraph.hpp"
#include "isokit/errors.hpp"
#include "isokit/maxflow.hpp"

namespace isokit {

enum class FanEngine { Contraction, Flow };

// min |∂(A)| over A with x in A, y not in Gamma(A); nullopt when (x,y) is an
// edge and no separating set exists.
inline std::optional<int> separation_order(const Digraph& g, int x, int y) {
  auto cut = min_vertex_cut(g, x, y);
  if (!cut) return std::nullopt;
  return cut->value;
}

struct NonseparabilityResult {
  bool ok = false;
  std::optional<Bitset> witness;  // violating A when not k-nonseparable
};

// True iff every A with x in A and y outside Gamma(A) has |∂(A)| >= k,
// i.e. y is (k-1)-nonseparable from x.
inline NonseparabilityResult is_k_nonseparable(const Digraph& g, int x, int y, int k) {
  if (x == y) fail(errc::same_vertex, "nonseparability needs distinct vertices");
  auto cut = min_vertex_cut(g, x, y);
  if (!cut || cut->value >= k) return {true, std::nullopt};
  return {false, cut->source_side};
}

// 1-connectivity of a reflexive digraph: min |∂(X)| over nonempty X with
// Gamma(X) != V, and |V| - 1 when every Gamma(x) is already all of V.
inline int digraph_kappa1(const Digraph& g) {
  int best = g.size() - 1;
  bool found = false;
  for (int x = 0; x < g.size(); x++) {
    if (g.out(x).count() == g.size()) continue;
    for (int y = 0; y < g.size(); y++) {
      if (g.has_edge(x, y)) continue;
      auto cut = min_vertex_cut(g, x, y);
      found = true;
      best = std::min(best, cut->value);
    }
  }
  return found ? best : g.size() - 1;
}

// k-part containing u with v on its boundary, extracted from the graph with
// the arc (u,v) deleted. Requires that the deletion destroys
// (k-1)-nonseparability of y from x. Arcs into y are excluded: a k-part can
// never place the sink on its boundary.
inline KPart find_k_part_through_arc(const Digraph& g, int x, int y, int k, int u, int v) {
  if (u == v) fail(errc::precondition_unmet, "arc must join distinct vertices");
  if (v == y) fail(errc::precondition_unmet, "the sink cannot land on a part boundary");
  if (!g.has_edge(u, v)) fail(errc::precondition_unmet, "no such arc");
  if (!is_k_nonseparable(g, x, y, k).ok) {
    fail(errc::not_critical, "graph is not (k-1)-nonseparable to begin with");
  }
  Digraph reduced = g;
  reduced.remove_edge(u, v);
  auto res = is_k_nonseparable(reduced, x, y, k);
  if (res.ok) fail(errc::not_critical, "deleting the arc keeps the connectivity");
  KPart part;
  part.members = *res.witness;
  part.x = x;
  part.y = y;
  part.k = k;
  if (!part.members.test(u) || !g.boundary(part.members).test(v) || !kpart_valid(g, part)) {
    fail(errc::internal, "extracted set is not the expected k-part");
  }
  return part;
}

struct PartDualityWitness {
  std::string what;
};

// Checks the boundary-duality of a k-part: A-wedge = V \ Gamma(A) is a k-part
// for (y, x) in the reversed graph and its in-boundary equals ∂(A). The part
// must sit at the separation order of (x, y): duality needs y to be
// (k-1)-nonseparable from x.
inline std::optional<PartDualityWitness> check_part_duality(const Digraph& g, const KPart& a) {
  if (!kpart_valid(g, a)) fail(errc::not_a_part, "input fails the k-part invariants");
  if (!is_k_nonseparable(g, a.x, a.y, a.k).ok) {
    fail(errc::not_a_part, "the part exceeds the separation order of (x, y)");
  }
  Bitset wedge = g.gamma(a.members).complement();
  Digraph rev = g.reversed();
  KPart dual{wedge, a.y, a.x, a.k};
  if (!wedge.test(a.y)) return PartDualityWitness{"y escaped the dual part"};
  if (!kpart_valid(rev, dual)) return PartDualityWitness{"dual set is not a k-part in the reversed graph"};
  if (rev.boundary(wedge) != g.boundary(a.members)) {
    return PartDualityWitness{"in-boundary of the dual differs from ∂(A)"};
  }
  return std::nullopt;
}

namespace detail {

inline Path bfs_shortest_path(const Digraph& g, int x, int y) {
  std::vector<int> prev(g.size(), -2);
  prev[x] = -1;
  std::vector<int> queue{x};
  for (std::size_t qi = 0; qi < queue.size(); qi++) {
    int v = queue[qi];
    if (v == y) break;
    g.out(v).for_each([&](int w) {
      if (prev[w] == -2) {
        prev[w] = v;
        queue.push_back(w);
      }
    });
  }
  if (prev[y] == -2) return {};
  Path p;
  for (int v = y; v != -1; v = prev[v]) p.push_back(v);
  std::reverse(p.begin(), p.end());
  return p;
}

// Deletes every u!=v arc whose deletion keeps y (k-1)-nonseparable from x.
// One pass in (source, target) order suffices: an arc that is not deletable
// stays not deletable as the graph loses arcs.
inline Digraph criticalize(Digraph g, int x, int y, int k) {
  for (int u = 0; u < g.size(); u++) {
    for (int v = 0; v < g.size(); v++) {
      if (u == v || !g.has_edge(u, v)) continue;
      Digraph trial = g;
      trial.remove_edge(u, v);
      if (is_k_nonseparable(trial, x, y, k).ok) g = std::move(trial);
    }
  }
  return g;
}

inline std::vector<Path> map_paths(const std::vector<Path>& paths, const std::vector<int>& to_parent) {
  std::vector<Path> out;
  out.reserve(paths.size());
  for (const Path& p : paths) {
    Path q;
    q.reserve(p.size());
    for (int v : p) q.push_back(to_parent[v]);
    out.push_back(std::move(q));
  }
  return out;
}

// The appendix recursion. Preconditions at every call: (x,y) not an edge and
// y (k-1)-nonseparable from x.
inline std::vector<Path> fan_by_contraction(const Digraph& g, int x, int y, int k) {
  if (k == 0) return {};
  if (k == 1) {
    // A 1-fan is a single path; no machinery needed (and the fat-part lemma
    // below genuinely has no witness on a 4-chain).
    Path p = bfs_shortest_path(g, x, y);
    if (p.empty()) fail(errc::internal, "no path despite 0-nonseparability");
    return {p};
  }
  Bitset common = g.out(x) & g.in(y);
  common.reset(x);
  common.reset(y);
  int z = common.find_first();
  if (z >= 0) {
    Bitset keep = Bitset::full(g.size());
    keep.reset(z);
    auto r = restrict_digraph(g, keep);
    int rx = r.from_parent[x], ry = r.from_parent[y];
    if (k >= 2 && !is_k_nonseparable(r.graph, rx, ry, k - 1).ok) {
      fail(errc::internal, "recursion invariant lost after removing a common neighbor");
    }
    auto sub = map_paths(fan_by_contraction(r.graph, rx, ry, k - 1), r.to_parent);
    sub.push_back({x, z, y});
    return sub;
  }

  Digraph crit = criticalize(g, x, y, k);
  Path sp = bfs_shortest_path(crit, x, y);
  if (sp.size() < 4) fail(errc::internal, "shortest path too short without a common neighbor");

  auto part_big_enough = [&](const KPart& f) {
    Bitset wedge = crit.gamma(f.members).complement();
    return f.members.count() >= 2 && wedge.count() >= 2;
  };
  std::optional<KPart> part;
  KPart first = find_k_part_through_arc(crit, x, y, k, sp[1], sp[2]);
  if (part_big_enough(first)) {
    part = first;
  } else {
    // Outside the fat-part lemma's guarantee. Scan the remaining arcs, then
    // every subset, before giving up.
    for (int u = 0; u < crit.size() && !part; u++) {
      for (int v = 0; v < crit.size() && !part; v++) {
        if (u == v || v == y || !crit.has_edge(u, v)) continue;
        try {
          KPart cand = find_k_part_through_arc(crit, x, y, k, u, v);
          if (part_big_enough(cand)) part = cand;
        } catch (const error&) {
          // arc not critical in this direction; keep scanning
        }
      }
    }
    if (!part && crit.size() <= 20) {
      const std::uint32_t lim = 1u << crit.size();
      for (std::uint32_t mask = 1; mask < lim && !part; mask++) {
        if (!(mask >> x & 1) || (mask >> y & 1)) continue;
        Bitset members(crit.size());
        for (int v = 0; v < crit.size(); v++)
          if (mask >> v & 1) members.set(v);
        if (crit.gamma(members).test(y)) continue;
        if (crit.boundary(members).count() != k) continue;
        KPart cand{members, x, y, k};
        if (part_big_enough(cand)) part = cand;
      }
    }
    if (!part) fail(errc::internal, "no k-part with both sides of size >= 2 exists");
  }

  Bitset f = part->members;
  Bitset wedge = crit.gamma(f).complement();
  Bitset bd = crit.boundary(f);

  // Fan from x onto ∂(F): contract F-wedge and recurse.
  auto c1 = contract_digraph(crit, wedge);
  int c1x = c1.from_parent[x];
  if (c1.graph.has_edge(c1x, c1.merged) || !is_k_nonseparable(c1.graph, c1x, c1.merged, k).ok) {
    fail(errc::internal, "contraction of the dual side broke the recursion preconditions");
  }
  auto head_paths = map_paths(fan_by_contraction(c1.graph, c1x, c1.merged, k), c1.to_parent);

  // Fan from ∂(F) to y: contract F and recurse.
  auto c2 = contract_digraph(crit, f);
  int c2y = c2.from_parent[y];
  if (c2.graph.has_edge(c2.merged, c2y) || !is_k_nonseparable(c2.graph, c2.merged, c2y, k).ok) {
    fail(errc::internal, "contraction of the part broke the recursion preconditions");
  }
  auto tail_paths = map_paths(fan_by_contraction(c2.graph, c2.merged, c2y, k), c2.to_parent);

  // Each head path ends [ ..., d, -1 ] with d in ∂(F) and contains no other
  // boundary vertex; symmetrically for tail paths. Splice on d.
  std::vector<Path> tails_by_d(crit.size());
  for (Path& t : tail_paths) {
    if (t.size() < 2 || t.front() != -1) fail(errc::internal, "tail path does not start at the contracted part");
    t.erase(t.begin());
    int d = t.front();
    if (!bd.test(d)) fail(errc::internal, "tail path does not start on ∂(F)");
    for (std::size_t i = 1; i < t.size(); i++) {
      if (bd.test(t[i])) fail(errc::internal, "tail path re-enters ∂(F)");
    }
    tails_by_d[d] = std::move(t);
  }
  std::vector<Path> out;
  for (Path& h : head_paths) {
    if (h.size() < 2 || h.back() != -1) fail(errc::internal, "head path does not end at the contracted dual");
    h.pop_back();
    int d = h.back();
    if (!bd.test(d)) fail(errc::internal, "head path does not end on ∂(F)");
    for (std::size_t i = 0; i + 1 < h.size(); i++) {
      if (bd.test(h[i])) fail(errc::internal, "head path passes through ∂(F)");
    }
    const Path& t = tails_by_d[d];
    if (t.empty()) fail(errc::internal, "no tail path matches boundary vertex " + std::to_string(d));
    h.insert(h.end(), t.begin() + 1, t.end());
    out.push_back(std::move(h));
  }
  return out;
}

inline std::vector<Path> fan_by_flow(const Digraph& g, int x, int y, int k) {
  SplitGraphSolver solver(g, x, y);
  int flow = solver.max_flow(k);
  if (flow < k) fail(errc::not_nonseparable, "max flow below the requested fan size");
  FlowNetwork& net = solver.network();
  std::vector<Path> paths;
  net.for_out_edges(SplitGraphSolver::out(x), [&](int e) {
    if (net.flow_on(e) <= 0) return;
    net.consume(e);
    Path p{x};
    int cur = net.edge_to(e) / 2;
    while (true) {
      p.push_back(cur);
      if (cur == y) break;
      int nxt = -1;
      net.for_out_edges(SplitGraphSolver::out(cur), [&](int e2) {
        if (nxt < 0 && net.flow_on(e2) > 0) {
          net.consume(e2);
          nxt = net.edge_to(e2) / 2;
        }
      });
      if (nxt < 0) fail(errc::internal, "flow decomposition lost a unit");
      cur = nxt;
    }
    paths.push_back(std::move(p));
  });
  if (static_cast<int>(paths.size()) != k) fail(errc::internal, "flow decomposition produced a wrong path count");
  return paths;
}

}  // namespace detail

// k openly disjoint paths from x to y. The contraction engine follows the
// inductive construction (common-neighbor shortcut, criticalization, k-part
// contraction and fan splicing); the flow engine decomposes a unit max flow.
inline Fan menger_fan(const Digraph& g, int x, int y, int k, FanEngine engine = FanEngine::Contraction) {
  if (x == y) fail(errc::same_vertex, "fan endpoints coincide");
  if (g.has_edge(x, y)) fail(errc::edge_present, "fan endpoints are adjacent");
  if (!is_k_nonseparable(g, x, y, k).ok) {
    fail(errc::not_nonseparable, "y is not (k-1)-nonseparable from x");
  }
  std::vector<Path> paths = engine == FanEngine::Contraction ? detail::fan_by_contraction(g, x, y, k)
                                                             : detail::fan_by_flow(g, x, y, k);
  std::sort(paths.begin(), paths.end());
  Fan fan;
  fan.x = x;
  fan.targets.assign(paths.size(), y);
  fan.paths = std::move(paths);
  if (!fan_valid(g, fan)) fail(errc::internal, "engine produced an invalid fan");
  return fan;
}

// Distinct x_1..x_k in X and distinct y_1..y_k outside X with (x_i, y_i) in E
// and |X ∪ {y_i}| = |X| + k. Exists whenever k <= kappa_1 and both sides have
// at least k vertices; found by bipartite augmenting paths from X to ∂(X).
inline std::vector<std::pair<int, int>> strong_matching(const Digraph& g, const Bitset& x_set, int k,
                                                        bool check_kappa = true) {
  const int n = g.size();
  int xs = x_set.count();
  if (std::min(n - xs, xs) < k) fail(errc::precondition_unmet, "min(|V|-|X|, |X|) < k");
  if (check_kappa && k > digraph_kappa1(g)) fail(errc::precondition_unmet, "k exceeds kappa_1 of the graph");
  std::vector<int> left = x_set.to_indices();
  std::vector<int> match_right(n, -1);  // outside vertex -> left index
  std::vector<int> match_left(left.size(), -1);

  std::vector<char> visited(n);
  auto try_augment = [&](auto&& self, int li) -> bool {
    bool done = false;
    g.out(left[li]).for_each([&](int y) {
      if (done || x_set.test(y) || visited[y]) return;
      visited[y] = 1;
      if (match_right[y] < 0 || self(self, match_right[y])) {
        match_right[y] = li;
        match_left[li] = y;
        done = true;
      }
    });
    return done;
  };

  int size = 0;
  for (std::size_t li = 0; li < left.size() && size < k; li++) {
    std::fill(visited.begin(), visited.end(), 0);
    if (try_augment(try_augment, static_cast<int>(li))) size++;
  }
  if (size < k) fail(errc::no_matching, "matching existence guarantee failed");
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t li = 0; li < left.size() && static_cast<int>(pairs.size()) < k; li++) {
    if (match_left[li] >= 0) pairs.emplace_back(left[li], match_left[li]);
  }
  return pairs;
}

}  // namespace isokit
