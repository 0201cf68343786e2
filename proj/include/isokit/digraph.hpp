#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "isokit/bitset.hpp"
#include "isokit/errors.hpp"

namespace isokit {

// Finite reflexive digraph. Row x of the adjacency holds the closed
// out-neighborhood Gamma(x), always including x itself.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n) : n_(n), rows_(n, Bitset(n)) {
    for (int i = 0; i < n; i++) rows_[i].set(i);
  }

  int size() const { return n_; }

  void add_edge(int u, int v) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) fail(errc::index_out_of_range, "edge endpoint");
    rows_[u].set(v);
  }

  void remove_edge(int u, int v) {
    if (u == v) fail(errc::precondition_unmet, "loops are fixed by reflexivity");
    rows_[u].reset(v);
  }

  bool has_edge(int u, int v) const { return rows_[u].test(v); }

  const Bitset& out(int u) const { return rows_[u]; }

  int edge_count() const {
    int m = 0;
    for (const auto& r : rows_) m += r.count();
    return m;
  }

  Bitset in(int v) const {
    Bitset b(n_);
    for (int u = 0; u < n_; u++)
      if (rows_[u].test(v)) b.set(u);
    return b;
  }

  // Gamma(X): union of closed out-neighborhoods.
  Bitset gamma(const Bitset& x) const {
    Bitset r(n_);
    x.for_each([&](int v) { r |= rows_[v]; });
    return r;
  }

  Bitset boundary(const Bitset& x) const { return gamma(x) - x; }

  Digraph reversed() const {
    Digraph r(n_);
    for (int u = 0; u < n_; u++) rows_[u].for_each([&](int v) { r.rows_[v].set(u); });
    return r;
  }

  bool operator==(const Digraph& o) const { return n_ == o.n_ && rows_ == o.rows_; }

 private:
  int n_ = 0;
  std::vector<Bitset> rows_;
};

// Induced subgraph on the vertices of keep; new index = rank within keep.
struct DigraphRestriction {
  Digraph graph;
  std::vector<int> to_parent;
  std::vector<int> from_parent;  // -1 for dropped vertices
};

inline DigraphRestriction restrict_digraph(const Digraph& g, const Bitset& keep) {
  DigraphRestriction r;
  r.to_parent = keep.to_indices();
  r.from_parent.assign(g.size(), -1);
  for (std::size_t i = 0; i < r.to_parent.size(); i++) r.from_parent[r.to_parent[i]] = static_cast<int>(i);
  r.graph = Digraph(static_cast<int>(r.to_parent.size()));
  for (std::size_t i = 0; i < r.to_parent.size(); i++) {
    g.out(r.to_parent[i]).for_each([&](int v) {
      if (r.from_parent[v] >= 0) r.graph.add_edge(static_cast<int>(i), r.from_parent[v]);
    });
  }
  return r;
}

// Contract the vertex set w to a single new vertex (last index). Edges
// u -> w_new iff u had an edge into w, w_new -> u iff some vertex of w had
// an edge to u; loops keep the result reflexive.
struct DigraphContraction {
  Digraph graph;
  std::vector<int> to_parent;  // contracted vertex maps to -1
  std::vector<int> from_parent;
  int merged;  // index of the contracted vertex in the new graph
};

inline DigraphContraction contract_digraph(const Digraph& g, const Bitset& w) {
  DigraphContraction c;
  Bitset keep = w.complement();
  c.to_parent = keep.to_indices();
  c.from_parent.assign(g.size(), -1);
  for (std::size_t i = 0; i < c.to_parent.size(); i++) c.from_parent[c.to_parent[i]] = static_cast<int>(i);
  c.merged = static_cast<int>(c.to_parent.size());
  c.to_parent.push_back(-1);
  c.graph = Digraph(c.merged + 1);
  for (std::size_t i = 0; i + 1 < c.to_parent.size(); i++) {
    int u = c.to_parent[i];
    g.out(u).for_each([&](int v) {
      if (c.from_parent[v] >= 0)
        c.graph.add_edge(static_cast<int>(i), c.from_parent[v]);
      else
        c.graph.add_edge(static_cast<int>(i), c.merged);
    });
  }
  w.for_each([&](int u) {
    g.out(u).for_each([&](int v) {
      if (c.from_parent[v] >= 0) c.graph.add_edge(c.merged, c.from_parent[v]);
    });
  });
  return c;
}

// Text format: first line n, then one line per vertex listing out-neighbors.
// Loops are implied; missing ones are added and reported through the flag.
struct DigraphReadResult {
  Digraph graph;
  bool loops_added = false;
};

inline DigraphReadResult read_digraph(std::istream& is) {
  int n;
  if (!(is >> n) || n <= 0) fail(errc::parse_error, "expected a positive vertex count");
  DigraphReadResult r;
  r.graph = Digraph(n);
  std::string line;
  std::getline(is, line);  // consume rest of the count line
  for (int u = 0; u < n; u++) {
    if (!std::getline(is, line)) fail(errc::parse_error, "missing adjacency line for vertex " + std::to_string(u));
    std::istringstream ls(line);
    bool loop_listed = false;
    int v;
    while (ls >> v) {
      if (v < 0 || v >= n) fail(errc::index_out_of_range, "vertex " + std::to_string(v));
      if (v == u) loop_listed = true;
      r.graph.add_edge(u, v);
    }
    if (!loop_listed) r.loops_added = true;
  }
  return r;
}

inline void write_digraph(std::ostream& os, const Digraph& g) {
  os << g.size() << "\n";
  for (int u = 0; u < g.size(); u++) {
    bool first = true;
    g.out(u).for_each([&](int v) {
      if (!first) os << ' ';
      os << v;
      first = false;
    });
    os << "\n";
  }
}

// A path [x1, ..., xk] of pairwise distinct vertices along edges.
using Path = std::vector<int>;

inline bool path_valid(const Digraph& g, const Path& p) {
  if (p.empty()) return false;
  Bitset seen(g.size());
  for (std::size_t i = 0; i < p.size(); i++) {
    if (seen.test(p[i])) return false;
    seen.set(p[i]);
    if (i + 1 < p.size() && !g.has_edge(p[i], p[i + 1])) return false;
  }
  return true;
}

// A family of openly disjoint paths from x: paths may share only x and, when
// they lead to the same target, that target.
struct Fan {
  int x = -1;
  std::vector<int> targets;
  std::vector<Path> paths;

  int size() const { return static_cast<int>(paths.size()); }
};

inline bool fan_valid(const Digraph& g, const Fan& f) {
  if (f.paths.size() != f.targets.size()) return false;
  for (std::size_t i = 0; i < f.paths.size(); i++) {
    const Path& p = f.paths[i];
    if (!path_valid(g, p)) return false;
    if (p.front() != f.x || p.back() != f.targets[i]) return false;
  }
  for (std::size_t i = 0; i < f.paths.size(); i++) {
    for (std::size_t j = i + 1; j < f.paths.size(); j++) {
      Bitset a(g.size()), b(g.size());
      for (int v : f.paths[i]) a.set(v);
      for (int v : f.paths[j]) b.set(v);
      Bitset common = a & b;
      common.reset(f.x);
      if (f.targets[i] == f.targets[j]) common.reset(f.targets[i]);
      if (common.any()) return false;
    }
  }
  return true;
}

// A k-part with respect to (x, y): x in A, y outside Gamma(A), |∂(A)| = k.
struct KPart {
  Bitset members;
  int x = -1;
  int y = -1;
  int k = 0;
};

inline bool kpart_valid(const Digraph& g, const KPart& p) {
  if (!p.members.test(p.x)) return false;
  Bitset reach = g.gamma(p.members);
  if (reach.test(p.y)) return false;
  return g.boundary(p.members).count() == p.k;
}

}  // namespace isokit
