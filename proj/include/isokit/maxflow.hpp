#pragma once

#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "isokit/bitset.hpp"
#include "isokit/digraph.hpp"
#include "isokit/errors.hpp"

namespace isokit {

// Dinic on integer capacities. Small and dense instances only.
class FlowNetwork {
 public:
  explicit FlowNetwork(int n) : head_(n, -1), level_(n), it_(n) {}

  int add_edge(int from, int to, int cap) {
    int id = static_cast<int>(to_.size());
    to_.push_back(to);
    cap_.push_back(cap);
    next_head_.push_back(head_[from]);
    head_[from] = id;
    to_.push_back(from);
    cap_.push_back(0);
    next_head_.push_back(head_[to]);
    head_[to] = id + 1;
    return id;
  }

  int max_flow(int s, int t, int limit = std::numeric_limits<int>::max()) {
    int flow = 0;
    while (flow < limit && bfs(s, t)) {
      it_ = head_;
      int f;
      while (flow < limit && (f = dfs(s, t, limit - flow)) > 0) flow += f;
    }
    return flow;
  }

  int flow_on(int id) const { return cap_[id ^ 1]; }
  void consume(int id) {
    cap_[id] += cap_[id ^ 1];
    cap_[id ^ 1] = 0;
  }
  int edge_to(int id) const { return to_[id]; }
  int residual(int id) const { return cap_[id]; }

  // Vertices reachable from s in the residual graph.
  Bitset residual_reachable(int s) const {
    Bitset seen(static_cast<int>(head_.size()));
    std::vector<int> stack{s};
    seen.set(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e = head_[v]; e >= 0; e = next_head_[e]) {
        if (cap_[e] > 0 && !seen.test(to_[e])) {
          seen.set(to_[e]);
          stack.push_back(to_[e]);
        }
      }
    }
    return seen;
  }

  template <typename F>
  void for_out_edges(int v, F&& f) const {
    for (int e = head_[v]; e >= 0; e = next_head_[e]) {
      if ((e & 1) == 0) f(e);
    }
  }

 private:
  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    q.push(s);
    level_[s] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int e = head_[v]; e >= 0; e = next_head_[e]) {
        if (cap_[e] > 0 && level_[to_[e]] < 0) {
          level_[to_[e]] = level_[v] + 1;
          q.push(to_[e]);
        }
      }
    }
    return level_[t] >= 0;
  }

  int dfs(int v, int t, int up) {
    if (v == t) return up;
    for (int& e = it_[v]; e >= 0; e = next_head_[e]) {
      if (cap_[e] > 0 && level_[to_[e]] == level_[v] + 1) {
        int f = dfs(to_[e], t, std::min(up, cap_[e]));
        if (f > 0) {
          cap_[e] -= f;
          cap_[e ^ 1] += f;
          return f;
        }
      }
    }
    return 0;
  }

  std::vector<int> head_;
  std::vector<int> to_, cap_, next_head_;
  std::vector<int> level_, it_;
};

// Internal-vertex min cut between x and y in a reflexive digraph via vertex
// splitting with unit capacities. No cut exists when (x, y) is an edge.
struct VertexCut {
  int value = 0;
  Bitset cut;          // the separating vertex set, |cut| == value
  Bitset source_side;  // minimal A with x in A, y not in Gamma(A), ∂(A) == cut
};

class SplitGraphSolver {
 public:
  // Capacities: v_in -> v_out is 1 for ordinary vertices, unbounded for x, y.
  SplitGraphSolver(const Digraph& g, int x, int y)
      : g_(g), x_(x), y_(y), net_(2 * g.size()) {
    const int inf = g.size() + 1;
    for (int v = 0; v < g.size(); v++) {
      net_.add_edge(in(v), out(v), (v == x || v == y) ? inf : 1);
    }
    for (int u = 0; u < g.size(); u++) {
      g.out(u).for_each([&](int v) {
        if (v != u) net_.add_edge(out(u), in(v), inf);
      });
    }
  }

  static int in(int v) { return 2 * v; }
  static int out(int v) { return 2 * v + 1; }

  int max_flow(int limit = std::numeric_limits<int>::max()) { return net_.max_flow(out(x_), in(y_), limit); }

  VertexCut cut_from_residual(int value) const {
    Bitset reach = net_.residual_reachable(out(x_));
    VertexCut c;
    c.value = value;
    c.cut = Bitset(g_.size());
    c.source_side = Bitset(g_.size());
    for (int v = 0; v < g_.size(); v++) {
      if (reach.test(in(v)) && !reach.test(out(v))) c.cut.set(v);
      if (reach.test(out(v))) c.source_side.set(v);
    }
    return c;
  }

  FlowNetwork& network() { return net_; }

 private:
  const Digraph& g_;
  int x_, y_;
  FlowNetwork net_;
};

// std::nullopt when (x, y) is an edge (no separating set exists at all).
inline std::optional<VertexCut> min_vertex_cut(const Digraph& g, int x, int y) {
  if (x == y) fail(errc::same_vertex, "cut endpoints coincide");
  if (g.has_edge(x, y)) return std::nullopt;
  SplitGraphSolver solver(g, x, y);
  int value = solver.max_flow();
  return solver.cut_from_residual(value);
}

}  // namespace isokit
