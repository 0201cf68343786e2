#pragma once

// Test-only oracles. Everything here follows the raw definitions (pairwise
// enumeration, subset scans) and stays off the library's optimized paths so
// the two can disagree when one of them is wrong.

#include <cstdint>
#include <set>
#include <vector>

#include "isokit/digraph.hpp"
#include "isokit/group.hpp"
#include "isokit/kneser.hpp"
#include "isokit/subset.hpp"

namespace oracle {

using namespace isokit;

inline std::set<int> sumset_pairs(const Group& g, const std::vector<int>& a, const std::vector<int>& b) {
  std::set<int> out;
  for (int x : a)
    for (int y : b) out.insert(g.add(x, y));
  return out;
}

inline int rep_count_pairs(const Group& g, const std::vector<int>& a, const std::vector<int>& b, int x) {
  int c = 0;
  for (int p : a)
    for (int q : b)
      if (g.add(p, q) == x) c++;
  return c;
}

// min |∂(A)| over A with x in A and y outside Gamma(A); n when no such A.
inline int min_cut_subsets(const Digraph& g, int x, int y) {
  const int n = g.size();
  int best = n;
  for (std::uint32_t mask = 0; mask < (1u << n); mask++) {
    if (!(mask >> x & 1)) continue;
    Bitset a(n);
    for (int v = 0; v < n; v++)
      if (mask >> v & 1) a.set(v);
    Bitset reach = g.gamma(a);
    if (reach.test(y)) continue;
    best = std::min(best, reach.count() - a.count());
  }
  return best;
}

// Definitional kappa1 over every nonempty subset, on the generic set path.
inline int kappa1_subsets(const Group& g, const GroupSubset& s) {
  const int n = g.order();
  int best = n - 1;
  for (std::uint32_t mask = 1; mask < (1u << n); mask++) {
    GroupSubset x(g);
    for (int v = 0; v < n; v++)
      if (mask >> v & 1) x.insert(v);
    GroupSubset grown = sumset(x, s);
    if (grown.size() > n - 1) continue;
    best = std::min(best, grown.size() - x.size());
  }
  return best;
}

inline std::uint64_t rnd(std::uint64_t seed, std::uint64_t i) { return detail::stream64(seed, i); }

// Random reflexive digraph; each non-loop arc present with probability
// num/denom.
inline Digraph random_digraph(int n, std::uint64_t seed, int num = 1, int denom = 3) {
  Digraph g(n);
  std::uint64_t i = 0;
  for (int u = 0; u < n; u++) {
    for (int v = 0; v < n; v++) {
      if (u != v && static_cast<int>(rnd(seed, i) % denom) < num) g.add_edge(u, v);
      i++;
    }
  }
  return g;
}

inline GroupSubset random_subset(const Group& g, std::uint64_t seed, std::uint64_t salt, int density_pct = 50) {
  GroupSubset s(g);
  for (int e = 0; e < g.order(); e++) {
    if (static_cast<int>(rnd(seed, salt * 131 + e) % 100) < density_pct) s.insert(e);
  }
  return s;
}

}  // namespace oracle
