#pragma once

#include <cstdint>
#include <vector>

#include "isokit/errors.hpp"
#include "isokit/group.hpp"
#include "isokit/subset.hpp"

namespace isokit {

struct Subgroup {
  GroupSubset carrier;
  std::vector<int> generators;

  int order() const { return carrier.size(); }
  bool is_trivial() const { return carrier.size() == 1; }
  bool contains(int index) const { return carrier.contains(index); }
};

inline bool carrier_is_subgroup(const GroupSubset& c) {
  const Group& g = c.group();
  if (!c.contains(g.zero())) return false;
  bool ok = true;
  c.for_each([&](int a) {
    if (!ok) return;
    if (!c.contains(g.neg(a))) {
      ok = false;
      return;
    }
    c.for_each([&](int b) {
      if (ok && !c.contains(g.add(a, b))) ok = false;
    });
  });
  return ok;
}

// Smallest subgroup whose carrier contains gens: closure of {0} + gens under
// addition and negation, by fixpoint iteration.
inline Subgroup subgroup_generated(const Group& g, const GroupSubset& gens) {
  if (!gens.group().same_as(g)) fail(errc::group_mismatch, "generators live in a different group");
  GroupSubset carrier(g);
  carrier.insert(g.zero());
  std::vector<int> frontier{g.zero()};
  std::vector<int> gen_list = gens.indices();
  for (int x : gen_list) {
    int nx = g.neg(x);
    if (!carrier.contains(x)) {
      carrier.insert(x);
      frontier.push_back(x);
    }
    if (!carrier.contains(nx)) {
      carrier.insert(nx);
      frontier.push_back(nx);
    }
  }
  while (!frontier.empty()) {
    int x = frontier.back();
    frontier.pop_back();
    for (int y : gen_list) {
      int s = g.add(x, y);
      if (!carrier.contains(s)) {
        carrier.insert(s);
        frontier.push_back(s);
      }
      int d = g.sub(x, y);
      if (!carrier.contains(d)) {
        carrier.insert(d);
        frontier.push_back(d);
      }
    }
  }
  return Subgroup{carrier, gen_list};
}

inline Subgroup subgroup_from_carrier(const GroupSubset& carrier) {
  if (!carrier_is_subgroup(carrier)) fail(errc::not_a_subgroup, "carrier fails closure check");
  // Greedy small generating set: add an element only when it is not yet generated.
  const Group& g = carrier.group();
  std::vector<int> gens;
  GroupSubset closed(g);
  closed.insert(g.zero());
  carrier.for_each([&](int x) {
    if (closed.contains(x)) return;
    gens.push_back(x);
    GroupSubset gset(g, gens);
    closed = subgroup_generated(g, gset).carrier;
  });
  return Subgroup{carrier, gens};
}

// Canonical projection G -> G/H. Coset indices are assigned in increasing
// order of the minimum element index in each coset, so the coset of 0 is
// always index 0 and representatives are the per-coset minima.
struct QuotientMap {
  Subgroup sub;
  std::vector<int> coset_index;  // element index -> coset index
  std::vector<int> coset_reps;   // coset index -> representative element index
  Group quotient_group;          // table group on coset indices

  int order() const { return static_cast<int>(coset_reps.size()); }

  GroupSubset push(const GroupSubset& x) const {
    GroupSubset r(quotient_group);
    x.for_each([&](int e) { r.insert(coset_index[e]); });
    return r;
  }

  GroupSubset pull(const GroupSubset& y) const {
    GroupSubset r(sub.carrier.group());
    for (int e = 0; e < static_cast<int>(coset_index.size()); e++) {
      if (y.contains(coset_index[e])) r.insert(e);
    }
    return r;
  }
};

inline QuotientMap quotient(const Group& g, const Subgroup& h) {
  if (!h.carrier.group().same_as(g)) fail(errc::group_mismatch, "subgroup of a different group");
  if (!carrier_is_subgroup(h.carrier)) fail(errc::not_a_subgroup, "carrier fails closure check");
  const int n = g.order();
  std::vector<int> cidx(n, -1);
  std::vector<int> reps;
  for (int x = 0; x < n; x++) {
    if (cidx[x] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(x);
    h.carrier.for_each([&](int e) { cidx[g.add(x, e)] = id; });
  }
  const int q = static_cast<int>(reps.size());
  std::vector<std::uint16_t> table(static_cast<std::size_t>(q) * q);
  for (int i = 0; i < q; i++)
    for (int j = 0; j < q; j++) table[static_cast<std::size_t>(i) * q + j] = static_cast<std::uint16_t>(cidx[g.add(reps[i], reps[j])]);
  QuotientMap m;
  m.sub = h;
  m.coset_index = std::move(cidx);
  m.coset_reps = std::move(reps);
  m.quotient_group = Group::from_table(std::move(table));
  return m;
}

// View a subgroup carrier as a group in its own right; elements are numbered
// by increasing parent index.
struct SubgroupEmbedding {
  Group sub;                  // table group of order |H|
  std::vector<int> to_parent;    // sub index -> parent element index
  std::vector<int> from_parent;  // parent element index -> sub index, -1 outside

  GroupSubset restrict(const GroupSubset& x) const {
    GroupSubset r(sub);
    x.for_each([&](int e) {
      if (from_parent[e] < 0) fail(errc::precondition_unmet, "set is not inside the subgroup");
      r.insert(from_parent[e]);
    });
    return r;
  }

  GroupSubset extend(const GroupSubset& x, const Group& parent) const {
    GroupSubset r(parent);
    x.for_each([&](int e) { r.insert(to_parent[e]); });
    return r;
  }
};

inline SubgroupEmbedding subgroup_as_group(const Group& g, const Subgroup& h) {
  if (!carrier_is_subgroup(h.carrier)) fail(errc::not_a_subgroup, "carrier fails closure check");
  SubgroupEmbedding em;
  em.to_parent = h.carrier.indices();
  em.from_parent.assign(g.order(), -1);
  for (std::size_t i = 0; i < em.to_parent.size(); i++) em.from_parent[em.to_parent[i]] = static_cast<int>(i);
  const int m = static_cast<int>(em.to_parent.size());
  std::vector<std::uint16_t> table(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; i++)
    for (int j = 0; j < m; j++)
      table[static_cast<std::size_t>(i) * m + j] =
          static_cast<std::uint16_t>(em.from_parent[g.add(em.to_parent[i], em.to_parent[j])]);
  em.sub = Group::from_table(std::move(table));
  return em;
}

}  // namespace isokit
