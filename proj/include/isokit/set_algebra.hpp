#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "isokit/errors.hpp"
#include "isokit/subgroup.hpp"
#include "isokit/subset.hpp"

namespace isokit {

// Minkowski sum {x + y : x in a, y in b}. Realized by OR-ing one translated
// copy of the larger operand per element of the smaller one.
inline GroupSubset sumset(const GroupSubset& a, const GroupSubset& b) {
  GroupSubset::check_same(a, b);
  const Group& g = a.group();
  GroupSubset out(g);
  const GroupSubset& big = a.size() >= b.size() ? a : b;
  const GroupSubset& small = a.size() >= b.size() ? b : a;
  small.for_each([&](int s) {
    big.for_each([&](int x) { out.insert(g.add(x, s)); });
  });
  return out;
}

// r_{A,B}(x) = |(x - B) ∩ A|, the number of representations x = a + b.
inline int rep_count(const GroupSubset& a, const GroupSubset& b, int x) {
  GroupSubset::check_same(a, b);
  const Group& g = a.group();
  int c = 0;
  b.for_each([&](int y) {
    if (a.contains(g.sub(x, y))) c++;
  });
  return c;
}

// With |A| + |B| >= |G| + t every element has at least t representations.
// Returns the first violating element, which no valid input can produce.
inline std::optional<int> check_pigeonhole(const GroupSubset& a, const GroupSubset& b, int t) {
  GroupSubset::check_same(a, b);
  const Group& g = a.group();
  if (a.size() + b.size() < g.order() + t) {
    fail(errc::precondition_unmet,
         "|A|+|B| = " + std::to_string(a.size() + b.size()) + " < |G|+t = " + std::to_string(g.order() + t));
  }
  for (int x = 0; x < g.order(); x++) {
    if (rep_count(a, b, x) < t) return x;
  }
  return std::nullopt;
}

// Stabilizer {g : A + g = A}; A is periodic iff the result is nontrivial.
inline Subgroup period(const GroupSubset& a) {
  if (a.empty()) fail(errc::empty_set, "period of the empty set");
  const Group& g = a.group();
  GroupSubset carrier(g);
  for (int e = 0; e < g.order(); e++) {
    if (a.translate(e) == a) carrier.insert(e);
  }
  return subgroup_from_carrier(carrier);
}

struct HDecompositionPart {
  int coset_rep;      // minimum element index in the coset
  GroupSubset trace;  // set ∩ (rep + H)
};

struct HDecomposition {
  Subgroup sub;
  std::vector<HDecompositionPart> parts;  // ordered by coset_rep

  GroupSubset reassemble() const {
    GroupSubset u(sub.carrier.group());
    for (const auto& p : parts) u = u | p.trace;
    return u;
  }
};

// Partition of a set into its nonempty intersections with H-cosets.
inline HDecomposition h_decompose(const GroupSubset& a, const Subgroup& h) {
  if (a.empty()) fail(errc::empty_set, "decomposing the empty set");
  if (!h.carrier.group().same_as(a.group())) fail(errc::group_mismatch, "subgroup of a different group");
  if (!carrier_is_subgroup(h.carrier)) fail(errc::not_a_subgroup, "carrier fails closure check");
  const Group& g = a.group();
  std::vector<char> done(g.order(), 0);
  HDecomposition d{h, {}};
  for (int x = 0; x < g.order(); x++) {
    if (!a.contains(x) || done[x]) continue;
    GroupSubset coset = h.carrier.translate(x);
    coset.for_each([&](int e) { done[e] = 1; });
    d.parts.push_back({coset.bits().find_first(), coset & a});
  }
  std::sort(d.parts.begin(), d.parts.end(),
            [](const HDecompositionPart& p, const HDecompositionPart& q) { return p.coset_rep < q.coset_rep; });
  return d;
}

}  // namespace isokit
