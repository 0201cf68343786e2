#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "isokit/digraph.hpp"
#include "isokit/errors.hpp"
#include "isokit/maxflow.hpp"
#include "isokit/menger.hpp"
#include "isokit/set_algebra.hpp"
#include "isokit/small_group.hpp"
#include "isokit/subgroup.hpp"
#include "isokit/subset.hpp"

namespace isokit {

// Cay(G, S): edge x -> y iff y - x in S; reflexive since 0 in S.
struct CayleyGraph {
  Group group;
  GroupSubset connection;

  CayleyGraph(Group g, GroupSubset s) : group(std::move(g)), connection(std::move(s)) {
    if (!connection.group().same_as(group)) fail(errc::group_mismatch, "connection set of a different group");
    if (!connection.contains(group.zero())) fail(errc::zero_missing, "connection set must contain 0");
  }
};

inline Digraph cayley_digraph(const Group& g, const GroupSubset& s) {
  if (!s.contains(g.zero())) fail(errc::zero_missing, "connection set must contain 0");
  Digraph d(g.order());
  for (int x = 0; x < g.order(); x++) {
    s.for_each([&](int e) { d.add_edge(x, g.add(x, e)); });
  }
  return d;
}

inline bool generates(const Group& g, const GroupSubset& s) {
  return subgroup_generated(g, s).carrier.size() == g.order();
}

// ∂_S(X) = (X+S) \ X.
inline GroupSubset boundary(const GroupSubset& s, const GroupSubset& x) {
  return sumset(x, s) - x;
}

// X^S = G \ (X+S).
inline GroupSubset dual(const GroupSubset& s, const GroupSubset& x) {
  return sumset(x, s).complement();
}

// Verifies (X^S)^{-S} + S = X + S; returns the symmetric difference when the
// identity fails (it never should).
inline std::optional<GroupSubset> check_duality(const GroupSubset& s, const GroupSubset& x) {
  GroupSubset::check_same(s, x);
  GroupSubset xs = sumset(x, s);
  GroupSubset neg_s = s.reflect();
  GroupSubset inner = dual(neg_s, dual(s, x));
  GroupSubset lhs = sumset(inner, s);
  if (lhs == xs) return std::nullopt;
  return lhs ^ xs;
}

enum class Kappa1Engine { Exhaustive, Flow };

namespace detail {

inline void require_connection(const Group& g, const GroupSubset& s) {
  if (!s.group().same_as(g)) fail(errc::group_mismatch, "connection set of a different group");
  if (!s.contains(g.zero())) fail(errc::zero_missing, "connection set must contain 0");
  if (!generates(g, s)) fail(errc::not_generating, "connection set does not generate the group");
}

struct DenseFragmentScan {
  int kappa1;
  int alpha1;
  std::vector<std::uint64_t> atoms_zero;  // minimum-size fragments containing 0
  std::uint64_t witness;                  // first fragment attaining kappa1
};

// Definitional scan over the subsets containing 0 (translation invariance
// makes that restriction lossless). Only for |G| <= 20.
inline DenseFragmentScan dense_fragment_scan(const SmallGroupOps& ops, std::uint64_t s_mask) {
  const int n = ops.order();
  DenseFragmentScan r{n - 1, 1, {}, 1};
  bool found = false;
  const std::uint64_t lim = std::uint64_t(1) << (n - 1);
  for (std::uint64_t half = 0; half < lim; half++) {
    std::uint64_t x = (half << 1) | 1;
    std::uint64_t grown = ops.sumset(x, s_mask);
    if (grown == ops.full_mask()) continue;
    int d = std::popcount(grown) - std::popcount(x);
    int size = std::popcount(x);
    if (!found || d < r.kappa1) {
      found = true;
      r.kappa1 = d;
      r.alpha1 = size;
      r.atoms_zero.assign(1, x);
      r.witness = x;
    } else if (d == r.kappa1) {
      if (size < r.alpha1) {
        r.alpha1 = size;
        r.atoms_zero.assign(1, x);
      } else if (size == r.alpha1) {
        r.atoms_zero.push_back(x);
      }
    }
  }
  if (!found) {
    // No fragment family: S = G. A 1-atom is then just a singleton.
    r.kappa1 = n - 1;
    r.alpha1 = 1;
    r.atoms_zero = {1};
    r.witness = 1;
  }
  return r;
}

}  // namespace detail

// kappa_1(S): min |∂_S(X)| over nonempty X with |X+S| <= |G|-1, and |G|-1
// when no such X exists. The flow engine uses vertex-transitivity: the
// minimum over X normalizes to 0 in X, so kappa_1 is the least vertex cut
// separating 0 from some y outside S.
inline int kappa1(const Group& g, const GroupSubset& s, Kappa1Engine engine) {
  detail::require_connection(g, s);
  const int n = g.order();
  if (engine == Kappa1Engine::Exhaustive) {
    if (n > 20) fail(errc::budget_exceeded, "exhaustive kappa_1 is limited to |G| <= 20");
    SmallGroupOps ops(g);
    return detail::dense_fragment_scan(ops, SmallGroupOps::mask_of(s)).kappa1;
  }
  Digraph cay = cayley_digraph(g, s);
  int best = n - 1;
  bool found = false;
  for (int y = 0; y < n; y++) {
    if (s.contains(y)) continue;
    auto cut = min_vertex_cut(cay, 0, y);
    found = true;
    best = std::min(best, cut->value);
  }
  return found ? best : n - 1;
}

struct FragmentReport {
  int kappa1 = 0;
  int alpha1 = 0;
  std::vector<GroupSubset> atoms_containing_zero;  // sorted, lexicographically first is the canonical atom
  GroupSubset all_fragment_witness;
};

// kappa_1, alpha_1 and the 1-atoms through 0. Checks the structural facts on
// the way out: the atom through 0 closes as a subgroup and distinct atom
// translates are pairwise disjoint; violations abort loudly.
inline FragmentReport atoms(const Group& g, const GroupSubset& s) {
  detail::require_connection(g, s);
  const int n = g.order();
  FragmentReport rep;
  if (s.size() == n) {
    // Degenerate S = G: fragment family is empty by convention.
    rep.kappa1 = n - 1;
    rep.alpha1 = 1;
    rep.atoms_containing_zero = {GroupSubset::singleton(g, 0)};
    rep.all_fragment_witness = GroupSubset::singleton(g, 0);
    return rep;
  }
  if (n <= 20) {
    SmallGroupOps ops(g);
    auto scan = detail::dense_fragment_scan(ops, SmallGroupOps::mask_of(s));
    rep.kappa1 = scan.kappa1;
    rep.alpha1 = scan.alpha1;
    for (std::uint64_t m : scan.atoms_zero) rep.atoms_containing_zero.push_back(ops.to_subset(m));
    rep.all_fragment_witness = ops.to_subset(scan.witness);
  } else {
    Digraph cay = cayley_digraph(g, s);
    int kappa = n - 1;
    std::vector<Bitset> sides;
    for (int y = 0; y < n; y++) {
      if (s.contains(y)) continue;
      auto cut = min_vertex_cut(cay, 0, y);
      if (cut->value < kappa) {
        kappa = cut->value;
        sides.clear();
      }
      if (cut->value == kappa) sides.push_back(cut->source_side);
    }
    rep.kappa1 = kappa;
    int alpha = n;
    for (const Bitset& b : sides) alpha = std::min(alpha, b.count());
    rep.alpha1 = alpha;
    for (const Bitset& b : sides) {
      if (b.count() != alpha) continue;
      GroupSubset a(g, b);
      if (std::find(rep.atoms_containing_zero.begin(), rep.atoms_containing_zero.end(), a) ==
          rep.atoms_containing_zero.end()) {
        rep.atoms_containing_zero.push_back(a);
      }
    }
    rep.all_fragment_witness = rep.atoms_containing_zero.empty() ? GroupSubset::singleton(g, 0)
                                                                 : rep.atoms_containing_zero.front();
  }
  std::sort(rep.atoms_containing_zero.begin(), rep.atoms_containing_zero.end(),
            [](const GroupSubset& a, const GroupSubset& b) { return a.bits().lex_less(b.bits()); });

  const GroupSubset& atom0 = rep.atoms_containing_zero.front();
  if (!carrier_is_subgroup(atom0)) {
    fail(errc::ledger_violation, "the 1-atom containing 0 is not a subgroup");
  }
  // A single atom through 0 that closes as a subgroup has cosets for
  // translates, so disjointness is automatic; the explicit scan only runs in
  // the defensive multi-atom case (never expected).
  if (rep.atoms_containing_zero.size() > 1) {
    std::vector<GroupSubset> translates;
    for (const GroupSubset& a : rep.atoms_containing_zero) {
      for (int e = 0; e < n; e++) {
        GroupSubset t = a.translate(e);
        if (std::find(translates.begin(), translates.end(), t) == translates.end()) translates.push_back(t);
      }
    }
    for (std::size_t i = 0; i < translates.size(); i++) {
      for (std::size_t j = i + 1; j < translates.size(); j++) {
        if (translates[i].intersects(translates[j])) {
          fail(errc::ledger_violation, "distinct 1-atoms intersect");
        }
      }
    }
  }
  return rep;
}

// All 1-fragments (at any position); exhaustive, |G| <= 20 only.
inline std::vector<GroupSubset> enumerate_fragments(const Group& g, const GroupSubset& s) {
  detail::require_connection(g, s);
  const int n = g.order();
  if (n > 20) fail(errc::budget_exceeded, "fragment enumeration is limited to |G| <= 20");
  SmallGroupOps ops(g);
  std::uint64_t s_mask = SmallGroupOps::mask_of(s);
  auto scan = detail::dense_fragment_scan(ops, s_mask);
  std::vector<GroupSubset> out;
  const std::uint64_t lim = std::uint64_t(1) << n;
  for (std::uint64_t x = 1; x < lim; x++) {
    std::uint64_t grown = ops.sumset(x, s_mask);
    if (grown == ops.full_mask()) continue;
    if (std::popcount(grown) - std::popcount(x) == scan.kappa1) out.push_back(ops.to_subset(x));
  }
  return out;
}

struct IsoperimetricViolation {
  GroupSubset x;
  int reached;
  int bound;
};

// |X+S| >= min(|G|, |X| + kappa_1(S)).
inline std::optional<IsoperimetricViolation> check_isoperimetric_inequality(const Group& g, const GroupSubset& s,
                                                                            const GroupSubset& x, int kappa) {
  if (x.empty()) fail(errc::empty_set, "the inequality quantifies over nonempty X");
  int reached = sumset(x, s).size();
  int bound = std::min(g.order(), x.size() + kappa);
  if (reached >= bound) return std::nullopt;
  return IsoperimetricViolation{x, reached, bound};
}

inline std::optional<IsoperimetricViolation> check_isoperimetric_inequality(const Group& g, const GroupSubset& s,
                                                                            const GroupSubset& x) {
  int kappa = kappa1(g, s, g.order() <= 20 ? Kappa1Engine::Exhaustive : Kappa1Engine::Flow);
  return check_isoperimetric_inequality(g, s, x, kappa);
}

struct HalfGrowthViolation {
  int reached;      // |T+S|
  int twice_bound;  // 2|T| + |S|
};

// Half-of-S growth for unstabilized T. When T+S is itself <S-S>-periodic the
// per-coset isoperimetric bound clips at full cosets and only strict growth
// |T+S| > |T| survives (see Z_4, S = T = {0,1,2} for why the unclipped bound
// cannot hold there); otherwise some coset trace is deficient and
// |T+S| >= |T| + |S|/2.
inline std::optional<HalfGrowthViolation> check_half_growth(const GroupSubset& s, const GroupSubset& t) {
  GroupSubset::check_same(s, t);
  if (s.empty() || t.empty()) fail(errc::empty_set, "growth bound needs nonempty sets");
  const Group& g = s.group();
  GroupSubset diffs = sumset(s, s.reflect());
  Subgroup q = subgroup_generated(g, diffs);
  if (sumset(t, q.carrier) == t) {
    fail(errc::precondition_unmet, "T is stabilized by the subgroup generated by S-S");
  }
  GroupSubset grown = sumset(t, s);
  int reached = grown.size();
  if (sumset(grown, q.carrier) == grown) {
    if (reached > t.size()) return std::nullopt;
    return HalfGrowthViolation{reached, 2 * t.size() + 2};
  }
  if (2 * reached >= 2 * t.size() + s.size()) return std::nullopt;
  return HalfGrowthViolation{reached, 2 * t.size() + s.size()};
}

struct Reduction {
  int a;                // base point of the surviving coset
  GroupSubset t_prime;  // T ∩ (a + <S>)
};

struct AlreadyPeriodicPart {};

using ReduceResult = std::variant<Reduction, AlreadyPeriodicPart>;

// Splits T modulo <S>: either T+S is already <S>-periodic (every coset trace
// sums to a full coset) or exactly one deficient coset T' survives with
// |T'+S| <= |T'| + |S| - m and the rest of T is <S>-periodic.
inline ReduceResult reduce_to_generated(const GroupSubset& s, const GroupSubset& t, int m) {
  GroupSubset::check_same(s, t);
  if (s.empty() || t.empty()) fail(errc::empty_set, "reduction needs nonempty sets");
  const Group& g = s.group();
  if (!s.contains(g.zero())) fail(errc::zero_missing, "0 must lie in S");
  if (m < 0 || sumset(t, s).size() > t.size() + s.size() - m) {
    fail(errc::precondition_unmet, "|T+S| <= |T|+|S|-m does not hold");
  }
  Subgroup span = subgroup_generated(g, s);
  HDecomposition dec = h_decompose(t, span);
  std::vector<int> deficient;
  for (std::size_t i = 0; i < dec.parts.size(); i++) {
    if (sumset(dec.parts[i].trace, s).size() < span.order()) deficient.push_back(static_cast<int>(i));
  }
  if (deficient.empty()) return AlreadyPeriodicPart{};
  if (deficient.size() > 1) {
    // Reachable only at m = 0 with the inequality chain tight; no single
    // surviving coset exists then.
    fail(errc::precondition_unmet, "more than one deficient coset (needs m >= 1)");
  }
  const auto& part = dec.parts[deficient[0]];
  if (sumset(part.trace, s).size() > part.trace.size() + s.size() - m) {
    fail(errc::ledger_violation, "surviving coset misses its size bound");
  }
  return Reduction{part.coset_rep, part.trace};
}

struct QuotientKappaResult {
  int quotient_kappa;
  int phi_s_size;
};

// For a subgroup H that is a 1-fragment, kappa_1 of the pushed-forward
// connection set is full: kappa_1(phi(S)) = |phi(S)| - 1.
inline QuotientKappaResult check_quotient_kappa(const Group& g, const GroupSubset& s, const Subgroup& h) {
  detail::require_connection(g, s);
  if (!carrier_is_subgroup(h.carrier)) fail(errc::not_a_subgroup, "carrier fails closure check");
  GroupSubset hs = sumset(h.carrier, s);
  if (hs.size() > g.order() - 1) fail(errc::not_a_fragment, "|H+S| exceeds |G|-1");
  int kappa = kappa1(g, s, g.order() <= 20 ? Kappa1Engine::Exhaustive : Kappa1Engine::Flow);
  if (hs.size() - h.order() != kappa) fail(errc::not_a_fragment, "|∂(H)| != kappa_1(S)");
  QuotientMap qm = quotient(g, h);
  GroupSubset phi_s = qm.push(s);
  int qk = kappa1(qm.quotient_group, phi_s,
                  qm.quotient_group.order() <= 20 ? Kappa1Engine::Exhaustive : Kappa1Engine::Flow);
  return QuotientKappaResult{qk, phi_s.size()};
}

}  // namespace isokit
