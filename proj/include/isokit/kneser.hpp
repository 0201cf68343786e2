#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "isokit/errors.hpp"
#include "isokit/isoperimetry.hpp"
#include "isokit/menger.hpp"
#include "isokit/set_algebra.hpp"
#include "isokit/small_group.hpp"
#include "isokit/subgroup.hpp"
#include "isokit/subset.hpp"

namespace isokit {

namespace detail {

// Counter-based splitmix64: stream position i of a seed is mix(seed + i*gamma),
// so sampled scans are independent of worker partitioning.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t stream64(std::uint64_t seed, std::uint64_t i) {
  return mix64(seed + i * 0x9e3779b97f4a7c15ULL);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Certificate for one (A, B) pair.
// ---------------------------------------------------------------------------

enum class KneserVerdict { Pass, Violation };

struct KneserCertificate {
  GroupSubset a, b, sum;
  bool hypothesis_met = false;  // |A+B| <= |A| + |B| - 2
  Subgroup h;                   // period of A+B
  int bound_lhs = 0;            // |A+B|
  int bound_rhs = 0;            // |A+H| + |B+H| - |H|
  KneserVerdict verdict = KneserVerdict::Pass;
};

// Checks the compact statement (a small sumset is periodic) and the popular
// bound |A+B| >= |A+H| + |B+H| - |H| with H the period of A+B.
inline KneserCertificate verify_kneser(const GroupSubset& a, const GroupSubset& b) {
  GroupSubset::check_same(a, b);
  if (a.empty() || b.empty()) fail(errc::empty_set, "verification needs nonempty sets");
  KneserCertificate cert;
  cert.a = a;
  cert.b = b;
  cert.sum = sumset(a, b);
  cert.hypothesis_met = cert.sum.size() <= a.size() + b.size() - 2;
  cert.h = period(cert.sum);
  cert.bound_lhs = cert.sum.size();
  cert.bound_rhs = sumset(a, cert.h.carrier).size() + sumset(b, cert.h.carrier).size() - cert.h.order();
  bool periodic = cert.h.order() > 1;
  if ((cert.hypothesis_met && !periodic) || cert.bound_lhs < cert.bound_rhs) {
    cert.verdict = KneserVerdict::Violation;
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Scans over pairs.
// ---------------------------------------------------------------------------

struct ScanOptions {
  bool exhaustive = true;
  std::uint64_t sample_count = 0;  // used when exhaustive == false
  std::uint64_t seed = 0;
  int workers = 1;
  std::uint64_t exhaustive_budget = std::uint64_t(1) << 25;  // max pair count
};

struct ScanReport {
  std::vector<int> orders;
  bool exhaustive = true;
  std::uint64_t pairs_tested = 0;
  std::uint64_t hypothesis_met = 0;
  std::uint64_t periodic_sums = 0;
  // delta = |A+B| - |A| - |B| -> count
  std::vector<std::pair<int, std::uint64_t>> histogram;
  // violating pairs as index lists (expected empty)
  std::vector<std::pair<std::vector<int>, std::vector<int>>> violations;
  std::uint64_t seed = 0;
  int workers = 1;
};

namespace detail {

struct ScanShard {
  std::uint64_t pairs = 0, hyp = 0, periodic = 0;
  std::vector<std::uint64_t> histo;  // index = delta + 2n
  std::vector<std::pair<std::uint64_t, std::uint64_t>> violations;
};

// One pair on the dense engine. Returns delta.
inline void scan_pair(const SmallGroupOps& ops, const std::vector<std::uint64_t>& trans_a, std::uint64_t a_mask,
                      std::uint64_t b_mask, int as, ScanShard& shard) {
  const int n = ops.order();
  std::uint64_t c = 0;
  std::uint64_t b = b_mask;
  while (b) {
    int e = std::countr_zero(b);
    b &= b - 1;
    c |= trans_a[e];
  }
  int bs = std::popcount(b_mask);
  int cs = std::popcount(c);
  int delta = cs - as - bs;
  shard.pairs++;
  shard.histo[delta + 2 * n]++;
  std::uint64_t h = ops.stabilizer(c);
  bool hyp = cs <= as + bs - 2;
  bool periodic = h != 1;
  if (hyp) shard.hyp++;
  if (periodic) shard.periodic++;
  bool bad = hyp && !periodic;
  if (!bad && periodic) {
    int hs = std::popcount(h);
    int ah = std::popcount(ops.sumset(a_mask, h));
    int bh = std::popcount(ops.sumset(b_mask, h));
    if (cs < ah + bh - hs) bad = true;
  } else if (!bad) {
    if (cs < as + bs - 1) bad = true;  // trivial period corollary bound
  }
  if (bad) shard.violations.emplace_back(a_mask, b_mask);
}

}  // namespace detail

// Runs verify_kneser semantics over all (or sampled) nonempty pairs of a
// group of order <= 64, in parallel shards merged deterministically.
inline ScanReport kneser_scan(const Group& g, const ScanOptions& opt) {
  const int n = g.order();
  if (n > 64) fail(errc::budget_exceeded, "scans use the dense engine and need |G| <= 64");
  const std::uint64_t m = (n == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1);
  ScanReport rep;
  rep.orders = g.is_product() ? g.factor_orders() : std::vector<int>{};
  rep.exhaustive = opt.exhaustive;
  rep.seed = opt.seed;
  rep.workers = std::max(1, opt.workers);

  std::uint64_t total = opt.exhaustive ? m * m : opt.sample_count;
  if (opt.exhaustive && total > opt.exhaustive_budget) {
    fail(errc::budget_exceeded, "exhaustive pair count " + std::to_string(total) + " exceeds the budget");
  }

  SmallGroupOps ops(g);
  const int workers = rep.workers;
  std::vector<detail::ScanShard> shards(workers);
  for (auto& s : shards) s.histo.assign(4 * n + 1, 0);

  auto run_shard = [&](int w) {
    detail::ScanShard& shard = shards[w];
    if (opt.exhaustive) {
      // Partition the outer (A) loop.
      std::uint64_t lo = 1 + (m * w) / workers;
      std::uint64_t hi = 1 + (m * (w + 1)) / workers;
      std::vector<std::uint64_t> trans_a(n);
      for (std::uint64_t a = lo; a < hi; a++) {
        for (int e = 0; e < n; e++) trans_a[e] = ops.translate(a, e);
        int as = std::popcount(a);
        for (std::uint64_t b = 1; b <= m; b++) detail::scan_pair(ops, trans_a, a, b, as, shard);
      }
    } else {
      std::uint64_t lo = (opt.sample_count * w) / workers;
      std::uint64_t hi = (opt.sample_count * (w + 1)) / workers;
      std::vector<std::uint64_t> trans_a(n);
      for (std::uint64_t i = lo; i < hi; i++) {
        std::uint64_t a = 1 + detail::stream64(opt.seed, 2 * i) % m;
        std::uint64_t b = 1 + detail::stream64(opt.seed, 2 * i + 1) % m;
        for (int e = 0; e < n; e++) trans_a[e] = ops.translate(a, e);
        detail::scan_pair(ops, trans_a, a, b, std::popcount(a), shard);
      }
    }
  };

  if (workers == 1) {
    run_shard(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; w++) threads.emplace_back(run_shard, w);
    for (auto& t : threads) t.join();
  }

  std::vector<std::uint64_t> histo(4 * n + 1, 0);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> violations;
  for (const auto& s : shards) {
    rep.pairs_tested += s.pairs;
    rep.hypothesis_met += s.hyp;
    rep.periodic_sums += s.periodic;
    for (std::size_t i = 0; i < histo.size(); i++) histo[i] += s.histo[i];
    violations.insert(violations.end(), s.violations.begin(), s.violations.end());
  }
  std::sort(violations.begin(), violations.end());
  for (int d = -2 * n; d <= 2 * n; d++) {
    if (histo[d + 2 * n]) rep.histogram.emplace_back(d, histo[d + 2 * n]);
  }
  for (const auto& [am, bm] : violations) {
    rep.violations.emplace_back(ops.to_subset(am).indices(), ops.to_subset(bm).indices());
  }
  return rep;
}

// ---------------------------------------------------------------------------
// The machine-checked walk through the main proof.
// ---------------------------------------------------------------------------

struct LedgerLine {
  int level = 0;
  std::string name;
  bool ok = true;
  std::string detail;
};

// Quantities of the generating, size-normalized instance that reaches the
// main argument, in its own ambient group.
struct TraceMainBody {
  Group group;
  GroupSubset s, t;    // after the 0-in-largest-part normalization of S
  int s_translation = 0;  // original S-side minus this element gives s
  Subgroup atom;       // H
  int kappa = 0;
  QuotientMap phi;
  int u = 0, t_classes = 0, q = 0, ell = 0;  // |phi(S)| = u+1, |phi(T)| = t_classes+1
  std::vector<GroupSubset> s_parts;          // S_0 .. S_u
  std::vector<int> s_part_cosets;
  std::vector<GroupSubset> t_parts;  // T_0 .. T_t by coset representative
  std::vector<int> t_part_cosets;
  std::vector<GroupSubset> e_sets;  // E_i = (S+T) ∩ (T_i + H)
  std::vector<int> j_set;           // chosen J (sorted)
  std::vector<int> m_map;           // m_i per J entry
  std::vector<int> i_set, w_set, p_set, f_set;
  GroupSubset r_set;
  std::vector<int> d_set, d_prime;
  Subgroup q_sub;   // <S_u - S_u>
  GroupSubset c_set;  // the reconstruction C
  GroupSubset n_out;  // stabilizer produced at this level
};

struct ProofTrace {
  Group group;
  GroupSubset s, t;  // instance as given
  std::vector<std::string> branches;
  std::vector<LedgerLine> ledger;
  GroupSubset stabilizer_n;  // in the original group
  std::optional<TraceMainBody> main;
  bool ok = true;

  std::string first_failure() const {
    for (const auto& l : ledger) {
      if (!l.ok) return l.name + (l.detail.empty() ? "" : " (" + l.detail + ")");
    }
    return {};
  }
};

class trace_error : public error {
 public:
  trace_error(ProofTrace t)
      : error(errc::ledger_violation, "proof trace failed at: " + t.first_failure()), trace(std::move(t)) {}
  ProofTrace trace;
};

namespace detail {

struct TraceBuilder {
  ProofTrace out;
  std::map<std::pair<const void*, std::vector<std::uint64_t>>, FragmentReport> atom_cache;

  bool line(int level, const std::string& name, bool ok, const std::string& detail = {}) {
    out.ledger.push_back({level, name, ok, detail});
    if (!ok) out.ok = false;
    return ok;
  }

  static std::vector<std::uint64_t> words_of(const GroupSubset& s) {
    std::vector<std::uint64_t> w(s.bits().word_count());
    for (int i = 0; i < s.bits().word_count(); i++) w[i] = s.bits().word(i);
    return w;
  }

  const FragmentReport& atoms_of(const Group& g, const GroupSubset& s) {
    auto key = std::make_pair(g.key(), words_of(s));
    auto it = atom_cache.find(key);
    if (it == atom_cache.end()) it = atom_cache.emplace(key, atoms(g, s)).first;
    return it->second;
  }

  // Returns a subgroup carrier N (never trivial in a passing trace) with
  // sumset(a, b) + N = sumset(a, b).
  GroupSubset rec(const Group& g, const GroupSubset& a, const GroupSubset& b, int level) {
    // Orient: S is the smaller side, translated to contain 0.
    GroupSubset s_side = a.size() <= b.size() ? a : b;
    GroupSubset t_side = a.size() <= b.size() ? b : a;
    int s_min = s_side.bits().find_first();
    GroupSubset s = s_side.translate(g.neg(s_min));
    GroupSubset c = sumset(t_side, s);
    line(level, "hypothesis", c.size() <= t_side.size() + s.size() - 2,
         "|T+S|=" + std::to_string(c.size()));

    Subgroup span = subgroup_generated(g, s);
    if (span.order() < g.order()) {
      // T within <S>: the instance just lives in the subgroup. T outside:
      // the reduction splits off the single deficient coset.
      bool splits_off_coset = !t_side.is_subset_of(span.carrier);
      out.branches.push_back(splits_off_coset ? "subgroup_reduction" : "rebase");
      ReduceResult red = reduce_to_generated(s, t_side, 2);
      if (std::holds_alternative<AlreadyPeriodicPart>(red)) {
        line(level, "reduction_rest_periodic", sumset(c, span.carrier) == c, "T+S is <S>-periodic");
        return span.carrier;
      }
      const Reduction& r = std::get<Reduction>(red);
      GroupSubset rest = t_side - r.t_prime;
      line(level, "reduction_rest_periodic", rest.empty() || sumset(rest, span.carrier) == rest);
      line(level, "reduction_surviving_hypothesis",
           sumset(r.t_prime, s).size() <= r.t_prime.size() + s.size() - 2);
      SubgroupEmbedding em = subgroup_as_group(g, span);
      GroupSubset t_sub = em.restrict(r.t_prime.translate(g.neg(r.a)));
      GroupSubset s_sub = em.restrict(s);
      GroupSubset n_sub = rec(em.sub, s_sub, t_sub, level + 1);
      GroupSubset n = em.extend(n_sub, g);
      line(level, "reduction_conclusion", n.size() > 1 && sumset(c, n) == c);
      return n;
    }

    GroupSubset t_dual = c.complement();
    if (t_dual.size() < t_side.size()) {
      out.branches.push_back("duality_reduction");
      if (t_dual.empty()) {
        line(level, "full_sumset_periodic", c.size() == g.order(), "T+S = G");
        return GroupSubset::whole(g);
      }
      GroupSubset neg_s = s.reflect();
      GroupSubset d2 = sumset(t_dual, neg_s);
      line(level, "duality_derived_hypothesis", d2.size() <= t_dual.size() + s.size() - 2,
           "|T^S - S|=" + std::to_string(d2.size()));
      GroupSubset n = rec(g, neg_s, t_dual, level + 1);
      line(level, "duality_conclusion", n.size() > 1 && sumset(c, n) == c);
      return n;
    }

    return main_body(g, s, t_side, c, level);
  }

  GroupSubset main_body(const Group& g, GroupSubset s, const GroupSubset& t, const GroupSubset& c, int level) {
    const int n = g.order();
    line(level, "standing_reduction", s.size() <= t.size() && t.size() <= n - c.size(),
         "|S| <= |T| <= |T^S|");
    line(level, "two_thirds_bound", 3 * c.size() <= 2 * n - 2,
         "3|S+T| = " + std::to_string(3 * c.size()) + " vs 2|G|-2 = " + std::to_string(2 * n - 2));

    const FragmentReport& rep = atoms_of(g, s);
    Subgroup h = subgroup_from_carrier(rep.atoms_containing_zero.front());
    int kappa = rep.kappa1;
    line(level, "atom_nontrivial_proper", h.order() >= 2 && h.order() < n,
         "|H|=" + std::to_string(h.order()));
    line(level, "kappa_bound", kappa <= s.size() - 2,
         "kappa=" + std::to_string(kappa) + " |S|=" + std::to_string(s.size()));

    // Normalize: 0 must lie in a largest H-part of S. Translating S by an
    // element of S keeps the hypothesis, the fragment family and all part
    // sizes, so this is lossless.
    int a_shift = 0;
    {
      HDecomposition pre = h_decompose(s, h);
      int best = 0;
      for (const auto& p : pre.parts) best = std::max(best, p.trace.size());
      const GroupSubset* zero_part = nullptr;
      for (const auto& p : pre.parts) {
        if (p.trace.contains(0)) zero_part = &p.trace;
      }
      if (zero_part == nullptr || zero_part->size() < best) {
        for (const auto& p : pre.parts) {
          if (p.trace.size() == best) {
            a_shift = p.trace.bits().find_first();
            break;
          }
        }
        s = s.translate(g.neg(a_shift));
      }
    }
    GroupSubset c2 = sumset(t, s);
    line(level, "normalization_keeps_sum_size", c2.size() == c.size());
    GroupSubset hs = sumset(h.carrier, s);
    line(level, "normalization_keeps_atom", hs.size() - h.order() == kappa && hs.size() <= n - 1);

    // H-decomposition of S: zero part first (it has maximal size), the rest
    // by size descending with coset representative as tie-break.
    HDecomposition sd = h_decompose(s, h);
    std::vector<GroupSubset> s_parts;
    {
      std::vector<const HDecompositionPart*> rest;
      const HDecompositionPart* zero_part = nullptr;
      for (const auto& p : sd.parts) {
        if (p.trace.contains(0))
          zero_part = &p;
        else
          rest.push_back(&p);
      }
      std::stable_sort(rest.begin(), rest.end(), [](const HDecompositionPart* x, const HDecompositionPart* y) {
        if (x->trace.size() != y->trace.size()) return x->trace.size() > y->trace.size();
        return x->coset_rep < y->coset_rep;
      });
      s_parts.push_back(zero_part->trace);
      for (auto* p : rest) s_parts.push_back(p->trace);
      bool sorted = true;
      for (std::size_t i = 1; i < s_parts.size(); i++) {
        if (s_parts[i - 1].size() < s_parts[i].size()) sorted = false;
      }
      line(level, "zero_part_maximal", sorted, "S_0 contains 0 and has maximal size");
    }
    const int u = static_cast<int>(s_parts.size()) - 1;
    line(level, "kappa_equals_u_h", kappa == u * h.order());
    for (int j = 0; j <= u; j++) {
      int acc = 0;
      for (int i = u - j; i <= u; i++) acc += s_parts[i].size();
      line(level, "s_tail_bound_j" + std::to_string(j), acc >= j * h.order() + 2,
           std::to_string(acc) + " >= " + std::to_string(j * h.order() + 2));
    }
    line(level, "s0_generates_atom",
         2 * s_parts[0].size() >= h.order() + 2 &&
             subgroup_generated(g, s_parts[0]).carrier == h.carrier);

    QuotientMap qm = quotient(g, h);
    GroupSubset phi_s = qm.push(s);
    GroupSubset phi_t = qm.push(t);
    const int q = qm.order();
    const int tc = phi_t.size() - 1;
    line(level, "phi_s_size", phi_s.size() == u + 1);
    int qk = kappa1(qm.quotient_group, phi_s,
                    qm.quotient_group.order() <= 20 ? Kappa1Engine::Exhaustive : Kappa1Engine::Flow);
    line(level, "quotient_kappa", qk == u, "kappa1(phi(S))=" + std::to_string(qk));
    line(level, "t_ge_u", tc >= u);
    line(level, "quotient_room", q >= (u + 1) + (tc + 1) - 1,
         "q=" + std::to_string(q) + " |phi(S)|+|phi(T)|-1=" + std::to_string(u + tc + 1));
    const int ell = std::min(q - tc - 1, u);
    line(level, "ell_equals_u", ell == u);
    out.branches.push_back(u == 1 ? "main_u1" : "main_u2plus");

    // T-decomposition indexed by coset representative order.
    HDecomposition td = h_decompose(t, h);
    std::vector<GroupSubset> t_parts;
    std::vector<int> t_cosets;
    for (const auto& p : td.parts) {
      t_parts.push_back(p.trace);
      t_cosets.push_back(qm.coset_index[p.coset_rep]);
    }
    line(level, "phi_t_size", static_cast<int>(t_parts.size()) == tc + 1);

    std::vector<int> s_cosets(u + 1);
    for (int j = 0; j <= u; j++) s_cosets[j] = qm.coset_index[s_parts[j].bits().find_first()];
    line(level, "zero_part_in_kernel", s_cosets[0] == 0);

    // E_i, W, P.
    std::vector<GroupSubset> e_sets;
    std::vector<int> w_set, p_set;
    for (int i = 0; i <= tc; i++) {
      GroupSubset coset = sumset(t_parts[i], h.carrier);
      e_sets.push_back(c2 & coset);
      if (e_sets.back().size() < h.order())
        w_set.push_back(i);
      else
        p_set.push_back(i);
    }

    // Valid matchings: J ⊆ [0,t] with |J| = ell and injective coset targets
    // phi(T_i) + phi(S_{m_i}) outside phi(T). Chosen J maximizes |J ∩ P|.
    std::vector<std::vector<std::pair<int, int>>> edges(tc + 1);  // i -> (target coset, m)
    for (int i = 0; i <= tc; i++) {
      for (int j = 1; j <= u; j++) {
        int target = qm.quotient_group.add(t_cosets[i], s_cosets[j]);
        if (!phi_t.contains(target)) edges[i].emplace_back(target, j);
      }
    }
    std::vector<std::pair<std::vector<int>, std::vector<int>>> matchings;  // (J, m aligned)
    {
      std::vector<int> cur_j, cur_m;
      std::vector<char> used(q, 0);
      auto dfs = [&](auto&& self, int i) -> void {
        if (static_cast<int>(cur_j.size()) == ell) {
          matchings.emplace_back(cur_j, cur_m);
          return;
        }
        if (i > tc || tc + 1 - i < ell - static_cast<int>(cur_j.size())) return;
        self(self, i + 1);  // skip i
        for (auto [target, m] : edges[i]) {
          if (used[target]) continue;
          used[target] = 1;
          cur_j.push_back(i);
          cur_m.push_back(m);
          self(self, i + 1);
          cur_j.pop_back();
          cur_m.pop_back();
          used[target] = 0;
        }
      };
      dfs(dfs, 0);
    }
    line(level, "matching_exists", !matchings.empty(),
         std::to_string(matchings.size()) + " valid matchings of size " + std::to_string(ell));
    if (matchings.empty()) {
      out.branches.push_back("aborted");
      return GroupSubset::singleton(g, 0);
    }
    // Cross-check existence through the matching guarantee on the quotient
    // Cayley graph.
    {
      Digraph phi_cay = cayley_digraph(qm.quotient_group, phi_s);
      Bitset x(q);
      phi_t.for_each([&](int e) { x.set(e); });
      auto pairs = strong_matching(phi_cay, x, ell, /*check_kappa=*/false);
      line(level, "strong_matching_applies", static_cast<int>(pairs.size()) == ell);
    }
    auto p_overlap = [&](const std::vector<int>& j_list) {
      int o = 0;
      for (int i : j_list)
        if (std::find(w_set.begin(), w_set.end(), i) == w_set.end()) o++;
      return o;
    };
    std::size_t best_idx = 0;
    int best_overlap = -1;
    for (std::size_t mi = 0; mi < matchings.size(); mi++) {
      int o = p_overlap(matchings[mi].first);
      if (o > best_overlap) {
        best_overlap = o;
        best_idx = mi;
      }
    }
    std::vector<int> j_set = matchings[best_idx].first;
    std::vector<int> m_map = matchings[best_idx].second;
    std::vector<int> i_set;
    for (int i = 0; i <= tc; i++)
      if (std::find(j_set.begin(), j_set.end(), i) == j_set.end()) i_set.push_back(i);
    line(level, "i_nonempty", !i_set.empty());

    // R = (S+T) minus the covered cosets.
    GroupSubset covered(g);
    covered = sumset(t, h.carrier);
    for (std::size_t ji = 0; ji < j_set.size(); ji++) {
      GroupSubset block = sumset(sumset(t_parts[j_set[ji]], s_parts[m_map[ji]]), h.carrier);
      covered = covered | block;
    }
    GroupSubset r_set = c2 - covered;
    line(level, "r_empty", r_set.empty(), "|R|=" + std::to_string(r_set.size()));
    line(level, "quotient_sum_count", qm.push(c2).size() == (u + 1) + (tc + 1) - 1,
         "|phi(S+T)|=" + std::to_string(qm.push(c2).size()));

    // Claim 3.
    int j_cap_p = 0;
    for (int i : j_set)
      if (std::find(p_set.begin(), p_set.end(), i) != p_set.end()) j_cap_p++;
    line(level, "j_meets_p", j_set.empty() || j_cap_p > 0,
         "|J ∩ P|=" + std::to_string(j_cap_p));

    // F (recorded; its emptiness is not itself a claim).
    std::vector<int> f_set;
    if (!w_set.empty()) {
      GroupSubset w_cosets(g);
      for (int i : w_set) w_cosets = w_cosets | sumset(t_parts[i], h.carrier);
      for (int i : i_set) {
        if (std::find(p_set.begin(), p_set.end(), i) == p_set.end()) continue;
        if (sumset(t_parts[i], s).intersects(w_cosets)) f_set.push_back(i);
      }
    }

    // Claim 4 and the final inequality.
    bool final_ok = true;
    for (int k = 0; k <= tc; k++) {
      if (t_parts[k].size() + s_parts[std::max(u - 1, 0)].size() <= h.order()) final_ok = false;
    }
    line(level, "pigeonhole_threshold", final_ok, "|T_k| + |S_{u-1}| > |H| for all k");
    bool full_products = true;
    for (int i = 0; i <= tc && full_products; i++) {
      for (int j = 0; j <= u - 1 && full_products; j++) {
        if (sumset(t_parts[i], s_parts[j]) != sumset(sumset(t_parts[i], h.carrier), s_parts[j])) full_products = false;
      }
    }
    line(level, "full_coset_products", full_products);

    // D, C, FF.
    std::vector<int> d_set;
    for (std::size_t ji = 0; ji < j_set.size(); ji++) {
      GroupSubset block = sumset(sumset(t_parts[j_set[ji]], s_parts[m_map[ji]]), h.carrier);
      if (!block.is_subset_of(c2)) d_set.push_back(static_cast<int>(ji));
    }
    bool d_mi_u = true;
    for (int ji : d_set)
      if (m_map[ji] != u) d_mi_u = false;
    line(level, "d_parts_use_smallest", d_mi_u);
    GroupSubset c_rec = sumset(t, h.carrier);
    for (std::size_t ji = 0; ji < j_set.size(); ji++) {
      bool in_d = std::find(d_set.begin(), d_set.end(), static_cast<int>(ji)) != d_set.end();
      if (in_d)
        c_rec = c_rec | sumset(t_parts[j_set[ji]], s_parts[u]);
      else
        c_rec = c_rec | sumset(sumset(t_parts[j_set[ji]], s_parts[m_map[ji]]), h.carrier);
    }
    line(level, "sum_reconstruction", c_rec == c2, "T+S = C");

    // Q = <S_u - S_u> and D'.
    GroupSubset su_diffs = sumset(s_parts[u], s_parts[u].reflect());
    Subgroup q_sub = subgroup_generated(g, su_diffs);
    line(level, "su_size", s_parts[u].size() >= 2 && q_sub.order() >= s_parts[u].size());
    std::vector<int> d_prime;
    for (int ji : d_set) {
      GroupSubset block = sumset(t_parts[j_set[ji]], s_parts[m_map[ji]]);
      if (sumset(block, q_sub.carrier) != block) d_prime.push_back(ji);
    }
    line(level, "d_prime_bound", d_prime.size() <= 1, "|D'|=" + std::to_string(d_prime.size()));

    GroupSubset n_out(g);
    if (d_prime.empty()) {
      n_out = q_sub.carrier;
    } else {
      int ji = d_prime.front();
      GroupSubset block = sumset(t_parts[j_set[ji]], s_parts[u]);
      line(level, "d_prime_hypothesis",
           block.size() <= t_parts[j_set[ji]].size() + s_parts[u].size() - 2);
      Subgroup m_sub = period(block);
      n_out = m_sub.carrier & q_sub.carrier;
    }
    line(level, "final_periodicity", n_out.size() > 1 && sumset(c2, n_out) == c2,
         "|N|=" + std::to_string(n_out.size()));

    TraceMainBody mb;
    mb.group = g;
    mb.s = s;
    mb.t = t;
    mb.s_translation = a_shift;
    mb.atom = h;
    mb.kappa = kappa;
    mb.phi = qm;
    mb.u = u;
    mb.t_classes = tc;
    mb.q = q;
    mb.ell = ell;
    mb.s_parts = std::move(s_parts);
    mb.s_part_cosets = std::move(s_cosets);
    mb.t_parts = std::move(t_parts);
    mb.t_part_cosets = std::move(t_cosets);
    mb.e_sets = std::move(e_sets);
    mb.j_set = std::move(j_set);
    mb.m_map = std::move(m_map);
    mb.i_set = std::move(i_set);
    mb.w_set = std::move(w_set);
    mb.p_set = std::move(p_set);
    mb.f_set = std::move(f_set);
    mb.r_set = std::move(r_set);
    mb.d_set = std::move(d_set);
    mb.d_prime = std::move(d_prime);
    mb.q_sub = std::move(q_sub);
    mb.c_set = std::move(c_rec);
    mb.n_out = n_out;
    out.main = std::move(mb);
    return n_out;
  }
};

}  // namespace detail

// Builds the full trace without throwing; inspect .ok and .ledger.
inline ProofTrace build_proof_trace(const GroupSubset& s, const GroupSubset& t) {
  GroupSubset::check_same(s, t);
  if (s.empty() || t.empty()) fail(errc::empty_set, "trace needs nonempty sets");
  const Group& g = s.group();
  if (!s.contains(g.zero())) fail(errc::zero_missing, "0 must lie in S");
  if (s.size() > t.size()) fail(errc::precondition_unmet, "|S| <= |T| is required");
  if (sumset(s, t).size() > s.size() + t.size() - 2) {
    fail(errc::precondition_unmet, "|T+S| <= |T|+|S|-2 does not hold");
  }
  detail::TraceBuilder b;
  b.out.group = g;
  b.out.s = s;
  b.out.t = t;
  GroupSubset n = b.rec(g, s, t, 0);
  b.out.stabilizer_n = n;
  GroupSubset c = sumset(s, t);
  b.line(0, "top_periodicity", n.size() > 1 && sumset(c, n) == c && carrier_is_subgroup(n));
  return std::move(b.out);
}

// Throws trace_error (carrying the full trace) when any ledger line fails.
inline ProofTrace proof_trace(const GroupSubset& s, const GroupSubset& t) {
  ProofTrace tr = build_proof_trace(s, t);
  if (!tr.ok) throw trace_error(std::move(tr));
  return tr;
}

// ---------------------------------------------------------------------------
// J-selection audit: the recorded J must be a valid matching and maximize
// |J ∩ P| over every valid matching, independently enumerated.
// ---------------------------------------------------------------------------

struct JSelectionIssue {
  std::string what;
  int best_overlap = 0;
  int recorded_overlap = 0;
};

inline std::optional<JSelectionIssue> check_j_selection(const ProofTrace& tr) {
  if (!tr.main) fail(errc::precondition_unmet, "trace has no main-body record");
  const TraceMainBody& mb = *tr.main;
  if (mb.ell != mb.u) fail(errc::precondition_unmet, "audit applies to traces with ell = u");
  const Group& qg = mb.phi.quotient_group;
  std::vector<char> in_phi_t(mb.q, 0);
  for (int ci : mb.t_part_cosets) in_phi_t[ci] = 1;
  auto is_p = [&](int i) { return std::find(mb.p_set.begin(), mb.p_set.end(), i) != mb.p_set.end(); };

  // Validity of the recorded matching.
  if (static_cast<int>(mb.j_set.size()) != mb.ell) return JSelectionIssue{"recorded J has the wrong size"};
  std::vector<char> used(mb.q, 0);
  for (std::size_t ji = 0; ji < mb.j_set.size(); ji++) {
    int i = mb.j_set[ji];
    int m = mb.m_map[ji];
    if (m < 1 || m > mb.u) return JSelectionIssue{"m index out of range"};
    int target = qg.add(mb.t_part_cosets[i], mb.s_part_cosets[m]);
    if (in_phi_t[target]) return JSelectionIssue{"target coset lands inside phi(T)"};
    if (used[target]) return JSelectionIssue{"duplicate target coset"};
    used[target] = 1;
  }
  int recorded = 0;
  for (int i : mb.j_set)
    if (is_p(i)) recorded++;

  // Exhaustive maximum over all valid matchings (plain brute force).
  int best = -1;
  std::vector<int> stack_j;
  std::vector<char> used2(mb.q, 0);
  auto dfs = [&](auto&& self, int i, int overlap) -> void {
    if (static_cast<int>(stack_j.size()) == mb.ell) {
      best = std::max(best, overlap);
      return;
    }
    if (i > mb.t_classes) return;
    self(self, i + 1, overlap);
    for (int m = 1; m <= mb.u; m++) {
      int target = qg.add(mb.t_part_cosets[i], mb.s_part_cosets[m]);
      if (in_phi_t[target] || used2[target]) continue;
      used2[target] = 1;
      stack_j.push_back(i);
      self(self, i + 1, overlap + (is_p(i) ? 1 : 0));
      stack_j.pop_back();
      used2[target] = 0;
    }
  };
  dfs(dfs, 0, 0);
  if (recorded < best) return JSelectionIssue{"a matching with larger |J ∩ P| exists", best, recorded};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Admissible-instance sweep: every (S, T) with 0 in S, 0 in T (translation
// symmetry), |S| <= |T| and |T+S| <= |T|+|S|-2 is traced.
// ---------------------------------------------------------------------------

struct TraceSweepOptions {
  int workers = 1;
  bool require_generating = false;  // restrict S to generating sets only
  std::uint64_t max_violation_details = 16;
};

struct TraceSweepReport {
  std::vector<int> orders;
  std::uint64_t candidate_pairs = 0;
  std::uint64_t instances_traced = 0;
  std::uint64_t ledger_lines = 0;
  std::uint64_t violations = 0;
  std::vector<std::string> violation_details;
  std::vector<std::pair<std::string, std::uint64_t>> branch_coverage;
  std::vector<std::pair<std::string, std::uint64_t>> line_coverage;  // evaluations per ledger line name
  int workers = 1;
};

inline TraceSweepReport trace_sweep(const Group& g, const TraceSweepOptions& opt) {
  const int n = g.order();
  if (n > 20) fail(errc::budget_exceeded, "trace sweeps need |G| <= 20");
  SmallGroupOps ops(g);
  const std::uint64_t half = std::uint64_t(1) << (n - 1);

  struct Shard {
    std::uint64_t candidates = 0, traced = 0, lines = 0, violations = 0;
    std::vector<std::string> details;
    std::map<std::string, std::uint64_t> coverage;
    std::map<std::string, std::uint64_t> line_counts;
  };
  const int workers = std::max(1, opt.workers);
  std::vector<Shard> shards(workers);

  auto run_shard = [&](int w) {
    Shard& shard = shards[w];
    detail::TraceBuilder scratch;  // shares the atom cache across one shard
    std::uint64_t lo = (half * w) / workers;
    std::uint64_t hi = (half * (w + 1)) / workers;
    for (std::uint64_t sh = lo; sh < hi; sh++) {
      std::uint64_t s_mask = (sh << 1) | 1;
      if (opt.require_generating && ops.span(s_mask) != ops.full_mask()) continue;
      int s_size = std::popcount(s_mask);
      std::vector<std::uint64_t> trans_s(n);
      for (int e = 0; e < n; e++) trans_s[e] = ops.translate(s_mask, e);
      for (std::uint64_t th = 0; th < half; th++) {
        std::uint64_t t_mask = (th << 1) | 1;
        int t_size = std::popcount(t_mask);
        if (s_size > t_size) continue;
        std::uint64_t c = 0;
        std::uint64_t b = t_mask;
        while (b) {
          int e = std::countr_zero(b);
          b &= b - 1;
          c |= trans_s[e];
        }
        if (std::popcount(c) > s_size + t_size - 2) continue;
        shard.candidates++;
        GroupSubset s_set = ops.to_subset(s_mask);
        GroupSubset t_set = ops.to_subset(t_mask);
        detail::TraceBuilder builder;
        builder.atom_cache.swap(scratch.atom_cache);
        builder.out.group = g;
        builder.out.s = s_set;
        builder.out.t = t_set;
        std::string thrown;
        try {
          GroupSubset nn = builder.rec(g, s_set, t_set, 0);
          builder.out.stabilizer_n = nn;
          GroupSubset cs = sumset(s_set, t_set);
          builder.line(0, "top_periodicity", nn.size() > 1 && sumset(cs, nn) == cs && carrier_is_subgroup(nn));
        } catch (const error& e) {
          builder.out.ok = false;
          thrown = e.what();
        }
        builder.atom_cache.swap(scratch.atom_cache);
        shard.traced++;
        shard.lines += builder.out.ledger.size();
        for (const std::string& br : builder.out.branches) shard.coverage[br]++;
        for (const LedgerLine& l : builder.out.ledger) shard.line_counts[l.name]++;
        if (!builder.out.ok) {
          shard.violations++;
          if (shard.details.size() < opt.max_violation_details) {
            shard.details.push_back("S=" + std::to_string(s_mask) + " T=" + std::to_string(t_mask) + ": " +
                                    (thrown.empty() ? builder.out.first_failure() : thrown));
          }
        }
      }
    }
  };

  if (workers == 1) {
    run_shard(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; w++) threads.emplace_back(run_shard, w);
    for (auto& t : threads) t.join();
  }

  TraceSweepReport rep;
  rep.orders = g.is_product() ? g.factor_orders() : std::vector<int>{};
  rep.workers = workers;
  std::map<std::string, std::uint64_t> coverage, line_counts;
  for (const auto& s : shards) {
    rep.candidate_pairs += s.candidates;
    rep.instances_traced += s.traced;
    rep.ledger_lines += s.lines;
    rep.violations += s.violations;
    for (const auto& d : s.details) {
      if (rep.violation_details.size() < opt.max_violation_details) rep.violation_details.push_back(d);
    }
    for (const auto& [k, v] : s.coverage) coverage[k] += v;
    for (const auto& [k, v] : s.line_counts) line_counts[k] += v;
  }
  for (const auto& [k, v] : coverage) rep.branch_coverage.emplace_back(k, v);
  for (const auto& [k, v] : line_counts) rep.line_coverage.emplace_back(k, v);
  return rep;
}

}  // namespace isokit
