#pragma once

#include <string>

#include <json.hpp>

#include "isokit/isoperimetry.hpp"
#include "isokit/kneser.hpp"
#include "isokit/menger.hpp"
#include "isokit/text_format.hpp"

namespace isokit {

// All reports serialize through ordered_json with deterministic member and
// element order, so identical runs produce byte-identical documents.
using json = nlohmann::ordered_json;

inline json to_json(const GroupSubset& s) {
  json arr = json::array();
  s.for_each([&](int e) { arr.push_back(e); });
  return arr;
}

inline std::string group_label(const Group& g) {
  if (g.is_product()) return render_group(GroupSpec{g.factor_orders()});
  return "table" + std::to_string(g.order());
}

inline json to_json(const FragmentReport& r) {
  json atoms = json::array();
  for (const auto& a : r.atoms_containing_zero) atoms.push_back(to_json(a));
  return json{{"kappa1", r.kappa1},
              {"alpha1", r.alpha1},
              {"atoms", atoms},
              {"witness", to_json(r.all_fragment_witness)}};
}

inline json to_json(const KneserCertificate& c) {
  return json{{"group", group_label(c.a.group())},
              {"a", to_json(c.a)},
              {"b", to_json(c.b)},
              {"sum", to_json(c.sum)},
              {"hypothesis_met", c.hypothesis_met},
              {"period", to_json(c.h.carrier)},
              {"bound", json{{"lhs", c.bound_lhs}, {"rhs", c.bound_rhs}}},
              {"verdict", c.verdict == KneserVerdict::Pass ? "Pass" : "Violation"}};
}

inline json to_json(const ScanReport& r) {
  json histo = json::object();
  for (const auto& [delta, count] : r.histogram) histo[std::to_string(delta)] = count;
  json violations = json::array();
  for (const auto& [a, b] : r.violations) violations.push_back(json{{"a", a}, {"b", b}});
  return json{{"group", render_group(GroupSpec{r.orders})},
              {"mode", r.exhaustive ? "exhaustive" : "sampled"},
              {"pairs_tested", r.pairs_tested},
              {"hypothesis_met", r.hypothesis_met},
              {"periodic_sums", r.periodic_sums},
              {"violations", violations},
              {"histogram", histo},
              {"branch_coverage", json::object()},
              {"seed", r.seed}};
}

inline std::string histogram_csv(const ScanReport& r) {
  std::string out = "delta,count\n";
  for (const auto& [delta, count] : r.histogram) {
    out += std::to_string(delta) + "," + std::to_string(count) + "\n";
  }
  return out;
}

inline json to_json(const TraceSweepReport& r) {
  json cov = json::object();
  for (const auto& [k, v] : r.branch_coverage) cov[k] = v;
  json lines = json::object();
  for (const auto& [k, v] : r.line_coverage) lines[k] = v;
  json details = json::array();
  for (const auto& d : r.violation_details) details.push_back(d);
  return json{{"group", render_group(GroupSpec{r.orders})},
              {"mode", "trace_sweep"},
              {"pairs_tested", r.candidate_pairs},
              {"instances_traced", r.instances_traced},
              {"ledger_lines", r.ledger_lines},
              {"violations", details},
              {"violation_count", r.violations},
              {"histogram", json::object()},
              {"branch_coverage", cov},
              {"line_coverage", lines},
              {"seed", 0}};
}

inline json to_json(const Fan& f) {
  json paths = json::array();
  for (const auto& p : f.paths) paths.push_back(p);
  return json{{"x", f.x}, {"targets", f.targets}, {"paths", paths}};
}

inline json to_json(const ProofTrace& t) {
  json ledger = json::array();
  for (const auto& l : t.ledger) {
    ledger.push_back(json{{"level", l.level}, {"name", l.name}, {"ok", l.ok}, {"detail", l.detail}});
  }
  json j{{"group", group_label(t.group)},
         {"s", to_json(t.s)},
         {"t", to_json(t.t)},
         {"branches", t.branches},
         {"ok", t.ok},
         {"stabilizer", to_json(t.stabilizer_n)},
         {"ledger", ledger}};
  if (t.main) {
    const TraceMainBody& m = *t.main;
    json s_parts = json::array(), t_parts = json::array(), e_sets = json::array();
    for (const auto& p : m.s_parts) s_parts.push_back(to_json(p));
    for (const auto& p : m.t_parts) t_parts.push_back(to_json(p));
    for (const auto& p : m.e_sets) e_sets.push_back(to_json(p));
    j["main"] = json{{"group", group_label(m.group)},
                     {"s", to_json(m.s)},
                     {"t", to_json(m.t)},
                     {"s_translation", m.s_translation},
                     {"atom", to_json(m.atom.carrier)},
                     {"kappa1", m.kappa},
                     {"u", m.u},
                     {"t", m.t_classes},
                     {"q", m.q},
                     {"ell", m.ell},
                     {"s_parts", s_parts},
                     {"t_parts", t_parts},
                     {"e_sets", e_sets},
                     {"j", m.j_set},
                     {"m", m.m_map},
                     {"i", m.i_set},
                     {"w", m.w_set},
                     {"p", m.p_set},
                     {"f", m.f_set},
                     {"r", to_json(m.r_set)},
                     {"d", m.d_set},
                     {"d_prime", m.d_prime},
                     {"q_subgroup", to_json(m.q_sub.carrier)},
                     {"c", to_json(m.c_set)},
                     {"n", to_json(m.n_out)}};
  }
  return j;
}

}  // namespace isokit
