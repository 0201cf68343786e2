// Command-line front-end: every toolkit operation behind one subcommand each,
// with JSON reports on stdout (or --output) and deterministic seeded scans.
//
// Exit codes: 0 = pass, 1 = violation found, 2 = usage or input error.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "isokit/json_io.hpp"

namespace {

using namespace isokit;

struct RunConfig {
  int max_group_order = kDefaultMaxGroupOrder;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string output_path;
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) fail(errc::parse_error, "cannot open output path " + cfg.output_path);
    out << text << "\n";
  }
}

Digraph load_digraph(const std::string& path, bool* loops_added = nullptr) {
  DigraphReadResult r;
  if (path == "-") {
    r = read_digraph(std::cin);
  } else {
    std::ifstream in(path);
    if (!in) fail(errc::parse_error, "cannot open graph file " + path);
    r = read_digraph(in);
  }
  if (loops_added) *loops_added = r.loops_added;
  return r.graph;
}

Bitset parse_vertex_set(const std::string& text, int n) {
  Bitset b(n);
  std::size_t i = 0;
  detail::skip_ws(text, i);
  if (i >= text.size() || text[i] != '{') fail(errc::parse_error, "expected '{'");
  i++;
  detail::skip_ws(text, i);
  if (i < text.size() && text[i] == '}') return b;
  while (true) {
    int v = detail::parse_int(text, i);
    if (v < 0 || v >= n) fail(errc::index_out_of_range, "vertex " + std::to_string(v));
    b.set(v);
    detail::skip_ws(text, i);
    if (i < text.size() && text[i] == ',') {
      i++;
      continue;
    }
    break;
  }
  if (i >= text.size() || text[i] != '}') fail(errc::parse_error, "expected '}'");
  return b;
}

int exit_code_for(const error& e) {
  switch (e.code()) {
    case errc::ledger_violation:
    case errc::no_matching:
    case errc::not_maximal:
    case errc::internal:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  if (const char* env = std::getenv("ISOKIT_MAX_GROUP_ORDER")) cfg.max_group_order = std::atoi(env);
  if (const char* env = std::getenv("ISOKIT_WORKERS")) cfg.workers = std::max(1, std::atoi(env));

  CLI::App app{"isokit: sumsets, Cayley-graph connectivity and exhaustive Kneser verification"};
  app.require_subcommand(1);
  app.add_option("--output", cfg.output_path, "write the report to this path instead of stdout");
  app.add_option("--max-order", cfg.max_group_order, "maximum allowed group order")
      ->envname("ISOKIT_MAX_GROUP_ORDER");
  app.add_option("--workers", cfg.workers, "worker threads for scans")->envname("ISOKIT_WORKERS");

  std::function<int()> action;

  // --- sumset ---
  {
    auto* c = app.add_subcommand("sumset", "Minkowski sum of two sets");
    auto group = std::make_shared<std::string>();
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    c->add_option("--group", *group)->required();
    c->add_option("--a", *a)->required();
    c->add_option("--b", *b)->required();
    c->callback([&, group, a, b] {
      action = [&, group, a, b] {
        Group g = make_group(parse_group(*group), cfg.max_group_order);
        GroupSubset sum = sumset(parse_set(*a, g), parse_set(*b, g));
        emit(cfg, json{{"group", group_label(g)}, {"sum", to_json(sum)}, {"text", render_set(sum)}}.dump());
        return 0;
      };
    });
  }

  // --- period ---
  {
    auto* c = app.add_subcommand("period", "stabilizer subgroup {g : A+g = A}");
    auto group = std::make_shared<std::string>();
    auto set = std::make_shared<std::string>();
    c->add_option("--group", *group)->required();
    c->add_option("--set", *set)->required();
    c->callback([&, group, set] {
      action = [&, group, set] {
        Group g = make_group(parse_group(*group), cfg.max_group_order);
        Subgroup h = period(parse_set(*set, g));
        emit(cfg, json{{"group", group_label(g)},
                       {"period", to_json(h.carrier)},
                       {"periodic", h.order() > 1},
                       {"text", render_set(h.carrier)}}
                      .dump());
        return 0;
      };
    });
  }

  // --- kappa1 ---
  {
    auto* c = app.add_subcommand("kappa1", "1-connectivity of Cay(G, S)");
    auto group = std::make_shared<std::string>();
    auto set = std::make_shared<std::string>();
    auto engine = std::make_shared<std::string>("auto");
    c->add_option("--group", *group)->required();
    c->add_option("--set", *set)->required();
    c->add_option("--engine", *engine)->check(CLI::IsMember({"auto", "exhaustive", "flow", "both"}));
    c->callback([&, group, set, engine] {
      action = [&, group, set, engine] {
        Group g = make_group(parse_group(*group), cfg.max_group_order);
        GroupSubset s = parse_set(*set, g);
        int value;
        if (*engine == "both") {
          int e = kappa1(g, s, Kappa1Engine::Exhaustive);
          int f = kappa1(g, s, Kappa1Engine::Flow);
          if (e != f) {
            emit(cfg, "engine disagreement: exhaustive=" + std::to_string(e) + " flow=" + std::to_string(f));
            return 1;
          }
          value = e;
        } else if (*engine == "exhaustive") {
          value = kappa1(g, s, Kappa1Engine::Exhaustive);
        } else if (*engine == "flow") {
          value = kappa1(g, s, Kappa1Engine::Flow);
        } else {
          value = kappa1(g, s, g.order() <= 20 ? Kappa1Engine::Exhaustive : Kappa1Engine::Flow);
        }
        emit(cfg, std::to_string(value));
        return 0;
      };
    });
  }

  // --- atoms ---
  {
    auto* c = app.add_subcommand("atoms", "kappa1, alpha1 and the 1-atoms containing 0");
    auto group = std::make_shared<std::string>();
    auto set = std::make_shared<std::string>();
    c->add_option("--group", *group)->required();
    c->add_option("--set", *set)->required();
    c->callback([&, group, set] {
      action = [&, group, set] {
        Group g = make_group(parse_group(*group), cfg.max_group_order);
        emit(cfg, to_json(atoms(g, parse_set(*set, g))).dump());
        return 0;
      };
    });
  }

  // --- duality ---
  {
    auto* c = app.add_subcommand("duality", "check (X^S)^{-S} + S = X + S");
    auto group = std::make_shared<std::string>();
    auto set = std::make_shared<std::string>();
    auto x = std::make_shared<std::string>();
    auto random_count = std::make_shared<std::uint64_t>(0);
    c->add_option("--group", *group)->required();
    c->add_option("--set", *set, "connection set S (omit with --random)");
    c->add_option("--x", *x, "the set X (omit with --random)");
    c->add_option("--random", *random_count, "check this many seeded random (S, X) pairs instead");
    c->add_option("--seed", cfg.seed);
    c->callback([&, group, set, x, random_count] {
      action = [&, group, set, x, random_count] {
        Group g = make_group(parse_group(*group), cfg.max_group_order);
        const int n = g.order();
        std::uint64_t checked = 0;
        json witness;
        if (*random_count > 0) {
          for (std::uint64_t i = 0; i < *random_count && witness.is_null(); i++) {
            GroupSubset s(g), xs(g);
            for (int e = 0; e < n; e++) {
              if (detail::stream64(cfg.seed, 4 * i * n + e) & 1) s.insert(e);
              if (detail::stream64(cfg.seed, (4 * i + 2) * n + e) & 1) xs.insert(e);
            }
            s.insert(0);
            checked++;
            if (auto w = check_duality(s, xs)) {
              witness = json{{"s", to_json(s)}, {"x", to_json(xs)}, {"difference", to_json(*w)}};
            }
          }
        } else {
          if (set->empty() || x->empty()) fail(errc::parse_error, "need --set and --x, or --random");
          checked = 1;
          if (auto w = check_duality(parse_set(*set, g), parse_set(*x, g))) {
            witness = json{{"difference", to_json(*w)}};
          }
        }
        emit(cfg, json{{"group", group_label(g)},
                       {"checked", checked},
                       {"seed", cfg.seed},
                       {"witness", witness}}
                      .dump());
        return witness.is_null() ? 0 : 1;
      };
    });
  }

  // --- menger ---
  {
    auto* c = app.add_subcommand("menger", "k openly disjoint paths in a reflexive digraph");
    auto graph = std::make_shared<std::string>();
    auto source = std::make_shared<int>(0);
    auto sink = std::make_shared<int>(0);
    auto k = std::make_shared<int>(1);
    auto engine = std::make_shared<std::string>("contraction");
    c->add_option("--graph", *graph, "digraph file ('-' for stdin)")->required();
    c->add_option("--source", *source)->required();
    c->add_option("--sink", *sink)->required();
    c->add_option("--k", *k)->required();
    c->add_option("--engine", *engine)->check(CLI::IsMember({"contraction", "flow", "both"}));
    c->callback([&, graph, source, sink, k, engine] {
      action = [&, graph, source, sink, k, engine] {
        bool loops_added = false;
        Digraph g = load_digraph(*graph, &loops_added);
        json out;
        if (*engine == "both") {
          Fan f1 = menger_fan(g, *source, *sink, *k, FanEngine::Contraction);
          Fan f2 = menger_fan(g, *source, *sink, *k, FanEngine::Flow);
          out = json{{"contraction", to_json(f1)}, {"flow", to_json(f2)}};
        } else {
          Fan f = menger_fan(g, *source, *sink, *k,
                             *engine == "flow" ? FanEngine::Flow : FanEngine::Contraction);
          out = to_json(f);
        }
        if (loops_added) out["loops_added"] = true;
        emit(cfg, out.dump());
        return 0;
      };
    });
  }

  // --- strongmatch ---
  {
    auto* c = app.add_subcommand("strongmatch", "k matched pairs from X to its boundary");
    auto graph = std::make_shared<std::string>();
    auto xset = std::make_shared<std::string>();
    auto k = std::make_shared<int>(1);
    c->add_option("--graph", *graph)->required();
    c->add_option("--x", *xset, "vertex set, e.g. {0,2}")->required();
    c->add_option("--k", *k)->required();
    c->callback([&, graph, xset, k] {
      action = [&, graph, xset, k] {
        Digraph g = load_digraph(*graph);
        auto pairs = strong_matching(g, parse_vertex_set(*xset, g.size()), *k);
        json arr = json::array();
        for (auto [from, to] : pairs) arr.push_back(json{{"x", from}, {"y", to}});
        emit(cfg, json{{"pairs", arr}}.dump());
        return 0;
      };
    });
  }

  // --- verify ---
  {
    auto* c = app.add_subcommand("verify", "Kneser certificate for one pair (A, B)");
    auto group = std::make_shared<std::string>();
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    c->add_option("--group", *group)->required();
    c->add_option("--a", *a)->required();
    c->add_option("--b", *b)->required();
    c->callback([&, group, a, b] {
      action = [&, group, a, b] {
        Group g = make_group(parse_group(*group), cfg.max_group_order);
        KneserCertificate cert = verify_kneser(parse_set(*a, g), parse_set(*b, g));
        emit(cfg, to_json(cert).dump());
        return cert.verdict == KneserVerdict::Pass ? 0 : 1;
      };
    });
  }

  // --- trace ---
  {
    auto* c = app.add_subcommand("trace", "machine-checked proof walk for one instance (S, T)");
    auto group = std::make_shared<std::string>();
    auto s = std::make_shared<std::string>();
    auto t = std::make_shared<std::string>();
    c->add_option("--group", *group)->required();
    c->add_option("--s", *s)->required();
    c->add_option("--t", *t)->required();
    c->callback([&, group, s, t] {
      action = [&, group, s, t] {
        Group g = make_group(parse_group(*group), cfg.max_group_order);
        ProofTrace tr = build_proof_trace(parse_set(*s, g), parse_set(*t, g));
        emit(cfg, to_json(tr).dump());
        return tr.ok ? 0 : 1;
      };
    });
  }

  // --- scan ---
  {
    auto* c = app.add_subcommand("scan", "sweep all (or sampled) pairs, or all admissible trace instances");
    auto group = std::make_shared<std::string>();
    auto exhaustive = std::make_shared<bool>(false);
    auto traces = std::make_shared<bool>(false);
    auto csv = std::make_shared<bool>(false);
    c->add_option("--group", *group)->required();
    c->add_flag("--exhaustive", *exhaustive, "all nonempty pairs");
    c->add_option("--samples", cfg.sample_count, "sampled pair count");
    c->add_option("--seed", cfg.seed);
    c->add_flag("--traces", *traces, "run the proof-trace sweep instead of pair verification");
    c->add_flag("--csv", *csv, "emit the histogram as CSV");
    c->callback([&, group, exhaustive, traces, csv] {
      action = [&, group, exhaustive, traces, csv] {
        Group g = make_group(parse_group(*group), cfg.max_group_order);
        if (*traces) {
          TraceSweepOptions opt;
          opt.workers = cfg.workers;
          TraceSweepReport rep = trace_sweep(g, opt);
          emit(cfg, to_json(rep).dump());
          return rep.violations == 0 ? 0 : 1;
        }
        ScanOptions opt;
        opt.exhaustive = *exhaustive;
        opt.sample_count = cfg.sample_count;
        opt.seed = cfg.seed;
        opt.workers = cfg.workers;
        if (!*exhaustive && cfg.sample_count == 0) {
          fail(errc::parse_error, "need --exhaustive or --samples N");
        }
        ScanReport rep = kneser_scan(g, opt);
        emit(cfg, *csv ? histogram_csv(rep) : to_json(rep).dump());
        return rep.violations.empty() ? 0 : 1;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    return action();
  } catch (const error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
