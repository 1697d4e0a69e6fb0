// Acceptance sweep: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cvxagree/error.hpp"
#include "cvxagree/instances.hpp"
#include "cvxagree/oracle.hpp"
#include "cvxagree/scenario.hpp"
#include "cvxagree/serialize.hpp"
#include "cvxagree/verify.hpp"

using namespace cvxagree;

namespace {

constexpr std::uint64_t kRoot = 0xacce57;

struct Tally {
  std::size_t runs = 0;
  std::size_t failures = 0;
  std::string first;

  void fail(const std::string& what) {
    if (failures++ == 0) first = what;
  }
};

// Safe-area soundness accumulates over every compliant run of every criterion.
Tally g_safe_area;
std::size_t g_safe_area_rounds = 0;

// Criterion lines are collected and printed in order at the end.
std::map<int, std::string> g_lines;
bool g_all_passed = true;

void report(int id, bool pass, const std::string& detail) {
  g_lines[id] = "C" + std::to_string(id) + (pass ? " PASS " : " FAIL ") + detail;
  std::fprintf(stderr, "%s\n", g_lines[id].c_str());
  g_all_passed = g_all_passed && pass;
}

std::string describe(const Scenario& s) {
  return s.id + " n=" + std::to_string(s.n) + " f=" + std::to_string(s.f) + " adversary=" + s.adversary.policy +
         " seed=" + std::to_string(s.seed);
}

std::vector<Value> random_inputs(std::size_t n, std::size_t universe, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0, 0, kSeedInputs));
  std::vector<Value> xs;
  for (std::size_t i = 0; i < n; ++i) xs.push_back(static_cast<Value>(rng.below(universe)));
  return xs;
}

std::vector<std::size_t> last_f(std::size_t n, std::size_t f) {
  std::vector<std::size_t> out;
  for (std::size_t i = n - f; i < n; ++i) out.push_back(i);
  return out;
}

// Runs and validates one compliant scenario; returns the report.
TraceReport run_checked(const Scenario& s, Tally& tally, Trace* keep = nullptr) {
  ++tally.runs;
  Trace t = run_scenario(s);
  TraceReport rep = validate_trace(t);
  g_safe_area_rounds += rep.rounds_checked;
  ++g_safe_area.runs;
  if (rep.safe_area_violations > 0) g_safe_area.fail(describe(s) + ": safe-area violation");
  if (!t.summary.error.empty()) tally.fail(describe(s) + ": " + t.summary.error);
  else if (!rep.ok()) tally.fail(describe(s) + ": " + rep.failures.front());
  if (keep) *keep = std::move(t);
  return rep;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", x);
  return buf;
}

std::string tally_text(const Tally& t) {
  std::string s = "runs=" + std::to_string(t.runs) + " failures=" + std::to_string(t.failures);
  if (t.failures) s += " first=[" + t.first + "]";
  return s;
}

// ---------------------------------------------------------------------------

void tree_sweep() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, Graph>> graphs;
  for (std::size_t n : {5, 33, 257, 1025}) graphs.emplace_back("path" + std::to_string(n), path_graph(n));
  Rng rng(derive_seed(kRoot, 0, 0, 1));
  for (std::size_t k = 0; k < 50; ++k) {
    const std::size_t n = rng.between(5, 512);
    const double bias = (k % 5) / 4.0;
    graphs.emplace_back("tree" + std::to_string(k), random_tree(n, rng, bias));
  }

  Tally tally;
  std::size_t contraction = 0, rounds_total = 0;
  std::size_t max_converged = 0;
  const std::vector<std::string> policies{"silent", "consistent-lie", "partition-delay"};
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    for (const auto& [n, f] : {std::pair<std::size_t, std::size_t>{4, 1}, {7, 2}}) {
      for (std::size_t p = 0; p < policies.size(); ++p) {
        for (std::uint64_t run = 0; run < 100; ++run) {
          Scenario s;
          s.id = graphs[g].first;
          s.protocol = ProtocolKind::Tree;
          s.graph = graphs[g].second;
          s.n = n;
          s.f = f;
          s.faulty = last_f(n, f);
          s.seed = derive_seed(kRoot, g, n * 8 + p, run);
          s.inputs = random_inputs(n, s.graph->vertex_count(), s.seed);
          s.adversary.policy = policies[p];
          Trace t;
          const TraceReport rep = run_checked(s, tally, &t);
          contraction += rep.contraction_violations;
          rounds_total += rep.rounds_checked;
          if (t.summary.converged_round) max_converged = std::max(max_converged, *t.summary.converged_round);
        }
      }
    }
  }
  const double secs = seconds_since(t0);

  // The three sweep adversaries give every correct processor the same view,
  // so contraction is also checked under per-receiver random delivery.
  Tally extra;
  std::size_t extra_contraction = 0, extra_rounds = 0, slowest = 0;
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    for (const auto& [n, f] : {std::pair<std::size_t, std::size_t>{4, 1}, {7, 2}, {10, 3}}) {
      for (std::uint64_t run = 0; run < 20; ++run) {
        Scenario s;
        s.id = graphs[g].first;
        s.protocol = ProtocolKind::Tree;
        s.graph = graphs[g].second;
        s.n = n;
        s.f = f;
        s.faulty = last_f(n, f);
        s.seed = derive_seed(kRoot, g, n * 8 + 7, run);
        s.inputs = random_inputs(n, s.graph->vertex_count(), s.seed);
        s.adversary.policy = "random";
        Trace t;
        const TraceReport rep = run_checked(s, extra, &t);
        extra_contraction += rep.contraction_violations;
        extra_rounds += rep.rounds_checked;
        if (t.summary.converged_round) slowest = std::max(slowest, *t.summary.converged_round);
      }
    }
  }
  report(1, tally.failures == 0 && secs < 300,
         tally_text(tally) + " graphs=" + std::to_string(graphs.size()) +
             " max_converged_round=" + std::to_string(max_converged) + " time=" + fmt(secs) + "s");
  report(2, contraction == 0 && extra_contraction == 0 && extra.failures == 0,
         "tree_rounds=" + std::to_string(rounds_total) + " violations=" + std::to_string(contraction) +
             " random_delivery: " + tally_text(extra) + " rounds=" + std::to_string(extra_rounds) +
             " violations=" + std::to_string(extra_contraction) + " max_converged_round=" + std::to_string(slowest));
}

void chordal_sweep() {
  Rng rng(derive_seed(kRoot, 0, 0, 4));
  Tally tally;
  std::size_t fallbacks = 0;
  std::map<std::size_t, std::size_t> by_omega;
  const std::vector<std::string> policies{"silent", "consistent-lie", "partition-delay", "random"};
  for (std::size_t k = 0; k < 50; ++k) {
    const std::size_t cap = 2 + k % 3;
    Graph g = random_chordal(rng.between(cap + 2, 64), cap, rng);
    const std::size_t omega = clique_number(g);
    ++by_omega[omega];
    for (std::uint64_t run = 0; run < 20; ++run) {
      Scenario s;
      s.id = "chordal" + std::to_string(k);
      s.protocol = ProtocolKind::Chordal;
      s.graph = g;
      s.f = 1 + run % 2;
      s.n = std::max(3 * s.f, (omega + 1) * s.f) + 1 + run % 3;
      s.faulty = last_f(s.n, s.f);
      s.seed = derive_seed(kRoot, k, run, 4);
      s.inputs = random_inputs(s.n, g.vertex_count(), s.seed);
      s.adversary.policy = policies[run % policies.size()];
      Trace t;
      run_checked(s, tally, &t);
      fallbacks += t.summary.fallback_count;
      const auto ys = trace_outputs(t);
      if (!is_clique(g, ValueSet(g.vertex_count(), std::span<const Value>(ys)))) {
        tally.fail(describe(s) + ": outputs are not a clique");
      }
    }
  }
  std::string omegas;
  for (const auto& [w, c] : by_omega) omegas += (omegas.empty() ? "" : ",") + std::to_string(w) + ":" + std::to_string(c);
  const bool covered = by_omega.count(2) && by_omega.count(3) && by_omega.count(4);
  report(4, tally.failures == 0 && covered,
         tally_text(tally) + " omega_graphs={" + omegas + "} fallback_events=" + std::to_string(fallbacks));
}

void lattice_sweep() {
  Rng rng(derive_seed(kRoot, 0, 0, 5));
  Tally tally;
  std::size_t non_tree = 0;
  const std::vector<std::string> policies{"silent", "consistent-lie", "partition-delay", "random"};
  for (std::size_t k = 0; k < 50; ++k) {
    const std::size_t size = rng.between(3, 32);
    const auto shape = k % 2 ? LatticeShape::TreeOrder : LatticeShape::UnionFamily;
    Semilattice l = random_cycle_free_lattice(size, rng, shape);
    const std::size_t h = height(l);
    // A tree order has exactly one upper cover per non-top element.
    bool tree_like = true;
    for (Value u = 0; u < l.size(); ++u) {
      std::size_t covers = 0;
      for (Value v = 0; v < l.size(); ++v) {
        if (u == v || !l.leq(u, v)) continue;
        bool cover = true;
        for (Value w = 0; w < l.size() && cover; ++w) cover = !(w != u && w != v && l.leq(u, w) && l.leq(w, v));
        covers += cover;
      }
      tree_like = tree_like && covers <= 1;
    }
    non_tree += !tree_like;
    for (std::uint64_t run = 0; run < 20; ++run) {
      Scenario s;
      s.id = "lattice" + std::to_string(k);
      s.protocol = ProtocolKind::Lattice;
      s.lattice = l;
      s.f = 1 + run % 2;
      s.n = std::max(3 * s.f, (h + 1) * s.f) + 1 + run % 2;
      s.faulty = last_f(s.n, s.f);
      s.seed = derive_seed(kRoot, k, run, 5);
      s.inputs = random_inputs(s.n, l.size(), s.seed);
      s.adversary.policy = policies[run % policies.size()];
      const TraceReport rep = run_checked(s, tally);
      if (!rep.lattice_bounds) tally.fail(describe(s) + ": output outside [x_j, join X]");
    }
  }
  report(5, tally.failures == 0, tally_text(tally) + " lattices=50 non_tree_orders=" + std::to_string(non_tree));
}

Graph random_connected(std::size_t n, Rng& rng) {
  Graph t = random_tree(n, rng);
  auto edges = t.edges();
  for (Value u = 0; u < n; ++u) {
    for (Value v = u + 1; v < n; ++v) {
      if (!t.adjacent(u, v) && rng.chance(0.15)) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges);
}

void sync_sweep() {
  Tally tally;
  std::size_t max_rounds = 0;
  std::map<std::string, std::size_t> max_helly;
  for (HullKind kind : {HullKind::MonophonicGraph, HullKind::GeodesicGraph, HullKind::AlgebraicSemilattice}) {
    for (std::size_t f : {1, 2}) {
      for (std::uint64_t run = 0; run < 100; ++run) {
        Rng rng(derive_seed(kRoot, static_cast<std::uint64_t>(kind), f, run));
        Scenario s;
        s.id = "sync-" + to_string(kind);
        s.protocol = ProtocolKind::SyncConsensus;
        s.hull = kind;
        if (kind == HullKind::AlgebraicSemilattice) {
          s.lattice = run % 4 == 3 ? subset_semilattice_without_empty(3)
                                   : random_cycle_free_lattice(rng.between(3, 10), rng);
        } else {
          s.graph = kind == HullKind::MonophonicGraph ? random_chordal(rng.between(4, 10), 2 + run % 3, rng)
                                                      : random_connected(rng.between(4, 9), rng);
        }
        const std::size_t helly = helly_number(s.space());
        max_helly[to_string(kind)] = std::max(max_helly[to_string(kind)], helly);
        s.f = f;
        s.n = std::max(3 * f, helly * f) + 1;
        s.faulty = last_f(s.n, f);
        s.seed = derive_seed(kRoot, run, f, 6);
        s.inputs = random_inputs(s.n, s.space().size(), s.seed);
        s.adversary.policy = "equivocate";
        Trace t;
        run_checked(s, tally, &t);
        max_rounds = std::max(max_rounds, t.summary.rounds_to_decide);
      }
    }
  }
  std::string hs;
  for (const auto& [k, h] : max_helly) hs += (hs.empty() ? "" : ",") + k + ":" + std::to_string(h);
  report(6, tally.failures == 0 && max_rounds <= kBaRoundConstant * 3,
         tally_text(tally) + " max_rounds=" + std::to_string(max_rounds) + " C=" + std::to_string(kBaRoundConstant) +
             " max_helly={" + hs + "}");
}

void invariant_sweep() {
  Rng rng(derive_seed(kRoot, 0, 0, 7));
  std::size_t mismatches = 0;
  std::string first;
  auto mismatch = [&](const std::string& what) {
    if (mismatches++ == 0) first = what;
  };
  for (std::size_t k = 0; k < 200; ++k) {
    const Graph g = random_chordal(rng.between(2, 12), 2 + k % 4, rng);
    const auto inv = oracle::invariants(ConvexitySpace::monophonic(g));
    if (inv.helly != clique_number(g)) mismatch("chordal graph " + std::to_string(k) + ": helly != omega");
    if (inv.caratheodory > 2) mismatch("chordal graph " + std::to_string(k) + ": caratheodory > 2");
  }
  for (std::size_t k = 0; k < 200; ++k) {
    const auto shape = k % 2 ? LatticeShape::TreeOrder : LatticeShape::UnionFamily;
    const Semilattice l = random_cycle_free_lattice(rng.between(1, 10), rng, shape);
    const auto inv = oracle::invariants(ConvexitySpace::algebraic(l));
    if (inv.helly != height(l)) mismatch("semilattice " + std::to_string(k) + ": helly != height");
    if (inv.caratheodory != breadth(l)) mismatch("semilattice " + std::to_string(k) + ": caratheodory != breadth");
  }
  report(7, mismatches == 0,
         "graphs=200 semilattices=200 mismatches=" + std::to_string(mismatches) +
             (mismatches ? " first=[" + first + "]" : ""));
}

void elimination_sweep() {
  Rng rng(derive_seed(kRoot, 0, 0, 8));
  std::vector<Graph> chordal{path_graph(1), path_graph(5), star_graph(6), complete_graph(4), complete_graph(7)};
  for (std::size_t k = 0; k < 30; ++k) chordal.push_back(random_chordal(rng.between(2, 40), 2 + k % 4, rng));
  for (std::size_t k = 0; k < 20; ++k) chordal.push_back(random_tree(rng.between(2, 60), rng));
  std::size_t bad = 0;
  for (const auto& g : chordal) bad += !convex_elimination_order(ConvexitySpace::monophonic(g)).has_value();
  const bool c4 = !convex_elimination_order(ConvexitySpace::monophonic(cycle_graph(4)));
  const bool c6 = !convex_elimination_order(ConvexitySpace::monophonic(cycle_graph(6)));
  report(8, bad == 0 && c4 && c6,
         "chordal_fixtures=" + std::to_string(chordal.size()) + " without_order=" + std::to_string(bad) +
             " C4_none=" + (c4 ? "yes" : "no") + " C6_none=" + (c6 ? "yes" : "no"));
}

void blocking_sweep() {
  Rng rng(derive_seed(kRoot, 0, 0, 9));
  std::size_t free_done = 0, irr_done = 0, failures = 0, configs = 0;
  std::string first;
  auto fail = [&](const std::string& what) {
    if (failures++ == 0) first = what;
  };
  auto check = [&](const ConvexitySpace& space, const ValueSet& a, const std::string& label) {
    const auto inst = build_blocking_instance(space, a);
    if (!inst) return fail(label + " " + a.to_string() + ": no instance");
    std::string why;
    if (!verify_blocking_instance(space, *inst, &why)) return fail(label + " " + a.to_string() + ": " + why);
    try {
      const BatchConfig c = emit_lower_bound_scenario(space, *inst, 1 + rng.below(2));
      parse_config(config_to_json(c).dump());
      ++configs;
    } catch (const Error& e) {
      fail(label + " " + a.to_string() + ": config " + e.what());
    }
  };
  std::size_t attempts = 0;
  while ((free_done < 100 || irr_done < 100) && attempts++ < 100000) {
    const bool graph = rng.chance(0.5);
    const ConvexitySpace space = graph ? ConvexitySpace::monophonic(random_chordal(rng.between(3, 12), 2 + rng.below(3), rng))
                                       : ConvexitySpace::algebraic(random_cycle_free_lattice(rng.between(3, 10), rng));
    const std::string label = graph ? "chordal graph" : "semilattice";
    const std::size_t k = rng.between(2, std::min<std::size_t>(4, space.size()));
    ValueSet a = space.empty_set();
    for (std::size_t v : rng.sample(space.size(), k)) a.insert(static_cast<Value>(v));
    if (is_free(space, a)) {
      if (free_done < 100) {
        ++free_done;
        check(space, a, label);
      }
    } else if (is_irredundant(space, a)) {
      if (irr_done < 100) {
        ++irr_done;
        check(space, a, label);
      }
    }
  }
  report(9, failures == 0 && free_done == 100 && irr_done == 100,
         "free=" + std::to_string(free_done) + " irredundant=" + std::to_string(irr_done) + " configs=" +
             std::to_string(configs) + " failures=" + std::to_string(failures) + (failures ? " first=[" + first + "]" : ""));
}

void determinism_sweep() {
  Rng rng(derive_seed(kRoot, 0, 0, 10));
  std::size_t mismatches = 0;
  std::vector<std::string> picked;
  for (std::size_t k = 0; k < 10; ++k) {
    Scenario s;
    s.seed = rng.next();
    const std::size_t which = rng.below(4);
    s.f = 1 + rng.below(2);
    if (which == 0) {
      s.protocol = ProtocolKind::Tree;
      s.graph = random_tree(rng.between(5, 300), rng, 0.5);
      s.n = 3 * s.f + 1;
    } else if (which == 1) {
      s.protocol = ProtocolKind::Chordal;
      s.graph = random_chordal(rng.between(5, 40), 3, rng);
      s.n = std::max(3 * s.f, (clique_number(*s.graph) + 1) * s.f) + 1;
    } else if (which == 2) {
      s.protocol = ProtocolKind::Lattice;
      s.lattice = random_cycle_free_lattice(rng.between(3, 20), rng);
      s.n = std::max(3 * s.f, (height(*s.lattice) + 1) * s.f) + 1;
    } else {
      s.protocol = ProtocolKind::SyncConsensus;
      s.graph = random_chordal(rng.between(4, 10), 3, rng);
      s.n = std::max(3 * s.f, helly_number(s.space()) * s.f) + 1;
    }
    const auto& policies = s.protocol == ProtocolKind::SyncConsensus ? sync_policies() : async_policies();
    do {
      s.adversary.policy = policies[rng.below(policies.size())];
    } while (s.adversary.policy == "replay-then-corrupt");
    s.id = "det" + std::to_string(k) + "-" + to_string(s.protocol) + "-" + s.adversary.policy;
    s.faulty = last_f(s.n, s.f);
    s.inputs = random_inputs(s.n, s.space().size(), s.seed);
    picked.push_back(s.id);
    std::string trace0, summary0;
    for (int rep = 0; rep < 3; ++rep) {
      const Trace t = run_scenario(s);
      const std::string trace = trace_to_jsonl(t);
      const std::string summary = summary_to_json(t.summary).dump();
      if (rep == 0) {
        trace0 = trace;
        summary0 = summary;
      } else if (trace != trace0 || summary != summary0) {
        ++mismatches;
      }
    }
  }
  report(10, mismatches == 0, "scenarios=10 reruns=3 mismatches=" + std::to_string(mismatches));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    tree_sweep();
    chordal_sweep();
    lattice_sweep();
    sync_sweep();
    report(3, g_safe_area.failures == 0,
           "compliant_runs=" + std::to_string(g_safe_area.runs) + " rounds=" + std::to_string(g_safe_area_rounds) +
               " violations=" + std::to_string(g_safe_area.failures) +
               (g_safe_area.failures ? " first=[" + g_safe_area.first + "]" : ""));
    invariant_sweep();
    elimination_sweep();
    blocking_sweep();
    determinism_sweep();
  } catch (const std::exception& e) {
    std::printf("ERROR %s\n", e.what());
    g_all_passed = false;
  }
  for (const auto& [id, line] : g_lines) std::printf("%s\n", line.c_str());
  std::printf("total_time=%ss\n", fmt(seconds_since(t0)).c_str());
  return g_all_passed ? 0 : 1;
}
