#include "cvxagree/verify.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "cvxagree/error.hpp"
#include "cvxagree/oracle.hpp"

namespace cvxagree {

namespace {

constexpr std::uint32_t kFar = ~std::uint32_t{0};

std::vector<std::uint32_t> bfs(const Graph& g, Value source) {
  std::vector<std::uint32_t> dist(g.vertex_count(), kFar);
  std::deque<Value> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const Value u = queue.front();
    queue.pop_front();
    for (Value w : g.neighbors(u)) {
      if (dist[w] == kFar) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::size_t ceil_log2(std::size_t x) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < x) ++k;
  return k;
}

bool is_graph_protocol(ProtocolKind k) { return k == ProtocolKind::Tree || k == ProtocolKind::Chordal; }

std::vector<Value> correct_inputs(const Scenario& s) {
  std::vector<Value> xs;
  for (std::size_t i : s.correct()) xs.push_back(s.inputs[i]);
  return xs;
}

ValueSet as_set(std::size_t universe, const std::vector<Value>& vs) { return ValueSet(universe, std::span<const Value>(vs)); }

bool chain(const Semilattice& l, const std::vector<Value>& ys) {
  for (Value a : ys) {
    for (Value b : ys) {
      if (!l.leq(a, b) && !l.leq(b, a)) return false;
    }
  }
  return true;
}

// Round-t groups of an async trace: [begin, end) index ranges.
std::vector<std::pair<std::size_t, std::size_t>> round_groups(const Trace& t) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t a = 0;
  while (a < t.rounds.size()) {
    std::size_t b = a;
    while (b < t.rounds.size() && t.rounds[b].round == t.rounds[a].round) ++b;
    out.emplace_back(a, b);
    a = b;
  }
  return out;
}

}  // namespace

std::uint32_t bfs_diameter(const Graph& g, const std::vector<Value>& ys) {
  std::uint32_t best = 0;
  for (std::size_t a = 0; a + 1 < ys.size(); ++a) {
    const auto dist = bfs(g, ys[a]);
    for (std::size_t b = a + 1; b < ys.size(); ++b) best = std::max(best, dist[ys[b]]);
  }
  return best;
}

bool outputs_agree(const Scenario& s, const std::vector<Value>& ys) {
  if (ys.empty()) return false;
  if (s.protocol == ProtocolKind::SyncConsensus) {
    return std::all_of(ys.begin(), ys.end(), [&](Value y) { return y == ys.front(); });
  }
  if (s.protocol == ProtocolKind::Lattice) return chain(*s.lattice, ys);
  return bfs_diameter(*s.graph, ys) <= s.agreement_d;
}

bool outputs_valid(const Scenario& s, const std::vector<Value>& ys) {
  if (ys.empty()) return false;
  const ConvexitySpace space = s.space();
  for (Value y : ys) {
    if (y >= space.size()) return false;
  }
  const ValueSet h = oracle::hull(space, as_set(space.size(), correct_inputs(s)));
  return as_set(space.size(), ys).is_subset_of(h);
}

std::uint32_t agreement_metric(const Scenario& s, const std::vector<Value>& ys) {
  if (is_graph_protocol(s.protocol)) return bfs_diameter(*s.graph, ys);
  return outputs_agree(s, ys) ? 1 : 0;
}

std::vector<Value> trace_outputs(const Trace& t) {
  std::vector<Value> ys;
  if (t.scenario.protocol == ProtocolKind::SyncConsensus) {
    for (const auto& r : t.sync) ys.push_back(r.output);
    return ys;
  }
  for (const auto& r : t.rounds) {
    if (r.decided) ys.push_back(r.value);
  }
  return ys;
}

std::size_t claimed_round_bound(const Scenario& s) {
  switch (s.protocol) {
    case ProtocolKind::Tree: {
      // Double sweep is exact on trees.
      const auto d0 = bfs(*s.graph, 0);
      const Value far = static_cast<Value>(std::max_element(d0.begin(), d0.end()) - d0.begin());
      const auto d1 = bfs(*s.graph, far);
      return ceil_log2(std::max<std::uint32_t>(*std::max_element(d1.begin(), d1.end()), 1)) + 2;
    }
    case ProtocolKind::Chordal:
      return ceil_log2(2 * maximal_cliques(*s.graph).size() - 1) + 2;
    case ProtocolKind::Lattice:
      return s.lattice->size();
    case ProtocolKind::SyncConsensus:
      return kBaRoundConstant * (s.f + 1);
  }
  return 0;
}

void fill_outcome_checks(Trace& t) {
  Summary& sum = t.summary;
  const Scenario& s = t.scenario;
  const auto ys = trace_outputs(t);
  const bool complete = sum.decided && ys.size() == s.correct().size();
  sum.agreement = complete && outputs_agree(s, ys);
  sum.validity = complete && outputs_valid(s, ys);
  sum.converged_round.reset();
  if (s.protocol == ProtocolKind::SyncConsensus) {
    if (sum.agreement) sum.converged_round = sum.rounds_to_decide;
    return;
  }
  if (outputs_agree(s, correct_inputs(s))) {
    sum.converged_round = 0;
    return;
  }
  for (const auto& [a, b] : round_groups(t)) {
    if (b - a != s.correct().size()) continue;  // some processors already decided
    std::vector<Value> y;
    for (std::size_t k = a; k < b; ++k) y.push_back(t.rounds[k].value);
    if (outputs_agree(s, y)) {
      sum.converged_round = t.rounds[a].round + 1;
      return;
    }
  }
}

TraceReport validate_trace(const Trace& t) {
  TraceReport rep;
  const Scenario& s = t.scenario;
  validate_scenario(Scenario(s));
  const ConvexitySpace space = s.space();
  const std::size_t N = space.size();
  const auto correct = s.correct();
  auto fail = [&](const std::string& msg) {
    if (rep.failures.size() < 20) rep.failures.push_back(msg);
  };

  const auto ys = trace_outputs(t);
  if (ys.size() != correct.size()) {
    fail("only " + std::to_string(ys.size()) + " of " + std::to_string(correct.size()) + " correct processors decided");
  }
  rep.validity = ys.size() == correct.size() && outputs_valid(s, ys);
  rep.agreement = ys.size() == correct.size() && outputs_agree(s, ys);
  if (!rep.validity) fail("validity: outputs leave the hull of the correct inputs");
  if (!rep.agreement) fail("agreement predicate fails on the outputs");

  if (s.protocol == ProtocolKind::SyncConsensus) {
    const ValueSet hx = oracle::hull(space, as_set(N, correct_inputs(s)));
    std::optional<ValueSet> common;
    for (const auto& r : t.sync) {
      if (r.processor >= s.n || s.is_faulty(r.processor)) throw InputError("sync record for a non-correct processor");
      if (r.decisions.size() != s.n) throw InputError("sync record needs one decision per instance");
      ++rep.rounds_checked;
      if (r.safe_area.universe() != N) throw InputError("sync safe area over the wrong ground set");
      if (r.safe_area.empty() || !r.safe_area.is_subset_of(hx)) ++rep.safe_area_violations;
      common = common ? (*common & r.safe_area) : r.safe_area;
    }
    if (common && common->empty()) ++rep.safe_area_violations;
    for (std::size_t j = 0; j < s.n && !t.sync.empty(); ++j) {
      const BaToken first = t.sync.front().decisions[j];
      for (const auto& r : t.sync) {
        if (r.decisions[j] != first) rep.ba_contract = false;
      }
      if (!s.is_faulty(j) && first != static_cast<BaToken>(s.inputs[j])) rep.ba_contract = false;
    }
    if (!rep.ba_contract) fail("a BA instance broke agreement or validity");
  } else {
    std::string why;
    rep.guarantees = check_round_guarantees(t, &why);
    if (!rep.guarantees) fail("round guarantees: " + why);
    for (const auto& [a, b] : round_groups(t)) {
      const std::size_t round = t.rounds[a].round;
      ++rep.rounds_checked;
      std::vector<Value> x, y;
      std::optional<ValueSet> common;
      for (std::size_t k = a; k < b; ++k) {
        const AsyncRecord& r = t.rounds[k];
        if (r.processor >= s.n || s.is_faulty(r.processor)) throw InputError("record for a non-correct processor");
        if (r.safe_area.universe() != N) throw InputError("safe area over the wrong ground set");
        x.push_back(r.value_in);
        y.push_back(r.value);
        common = common ? (*common & r.safe_area) : r.safe_area;
      }
      const ValueSet hx = oracle::hull(space, as_set(N, x));
      for (std::size_t k = a; k < b; ++k) {
        const ValueSet& h = t.rounds[k].safe_area;
        if (h.empty() || !h.is_subset_of(hx)) {
          ++rep.safe_area_violations;
          fail("round " + std::to_string(round) + ": safe area of processor " + std::to_string(t.rounds[k].processor) +
               (h.empty() ? " is empty" : " leaves hull(X(t))"));
        }
      }
      // Processors that decided earlier do not contribute a safe area.
      if (b - a == correct.size() && common->empty()) {
        ++rep.safe_area_violations;
        fail("round " + std::to_string(round) + ": correct safe areas have empty intersection");
      }
      if (!as_set(N, y).is_subset_of(hx)) fail("round " + std::to_string(round) + ": new values leave hull(X(t))");
      if (s.protocol == ProtocolKind::Tree && b - a == correct.size()) {
        const std::uint32_t dx = bfs_diameter(*s.graph, x);
        const std::uint32_t dy = bfs_diameter(*s.graph, y);
        if (dy > dx / 2 + 1) {
          ++rep.contraction_violations;
          fail("round " + std::to_string(round) + ": D(Y) = " + std::to_string(dy) + " after D(X) = " + std::to_string(dx));
        }
      }
    }
    if (s.protocol == ProtocolKind::Lattice) {
      const Semilattice& l = *s.lattice;
      const auto xs = correct_inputs(s);
      Value top = xs.front();
      for (Value x : xs) top = l.join(top, x);
      for (Value y : ys) {
        const bool above = std::any_of(xs.begin(), xs.end(), [&](Value x) { return l.leq(x, y); });
        if (!above || !l.leq(y, top)) rep.lattice_bounds = false;
      }
      if (!rep.lattice_bounds) fail("some output is not between a correct input and the join of the inputs");
    }
  }

  const std::size_t rounds = t.summary.rounds_to_decide;
  rep.round_bound = t.summary.decided && rounds <= claimed_round_bound(s);
  if (!rep.round_bound) {
    fail("decided after " + std::to_string(rounds) + " rounds, bound " + std::to_string(claimed_round_bound(s)));
  }

  Trace copy = t;
  fill_outcome_checks(copy);
  std::vector<Value> set = ys;
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  std::size_t fallbacks = 0;
  for (const auto& r : t.rounds) fallbacks += r.fallback ? 1 : 0;
  rep.summary_consistent = copy.summary.agreement == t.summary.agreement &&
                           copy.summary.validity == t.summary.validity && set == t.summary.output_set &&
                           fallbacks == t.summary.fallback_count;
  if (!rep.summary_consistent) fail("summary record disagrees with the round records");
  return rep;
}

}  // namespace cvxagree
