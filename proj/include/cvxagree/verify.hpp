#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cvxagree/sim.hpp"

namespace cvxagree {

// Trace validation. Hulls come from the oracle namespace and distances from
// a BFS local to this module, so a bug in the engine cannot hide itself.

/// max BFS distance in G over pairs of `ys`; 0 for fewer than two values.
std::uint32_t bfs_diameter(const Graph& g, const std::vector<Value>& ys);

/// Graph protocols: D(Y) <= d. Lattice: Y is a chain. Sync: |Y| = 1.
bool outputs_agree(const Scenario& s, const std::vector<Value>& ys);
/// Y within the oracle hull of the correct inputs.
bool outputs_valid(const Scenario& s, const std::vector<Value>& ys);
/// Output diameter for graph protocols, 1/0 chain or singleton flag otherwise.
std::uint32_t agreement_metric(const Scenario& s, const std::vector<Value>& ys);

/// Final outputs of the correct processors, one per processor, read from the
/// raw records.
std::vector<Value> trace_outputs(const Trace& t);

/// Sets summary.agreement, summary.validity and summary.converged_round.
void fill_outcome_checks(Trace& t);

struct TraceReport {
  std::vector<std::string> failures;
  std::size_t rounds_checked = 0;
  /// Safe area empty, outside hull(X(t)), or correct safe areas disjoint.
  std::size_t safe_area_violations = 0;
  /// Tree rounds with D(Y(t)) > floor(D(X(t)) / 2) + 1.
  std::size_t contraction_violations = 0;
  bool guarantees = true;
  bool agreement = false;
  bool validity = false;
  /// Decision within the protocol's claimed round count.
  bool round_bound = false;
  /// Lattice: every y_i lies between some correct input and join(X(0)).
  bool lattice_bounds = true;
  /// Sync: every BA instance decided consistently and correct senders kept
  /// their input.
  bool ba_contract = true;
  /// summary fields match the recomputation.
  bool summary_consistent = true;

  bool ok() const { return failures.empty(); }
};

/// Re-checks a complete trace against its embedded scenario. Throws
/// InputError on a malformed trace (unknown processors, wrong widths).
TraceReport validate_trace(const Trace& t);

/// Claimed decision bound: tree ceil(log2 D(G)) + 2, chordal
/// ceil(log2 |V(T')|) + 2, lattice |V|, sync C (f + 1).
std::size_t claimed_round_bound(const Scenario& s);

}  // namespace cvxagree
