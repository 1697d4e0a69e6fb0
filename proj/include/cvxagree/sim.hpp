#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cvxagree/convexity.hpp"
#include "cvxagree/protocol.hpp"
#include "cvxagree/rng.hpp"

namespace cvxagree {

/// Adversary policies. Async: silent, consistent-lie, partition-delay,
/// random, replay-then-corrupt. Sync: silent, equivocate, crash.
struct AdversarySpec {
  std::string policy = "silent";
  /// consistent-lie: the lie; drawn once per run from the seed if unset.
  std::optional<Value> value;
  /// replay-then-corrupt: rounds of silence before corrupting.
  std::size_t replay_rounds = 0;
  /// replay-then-corrupt: the instance whose mu drives the corruption.
  std::optional<BlockingInstance> blocking;
  /// crash: round in which the faulty processors fall silent; drawn if unset.
  std::optional<std::size_t> crash_round;
};

const std::vector<std::string>& async_policies();
const std::vector<std::string>& sync_policies();

struct Scenario {
  std::string id = "scenario";
  ProtocolKind protocol = ProtocolKind::Tree;
  /// Only read by the synchronous protocol; the async ones fix their hull.
  HullKind hull = HullKind::MonophonicGraph;
  std::optional<Graph> graph;
  std::optional<Semilattice> lattice;
  std::size_t n = 0;
  std::size_t f = 0;
  std::vector<std::size_t> faulty;
  /// One entry per processor; entries of faulty processors are only read by
  /// the crash and replay policies.
  std::vector<Value> inputs;
  AdversarySpec adversary;
  std::uint64_t seed = 0;
  std::size_t round_cap = 64;
  std::uint32_t agreement_d = 1;
  /// Resilience deliberately broken; results are reported, not gated.
  bool allow_noncompliant = false;

  ConvexitySpace space() const;
  std::vector<std::size_t> correct() const;
  bool is_faulty(std::size_t i) const;
};

/// Throws InputError on structural problems (sizes, ranges, missing backing,
/// unknown policy, |F| > f). A resilience violation is an error unless
/// allow_noncompliant is set.
void validate_scenario(const Scenario& s);

/// Builds the async protocol selected by the scenario.
std::unique_ptr<AsyncProtocol> make_protocol(const Scenario& s);
/// Resilience predicate of the selected protocol.
bool scenario_compliant(const Scenario& s);

/// Message carried by one asynchronous round.
struct Message {
  Value value = 0;
  Value bag = kNoBag;
  friend bool operator==(const Message&, const Message&) = default;
};

/// One correct processor's view of one async round.
struct AsyncRecord {
  std::size_t round = 0;
  std::size_t processor = 0;
  std::vector<std::optional<Message>> inbox;  // per sender
  ValueSet safe_area;
  std::optional<ValueSet> tree_safe_area;
  Value value_in = 0;
  Value bag_in = kNoBag;
  Value value = 0;
  Value bag = kNoBag;
  bool fallback = false;
  bool decided = false;
};

/// One correct processor at the end of a synchronous run.
struct SyncRecord {
  std::size_t processor = 0;
  std::vector<BaToken> decisions;  // one per BA instance
  ValueSet safe_area;
  Value output = 0;
};

/// Round-by-round token matrix seen by one correct processor:
/// tokens[instance][sender].
struct SyncRoundRecord {
  std::size_t round = 0;
  std::size_t processor = 0;
  std::vector<std::vector<std::optional<BaToken>>> tokens;
};

struct Summary {
  std::size_t rounds_to_decide = 0;
  std::vector<Value> output_set;
  bool agreement = false;  // diameter_or_chain_check
  bool validity = false;
  std::size_t fallback_count = 0;
  bool decided = false;
  bool timeout = false;
  std::string error;
  std::size_t plan_rejected = 0;
  /// First round after which the correct values have diameter <= d (graph
  /// protocols) or form a chain (lattice); unset if never.
  std::optional<std::size_t> converged_round;
};

struct Trace {
  Scenario scenario;
  std::vector<AsyncRecord> rounds;
  std::vector<SyncRoundRecord> sync_rounds;
  std::vector<SyncRecord> sync;
  Summary summary;
};

/// Asynchronous round model with scheduler-enforced guarantees.
Trace run_async(const Scenario& s);
/// Lock-step synchronous convex consensus (n parallel phase-king instances).
Trace run_sync(const Scenario& s);
/// Dispatches on the protocol.
Trace run_scenario(const Scenario& s);

/// Re-derives guarantees (1)-(3) and unforged correct messages from the raw
/// inboxes of an async trace. On failure `why` names the first violation.
bool check_round_guarantees(const Trace& t, std::string* why = nullptr);

/// Stream purposes for derive_seed.
inline constexpr std::uint64_t kSeedAdversary = 1;
inline constexpr std::uint64_t kSeedSetup = 2;
inline constexpr std::uint64_t kSeedInputs = 3;

}  // namespace cvxagree
