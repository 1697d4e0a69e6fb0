#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cvxagree/clique_tree.hpp"
#include "cvxagree/convexity.hpp"

namespace cvxagree {

inline constexpr Value kNoBag = std::numeric_limits<Value>::max();

/// M_ij(t) for a fixed receiver i: entry j is the value from sender j, or
/// nullopt for bottom (nothing received).
struct RoundInbox {
  std::vector<std::optional<Value>> messages;

  std::size_t sender_count() const;
  std::vector<std::size_t> senders() const;
};

/// Upper bound on the number of (|P_i| - f)-subsets enumerated by safe_area.
inline constexpr std::uint64_t kSafeAreaSubsetCap = 1'000'000;

/// Intersection of hull(V_i(J)) over all J within P_i with |J| = |P_i| - f.
/// Throws PreconditionError if |P_i| <= f, CapacityError above
/// kSafeAreaSubsetCap subsets, InputError on values outside the ground set.
ValueSet safe_area(const ConvexitySpace& space, const RoundInbox& inbox, std::size_t f);

/// Same, over an explicit list of received values (one per sender).
ValueSet safe_area(const ConvexitySpace& space, const std::vector<Value>& received, std::size_t f);

enum class ProtocolKind { Tree, Chordal, Lattice, SyncConsensus };

std::string to_string(ProtocolKind kind);
/// "tree", "chordal", "lattice" or "sync"; throws InputError otherwise.
ProtocolKind parse_protocol_kind(const std::string& name);

struct ProcessorState {
  std::size_t id = 0;
  std::size_t round = 0;
  Value value = 0;
  Value bag = kNoBag;
  bool decided = false;
  std::optional<Value> output;
};

/// Per-step diagnostics reported back to the simulator.
struct StepRecord {
  ValueSet safe_area;
  std::optional<ValueSet> tree_safe_area;
  bool fallback = false;
};

/// Iterative asynchronous protocol: every correct processor broadcasts
/// (value, bag) each round and runs `step` on what it received.
class AsyncProtocol {
 public:
  virtual ~AsyncProtocol() = default;

  virtual ProtocolKind kind() const = 0;
  /// Value space the processors agree on.
  virtual const ConvexitySpace& space() const = 0;
  /// Number of iterations after which a processor decides its value.
  virtual std::size_t horizon() const = 0;
  /// Resilience requirement for n processors with up to f faults.
  virtual bool resilient(std::size_t n, std::size_t f) const = 0;
  virtual std::string resilience_rule() const = 0;

  virtual ProcessorState initial_state(std::size_t id, Value input) const;
  /// Advances `state` by one round. `bags` is ignored by protocols without
  /// bags. Throws ProtocolViolation when the safe area is empty.
  virtual StepRecord step(ProcessorState& state, const RoundInbox& values, const RoundInbox& bags,
                          std::size_t f) const = 0;
};

/// Approximate agreement on a tree: phi(H) = PEO-max of cent(G[H]).
class TreeAgreement : public AsyncProtocol {
 public:
  explicit TreeAgreement(Graph tree);

  ProtocolKind kind() const override { return ProtocolKind::Tree; }
  const ConvexitySpace& space() const override { return space_; }
  std::size_t horizon() const override { return horizon_; }
  bool resilient(std::size_t n, std::size_t f) const override { return n > 3 * f; }
  std::string resilience_rule() const override { return "n > 3f"; }

  StepRecord step(ProcessorState& state, const RoundInbox& values, const RoundInbox& bags,
                  std::size_t f) const override;

  /// Output map on a nonempty convex set; throws ProtocolViolation on empty.
  Value choose(const ValueSet& h) const;
  /// Position of each vertex in the shared PEO.
  const std::vector<std::size_t>& rank() const { return rank_; }

 private:
  ConvexitySpace space_;
  std::vector<std::size_t> rank_;
  std::size_t horizon_ = 0;
};

/// ceil(log2(max(diameter, 1))) + 2.
std::size_t tree_horizon(std::uint32_t diameter);

/// Approximate agreement on a chordal graph via the tree protocol on an
/// expanded clique tree.
class ChordalAgreement : public AsyncProtocol {
 public:
  explicit ChordalAgreement(Graph g);

  ProtocolKind kind() const override { return ProtocolKind::Chordal; }
  const ConvexitySpace& space() const override { return space_; }
  std::size_t horizon() const override { return bag_protocol_->horizon(); }
  bool resilient(std::size_t n, std::size_t f) const override;
  std::string resilience_rule() const override { return "n > max(3f, (omega+1)f)"; }

  ProcessorState initial_state(std::size_t id, Value input) const override;
  StepRecord step(ProcessorState& state, const RoundInbox& values, const RoundInbox& bags,
                  std::size_t f) const override;

  const CliqueTree& expanded_tree() const { return tree_; }
  const TreeAgreement& bag_protocol() const { return *bag_protocol_; }
  std::size_t clique_number() const { return omega_; }
  /// Smallest-identifier bag containing `v`.
  Value initial_bag(Value v) const;
  /// Bags with a value outside the bag (or out of range) are replaced by
  /// initial_bag(value); returns the sanitized bag inbox.
  RoundInbox sanitize_bags(const RoundInbox& values, const RoundInbox& bags) const;

 private:
  ConvexitySpace space_;
  CliqueTree tree_;
  std::unique_ptr<TreeAgreement> bag_protocol_;
  std::vector<std::size_t> rank_;
  std::vector<Value> initial_bag_;
  std::size_t omega_ = 0;
};

/// Lattice agreement on a cycle-free semilattice:
/// phi(K) = join(K) if K != ex K, otherwise the order-max of K.
class LatticeAgreement : public AsyncProtocol {
 public:
  /// Throws InputError if the semilattice is not cycle-free.
  explicit LatticeAgreement(Semilattice l);

  ProtocolKind kind() const override { return ProtocolKind::Lattice; }
  const ConvexitySpace& space() const override { return space_; }
  std::size_t horizon() const override { return space_.size(); }
  bool resilient(std::size_t n, std::size_t f) const override;
  std::string resilience_rule() const override { return "n > max(3f, (height+1)f)"; }

  StepRecord step(ProcessorState& state, const RoundInbox& values, const RoundInbox& bags,
                  std::size_t f) const override;

  Value choose(const ValueSet& h) const;
  const std::vector<Value>& order() const { return order_; }
  const std::vector<std::size_t>& rank() const { return rank_; }
  std::size_t lattice_height() const { return height_; }

 private:
  ConvexitySpace space_;
  std::vector<Value> order_;
  std::vector<std::size_t> rank_;
  std::size_t height_ = 0;
};

// ---------------------------------------------------------------------------
// Synchronous multivalued Byzantine agreement (phase king, n > 3f).

using BaToken = std::int64_t;
inline constexpr BaToken kBaBottom = -1;
inline constexpr BaToken kBaUndetermined = -2;

/// Rounds used by one instance: 1 sender round then f+1 phases of 3 rounds.
std::size_t ba_round_count(std::size_t f);
/// Documented constant C with ba_round_count(f) <= C (f+1).
inline constexpr std::size_t kBaRoundConstant = 4;

/// One processor's state in one BA instance. Messages are tokens: a value
/// id, kBaBottom, or kBaUndetermined (only meaningful in proposal rounds).
/// Tokens outside [0, value_count) other than these are treated as missing.
class PhaseKingBa {
 public:
  PhaseKingBa(std::size_t self, std::size_t sender, std::size_t n, std::size_t f, std::size_t value_count);

  /// Token this processor broadcasts in round `r`, if any. `input` is only
  /// read by the sender in round 0.
  std::optional<BaToken> outgoing(std::size_t r, std::optional<Value> input) const;
  /// Feeds the tokens received in round `r` (nullopt = nothing received).
  void receive(std::size_t r, const std::vector<std::optional<BaToken>>& tokens);

  bool finished() const { return round_ >= ba_round_count(f_); }
  /// Decision: a value id or kBaBottom.
  BaToken decision() const;

  /// 0 for the sender round; then phase k occupies rounds 1+3k .. 3+3k.
  static std::size_t phase_of(std::size_t r) { return (r - 1) / 3; }
  static std::size_t step_of(std::size_t r) { return (r - 1) % 3; }
  /// King of phase k.
  static std::size_t king_of(std::size_t phase) { return phase; }

 private:
  BaToken sanitize(const std::optional<BaToken>& t) const;

  std::size_t self_;
  std::size_t sender_;
  std::size_t n_;
  std::size_t f_;
  std::size_t value_count_;
  std::size_t round_ = 0;
  BaToken value_ = kBaBottom;
  BaToken proposal_ = kBaUndetermined;
  bool strong_ = false;
};

/// Output of the reduction step shared by every correct processor.
struct ConvexConsensusResult {
  std::vector<Value> slots;  // m_j for every processor j, bottom mapped to 0
  ValueSet safe_area;
  Value output = 0;
};

/// Maps bottom to value 0, computes H over all (n - f)-subsets of senders and
/// outputs its smallest identifier. Throws ProtocolViolation if H is empty.
ConvexConsensusResult convex_consensus_from_decisions(const ConvexitySpace& space,
                                                      const std::vector<BaToken>& decisions, std::size_t f);

/// n > max(3f, helly * f).
bool sync_resilient(std::size_t n, std::size_t f, std::size_t helly);

}  // namespace cvxagree
