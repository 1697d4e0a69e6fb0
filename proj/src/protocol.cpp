#include "cvxagree/protocol.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "cvxagree/error.hpp"

namespace cvxagree {

std::size_t RoundInbox::sender_count() const {
  return static_cast<std::size_t>(std::count_if(messages.begin(), messages.end(), [](const auto& m) { return m.has_value(); }));
}

std::vector<std::size_t> RoundInbox::senders() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < messages.size(); ++j) {
    if (messages[j]) out.push_back(j);
  }
  return out;
}

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > (std::uint64_t{1} << 62)) return r;
  }
  return r;
}

}  // namespace

ValueSet safe_area(const ConvexitySpace& space, const std::vector<Value>& received, std::size_t f) {
  const std::size_t p = received.size();
  if (p <= f) {
    throw PreconditionError("safe area needs more than f = " + std::to_string(f) + " senders, got " +
                            std::to_string(p));
  }
  for (Value v : received) {
    if (v >= space.size()) throw InputError("received value " + std::to_string(v) + " outside the ground set");
  }
  if (binomial(p, f) > kSafeAreaSubsetCap) {
    throw CapacityError("safe area: too many sender subsets (" + std::to_string(p) + " choose " + std::to_string(f) +
                        ")");
  }

  std::unordered_map<ValueSet, ValueSet, ValueSetHash> memo;
  ValueSet result = space.ground_set();
  // drop[0] < drop[1] < ... < drop[f-1] are the senders left out of J.
  std::vector<std::size_t> drop(f);
  for (std::size_t k = 0; k < f; ++k) drop[k] = k;
  while (true) {
    ValueSet values(space.size());
    std::size_t next_drop = 0;
    for (std::size_t j = 0; j < p; ++j) {
      if (next_drop < f && drop[next_drop] == j) {
        ++next_drop;
        continue;
      }
      values.insert(received[j]);
    }
    auto it = memo.find(values);
    if (it == memo.end()) it = memo.emplace(values, space.hull(values)).first;
    result &= it->second;
    if (result.empty()) return result;

    // Next combination in lexicographic order.
    std::size_t k = f;
    while (k > 0 && drop[k - 1] == p - f + (k - 1)) --k;
    if (k == 0) break;
    ++drop[k - 1];
    for (std::size_t m = k; m < f; ++m) drop[m] = drop[m - 1] + 1;
  }
  return result;
}

ValueSet safe_area(const ConvexitySpace& space, const RoundInbox& inbox, std::size_t f) {
  std::vector<Value> received;
  received.reserve(inbox.messages.size());
  for (const auto& m : inbox.messages) {
    if (m) received.push_back(*m);
  }
  return safe_area(space, received, f);
}

std::string to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::Tree:
      return "tree";
    case ProtocolKind::Chordal:
      return "chordal";
    case ProtocolKind::Lattice:
      return "lattice";
    case ProtocolKind::SyncConsensus:
      return "sync";
  }
  return "unknown";
}

ProtocolKind parse_protocol_kind(const std::string& name) {
  if (name == "tree") return ProtocolKind::Tree;
  if (name == "chordal") return ProtocolKind::Chordal;
  if (name == "lattice") return ProtocolKind::Lattice;
  if (name == "sync") return ProtocolKind::SyncConsensus;
  throw InputError("unknown protocol '" + name + "' (expected tree, chordal, lattice or sync)");
}

ProcessorState AsyncProtocol::initial_state(std::size_t id, Value input) const {
  if (input >= space().size()) throw InputError("input " + std::to_string(input) + " outside the ground set");
  ProcessorState s;
  s.id = id;
  s.value = input;
  return s;
}

namespace {

void finish_round(ProcessorState& state, std::size_t horizon) {
  ++state.round;
  if (state.round >= horizon) {
    state.decided = true;
    state.output = state.value;
  }
}

void require_undecided(const ProcessorState& state) {
  if (state.decided) throw ProtocolViolation("processor " + std::to_string(state.id) + " stepped after deciding");
}

ValueSet nonempty_safe_area(const ConvexitySpace& space, const RoundInbox& inbox, std::size_t f, const char* what) {
  ValueSet h = safe_area(space, inbox, f);
  if (h.empty()) throw ProtocolViolation(std::string("empty ") + what + " safe area");
  return h;
}

}  // namespace

// ---------------------------------------------------------------------------

std::size_t tree_horizon(std::uint32_t diameter) {
  const std::uint32_t d = std::max<std::uint32_t>(diameter, 1);
  std::size_t lg = 0;
  while ((std::uint64_t{1} << lg) < d) ++lg;
  return lg + 2;
}

namespace {

Graph require_tree(Graph g) {
  if (g.vertex_count() == 0 || !g.is_tree()) throw InputError("tree protocol needs a nonempty tree");
  return g;
}

Graph require_connected_chordal(Graph g) {
  if (g.vertex_count() == 0 || !g.is_connected()) throw InputError("chordal protocol needs a connected graph");
  if (!is_chordal(g)) throw InputError("chordal protocol needs a chordal graph");
  return g;
}

}  // namespace

TreeAgreement::TreeAgreement(Graph tree) : space_(ConvexitySpace::monophonic(require_tree(std::move(tree)))) {
  const Graph& g = space_.graph();
  rank_ = order_rank(*lexbfs_peo(g));
  horizon_ = tree_horizon(graph_diameter(g));
}

Value TreeAgreement::choose(const ValueSet& h) const {
  if (h.empty()) throw ProtocolViolation("tree output map applied to an empty set");
  const ValueSet c = center_of_induced(space_.graph(), h);
  Value best = *c.first();
  c.for_each([&](Value v) {
    if (rank_[v] > rank_[best]) best = v;
  });
  return best;
}

StepRecord TreeAgreement::step(ProcessorState& state, const RoundInbox& values, const RoundInbox&,
                               std::size_t f) const {
  require_undecided(state);
  StepRecord rec;
  rec.safe_area = nonempty_safe_area(space_, values, f, "tree");
  state.value = choose(rec.safe_area);
  finish_round(state, horizon_);
  return rec;
}

// ---------------------------------------------------------------------------

ChordalAgreement::ChordalAgreement(Graph graph)
    : space_(ConvexitySpace::monophonic(require_connected_chordal(std::move(graph)))) {
  const Graph& g = space_.graph();
  rank_ = order_rank(*lexbfs_peo(g));
  omega_ = cvxagree::clique_number(g);
  tree_ = expand_clique_tree(build_clique_tree(g));
  initial_bag_.assign(g.vertex_count(), kNoBag);
  for (std::size_t b = 0; b < tree_.bags.size(); ++b) {
    tree_.bags[b].for_each([&](Value v) {
      if (initial_bag_[v] == kNoBag) initial_bag_[v] = static_cast<Value>(b);
    });
  }
  bag_protocol_ = std::make_unique<TreeAgreement>(tree_.tree);
}

bool ChordalAgreement::resilient(std::size_t n, std::size_t f) const { return n > 3 * f && n > (omega_ + 1) * f; }

Value ChordalAgreement::initial_bag(Value v) const {
  if (v >= initial_bag_.size()) throw InputError("value " + std::to_string(v) + " outside the ground set");
  return initial_bag_[v];
}

ProcessorState ChordalAgreement::initial_state(std::size_t id, Value input) const {
  ProcessorState s = AsyncProtocol::initial_state(id, input);
  s.bag = initial_bag(input);
  return s;
}

RoundInbox ChordalAgreement::sanitize_bags(const RoundInbox& values, const RoundInbox& bags) const {
  RoundInbox out;
  out.messages.resize(values.messages.size());
  for (std::size_t j = 0; j < values.messages.size(); ++j) {
    const auto& v = values.messages[j];
    if (!v) continue;
    const std::optional<Value> b = j < bags.messages.size() ? bags.messages[j] : std::nullopt;
    const bool ok = b && *b < tree_.bags.size() && tree_.bags[*b].contains(*v);
    out.messages[j] = ok ? *b : initial_bag(*v);
  }
  return out;
}

StepRecord ChordalAgreement::step(ProcessorState& state, const RoundInbox& values, const RoundInbox& bags,
                                  std::size_t f) const {
  require_undecided(state);
  StepRecord rec;
  const RoundInbox clean = sanitize_bags(values, bags);
  const ValueSet tree_area = nonempty_safe_area(bag_protocol_->space(), clean, f, "bag");
  Value bag = bag_protocol_->choose(tree_area);
  rec.safe_area = nonempty_safe_area(space_, values, f, "value");
  ValueSet candidates = tree_.bags[bag] & rec.safe_area;

  if (candidates.empty()) {
    // Nearest bag of the tree safe area (then smallest id) meeting the value safe area.
    rec.fallback = true;
    const auto dist = distances_within(tree_.tree, tree_area, bag);
    std::optional<Value> best;
    for (Value b = 0; b < tree_.bags.size(); ++b) {
      if (dist[b] == kUnreachable || !tree_.bags[b].intersects(rec.safe_area)) continue;
      if (!best || dist[b] < dist[*best]) best = b;
    }
    if (!best) throw ProtocolViolation("no bag of the tree safe area meets the value safe area");
    bag = *best;
    candidates = tree_.bags[bag] & rec.safe_area;
  }

  Value pick = *candidates.first();
  candidates.for_each([&](Value v) {
    if (rank_[v] < rank_[pick]) pick = v;
  });
  state.value = pick;
  state.bag = bag;
  rec.tree_safe_area = tree_area;
  finish_round(state, horizon());
  return rec;
}

// ---------------------------------------------------------------------------

LatticeAgreement::LatticeAgreement(Semilattice l)
    : space_(ConvexitySpace::algebraic(std::move(l))),
      order_(cycle_free_elimination_order(space_.semilattice())),
      rank_(order_rank(order_)),
      height_(height(space_.semilattice())) {}

bool LatticeAgreement::resilient(std::size_t n, std::size_t f) const { return n > 3 * f && n > (height_ + 1) * f; }

Value LatticeAgreement::choose(const ValueSet& h) const {
  if (h.empty()) throw ProtocolViolation("lattice output map applied to an empty set");
  if (extreme_points(space_, h) != h) return big_join(space_.semilattice(), h);
  Value best = *h.first();
  h.for_each([&](Value v) {
    if (rank_[v] > rank_[best]) best = v;
  });
  return best;
}

StepRecord LatticeAgreement::step(ProcessorState& state, const RoundInbox& values, const RoundInbox&,
                                  std::size_t f) const {
  require_undecided(state);
  StepRecord rec;
  rec.safe_area = nonempty_safe_area(space_, values, f, "lattice");
  state.value = choose(rec.safe_area);
  finish_round(state, horizon());
  return rec;
}

// ---------------------------------------------------------------------------

std::size_t ba_round_count(std::size_t f) { return 1 + 3 * (f + 1); }

PhaseKingBa::PhaseKingBa(std::size_t self, std::size_t sender, std::size_t n, std::size_t f, std::size_t value_count)
    : self_(self), sender_(sender), n_(n), f_(f), value_count_(value_count) {
  if (n <= 3 * f) throw PreconditionError("phase-king agreement needs n > 3f");
  if (self >= n || sender >= n) throw InputError("processor identifier outside 0..n-1");
  if (f + 1 > n) throw PreconditionError("not enough processors to provide f+1 kings");
}

BaToken PhaseKingBa::sanitize(const std::optional<BaToken>& t) const {
  if (!t) return kBaUndetermined;
  if (*t == kBaBottom) return kBaBottom;
  if (*t < 0 || static_cast<std::uint64_t>(*t) >= value_count_) return kBaUndetermined;
  return *t;
}

std::optional<BaToken> PhaseKingBa::outgoing(std::size_t r, std::optional<Value> input) const {
  if (r == 0) {
    if (self_ != sender_) return std::nullopt;
    if (!input) return kBaBottom;
    return static_cast<BaToken>(*input);
  }
  switch (step_of(r)) {
    case 0:
      return value_;
    case 1:
      return proposal_;
    default:
      if (self_ == king_of(phase_of(r))) return value_;
      return std::nullopt;
  }
}

void PhaseKingBa::receive(std::size_t r, const std::vector<std::optional<BaToken>>& tokens) {
  if (r != round_) throw ProtocolViolation("phase-king rounds fed out of order");
  if (tokens.size() != n_) throw InputError("phase-king round needs one entry per processor");
  ++round_;
  if (r == 0) {
    const BaToken t = sanitize(tokens[sender_]);
    value_ = t == kBaUndetermined ? kBaBottom : t;
    return;
  }
  std::map<BaToken, std::size_t> counts;
  switch (step_of(r)) {
    case 0: {
      for (const auto& t : tokens) {
        const BaToken s = sanitize(t);
        if (s != kBaUndetermined) ++counts[s];
      }
      proposal_ = kBaUndetermined;
      for (const auto& [tok, c] : counts) {
        if (c >= n_ - f_) proposal_ = tok;
      }
      break;
    }
    case 1: {
      for (const auto& t : tokens) {
        const BaToken s = sanitize(t);
        if (s != kBaUndetermined) ++counts[s];
      }
      strong_ = false;
      for (const auto& [tok, c] : counts) {
        if (c >= f_ + 1) {
          value_ = tok;
          strong_ = c >= n_ - f_;
          break;
        }
      }
      break;
    }
    default: {
      if (!strong_) {
        const BaToken k = sanitize(tokens[king_of(phase_of(r))]);
        value_ = k == kBaUndetermined ? kBaBottom : k;
      }
      break;
    }
  }
}

BaToken PhaseKingBa::decision() const {
  if (!finished()) throw ProtocolViolation("phase-king decision read before the last round");
  return value_;
}

ConvexConsensusResult convex_consensus_from_decisions(const ConvexitySpace& space,
                                                      const std::vector<BaToken>& decisions, std::size_t f) {
  ConvexConsensusResult r;
  r.slots.reserve(decisions.size());
  for (BaToken d : decisions) {
    if (d >= 0 && static_cast<std::uint64_t>(d) >= space.size()) throw InputError("decision outside the ground set");
    r.slots.push_back(d < 0 ? Value{0} : static_cast<Value>(d));
  }
  r.safe_area = safe_area(space, r.slots, f);
  if (r.safe_area.empty()) throw ProtocolViolation("convex consensus: empty intersection of sender hulls");
  r.output = *r.safe_area.first();
  return r;
}

bool sync_resilient(std::size_t n, std::size_t f, std::size_t helly) { return n > 3 * f && n > helly * f; }

}  // namespace cvxagree
