#include "cvxagree/sim.hpp"

#include <algorithm>
#include <set>

#include "cvxagree/error.hpp"
#include "cvxagree/verify.hpp"

namespace cvxagree {

const std::vector<std::string>& async_policies() {
  static const std::vector<std::string> p{"silent", "consistent-lie", "partition-delay", "random",
                                          "replay-then-corrupt"};
  return p;
}

const std::vector<std::string>& sync_policies() {
  static const std::vector<std::string> p{"silent", "equivocate", "crash"};
  return p;
}

ConvexitySpace Scenario::space() const {
  switch (protocol) {
    case ProtocolKind::Tree:
    case ProtocolKind::Chordal:
      if (!graph) throw InputError("scenario needs a graph");
      return ConvexitySpace::monophonic(*graph);
    case ProtocolKind::Lattice:
      if (!lattice) throw InputError("scenario needs a semilattice");
      return ConvexitySpace::algebraic(*lattice);
    case ProtocolKind::SyncConsensus:
      if (hull == HullKind::AlgebraicSemilattice) {
        if (!lattice) throw InputError("algebraic hull needs a semilattice");
        return ConvexitySpace::algebraic(*lattice);
      }
      if (!graph) throw InputError("graph hull needs a graph");
      return hull == HullKind::GeodesicGraph ? ConvexitySpace::geodesic(*graph) : ConvexitySpace::monophonic(*graph);
  }
  throw InputError("unknown protocol");
}

bool Scenario::is_faulty(std::size_t i) const { return std::find(faulty.begin(), faulty.end(), i) != faulty.end(); }

std::vector<std::size_t> Scenario::correct() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_faulty(i)) out.push_back(i);
  }
  return out;
}

std::unique_ptr<AsyncProtocol> make_protocol(const Scenario& s) {
  switch (s.protocol) {
    case ProtocolKind::Tree:
      if (!s.graph) throw InputError("tree protocol needs a graph");
      return std::make_unique<TreeAgreement>(*s.graph);
    case ProtocolKind::Chordal:
      if (!s.graph) throw InputError("chordal protocol needs a graph");
      return std::make_unique<ChordalAgreement>(*s.graph);
    case ProtocolKind::Lattice:
      if (!s.lattice) throw InputError("lattice protocol needs a semilattice");
      return std::make_unique<LatticeAgreement>(*s.lattice);
    case ProtocolKind::SyncConsensus:
      break;
  }
  throw InputError("protocol " + to_string(s.protocol) + " is not asynchronous");
}

bool scenario_compliant(const Scenario& s) {
  if (s.protocol == ProtocolKind::SyncConsensus) {
    return sync_resilient(s.n, s.f, helly_number(s.space()));
  }
  return make_protocol(s)->resilient(s.n, s.f);
}

void validate_scenario(const Scenario& s) {
  if (s.n == 0) throw InputError("scenario needs n >= 1");
  if (s.inputs.size() != s.n) {
    throw InputError("scenario has " + std::to_string(s.inputs.size()) + " inputs for n = " + std::to_string(s.n));
  }
  if (s.faulty.size() > s.f) throw InputError("more faulty processors than f");
  std::set<std::size_t> seen;
  for (std::size_t i : s.faulty) {
    if (i >= s.n) throw InputError("faulty processor id outside 0..n-1");
    if (!seen.insert(i).second) throw InputError("faulty processor listed twice");
  }
  if (s.correct().empty()) throw InputError("scenario has no correct processor");
  const std::size_t size = s.space().size();
  for (Value v : s.inputs) {
    if (v >= size) throw InputError("input " + std::to_string(v) + " outside the ground set");
  }
  const auto& policies = s.protocol == ProtocolKind::SyncConsensus ? sync_policies() : async_policies();
  if (std::find(policies.begin(), policies.end(), s.adversary.policy) == policies.end()) {
    throw InputError("adversary '" + s.adversary.policy + "' is not available for protocol " + to_string(s.protocol));
  }
  if (s.adversary.value && *s.adversary.value >= size) throw InputError("adversary value outside the ground set");
  if (s.adversary.policy == "replay-then-corrupt" && !s.adversary.blocking) {
    throw InputError("replay-then-corrupt needs a blocking instance");
  }
  if (s.round_cap == 0) throw InputError("round cap must be positive");
  if (!s.allow_noncompliant && !scenario_compliant(s)) {
    throw InputError("scenario violates the resilience requirement of " + to_string(s.protocol) +
                     " (set allow_noncompliant to run it anyway)");
  }
}

// ---------------------------------------------------------------------------

namespace {

using Row = std::vector<std::optional<Message>>;

struct View {
  std::size_t round = 0;
  const Scenario* scenario = nullptr;
  const std::vector<std::optional<Message>>* out = nullptr;  // correct senders only
  std::size_t value_count = 0;
  std::size_t bag_count = 0;
};

/// Correct receivers -> per-sender messages. Rows of faulty receivers stay empty.
using Plan = std::vector<Row>;

Plan full_delivery(const View& v) {
  const Scenario& s = *v.scenario;
  Plan p(s.n);
  for (std::size_t i : s.correct()) p[i] = *v.out;
  return p;
}

Message random_message(const View& v, Rng& rng) {
  Message m;
  m.value = static_cast<Value>(rng.below(v.value_count));
  if (v.bag_count > 0) m.bag = static_cast<Value>(rng.below(v.bag_count));
  return m;
}

class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual Plan plan(const View& v, Rng& rng) = 0;
};

class Silent : public Adversary {
 public:
  Plan plan(const View& v, Rng&) override { return full_delivery(v); }
};

class ConsistentLie : public Adversary {
 public:
  explicit ConsistentLie(Value lie) : lie_(lie) {}
  Plan plan(const View& v, Rng& rng) override {
    Plan p = full_delivery(v);
    for (std::size_t j : v.scenario->faulty) {
      Message m{lie_, v.bag_count > 0 ? static_cast<Value>(rng.below(v.bag_count)) : kNoBag};
      for (std::size_t i : v.scenario->correct()) p[i][j] = m;
    }
    return p;
  }

 private:
  Value lie_;
};

// Withholds a fixed set of f correct senders from every correct receiver,
// so each sees exactly n - f senders, f of them Byzantine.
class PartitionDelay : public Adversary {
 public:
  PartitionDelay(const Scenario& s, Rng& setup) {
    auto correct = s.correct();
    setup.shuffle(correct);
    correct.resize(std::min(s.f, correct.size() - 1));
    delayed_.insert(correct.begin(), correct.end());
  }
  Plan plan(const View& v, Rng& rng) override {
    Plan p = full_delivery(v);
    for (std::size_t j : v.scenario->faulty) {
      const Message m = random_message(v, rng);
      for (std::size_t i : v.scenario->correct()) p[i][j] = m;
    }
    for (std::size_t i : v.scenario->correct()) {
      for (std::size_t j : delayed_) p[i][j] = std::nullopt;
    }
    return p;
  }

 private:
  std::set<std::size_t> delayed_;
};

// A common core of n - f senders reaches everyone; other senders reach each
// receiver with probability 1/2.
class RandomDelivery : public Adversary {
 public:
  Plan plan(const View& v, Rng& rng) override {
    const Scenario& s = *v.scenario;
    Plan p(s.n);
    const auto core = rng.sample(s.n, s.n - s.f);
    std::vector<bool> in_core(s.n, false);
    for (std::size_t j : core) in_core[j] = true;
    std::vector<Message> lie(s.n);
    for (std::size_t j : s.faulty) lie[j] = random_message(v, rng);
    for (std::size_t i : s.correct()) {
      p[i].assign(s.n, std::nullopt);
      for (std::size_t j = 0; j < s.n; ++j) {
        if (!in_core[j] && !rng.chance(0.5)) continue;
        p[i][j] = s.is_faulty(j) ? std::optional<Message>(lie[j]) : (*v.out)[j];
      }
    }
    return p;
  }
};

// Silent for `replay_rounds` rounds, then every Byzantine sender pushes the
// blocking value mu(x_j, y_j) of some correct processor j.
class ReplayThenCorrupt : public Adversary {
 public:
  explicit ReplayThenCorrupt(const AdversarySpec& spec) : replay_(spec.replay_rounds), inst_(*spec.blocking) {}
  Plan plan(const View& v, Rng& rng) override {
    Plan p = full_delivery(v);
    if (v.round < replay_) return p;
    const auto correct = v.scenario->correct();
    const auto members = inst_.a.to_vector();
    std::size_t k = 0;
    for (std::size_t j : v.scenario->faulty) {
      const std::size_t target = correct[(v.round + k++) % correct.size()];
      const Value x = v.scenario->inputs[target];
      const Value y = (*v.out)[target]->value;
      const auto it = inst_.mu.find({x, y});
      Message m;
      m.value = it != inst_.mu.end() ? it->second : members[rng.below(members.size())];
      if (v.bag_count > 0) m.bag = static_cast<Value>(rng.below(v.bag_count));
      for (std::size_t i : correct) p[i][j] = m;
    }
    return p;
  }

 private:
  std::size_t replay_;
  BlockingInstance inst_;
};

std::unique_ptr<Adversary> make_adversary(const Scenario& s, std::size_t value_count, Rng& setup) {
  const std::string& name = s.adversary.policy;
  if (name == "silent") return std::make_unique<Silent>();
  if (name == "consistent-lie") {
    const Value lie = s.adversary.value ? *s.adversary.value : static_cast<Value>(setup.below(value_count));
    return std::make_unique<ConsistentLie>(lie);
  }
  if (name == "partition-delay") return std::make_unique<PartitionDelay>(s, setup);
  if (name == "random") return std::make_unique<RandomDelivery>();
  if (name == "replay-then-corrupt") return std::make_unique<ReplayThenCorrupt>(s.adversary);
  throw InputError("unknown async adversary '" + name + "'");
}

// Scheduler-side admission test for a plan; empty string if admissible.
std::string plan_violation(const View& v, const Plan& p) {
  const Scenario& s = *v.scenario;
  const auto correct = s.correct();
  const std::size_t quota = s.n - s.f;
  for (std::size_t i : correct) {
    if (p[i].size() != s.n) return "inbox width";
    std::size_t count = 0;
    for (std::size_t j = 0; j < s.n; ++j) {
      if (!p[i][j]) continue;
      ++count;
      if (p[i][j]->value >= v.value_count) return "value outside the ground set";
      if (!s.is_faulty(j) && p[i][j] != (*v.out)[j]) return "forged correct message";
    }
    if (count < quota) return "fewer than n - f senders";
  }
  for (std::size_t a = 0; a < correct.size(); ++a) {
    for (std::size_t b = a + 1; b < correct.size(); ++b) {
      std::size_t common = 0;
      for (std::size_t j = 0; j < s.n; ++j) {
        if (p[correct[a]][j] && p[correct[b]][j]) ++common;
      }
      if (common < quota) return "delivery sets overlap in fewer than n - f senders";
    }
  }
  for (std::size_t j : s.faulty) {
    std::optional<Message> first;
    for (std::size_t i : correct) {
      if (!p[i][j]) continue;
      if (first && *first != *p[i][j]) return "Byzantine equivocation";
      first = p[i][j];
    }
  }
  return "";
}

}  // namespace

Trace run_async(const Scenario& s) {
  validate_scenario(s);
  Trace trace;
  trace.scenario = s;
  const auto protocol = make_protocol(s);
  const ConvexitySpace& space = protocol->space();
  const auto* chordal = dynamic_cast<const ChordalAgreement*>(protocol.get());
  const std::size_t bag_count = chordal ? chordal->expanded_tree().node_count() : 0;
  const auto correct = s.correct();

  Rng setup(derive_seed(s.seed, 0, 0, kSeedSetup));
  auto adversary = make_adversary(s, space.size(), setup);

  std::vector<ProcessorState> state(s.n);
  for (std::size_t i : correct) state[i] = protocol->initial_state(i, s.inputs[i]);

  Summary& sum = trace.summary;
  auto all_decided = [&] {
    return std::all_of(correct.begin(), correct.end(), [&](std::size_t i) { return state[i].decided; });
  };
  for (std::size_t t = 0; t < s.round_cap && !all_decided() && sum.error.empty(); ++t) {
    std::vector<std::optional<Message>> out(s.n);
    for (std::size_t i : correct) out[i] = Message{state[i].value, state[i].bag};
    View view{t, &s, &out, space.size(), bag_count};
    Rng rng(derive_seed(s.seed, t, 0, kSeedAdversary));
    Plan plan = adversary->plan(view, rng);
    if (!plan_violation(view, plan).empty()) {
      ++sum.plan_rejected;
      plan = full_delivery(view);
    }
    for (std::size_t i : correct) {
      if (state[i].decided) continue;
      AsyncRecord rec;
      rec.round = t;
      rec.processor = i;
      rec.inbox = plan[i];
      rec.value_in = state[i].value;
      rec.bag_in = state[i].bag;
      RoundInbox values, bags;
      values.messages.resize(s.n);
      bags.messages.resize(s.n);
      for (std::size_t j = 0; j < s.n; ++j) {
        if (!plan[i][j]) continue;
        values.messages[j] = plan[i][j]->value;
        if (plan[i][j]->bag != kNoBag) bags.messages[j] = plan[i][j]->bag;
      }
      try {
        const StepRecord step = protocol->step(state[i], values, bags, s.f);
        rec.safe_area = step.safe_area;
        rec.tree_safe_area = step.tree_safe_area;
        rec.fallback = step.fallback;
      } catch (const Error& e) {
        sum.error = "round " + std::to_string(t) + ", processor " + std::to_string(i) + ": " + e.what();
        rec.safe_area = space.empty_set();
      }
      rec.value = state[i].value;
      rec.bag = state[i].bag;
      rec.decided = state[i].decided;
      if (rec.fallback) ++sum.fallback_count;
      trace.rounds.push_back(std::move(rec));
      if (!sum.error.empty()) break;
    }
  }
  sum.decided = sum.error.empty() && all_decided();
  sum.timeout = sum.error.empty() && !sum.decided;
  for (std::size_t i : correct) {
    sum.rounds_to_decide = std::max(sum.rounds_to_decide, state[i].round);
    if (state[i].output) sum.output_set.push_back(*state[i].output);
  }
  std::sort(sum.output_set.begin(), sum.output_set.end());
  sum.output_set.erase(std::unique(sum.output_set.begin(), sum.output_set.end()), sum.output_set.end());
  fill_outcome_checks(trace);
  return trace;
}

// ---------------------------------------------------------------------------

namespace {

BaToken random_token(std::size_t value_count, Rng& rng) {
  const std::uint64_t roll = rng.below(value_count + 3);
  if (roll < value_count) return static_cast<BaToken>(roll);
  if (roll == value_count) return kBaBottom;
  if (roll == value_count + 1) return kBaUndetermined;
  return static_cast<BaToken>(value_count + 7);  // out of range
}

}  // namespace

Trace run_sync(const Scenario& s) {
  validate_scenario(s);
  if (s.protocol != ProtocolKind::SyncConsensus) throw InputError("run_sync needs the sync protocol");
  Trace trace;
  trace.scenario = s;
  Summary& sum = trace.summary;
  const ConvexitySpace space = s.space();
  const std::size_t values = space.size();
  const auto correct = s.correct();
  const std::string& policy = s.adversary.policy;
  Rng setup(derive_seed(s.seed, 0, 0, kSeedSetup));
  const std::size_t rounds = ba_round_count(s.f);
  const std::size_t crash_round = s.adversary.crash_round ? *s.adversary.crash_round : setup.below(rounds + 1);

  // Processors that run the algorithm: correct ones, plus the faulty ones
  // under the crash policy until they stop.
  std::vector<bool> runs(s.n, false);
  for (std::size_t i = 0; i < s.n; ++i) runs[i] = !s.is_faulty(i) || policy == "crash";

  std::vector<std::vector<PhaseKingBa>> ba(s.n);
  try {
    for (std::size_t i = 0; i < s.n; ++i) {
      if (!runs[i]) continue;
      for (std::size_t j = 0; j < s.n; ++j) ba[i].emplace_back(i, j, s.n, s.f, values);
    }
  } catch (const Error& e) {
    sum.error = e.what();
  }

  for (std::size_t r = 0; r < rounds && sum.error.empty(); ++r) {
    Rng rng(derive_seed(s.seed, r, 0, kSeedAdversary));
    // honest[k][j]: token processor k sends in instance j.
    std::vector<std::vector<std::optional<BaToken>>> honest(s.n, std::vector<std::optional<BaToken>>(s.n));
    for (std::size_t k = 0; k < s.n; ++k) {
      if (!runs[k] || (s.is_faulty(k) && r >= crash_round)) continue;
      for (std::size_t j = 0; j < s.n; ++j) {
        honest[k][j] = ba[k][j].outgoing(r, k == j ? std::optional<Value>(s.inputs[k]) : std::nullopt);
      }
    }
    for (std::size_t i = 0; i < s.n; ++i) {
      if (!runs[i]) continue;
      SyncRoundRecord rec;
      rec.round = r;
      rec.processor = i;
      rec.tokens.assign(s.n, std::vector<std::optional<BaToken>>(s.n));
      for (std::size_t j = 0; j < s.n; ++j) {
        for (std::size_t k = 0; k < s.n; ++k) {
          if (s.is_faulty(k) && policy == "equivocate") {
            // Per receiver and instance; the sender round may carry any value.
            if (rng.chance(0.15)) continue;
            rec.tokens[j][k] = random_token(values, rng);
          } else {
            rec.tokens[j][k] = honest[k][j];
          }
        }
      }
      for (std::size_t j = 0; j < s.n; ++j) ba[i][j].receive(r, rec.tokens[j]);
      if (!s.is_faulty(i)) trace.sync_rounds.push_back(std::move(rec));
    }
  }

  if (sum.error.empty()) {
    for (std::size_t i : correct) {
      SyncRecord rec;
      rec.processor = i;
      for (std::size_t j = 0; j < s.n; ++j) rec.decisions.push_back(ba[i][j].decision());
      try {
        const auto res = convex_consensus_from_decisions(space, rec.decisions, s.f);
        rec.safe_area = res.safe_area;
        rec.output = res.output;
      } catch (const Error& e) {
        sum.error = "processor " + std::to_string(i) + ": " + e.what();
        rec.safe_area = space.empty_set();
      }
      trace.sync.push_back(std::move(rec));
      if (!sum.error.empty()) break;
    }
  }
  sum.decided = sum.error.empty();
  sum.rounds_to_decide = sum.decided ? rounds : 0;
  for (const auto& rec : trace.sync) {
    if (sum.decided) sum.output_set.push_back(rec.output);
  }
  std::sort(sum.output_set.begin(), sum.output_set.end());
  sum.output_set.erase(std::unique(sum.output_set.begin(), sum.output_set.end()), sum.output_set.end());
  fill_outcome_checks(trace);
  return trace;
}

Trace run_scenario(const Scenario& s) {
  return s.protocol == ProtocolKind::SyncConsensus ? run_sync(s) : run_async(s);
}

bool check_round_guarantees(const Trace& t, std::string* why) {
  const Scenario& s = t.scenario;
  auto fail = [&](std::size_t round, const std::string& msg) {
    if (why) *why = "round " + std::to_string(round) + ": " + msg;
    return false;
  };
  const std::size_t quota = s.n >= s.f ? s.n - s.f : 0;
  std::vector<std::optional<Message>> last(s.n);
  std::size_t start = 0;
  while (start < t.rounds.size()) {
    const std::size_t round = t.rounds[start].round;
    std::size_t end = start;
    while (end < t.rounds.size() && t.rounds[end].round == round) ++end;
    // What each correct sender sent this round: its own record, else its
    // last state (decided processors keep broadcasting), else its input
    // with an unknown bag.
    std::vector<std::optional<Message>> sent = last;
    for (std::size_t k = start; k < end; ++k) sent[t.rounds[k].processor] = Message{t.rounds[k].value_in, t.rounds[k].bag_in};
    for (std::size_t a = start; a < end; ++a) {
      const auto& in = t.rounds[a].inbox;
      if (in.size() != s.n) return fail(round, "inbox has the wrong width");
      std::size_t count = 0;
      for (std::size_t j = 0; j < s.n; ++j) {
        if (!in[j]) continue;
        ++count;
        const bool forged = sent[j] ? *sent[j] != *in[j] : (j < s.inputs.size() && s.inputs[j] != in[j]->value);
        if (!s.is_faulty(j) && forged) {
          return fail(round, "processor " + std::to_string(t.rounds[a].processor) + " holds a forged message from " +
                                 std::to_string(j));
        }
      }
      if (count < quota) {
        return fail(round, "processor " + std::to_string(t.rounds[a].processor) + " got " + std::to_string(count) +
                               " < n - f senders");
      }
      for (std::size_t b = a + 1; b < end; ++b) {
        const auto& other = t.rounds[b].inbox;
        std::size_t common = 0;
        for (std::size_t j = 0; j < s.n; ++j) {
          if (in[j] && other[j]) {
            ++common;
            if (s.is_faulty(j) && *in[j] != *other[j]) {
              return fail(round, "Byzantine sender " + std::to_string(j) + " equivocated");
            }
          }
        }
        if (common < quota) return fail(round, "two delivery sets overlap in fewer than n - f senders");
      }
    }
    for (std::size_t k = start; k < end; ++k) last[t.rounds[k].processor] = Message{t.rounds[k].value, t.rounds[k].bag};
    start = end;
  }
  return true;
}

}  // namespace cvxagree
