#include "cvxagree/serialize.hpp"

#include <ostream>
#include <sstream>

#include "cvxagree/error.hpp"

namespace cvxagree {

void require_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw InputError(where + ": unknown field '" + key + "'");
  }
}

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  return j.at(key);
}

template <typename T>
T get(const Json& j, const char* key, const std::string& where) {
  try {
    return field(j, key, where).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(where + "." + key + ": " + e.what());
  }
}

Json set_json(const ValueSet& s) { return Json(s.to_vector()); }

ValueSet set_from(const Json& j, std::size_t universe, const std::string& where) {
  try {
    const auto vs = j.get<std::vector<Value>>();
    for (Value v : vs) {
      if (v >= universe) throw InputError(where + ": value outside the ground set");
    }
    return ValueSet(universe, std::span<const Value>(vs));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(where + ": " + e.what());
  }
}

Json bag_json(Value bag) { return bag == kNoBag ? Json(nullptr) : Json(bag); }

Value bag_from(const Json& j) { return j.is_null() ? kNoBag : j.get<Value>(); }

Json optional_json(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json blocking_to_json(const BlockingInstance& b, std::size_t) {
  Json mu = Json::array();
  for (const auto& [key, v] : b.mu) mu.push_back(Json::array({key.first, key.second, v}));
  return Json{{"a", set_json(b.a)}, {"mu", mu}};
}

BlockingInstance blocking_from_json(const Json& j, std::size_t universe) {
  const std::string where = "blocking";
  require_keys(j, {"a", "mu"}, where);
  BlockingInstance b;
  b.a = set_from(field(j, "a", where), universe, where + ".a");
  try {
    for (const auto& row : field(j, "mu", where)) {
      const auto t = row.get<std::vector<Value>>();
      if (t.size() != 3) throw InputError(where + ".mu: entries are [x, y, value]");
      for (Value v : t) {
        if (v >= universe) throw InputError(where + ".mu: value outside the ground set");
      }
      b.mu[{t[0], t[1]}] = t[2];
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(where + ".mu: " + e.what());
  }
  return b;
}

Json scenario_to_json(const Scenario& s) {
  Json adv{{"policy", s.adversary.policy},
           {"value", s.adversary.value ? Json(*s.adversary.value) : Json(nullptr)},
           {"replay_rounds", s.adversary.replay_rounds},
           {"blocking", s.adversary.blocking ? blocking_to_json(*s.adversary.blocking, s.space().size()) : Json(nullptr)},
           {"crash_round", optional_json(s.adversary.crash_round)}};
  return Json{{"id", s.id},
              {"protocol", to_string(s.protocol)},
              {"hull", to_string(s.hull)},
              {"graph", s.graph ? Json(format_graph(*s.graph)) : Json(nullptr)},
              {"lattice", s.lattice ? Json(format_semilattice(*s.lattice)) : Json(nullptr)},
              {"n", s.n},
              {"f", s.f},
              {"faulty", s.faulty},
              {"inputs", s.inputs},
              {"adversary", adv},
              {"seed", s.seed},
              {"round_cap", s.round_cap},
              {"agreement_d", s.agreement_d},
              {"allow_noncompliant", s.allow_noncompliant}};
}

Scenario scenario_from_json(const Json& j) {
  const std::string where = "scenario";
  require_keys(j,
               {"type", "id", "protocol", "hull", "graph", "lattice", "n", "f", "faulty", "inputs", "adversary", "seed",
                "round_cap", "agreement_d", "allow_noncompliant"},
               where);
  Scenario s;
  s.id = get<std::string>(j, "id", where);
  s.protocol = parse_protocol_kind(get<std::string>(j, "protocol", where));
  s.hull = parse_hull_kind(get<std::string>(j, "hull", where));
  if (!field(j, "graph", where).is_null()) s.graph = parse_graph_text(get<std::string>(j, "graph", where));
  if (!field(j, "lattice", where).is_null()) s.lattice = parse_semilattice_text(get<std::string>(j, "lattice", where));
  s.n = get<std::size_t>(j, "n", where);
  s.f = get<std::size_t>(j, "f", where);
  s.faulty = get<std::vector<std::size_t>>(j, "faulty", where);
  s.inputs = get<std::vector<Value>>(j, "inputs", where);
  const Json& a = field(j, "adversary", where);
  require_keys(a, {"policy", "value", "replay_rounds", "blocking", "crash_round"}, where + ".adversary");
  s.adversary.policy = get<std::string>(a, "policy", where + ".adversary");
  if (!field(a, "value", where).is_null()) s.adversary.value = get<Value>(a, "value", where);
  s.adversary.replay_rounds = get<std::size_t>(a, "replay_rounds", where + ".adversary");
  if (!field(a, "crash_round", where).is_null()) s.adversary.crash_round = get<std::size_t>(a, "crash_round", where);
  s.seed = get<std::uint64_t>(j, "seed", where);
  s.round_cap = get<std::size_t>(j, "round_cap", where);
  s.agreement_d = get<std::uint32_t>(j, "agreement_d", where);
  s.allow_noncompliant = get<bool>(j, "allow_noncompliant", where);
  if (!field(a, "blocking", where).is_null()) s.adversary.blocking = blocking_from_json(a.at("blocking"), s.space().size());
  return s;
}

Json summary_to_json(const Summary& s) {
  return Json{{"rounds_to_decide", s.rounds_to_decide},
              {"output_set", s.output_set},
              {"diameter_or_chain_check", s.agreement},
              {"validity_check", s.validity},
              {"fallback_count", s.fallback_count},
              {"decided", s.decided},
              {"timeout", s.timeout},
              {"error", s.error},
              {"plan_rejected", s.plan_rejected},
              {"converged_round", optional_json(s.converged_round)}};
}

void write_trace(std::ostream& out, const Trace& t) {
  Json head{{"type", "scenario"}};
  head.update(scenario_to_json(t.scenario));
  out << head.dump() << '\n';
  for (const auto& r : t.rounds) {
    Json inbox = Json::array();
    for (const auto& m : r.inbox) inbox.push_back(m ? Json::array({m->value, bag_json(m->bag)}) : Json(nullptr));
    Json rec{{"type", "round"},
             {"round", r.round},
             {"processor", r.processor},
             {"inbox", inbox},
             {"safe_area", set_json(r.safe_area)},
             {"tree_safe_area", r.tree_safe_area ? set_json(*r.tree_safe_area) : Json(nullptr)},
             {"value_in", r.value_in},
             {"bag_in", bag_json(r.bag_in)},
             {"value", r.value},
             {"bag", bag_json(r.bag)},
             {"fallback", r.fallback},
             {"decided", r.decided}};
    out << rec.dump() << '\n';
  }
  for (const auto& r : t.sync_rounds) {
    Json tokens = Json::array();
    for (const auto& row : r.tokens) {
      Json line = Json::array();
      for (const auto& tok : row) line.push_back(tok ? Json(*tok) : Json(nullptr));
      tokens.push_back(line);
    }
    out << Json{{"type", "sync_round"}, {"round", r.round}, {"processor", r.processor}, {"tokens", tokens}}.dump()
        << '\n';
  }
  for (const auto& r : t.sync) {
    out << Json{{"type", "sync_decision"},
                {"processor", r.processor},
                {"decisions", r.decisions},
                {"safe_area", set_json(r.safe_area)},
                {"output", r.output}}
               .dump()
        << '\n';
  }
  Json sum{{"type", "summary"}};
  sum.update(summary_to_json(t.summary));
  out << sum.dump() << '\n';
}

std::string trace_to_jsonl(const Trace& t) {
  std::ostringstream out;
  write_trace(out, t);
  return out.str();
}

Trace trace_from_jsonl(const std::string& text) {
  Trace t;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool have_scenario = false, have_summary = false;
  std::size_t universe = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string where = "trace line " + std::to_string(lineno);
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw InputError(where + ": " + e.what());
    }
    if (have_summary) throw InputError(where + ": record after the summary");
    const std::string type = get<std::string>(j, "type", where);
    if (!have_scenario && type != "scenario") throw InputError(where + ": trace must start with a scenario record");
    try {
      if (type == "scenario") {
        if (have_scenario) throw InputError(where + ": second scenario record");
        t.scenario = scenario_from_json(j);
        universe = t.scenario.space().size();
        have_scenario = true;
      } else if (type == "round") {
        require_keys(j,
                     {"type", "round", "processor", "inbox", "safe_area", "tree_safe_area", "value_in", "bag_in",
                      "value", "bag", "fallback", "decided"},
                     where);
        AsyncRecord r;
        r.round = get<std::size_t>(j, "round", where);
        r.processor = get<std::size_t>(j, "processor", where);
        for (const auto& m : field(j, "inbox", where)) {
          if (m.is_null()) {
            r.inbox.emplace_back();
          } else {
            if (!m.is_array() || m.size() != 2) throw InputError(where + ": inbox entries are [value, bag] or null");
            r.inbox.push_back(Message{m[0].get<Value>(), bag_from(m[1])});
          }
        }
        r.safe_area = set_from(field(j, "safe_area", where), universe, where + ".safe_area");
        if (!field(j, "tree_safe_area", where).is_null()) {
          std::size_t bags = 0;
          if (t.scenario.protocol == ProtocolKind::Chordal) bags = 2 * maximal_cliques(*t.scenario.graph).size() - 1;
          r.tree_safe_area = set_from(j.at("tree_safe_area"), bags, where + ".tree_safe_area");
        }
        r.value_in = get<Value>(j, "value_in", where);
        r.bag_in = bag_from(field(j, "bag_in", where));
        r.value = get<Value>(j, "value", where);
        r.bag = bag_from(field(j, "bag", where));
        r.fallback = get<bool>(j, "fallback", where);
        r.decided = get<bool>(j, "decided", where);
        t.rounds.push_back(std::move(r));
      } else if (type == "sync_round") {
        require_keys(j, {"type", "round", "processor", "tokens"}, where);
        SyncRoundRecord r;
        r.round = get<std::size_t>(j, "round", where);
        r.processor = get<std::size_t>(j, "processor", where);
        for (const auto& row : field(j, "tokens", where)) {
          std::vector<std::optional<BaToken>> line_tokens;
          for (const auto& tok : row) {
            line_tokens.push_back(tok.is_null() ? std::nullopt : std::optional<BaToken>(tok.get<BaToken>()));
          }
          r.tokens.push_back(std::move(line_tokens));
        }
        t.sync_rounds.push_back(std::move(r));
      } else if (type == "sync_decision") {
        require_keys(j, {"type", "processor", "decisions", "safe_area", "output"}, where);
        SyncRecord r;
        r.processor = get<std::size_t>(j, "processor", where);
        r.decisions = get<std::vector<BaToken>>(j, "decisions", where);
        r.safe_area = set_from(field(j, "safe_area", where), universe, where + ".safe_area");
        r.output = get<Value>(j, "output", where);
        t.sync.push_back(std::move(r));
      } else if (type == "summary") {
        require_keys(j,
                     {"type", "rounds_to_decide", "output_set", "diameter_or_chain_check", "validity_check",
                      "fallback_count", "decided", "timeout", "error", "plan_rejected", "converged_round"},
                     where);
        Summary& s = t.summary;
        s.rounds_to_decide = get<std::size_t>(j, "rounds_to_decide", where);
        s.output_set = get<std::vector<Value>>(j, "output_set", where);
        s.agreement = get<bool>(j, "diameter_or_chain_check", where);
        s.validity = get<bool>(j, "validity_check", where);
        s.fallback_count = get<std::size_t>(j, "fallback_count", where);
        s.decided = get<bool>(j, "decided", where);
        s.timeout = get<bool>(j, "timeout", where);
        s.error = get<std::string>(j, "error", where);
        s.plan_rejected = get<std::size_t>(j, "plan_rejected", where);
        if (!field(j, "converged_round", where).is_null()) s.converged_round = get<std::size_t>(j, "converged_round", where);
        have_summary = true;
      } else {
        throw InputError(where + ": unknown record type '" + type + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  if (!have_summary) throw InputError("trace has no summary record");
  return t;
}

}  // namespace cvxagree
