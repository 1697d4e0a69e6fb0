#include "cvxagree/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "cvxagree/error.hpp"
#include "cvxagree/verify.hpp"

namespace cvxagree {

namespace {

template <typename T>
T as(const Json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(where + ": wrong type (" + std::string(j.type_name()) + ")");
  }
}

const Json& need(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  return j.at(key);
}

std::size_t universe_of(const Instance& inst) {
  return inst.graph ? inst.graph->vertex_count() : inst.lattice->size();
}

InstanceSpec parse_instance(const Json& j, const std::string& where) {
  require_keys(j, {"generate", "graph", "lattice", "file", "type"}, where);
  InstanceSpec spec;
  const int sources = j.contains("generate") + j.contains("graph") + j.contains("lattice") + j.contains("file");
  if (sources != 1) throw InputError(where + ": give exactly one of generate, graph, lattice, file");
  if (j.contains("type") && !j.contains("file")) throw InputError(where + ": 'type' only applies to 'file'");
  if (j.contains("generate")) {
    const std::string w = where + ".generate";
    const Json& g = j.at("generate");
    require_keys(g, {"kind", "params", "seed"}, w);
    spec.source = "generate";
    spec.kind = as<std::string>(need(g, "kind", w), w + ".kind");
    if (g.contains("params")) {
      if (!g.at("params").is_object()) throw InputError(w + ".params: expected an object");
      for (const auto& [k, v] : g.at("params").items()) {
        if (!v.is_number()) throw InputError(w + ".params." + k + ": expected a number");
        spec.params[k] = v.get<double>();
      }
    }
    if (g.contains("seed")) spec.seed = as<std::uint64_t>(g.at("seed"), w + ".seed");
  } else if (j.contains("graph")) {
    spec.source = "graph";
    spec.text = as<std::string>(j.at("graph"), where + ".graph");
  } else if (j.contains("lattice")) {
    spec.source = "lattice";
    spec.text = as<std::string>(j.at("lattice"), where + ".lattice");
  } else {
    spec.source = "file";
    spec.text = as<std::string>(j.at("file"), where + ".file");
    spec.file_type = as<std::string>(need(j, "type", where), where + ".type");
    if (spec.file_type != "graph" && spec.file_type != "lattice") {
      throw InputError(where + ".type: expected 'graph' or 'lattice'");
    }
  }
  return spec;
}

std::vector<std::uint64_t> parse_seeds(const Json& j, const std::string& where) {
  std::vector<std::uint64_t> out;
  if (j.is_array()) {
    for (const auto& s : j) out.push_back(as<std::uint64_t>(s, where));
  } else {
    require_keys(j, {"start", "count"}, where);
    const auto start = as<std::uint64_t>(need(j, "start", where), where + ".start");
    const auto count = as<std::uint64_t>(need(j, "count", where), where + ".count");
    for (std::uint64_t k = 0; k < count; ++k) out.push_back(start + k);
  }
  if (out.empty()) throw InputError(where + ": no seeds");
  return out;
}

ScenarioSpec parse_scenario(const Json& j, const std::string& where, const std::filesystem::path& base) {
  require_keys(j,
               {"id", "instance", "protocol", "hull", "n", "f", "faulty", "inputs", "adversary", "seeds", "repeat",
                "round_cap", "agreement_d", "allow_noncompliant"},
               where);
  ScenarioSpec s;
  s.id = as<std::string>(need(j, "id", where), where + ".id");
  if (s.id.empty()) throw InputError(where + ".id: must not be empty");
  s.instance = parse_instance(need(j, "instance", where), where + ".instance");
  const Instance inst = resolve_instance(s.instance, base);
  try {
    s.protocol = parse_protocol_kind(as<std::string>(need(j, "protocol", where), where + ".protocol"));
    if (j.contains("hull")) s.hull = parse_hull_kind(as<std::string>(j.at("hull"), where + ".hull"));
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
  s.n = as<std::size_t>(need(j, "n", where), where + ".n");
  s.f = as<std::size_t>(need(j, "f", where), where + ".f");
  if (j.contains("faulty")) s.faulty = as<std::vector<std::size_t>>(j.at("faulty"), where + ".faulty");
  if (j.contains("inputs")) {
    const Json& in = j.at("inputs");
    if (in.is_string()) {
      if (in.get<std::string>() != "random") throw InputError(where + ".inputs: expected a list or \"random\"");
    } else {
      s.inputs = as<std::vector<Value>>(in, where + ".inputs");
    }
  }
  if (j.contains("adversary")) {
    const std::string w = where + ".adversary";
    const Json& a = j.at("adversary");
    require_keys(a, {"policy", "value", "replay_rounds", "crash_round", "blocking"}, w);
    s.adversary.policy = as<std::string>(need(a, "policy", w), w + ".policy");
    if (a.contains("value")) s.adversary.value = as<Value>(a.at("value"), w + ".value");
    if (a.contains("replay_rounds")) s.adversary.replay_rounds = as<std::size_t>(a.at("replay_rounds"), w + ".replay_rounds");
    if (a.contains("crash_round")) s.adversary.crash_round = as<std::size_t>(a.at("crash_round"), w + ".crash_round");
    if (a.contains("blocking")) {
      try {
        s.adversary.blocking = blocking_from_json(a.at("blocking"), universe_of(inst));
      } catch (const InputError& e) {
        throw InputError(w + "." + e.what());
      }
    }
  }
  if (j.contains("seeds")) s.seeds = parse_seeds(j.at("seeds"), where + ".seeds");
  if (j.contains("repeat")) s.repeat = as<std::size_t>(j.at("repeat"), where + ".repeat");
  if (s.repeat == 0) throw InputError(where + ".repeat: must be positive");
  if (j.contains("round_cap")) s.round_cap = as<std::size_t>(j.at("round_cap"), where + ".round_cap");
  if (j.contains("agreement_d")) s.agreement_d = as<std::uint32_t>(j.at("agreement_d"), where + ".agreement_d");
  if (s.agreement_d == 0) throw InputError(where + ".agreement_d: must be at least 1");
  if (j.contains("allow_noncompliant")) {
    s.allow_noncompliant = as<bool>(j.at("allow_noncompliant"), where + ".allow_noncompliant");
  }
  // Surface structural problems now rather than at run time.
  try {
    make_scenario(s, inst, s.seeds.front());
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
  return s;
}

std::string safe_name(const std::string& id) {
  std::string out;
  for (char c : id) out += std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.' ? c : '_';
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

BatchConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  require_keys(j, {"version", "output", "scenarios"}, "config");
  const int version = as<int>(need(j, "version", "config"), "config.version");
  if (version != kConfigVersion) throw InputError("config.version: unsupported version " + std::to_string(version));
  BatchConfig c;
  c.base_dir = base_dir;
  if (j.contains("output")) {
    const Json& o = j.at("output");
    require_keys(o, {"dir", "traces"}, "config.output");
    if (o.contains("dir")) c.out_dir = as<std::string>(o.at("dir"), "config.output.dir");
    if (o.contains("traces")) c.write_traces = as<bool>(o.at("traces"), "config.output.traces");
  }
  const Json& list = need(j, "scenarios", "config");
  if (!list.is_array() || list.empty()) throw InputError("config.scenarios: expected a nonempty list");
  std::vector<std::string> ids;
  for (std::size_t k = 0; k < list.size(); ++k) {
    c.scenarios.push_back(parse_scenario(list[k], "config.scenarios[" + std::to_string(k) + "]", base_dir));
    ids.push_back(c.scenarios.back().id);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) throw InputError("config.scenarios: duplicate id");
  return c;
}

BatchConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot read config " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), file.parent_path().empty() ? std::filesystem::path(".") : file.parent_path());
}

Json config_to_json(const BatchConfig& c) {
  Json list = Json::array();
  for (const auto& s : c.scenarios) {
    Json inst;
    if (s.instance.source == "generate") {
      Json params = Json::object();
      for (const auto& [k, v] : s.instance.params) params[k] = v;
      inst["generate"] = Json{{"kind", s.instance.kind}, {"params", params}, {"seed", s.instance.seed}};
    } else if (s.instance.source == "file") {
      inst = Json{{"file", s.instance.text}, {"type", s.instance.file_type}};
    } else {
      inst[s.instance.source] = s.instance.text;
    }
    Json j{{"id", s.id}, {"instance", inst}, {"protocol", to_string(s.protocol)}};
    if (s.hull) j["hull"] = to_string(*s.hull);
    j["n"] = s.n;
    j["f"] = s.f;
    if (s.faulty) j["faulty"] = *s.faulty;
    j["inputs"] = s.inputs ? Json(*s.inputs) : Json("random");
    Json adv{{"policy", s.adversary.policy}};
    if (s.adversary.value) adv["value"] = *s.adversary.value;
    if (s.adversary.replay_rounds) adv["replay_rounds"] = s.adversary.replay_rounds;
    if (s.adversary.crash_round) adv["crash_round"] = *s.adversary.crash_round;
    if (s.adversary.blocking) adv["blocking"] = blocking_to_json(*s.adversary.blocking, s.adversary.blocking->a.universe());
    j["adversary"] = adv;
    j["seeds"] = s.seeds;
    j["repeat"] = s.repeat;
    j["round_cap"] = s.round_cap;
    j["agreement_d"] = s.agreement_d;
    j["allow_noncompliant"] = s.allow_noncompliant;
    list.push_back(j);
  }
  return Json{{"version", kConfigVersion},
              {"output", {{"dir", c.out_dir.string()}, {"traces", c.write_traces}}},
              {"scenarios", list}};
}

Instance resolve_instance(const InstanceSpec& spec, const std::filesystem::path& base_dir) {
  if (spec.source == "generate") return generate_instance(spec.kind, spec.params, spec.seed);
  Instance inst;
  std::string text = spec.text;
  std::string type = spec.source;
  if (spec.source == "file") {
    const auto path = std::filesystem::path(spec.text).is_absolute() ? std::filesystem::path(spec.text)
                                                                      : base_dir / spec.text;
    std::ifstream in(path);
    if (!in) throw InputError("cannot read instance file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
    type = spec.file_type;
  }
  if (type == "graph") {
    inst.graph = parse_graph_text(text);
  } else if (type == "lattice") {
    inst.lattice = parse_semilattice_text(text);
  } else {
    throw InputError("unknown instance source '" + spec.source + "'");
  }
  return inst;
}

Scenario make_scenario(const ScenarioSpec& spec, const Instance& inst, std::uint64_t seed) {
  Scenario s;
  s.id = spec.id;
  s.protocol = spec.protocol;
  s.graph = inst.graph;
  s.lattice = inst.lattice;
  const HullKind natural = inst.graph ? HullKind::MonophonicGraph : HullKind::AlgebraicSemilattice;
  s.hull = spec.hull.value_or(natural);
  if (spec.protocol != ProtocolKind::SyncConsensus && s.hull != natural) {
    throw InputError("protocol " + to_string(spec.protocol) + " fixes the hull to " + to_string(natural));
  }
  if ((s.hull == HullKind::AlgebraicSemilattice) != static_cast<bool>(inst.lattice)) {
    throw InputError("hull " + to_string(s.hull) + " does not match the instance type");
  }
  s.n = spec.n;
  s.f = spec.f;
  if (spec.faulty) {
    s.faulty = *spec.faulty;
  } else {
    for (std::size_t i = spec.n > spec.f ? spec.n - spec.f : 0; i < spec.n; ++i) s.faulty.push_back(i);
  }
  if (spec.inputs) {
    s.inputs = *spec.inputs;
  } else {
    Rng rng(derive_seed(seed, 0, 0, kSeedInputs));
    const std::size_t size = universe_of(inst);
    for (std::size_t i = 0; i < spec.n; ++i) s.inputs.push_back(static_cast<Value>(rng.below(size)));
  }
  s.adversary = spec.adversary;
  s.seed = seed;
  s.round_cap = spec.round_cap;
  s.agreement_d = spec.agreement_d;
  s.allow_noncompliant = spec.allow_noncompliant;
  validate_scenario(s);
  return s;
}

std::string summary_csv_header() {
  return "format_version,scenario_id,seed,rep,protocol,n,f,compliant,rounds,decided,timeout,agreement_metric,"
         "agreement,validity,fallback_count,plan_rejected,converged_round,error";
}

std::string summary_csv_row(const BatchRow& r) {
  const Summary& s = r.summary;
  std::ostringstream out;
  out << kSummaryFormatVersion << ',' << csv_field(r.scenario_id) << ',' << r.seed << ',' << r.rep << ','
      << to_string(r.protocol) << ',' << r.n << ',' << r.f << ',' << r.compliant << ',' << s.rounds_to_decide << ','
      << s.decided << ',' << s.timeout << ',' << r.agreement_metric << ',' << s.agreement << ',' << s.validity << ','
      << s.fallback_count << ',' << s.plan_rejected << ','
      << (s.converged_round ? std::to_string(*s.converged_round) : std::string()) << ',' << csv_field(s.error);
  return out.str();
}

std::string summary_csv(const std::vector<BatchRow>& rows) {
  std::string out = summary_csv_header() + "\n";
  for (const auto& r : rows) out += summary_csv_row(r) + "\n";
  return out;
}

Json summary_row_json(const BatchRow& r) {
  Json j{{"type", "summary"},
         {"format_version", kSummaryFormatVersion},
         {"scenario_id", r.scenario_id},
         {"seed", r.seed},
         {"rep", r.rep},
         {"protocol", to_string(r.protocol)},
         {"n", r.n},
         {"f", r.f},
         {"compliant", r.compliant},
         {"agreement_metric", r.agreement_metric}};
  j.update(summary_to_json(r.summary));
  return j;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp);
    out << contents;
    if (!out.flush()) throw InputError("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

BatchResult run_batch(const BatchConfig& c, const BatchOptions& opt) {
  BatchResult res;
  const auto out_dir = opt.out_dir.value_or(c.out_dir);
  for (const auto& spec : c.scenarios) {
    const Instance inst = resolve_instance(spec.instance, c.base_dir);
    const auto seeds = opt.seed ? std::vector<std::uint64_t>{*opt.seed} : spec.seeds;
    for (std::uint64_t seed : seeds) {
      const Scenario s = make_scenario(spec, inst, seed);
      const bool compliant = scenario_compliant(s);
      for (std::size_t rep = 0; rep < spec.repeat; ++rep) {
        const Trace t = run_scenario(s);
        BatchRow row;
        row.scenario_id = spec.id;
        row.seed = seed;
        row.rep = rep;
        row.protocol = s.protocol;
        row.n = s.n;
        row.f = s.f;
        row.compliant = compliant;
        row.summary = t.summary;
        const auto ys = trace_outputs(t);
        row.agreement_metric = ys.empty() ? 0 : agreement_metric(s, ys);
        if (opt.write_files && c.write_traces) {
          const auto name = safe_name(spec.id) + "-seed" + std::to_string(seed) + "-rep" + std::to_string(rep) + ".jsonl";
          write_file_atomic(out_dir / "traces" / name, trace_to_jsonl(t));
          row.trace_file = (std::filesystem::path("traces") / name).string();
        }
        const bool pass = t.summary.decided && t.summary.agreement && t.summary.validity;
        if (compliant && !pass) res.exit_code = 1;
        res.rows.push_back(std::move(row));
      }
    }
  }
  if (opt.write_files) write_file_atomic(out_dir / "summary.csv", summary_csv(res.rows));
  return res;
}

BatchConfig emit_lower_bound_scenario(const ConvexitySpace& space, const BlockingInstance& inst, std::size_t f,
                                      std::size_t replay_rounds) {
  std::string why;
  if (!verify_blocking_instance(space, inst, &why)) throw InputError("blocking instance fails verification: " + why);
  if (f == 0) throw InputError("lower-bound scenario needs f >= 1");
  ScenarioSpec s;
  const std::size_t m = inst.m();
  switch (space.kind()) {
    case HullKind::MonophonicGraph:
      if (space.graph().is_tree()) {
        s.protocol = ProtocolKind::Tree;
      } else if (is_chordal(space.graph())) {
        s.protocol = ProtocolKind::Chordal;
      } else {
        throw InputError("no asynchronous protocol for a non-chordal graph");
      }
      s.instance.source = "graph";
      s.instance.text = format_graph(space.graph());
      break;
    case HullKind::AlgebraicSemilattice:
      if (!is_cycle_free(space.semilattice())) throw InputError("no asynchronous protocol for a semilattice with cycles");
      s.protocol = ProtocolKind::Lattice;
      s.instance.source = "lattice";
      s.instance.text = format_semilattice(space.semilattice());
      break;
    case HullKind::GeodesicGraph:
      throw InputError("no asynchronous protocol for geodesic convexity");
  }
  s.id = "lower-bound-m" + std::to_string(m) + "-f" + std::to_string(f);
  s.n = (m + 1) * f;
  s.f = f;
  const auto members = inst.a.to_vector();
  std::vector<Value> inputs;
  std::vector<std::size_t> faulty;
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t r = 0; r < f; ++r) inputs.push_back(members[k]);
  }
  for (std::size_t r = 0; r < f; ++r) {
    faulty.push_back(m * f + r);
    inputs.push_back(members.front());
  }
  s.inputs = inputs;
  s.faulty = faulty;
  s.adversary.policy = "replay-then-corrupt";
  s.adversary.replay_rounds = replay_rounds;
  s.adversary.blocking = inst;
  s.allow_noncompliant = true;
  BatchConfig c;
  c.out_dir = "out/" + s.id;
  c.scenarios.push_back(std::move(s));
  return c;
}

}  // namespace cvxagree
