#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "cvxagree/error.hpp"
#include "cvxagree/scenario.hpp"
#include "cvxagree/verify.hpp"

using namespace cvxagree;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_file_atomic(out, text);
  }
}

ConvexitySpace load_space(const std::string& file, const std::string& type, const std::string& hull) {
  const std::string text = read_file(file);
  if (type == "lattice") {
    if (!hull.empty() && hull != "algebraic") throw InputError("semilattices only carry the algebraic hull");
    return ConvexitySpace::algebraic(parse_semilattice_text(text));
  }
  Graph g = parse_graph_text(text);
  if (hull == "geodesic") return ConvexitySpace::geodesic(std::move(g));
  if (!hull.empty() && hull != "monophonic") throw InputError("graphs carry the monophonic or geodesic hull");
  return ConvexitySpace::monophonic(std::move(g));
}

std::vector<Value> parse_values(const std::string& csv) {
  std::vector<Value> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(static_cast<Value>(std::stoul(item)));
    } catch (const std::exception&) {
      throw InputError("bad value '" + item + "' in set");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Byzantine approximate agreement on discrete convexity spaces"};
  app.require_subcommand(1);
  std::string format = "csv";
  const auto formats = CLI::IsMember({"jsonl", "csv"});

  // generate
  auto* gen = app.add_subcommand("generate", "Write a graph or semilattice instance");
  std::string kind, gen_out;
  std::vector<std::string> params;
  std::uint64_t gen_seed = 0;
  gen->add_option("kind", kind, "Instance kind")->required()->check(CLI::IsMember(instance_kinds()));
  gen->add_option("-p,--param", params, "name=value (repeatable)");
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("-o,--out", gen_out, "Output file (default stdout)");

  // run
  auto* run = app.add_subcommand("run", "Execute a batch config");
  std::string config, out_dir;
  std::optional<std::uint64_t> run_seed;
  bool no_files = false;
  run->add_option("--config", config, "Batch config JSON")->required();
  run->add_option("--seed", run_seed, "Run only this seed");
  run->add_option("--out-dir", out_dir, "Override the output directory");
  run->add_option("--format", format, "Summary format on stdout")->check(formats);
  run->add_flag("--no-files", no_files, "Do not write summary.csv or traces");

  // verify-trace
  auto* ver = app.add_subcommand("verify-trace", "Re-check trace files");
  std::vector<std::string> traces;
  ver->add_option("traces", traces, "Trace JSONL files")->required();
  ver->add_option("--format", format, "Report format")->check(formats);

  // invariants
  auto* inv = app.add_subcommand("invariants", "Clique number / height, Helly and Caratheodory numbers");
  std::string inst_file, inst_type = "graph", hull;
  inv->add_option("instance", inst_file, "Instance file")->required();
  inv->add_option("--type", inst_type, "graph or lattice")->check(CLI::IsMember({"graph", "lattice"}));
  inv->add_option("--hull", hull, "monophonic, geodesic or algebraic");
  inv->add_option("--format", format, "Output format")->check(formats);

  // lower-bound
  auto* lb = app.add_subcommand("lower-bound", "Emit the partition scenario of a blocking instance");
  std::string set_text, lb_out;
  std::size_t lb_f = 1, replay = 1;
  lb->add_option("instance", inst_file, "Instance file")->required();
  lb->add_option("--type", inst_type, "graph or lattice")->check(CLI::IsMember({"graph", "lattice"}));
  lb->add_option("--set", set_text, "Comma-separated free or irredundant set")->required();
  lb->add_option("--f", lb_f, "Faults per group");
  lb->add_option("--replay-rounds", replay, "Rounds before the faulty group starts corrupting");
  lb->add_option("-o,--out", lb_out, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      std::map<std::string, double> p;
      for (const auto& kv : params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw InputError("parameter '" + kv + "' is not name=value");
        try {
          p[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
          throw InputError("parameter '" + kv + "' has a non-numeric value");
        }
      }
      emit(generate_instance(kind, p, gen_seed).to_text(), gen_out);
      return 0;
    }
    if (*run) {
      const BatchConfig c = load_config(config);
      BatchOptions opt;
      opt.seed = run_seed;
      if (!out_dir.empty()) opt.out_dir = out_dir;
      opt.write_files = !no_files;
      const BatchResult res = run_batch(c, opt);
      if (format == "csv") {
        std::cout << summary_csv(res.rows);
      } else {
        for (const auto& row : res.rows) std::cout << summary_row_json(row).dump() << '\n';
      }
      return res.exit_code;
    }
    if (*ver) {
      int code = 0;
      for (const auto& file : traces) {
        const TraceReport rep = validate_trace(trace_from_jsonl(read_file(file)));
        if (!rep.ok()) code = 1;
        if (format == "jsonl") {
          Json j{{"file", file},
                 {"ok", rep.ok()},
                 {"rounds_checked", rep.rounds_checked},
                 {"safe_area_violations", rep.safe_area_violations},
                 {"contraction_violations", rep.contraction_violations},
                 {"guarantees", rep.guarantees},
                 {"agreement", rep.agreement},
                 {"validity", rep.validity},
                 {"round_bound", rep.round_bound},
                 {"failures", rep.failures}};
          std::cout << j.dump() << '\n';
        } else {
          std::cout << file << ": " << (rep.ok() ? "ok" : "FAIL") << " (" << rep.rounds_checked << " rounds)\n";
          for (const auto& f : rep.failures) std::cout << "  " << f << '\n';
        }
      }
      return code;
    }
    if (*inv) {
      const ConvexitySpace space = load_space(inst_file, inst_type, hull);
      Json j{{"size", space.size()}, {"hull", to_string(space.kind())}};
      if (space.is_graph()) {
        j["clique_number"] = clique_number(space.graph());
        j["chordal"] = is_chordal(space.graph());
      } else {
        j["height"] = height(space.semilattice());
        j["cycle_free"] = is_cycle_free(space.semilattice());
        if (space.size() <= kBreadthCap) j["breadth"] = breadth(space.semilattice());
      }
      j["helly"] = helly_number(space);
      j["caratheodory"] = space.size() <= kSubsetCap ? Json(caratheodory_number(space)) : Json(nullptr);
      j["convex_geometry"] = is_convex_geometry(space);
      if (format == "jsonl") {
        std::cout << j.dump() << '\n';
      } else {
        std::cout << "key,value\n";
        for (const auto& [k, v] : j.items()) std::cout << k << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
      }
      return 0;
    }
    if (*lb) {
      const ConvexitySpace space = load_space(inst_file, inst_type, "");
      const auto values = parse_values(set_text);
      const auto inst = build_blocking_instance(space, space.make_set(std::span<const Value>(values)));
      if (!inst) throw InputError("the set is neither free nor irredundant (or has no blocking instance)");
      emit(config_to_json(emit_lower_bound_scenario(space, *inst, lb_f, replay)).dump(2) + "\n", lb_out);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
