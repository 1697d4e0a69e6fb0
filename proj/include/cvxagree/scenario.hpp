#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cvxagree/instances.hpp"
#include "cvxagree/serialize.hpp"
#include "cvxagree/sim.hpp"

namespace cvxagree {

// Batch configuration, version 1. The schema is documented in
// docs/scenario-config.md; every object rejects unknown fields.

inline constexpr int kConfigVersion = 1;
/// Bumped whenever a summary column is added, removed or reinterpreted.
inline constexpr int kSummaryFormatVersion = 1;

struct InstanceSpec {
  /// "generate", "graph", "lattice" or "file".
  std::string source = "generate";
  std::string kind;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
  /// Inline text for "graph" and "lattice"; a path for "file".
  std::string text;
  /// "graph" or "lattice" for "file".
  std::string file_type;
};

struct ScenarioSpec {
  std::string id;
  InstanceSpec instance;
  ProtocolKind protocol = ProtocolKind::Tree;
  std::optional<HullKind> hull;
  std::size_t n = 0;
  std::size_t f = 0;
  /// Defaults to the last f processors.
  std::optional<std::vector<std::size_t>> faulty;
  /// nullopt: drawn uniformly per seed.
  std::optional<std::vector<Value>> inputs;
  AdversarySpec adversary;
  std::vector<std::uint64_t> seeds{0};
  std::size_t repeat = 1;
  std::size_t round_cap = 64;
  std::uint32_t agreement_d = 1;
  bool allow_noncompliant = false;
};

struct BatchConfig {
  std::vector<ScenarioSpec> scenarios;
  std::filesystem::path out_dir = "out";
  bool write_traces = true;
  /// Directory that relative instance files are resolved against.
  std::filesystem::path base_dir = ".";
};

/// Throws InputError with a dotted path to the offending field.
BatchConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir = ".");
BatchConfig load_config(const std::filesystem::path& file);
Json config_to_json(const BatchConfig& c);

Instance resolve_instance(const InstanceSpec& spec, const std::filesystem::path& base_dir);
/// Concrete scenario for one seed; validates it.
Scenario make_scenario(const ScenarioSpec& spec, const Instance& inst, std::uint64_t seed);

struct BatchRow {
  std::string scenario_id;
  std::uint64_t seed = 0;
  std::size_t rep = 0;
  ProtocolKind protocol = ProtocolKind::Tree;
  std::size_t n = 0;
  std::size_t f = 0;
  bool compliant = true;
  std::uint32_t agreement_metric = 0;
  Summary summary;
  std::string trace_file;
};

struct BatchResult {
  std::vector<BatchRow> rows;
  /// 0 iff every compliant row decided with agreement and validity.
  int exit_code = 0;
};

struct BatchOptions {
  /// Replaces every scenario's seed list.
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out_dir;
  /// Write summary.csv and traces under the output directory.
  bool write_files = true;
};

/// Runs every (scenario, seed, repetition). Files are written atomically
/// (temporary file, then rename).
BatchResult run_batch(const BatchConfig& c, const BatchOptions& opt = {});

std::string summary_csv_header();
std::string summary_csv_row(const BatchRow& r);
std::string summary_csv(const std::vector<BatchRow>& rows);
Json summary_row_json(const BatchRow& r);

void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// Partition scenario for a verified blocking instance A = {a_1..a_m}:
/// n = (m + 1) f, group C_k = processors (k-1)f .. kf-1 with input a_k,
/// group B = the last f processors, faulty, silent for `replay_rounds`
/// rounds and then replaying mu. The protocol follows the space: tree or
/// chordal for monophonic graph spaces, lattice for cycle-free semilattices.
/// Throws InputError if the instance fails verification or no async
/// protocol runs on the space.
BatchConfig emit_lower_bound_scenario(const ConvexitySpace& space, const BlockingInstance& inst, std::size_t f,
                                      std::size_t replay_rounds = 1);

}  // namespace cvxagree
