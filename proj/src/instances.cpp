#include "cvxagree/instances.hpp"

#include <algorithm>
#include <cmath>

#include "cvxagree/error.hpp"

namespace cvxagree {

Graph random_tree(std::size_t n, Rng& rng, double path_bias) {
  if (n == 0) throw InputError("random tree needs n >= 1");
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) {
    const Vertex parent = rng.chance(path_bias) ? v - 1 : static_cast<Vertex>(rng.below(v));
    edges.emplace_back(parent, v);
  }
  return Graph(n, edges);
}

Graph random_chordal(std::size_t n, std::size_t max_clique, Rng& rng) {
  if (n == 0) throw InputError("random chordal graph needs n >= 1");
  if (max_clique < 2 && n > 1) throw InputError("random chordal graph needs omega >= 2");
  std::vector<std::vector<Vertex>> cliques{{0}};
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) {
    const std::size_t c = rng.below(cliques.size());
    const auto& base = cliques[c];
    const std::size_t cap = std::min(base.size(), max_clique - 1);
    // Favour the largest attachment so the target clique number is reached.
    const std::size_t k = rng.chance(0.5) ? cap : static_cast<std::size_t>(rng.between(1, cap));
    std::vector<Vertex> attach;
    for (std::size_t i : rng.sample(base.size(), k)) attach.push_back(base[i]);
    for (Vertex u : attach) edges.emplace_back(std::min(u, v), std::max(u, v));
    std::vector<Vertex> grown = attach;
    grown.push_back(v);
    if (attach.size() == base.size()) {
      cliques[c] = std::move(grown);
    } else {
      cliques.push_back(std::move(grown));
    }
  }
  std::sort(edges.begin(), edges.end());
  return Graph(n, edges);
}

namespace {

bool masks_cycle_free(const std::vector<std::uint32_t>& family) {
  const std::size_t n = family.size();
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const std::uint32_t j = family[u] | family[v];
      if (j == family[u] || j == family[v]) edges.emplace_back(u, v);
    }
  }
  return lexbfs_peo(Graph(n, edges)).has_value();
}

// Union-closed family of subsets of a small universe, grown one join-closure
// step at a time while the comparability graph stays chordal.
std::optional<std::vector<std::uint32_t>> grow_union_family(std::size_t n, Rng& rng) {
  constexpr unsigned kBits = 10;
  std::vector<std::uint32_t> family{(1u << kBits) - 1};
  for (int attempt = 0; family.size() < n && attempt < 400; ++attempt) {
    const std::uint32_t base = family[rng.below(family.size())];
    std::uint32_t m = 0;
    for (unsigned b = 0; b < kBits; ++b) {
      if (((base >> b) & 1u) && rng.chance(0.5)) m |= 1u << b;
    }
    if (m == 0 || std::find(family.begin(), family.end(), m) != family.end()) continue;
    std::vector<std::uint32_t> next = family;
    next.push_back(m);
    for (std::size_t i = 0; i < next.size() && next.size() <= n; ++i) {
      for (std::size_t j = 0; j < i && next.size() <= n; ++j) {
        const std::uint32_t u = next[i] | next[j];
        if (std::find(next.begin(), next.end(), u) == next.end()) next.push_back(u);
      }
    }
    if (next.size() > n || !masks_cycle_free(next)) continue;
    family = std::move(next);
  }
  if (family.size() != n) return std::nullopt;
  return family;
}

}  // namespace

Semilattice random_cycle_free_lattice(std::size_t n, Rng& rng, LatticeShape shape) {
  if (n == 0) throw InputError("random lattice needs n >= 1");
  if (shape == LatticeShape::UnionFamily) {
    if (n > kUnionFamilyCap) throw InputError("union-family lattices limited to " + std::to_string(kUnionFamilyCap));
    for (int restart = 0; restart < 50; ++restart) {
      auto family = grow_union_family(n, rng);
      if (!family) continue;
      std::sort(family->begin(), family->end());
      std::vector<std::vector<Value>> table(n, std::vector<Value>(n));
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          const auto it = std::lower_bound(family->begin(), family->end(), (*family)[u] | (*family)[v]);
          table[u][v] = static_cast<Value>(it - family->begin());
        }
      }
      return Semilattice(std::move(table));
    }
    // Growth kept overshooting n; a tree order always exists.
  }
  // Element 0 is the top; every other element hangs below an earlier one.
  std::vector<Value> parent(n, 0);
  for (Value v = 1; v < n; ++v) parent[v] = static_cast<Value>(rng.below(v));
  return tree_order_semilattice(parent);
}

std::string Instance::to_text() const {
  if (graph) return format_graph(*graph);
  if (lattice) return format_semilattice(*lattice);
  return "";
}

namespace {

double param(const std::map<std::string, double>& params, const std::string& key, std::optional<double> fallback) {
  if (auto it = params.find(key); it != params.end()) return it->second;
  if (fallback) return *fallback;
  throw InputError("missing instance parameter '" + key + "'");
}

std::size_t count_param(const std::map<std::string, double>& params, const std::string& key,
                        std::optional<double> fallback, std::size_t lo, std::size_t hi) {
  const double x = param(params, key, fallback);
  if (x != std::floor(x) || x < static_cast<double>(lo) || x > static_cast<double>(hi)) {
    throw InputError("instance parameter '" + key + "' must be an integer in [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
  }
  return static_cast<std::size_t>(x);
}

void reject_unknown(const std::map<std::string, double>& params, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : params) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw InputError("unknown instance parameter '" + key + "'");
    }
  }
}

constexpr std::size_t kMaxVertices = 1u << 16;

}  // namespace

const std::vector<std::string>& instance_kinds() {
  static const std::vector<std::string> kinds{"path",         "star",           "random-tree",
                                              "random-chordal", "cycle",        "complete",
                                              "chain-lattice", "vee-lattice",   "subset-lattice-minus-empty",
                                              "random-cycle-free-lattice"};
  return kinds;
}

Instance generate_instance(const std::string& kind, const std::map<std::string, double>& params, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0, 0, 0x1e5));
  Instance out;
  if (kind == "path") {
    reject_unknown(params, {"n"});
    out.graph = path_graph(count_param(params, "n", std::nullopt, 1, kMaxVertices));
  } else if (kind == "star") {
    reject_unknown(params, {"n"});
    out.graph = star_graph(count_param(params, "n", std::nullopt, 1, kMaxVertices));
  } else if (kind == "cycle") {
    reject_unknown(params, {"n"});
    out.graph = cycle_graph(count_param(params, "n", std::nullopt, 3, kMaxVertices));
  } else if (kind == "complete") {
    reject_unknown(params, {"n"});
    out.graph = complete_graph(count_param(params, "n", std::nullopt, 1, 4096));
  } else if (kind == "random-tree") {
    reject_unknown(params, {"n", "path_bias"});
    const double bias = param(params, "path_bias", 0.0);
    if (bias < 0.0 || bias > 1.0) throw InputError("path_bias must lie in [0, 1]");
    out.graph = random_tree(count_param(params, "n", std::nullopt, 1, kMaxVertices), rng, bias);
  } else if (kind == "random-chordal") {
    reject_unknown(params, {"n", "omega"});
    const std::size_t n = count_param(params, "n", std::nullopt, 1, 4096);
    out.graph = random_chordal(n, count_param(params, "omega", 3.0, 2, 64), rng);
    if (!lexbfs_peo(*out.graph)) throw Error("random chordal generator produced a non-chordal graph");
  } else if (kind == "chain-lattice") {
    reject_unknown(params, {"n"});
    out.lattice = chain_semilattice(count_param(params, "n", std::nullopt, 1, 4096));
  } else if (kind == "vee-lattice") {
    reject_unknown(params, {});
    out.lattice = vee_semilattice();
  } else if (kind == "subset-lattice-minus-empty") {
    reject_unknown(params, {"b"});
    out.lattice = subset_semilattice_without_empty(count_param(params, "b", std::nullopt, 1, 12));
  } else if (kind == "random-cycle-free-lattice") {
    reject_unknown(params, {"n", "union"});
    const std::size_t n = count_param(params, "n", std::nullopt, 1, 4096);
    const bool union_family = count_param(params, "union", n <= kUnionFamilyCap ? 1.0 : 0.0, 0, 1) == 1;
    out.lattice = random_cycle_free_lattice(n, rng, union_family ? LatticeShape::UnionFamily : LatticeShape::TreeOrder);
    if (!is_cycle_free(*out.lattice)) throw Error("lattice generator produced a non-cycle-free order");
  } else {
    throw InputError("unknown instance kind '" + kind + "'");
  }
  return out;
}

}  // namespace cvxagree
