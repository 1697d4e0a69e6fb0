#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cvxagree/graph.hpp"
#include "cvxagree/rng.hpp"
#include "cvxagree/semilattice.hpp"

namespace cvxagree {

/// Random tree on n vertices. Vertex v > 0 attaches to v - 1 with
/// probability `path_bias`, otherwise to a uniform earlier vertex.
Graph random_tree(std::size_t n, Rng& rng, double path_bias = 0.0);

/// Connected chordal graph by simplicial vertex addition: each new vertex is
/// joined to a random nonempty subset (at most max_clique - 1 vertices) of a
/// random current maximal clique. Clique number <= max_clique.
Graph random_chordal(std::size_t n, std::size_t max_clique, Rng& rng);

enum class LatticeShape {
  /// u <= v iff v is an ancestor of u in a random rooted tree; join = LCA.
  TreeOrder,
  /// Union-closed family of subsets of a 10-element set, grown while its
  /// comparability graph stays chordal. Covers orders that are not trees.
  UnionFamily,
};

inline constexpr std::size_t kUnionFamilyCap = 64;

/// Random cycle-free semilattice on exactly n elements. UnionFamily falls
/// back to TreeOrder if growth cannot hit n exactly.
Semilattice random_cycle_free_lattice(std::size_t n, Rng& rng, LatticeShape shape = LatticeShape::TreeOrder);

/// Either a graph or a semilattice.
struct Instance {
  std::optional<Graph> graph;
  std::optional<Semilattice> lattice;

  /// In the graph or semilattice text format.
  std::string to_text() const;
};

/// Kinds: path(n), star(n = leaves), cycle(n), complete(n), random-tree(n,
/// path_bias), random-chordal(n, omega), chain-lattice(n), vee-lattice,
/// subset-lattice-minus-empty(b), random-cycle-free-lattice(n, union: 1 for the
/// union-family shape, default when n <= kUnionFamilyCap).
/// Throws InputError on an unknown kind or invalid parameters; every output
/// passes its structural validator.
Instance generate_instance(const std::string& kind, const std::map<std::string, double>& params, std::uint64_t seed);

const std::vector<std::string>& instance_kinds();

}  // namespace cvxagree
