#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cvxagree/value_set.hpp"

namespace cvxagree {

using Vertex = Value;
using Edge = std::pair<Vertex, Vertex>;

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// Undirected simple loopless graph over vertices 0..N-1. Immutable once built.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t vertex_count);
  /// Throws InputError on self-loops, parallel edges or out-of-range endpoints.
  Graph(std::size_t vertex_count, std::span<const Edge> edges);

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  bool adjacent(Vertex u, Vertex v) const noexcept { return neighborhood_[u].contains(v); }
  std::span<const Vertex> neighbors(Vertex u) const { return adjacency_[u]; }
  const ValueSet& neighborhood(Vertex u) const { return neighborhood_[u]; }
  std::size_t degree(Vertex u) const { return adjacency_[u].size(); }

  ValueSet vertices() const { return ValueSet::full(vertex_count()); }
  /// Edges as (u, v) with u < v, lexicographically sorted.
  std::vector<Edge> edges() const;

  bool is_connected() const noexcept { return connected_; }
  bool is_tree() const noexcept { return connected_ && edge_count_ + 1 == vertex_count(); }

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<ValueSet> neighborhood_;
  std::size_t edge_count_ = 0;
  bool connected_ = true;
};

// ---------------------------------------------------------------------------
// Metric utilities

/// BFS distances from `source`; unreachable vertices get kUnreachable.
std::vector<std::uint32_t> distances_from(const Graph& g, Vertex source);
/// BFS distances inside the induced subgraph G[within]; vertices outside
/// `within` (and unreachable ones) get kUnreachable.
std::vector<std::uint32_t> distances_within(const Graph& g, const ValueSet& within, Vertex source);

bool is_connected_induced(const Graph& g, const ValueSet& subset);

/// max d_G(u, v) over u, v in `subset` (distances measured in G). 0 for |subset| <= 1.
std::uint32_t diameter_of(const Graph& g, const ValueSet& subset);
std::uint32_t graph_diameter(const Graph& g);
std::uint32_t graph_radius(const Graph& g);

/// Vertices of minimum eccentricity inside G[subset]. Throws InputError if
/// G[subset] is empty or disconnected.
ValueSet center_of_induced(const Graph& g, const ValueSet& subset);

// ---------------------------------------------------------------------------
// Chordality

/// Reverse Lex-BFS order (smallest-identifier tie-break) if it is a perfect
/// elimination ordering, otherwise nullopt. Position 0 is eliminated first.
std::optional<std::vector<Vertex>> lexbfs_peo(const Graph& g);
bool is_perfect_elimination_order(const Graph& g, std::span<const Vertex> order);
bool is_chordal(const Graph& g);

/// rank[v] = position of v in `order`.
std::vector<std::size_t> order_rank(std::span<const Vertex> order);

bool is_clique(const Graph& g, const ValueSet& subset);

/// Maximal cliques sorted lexicographically by their member lists. Chordal
/// graphs use the PEO; other graphs fall back to Bron-Kerbosch (cap 64 vertices).
std::vector<ValueSet> maximal_cliques(const Graph& g);

/// Clique number; brute force on non-chordal graphs (cap 64 vertices).
std::size_t clique_number(const Graph& g);

// ---------------------------------------------------------------------------
// Graph convexities

/// Monophonic (chordless-path) hull with preprocessing shared across calls.
///
/// Trees use Steiner-subtree path walking. Other graphs use the separator
/// characterization: v is outside the hull of S iff some clique K not
/// containing v separates v from S \ K. Only cliques whose removal
/// disconnects the graph are retained.
class MonophonicHull {
 public:
  explicit MonophonicHull(std::shared_ptr<const Graph> g);
  ValueSet operator()(const ValueSet& s) const;
  const Graph& graph() const { return *graph_; }

  /// Upper bound on vertices for non-tree graphs (clique enumeration).
  static constexpr std::size_t kVertexCap = 4096;

 private:
  ValueSet tree_hull(const ValueSet& s) const;
  ValueSet separator_hull(const ValueSet& s) const;

  std::shared_ptr<const Graph> graph_;
  std::vector<Vertex> parent_;
  std::vector<std::uint32_t> depth_;
  // Root-path bitsets (vertex and all its ancestors), trees up to kAncestorCap.
  std::vector<ValueSet> ancestors_;
  std::vector<std::vector<Vertex>> lift_;  // lift_[k][v] = 2^k-th ancestor
  static constexpr std::size_t kAncestorCap = 4096;
  Vertex lca(Vertex a, Vertex b) const;
  std::vector<ValueSet> separating_cliques_;
};

ValueSet monophonic_hull(const Graph& g, const ValueSet& s);

/// Monophonic hull computed from chordless-path search (DFS with pruning).
/// Slow; used as a cross-check. Cap: kPathSearchCap vertices.
ValueSet monophonic_hull_by_paths(const Graph& g, const ValueSet& s);
inline constexpr std::size_t kPathSearchCap = 40;

/// Geodesic (shortest-path interval) hull with a precomputed distance matrix.
class GeodesicHull {
 public:
  explicit GeodesicHull(std::shared_ptr<const Graph> g);
  ValueSet operator()(const ValueSet& s) const;

  static constexpr std::size_t kVertexCap = 4096;

 private:
  std::uint32_t dist(Vertex u, Vertex v) const { return distance_[u * n_ + v]; }

  std::shared_ptr<const Graph> graph_;
  std::size_t n_ = 0;
  std::vector<std::uint32_t> distance_;
};

ValueSet geodesic_hull(const Graph& g, const ValueSet& s);

/// Chordal and distance-hereditary, checked by brute force over all
/// connected induced subgraphs. Cap: kPtolemaicCap vertices.
bool is_ptolemaic(const Graph& g);
inline constexpr std::size_t kPtolemaicCap = 16;

// ---------------------------------------------------------------------------
// Text format: "N M" then M lines "u v"; '#' starts a comment.

Graph parse_graph(std::istream& in);
Graph parse_graph_text(const std::string& text);
std::string format_graph(const Graph& g);

// Small fixtures.
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
/// Star with `leaves` leaves; vertex 0 is the center.
Graph star_graph(std::size_t leaves);

}  // namespace cvxagree
