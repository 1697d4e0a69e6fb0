#pragma once

#include <string>
#include <vector>

#include "cvxagree/graph.hpp"

namespace cvxagree {

/// Tree decomposition whose nodes carry vertex sets ("bags") of a source graph.
struct CliqueTree {
  Graph tree;
  std::vector<ValueSet> bags;
  bool expanded = false;

  std::size_t node_count() const { return bags.size(); }
};

/// Clique tree of a connected chordal graph: maximal cliques joined by a
/// maximum-weight spanning tree of the clique graph, weight |bag_a & bag_b|,
/// ties broken by lexicographic node pair. Throws InputError otherwise.
CliqueTree build_clique_tree(const Graph& g);

/// Subdivides every tree edge {a, b} with a node carrying bag_a & bag_b.
/// New nodes are appended in lexicographic edge order.
CliqueTree expand_clique_tree(const CliqueTree& ct);

/// Checks vertex coverage, edge coverage, the connected-subtree property,
/// and either maximal-clique bags or nested bags across every tree edge.
/// On failure `why` (if given) receives a short description.
bool is_valid_clique_tree(const Graph& g, const CliqueTree& ct, std::string* why = nullptr);

}  // namespace cvxagree
