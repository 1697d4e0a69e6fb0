#include "cvxagree/clique_tree.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "cvxagree/error.hpp"

namespace cvxagree {

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

CliqueTree build_clique_tree(const Graph& g) {
  if (g.vertex_count() == 0) throw InputError("clique tree of an empty graph");
  if (!g.is_connected()) throw InputError("clique tree requires a connected graph");
  if (!is_chordal(g)) throw InputError("clique tree requires a chordal graph");

  CliqueTree ct;
  ct.bags = maximal_cliques(g);
  const std::size_t k = ct.bags.size();

  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> candidates;  // (weight, a, b)
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      const std::size_t w = (ct.bags[a] & ct.bags[b]).size();
      if (w > 0) candidates.emplace_back(w, a, b);
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) {
    if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) > std::get<0>(y);
    return std::make_pair(std::get<1>(x), std::get<2>(x)) < std::make_pair(std::get<1>(y), std::get<2>(y));
  });
  DisjointSets dsu(k);
  std::vector<Edge> tree_edges;
  for (const auto& [w, a, b] : candidates) {
    if (dsu.unite(a, b)) tree_edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
  }
  std::sort(tree_edges.begin(), tree_edges.end());
  ct.tree = Graph(k, tree_edges);
  ct.expanded = false;
  return ct;
}

CliqueTree expand_clique_tree(const CliqueTree& ct) {
  CliqueTree out;
  out.bags = ct.bags;
  std::vector<Edge> edges;
  for (const auto& [a, b] : ct.tree.edges()) {
    const auto mid = static_cast<Vertex>(out.bags.size());
    out.bags.push_back(ct.bags[a] & ct.bags[b]);
    edges.emplace_back(a, mid);
    edges.emplace_back(b, mid);
  }
  out.tree = Graph(out.bags.size(), edges);
  out.expanded = true;
  return out;
}

bool is_valid_clique_tree(const Graph& g, const CliqueTree& ct, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  const std::size_t k = ct.bags.size();
  if (ct.tree.vertex_count() != k) return fail("tree node count differs from bag count");
  if (k == 0) return fail("no bags");
  if (!ct.tree.is_tree()) return fail("decomposition graph is not a tree");
  for (const auto& bag : ct.bags) {
    if (bag.universe() != g.vertex_count()) return fail("bag over the wrong ground set");
  }

  ValueSet covered(g.vertex_count());
  for (const auto& bag : ct.bags) covered |= bag;
  if (covered != g.vertices()) return fail("vertex coverage violated");

  for (const auto& [u, v] : g.edges()) {
    const bool hit = std::any_of(ct.bags.begin(), ct.bags.end(),
                                 [&](const ValueSet& b) { return b.contains(u) && b.contains(v); });
    if (!hit) return fail("edge coverage violated for (" + std::to_string(u) + "," + std::to_string(v) + ")");
  }

  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    ValueSet holders(k);
    for (std::size_t b = 0; b < k; ++b) {
      if (ct.bags[b].contains(v)) holders.insert(static_cast<Value>(b));
    }
    if (!is_connected_induced(ct.tree, holders)) {
      return fail("bags containing vertex " + std::to_string(v) + " are not connected");
    }
  }

  if (ct.expanded) {
    for (const auto& [a, b] : ct.tree.edges()) {
      if (!ct.bags[a].is_subset_of(ct.bags[b]) && !ct.bags[b].is_subset_of(ct.bags[a])) {
        return fail("bags across tree edge are not nested");
      }
    }
  } else {
    for (const auto& bag : ct.bags) {
      if (!is_clique(g, bag)) return fail("bag is not a clique");
      for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (!bag.contains(v) && bag.is_subset_of(g.neighborhood(v))) return fail("bag is not a maximal clique");
      }
    }
  }
  return true;
}

}  // namespace cvxagree
