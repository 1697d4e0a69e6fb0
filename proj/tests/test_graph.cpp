#include <bit>
#include <random>
#include <sstream>

#include "cvxagree/error.hpp"
#include "cvxagree/graph.hpp"
#include "cvxagree/instances.hpp"
#include "cvxagree/oracle.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cvxagree;

namespace {

Graph k13() { return star_graph(3); }

// Two triangles sharing an edge plus a pendant: chordal, not a tree.
Graph diamond_with_tail() {
  const std::vector<Edge> e{{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {3, 4}};
  return Graph(5, e);
}

}  // namespace

TEST_CASE("construction rejects malformed edge lists") {
  const std::vector<Edge> loop{{1, 1}};
  const std::vector<Edge> twice{{0, 1}, {1, 0}};
  const std::vector<Edge> range{{0, 3}};
  CHECK_THROWS_AS(Graph(3, loop), InputError);
  CHECK_THROWS_AS(Graph(3, twice), InputError);
  CHECK_THROWS_AS(Graph(3, range), InputError);
  CHECK(path_graph(5).is_tree());
  CHECK_FALSE(cycle_graph(4).is_tree());
  CHECK_FALSE(Graph(3).is_connected());
}

TEST_CASE("distances") {
  CHECK(distances_from(path_graph(5), 0) == std::vector<std::uint32_t>{0, 1, 2, 3, 4});
  CHECK(distances_from(complete_graph(3), 1) == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(distances_from(cycle_graph(4), 0) == std::vector<std::uint32_t>{0, 1, 2, 1});
  CHECK(distances_from(Graph(2), 0)[1] == kUnreachable);
  CHECK(graph_diameter(path_graph(5)) == 4);
  CHECK(graph_radius(path_graph(5)) == 2);
}

TEST_CASE("centers of induced subgraphs") {
  const Graph p5 = path_graph(5);
  CHECK(center_of_induced(p5, p5.vertices()) == ValueSet(5, {2}));
  CHECK(center_of_induced(p5, ValueSet(5, {0, 1, 2})) == ValueSet(5, {1}));
  CHECK(center_of_induced(k13(), ValueSet(4, {1, 0, 2})) == ValueSet(4, {0}));
  CHECK(center_of_induced(p5, ValueSet(5, {1, 2})) == ValueSet(5, {1, 2}));
  CHECK_THROWS_AS(center_of_induced(p5, ValueSet(5, {0, 2})), InputError);
  CHECK_THROWS_AS(center_of_induced(p5, ValueSet(5)), InputError);
}

TEST_CASE("diameter is at most twice the radius plus one") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 200; ++rep) {
    const Graph g = testutil::random_connected_graph(3 + rng() % 12, 0.3, rng);
    CHECK(graph_diameter(g) <= 2 * graph_radius(g) + 1);
  }
}

TEST_CASE("perfect elimination orderings") {
  const auto tree_peo = lexbfs_peo(path_graph(6));
  REQUIRE(tree_peo);
  CHECK(is_perfect_elimination_order(path_graph(6), *tree_peo));
  CHECK_FALSE(lexbfs_peo(cycle_graph(4)));
  CHECK_FALSE(lexbfs_peo(cycle_graph(6)));
  const std::vector<Vertex> identity{0, 1, 2};
  CHECK(is_perfect_elimination_order(complete_graph(3), identity));
  CHECK(is_chordal(diamond_with_tail()));
}

TEST_CASE("chordality matches a brute-force induced-cycle search") {
  // A graph is chordal iff no induced cycle of length >= 4. For n <= 7 check
  // every vertex subset of size >= 4 for being an induced cycle.
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 150; ++rep) {
    const std::size_t n = 4 + rng() % 4;
    const Graph g = testutil::random_graph(n, 0.45, rng);
    bool has_hole = false;
    for (std::uint64_t mask = 0; mask < (1u << n) && !has_hole; ++mask) {
      if (std::popcount(mask) < 4) continue;
      const ValueSet s = testutil::mask_set(n, mask);
      bool two_regular = true;
      s.for_each([&](Value v) {
        if ((g.neighborhood(v) & s).size() != 2) two_regular = false;
      });
      if (two_regular && is_connected_induced(g, s)) has_hole = true;
    }
    CHECK(is_chordal(g) == !has_hole);
  }
}

TEST_CASE("clique numbers") {
  CHECK(clique_number(complete_graph(3)) == 3);
  CHECK(clique_number(path_graph(5)) == 2);
  CHECK(clique_number(cycle_graph(4)) == 2);
  CHECK(clique_number(diamond_with_tail()) == 3);
  CHECK(maximal_cliques(path_graph(4)).size() == 3);
}

TEST_CASE("monophonic hull examples") {
  const Graph p5 = path_graph(5);
  CHECK(monophonic_hull(p5, ValueSet(5, {0, 4})) == p5.vertices());
  CHECK(monophonic_hull(complete_graph(3), ValueSet(3, {0, 1})) == ValueSet(3, {0, 1}));
  CHECK(monophonic_hull(cycle_graph(4), ValueSet(4, {0, 2})) == ValueSet::full(4));
  CHECK(monophonic_hull(p5, ValueSet(5)) == ValueSet(5));
  // Adjacent pair on C4: the edge is a chordless path, the long way round is not.
  CHECK(monophonic_hull(cycle_graph(4), ValueSet(4, {0, 1})) == ValueSet(4, {0, 1}));
  // In C5 two vertices at distance 2 see the long side as a chordless path too.
  CHECK(monophonic_hull(cycle_graph(5), ValueSet(5, {0, 2})) == ValueSet::full(5));
}

TEST_CASE("geodesic hull examples") {
  const Graph p5 = path_graph(5);
  CHECK(geodesic_hull(p5, ValueSet(5, {0, 4})) == p5.vertices());
  CHECK(geodesic_hull(cycle_graph(4), ValueSet(4, {0, 2})) == ValueSet::full(4));
  CHECK(geodesic_hull(complete_graph(3), ValueSet(3, {0, 1})) == ValueSet(3, {0, 1}));
  CHECK(geodesic_hull(cycle_graph(5), ValueSet(5, {0, 2})) == ValueSet(5, {0, 1, 2}));
}

TEST_CASE("monophonic hull agrees with path search and the oracle on random graphs") {
  std::mt19937_64 rng(2024);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 2 + rng() % 13;
    const Graph g = testutil::random_connected_graph(n, 0.15 + 0.5 * static_cast<double>(rng() % 100) / 100.0, rng);
    const auto space = ConvexitySpace::monophonic(g);
    for (int q = 0; q < 4; ++q) {
      const ValueSet s = testutil::random_subset(n, 1 + rng() % std::min<std::size_t>(n, 4), rng);
      const ValueSet fast = space.hull(s);
      CHECK(fast == monophonic_hull_by_paths(g, s));
      CHECK(fast == oracle::hull(space, s));
    }
  }
}

TEST_CASE("tree hull agrees with the oracle on large random trees") {
  Rng rng(77);
  for (int rep = 0; rep < 20; ++rep) {
    const Graph t = random_tree(30 + rng.below(300), rng, 0.3);
    const auto space = ConvexitySpace::monophonic(t);
    for (int q = 0; q < 5; ++q) {
      ValueSet s(t.vertex_count());
      for (std::size_t i : rng.sample(t.vertex_count(), 1 + rng.below(5))) s.insert(static_cast<Value>(i));
      CHECK(space.hull(s) == oracle::hull(space, s));
    }
  }
}

TEST_CASE("chordal separator hull agrees with the component oracle above the enumeration cap") {
  Rng rng(91);
  for (int rep = 0; rep < 20; ++rep) {
    const Graph g = random_chordal(30 + rng.below(40), 2 + rng.below(3), rng);
    const auto space = ConvexitySpace::monophonic(g);
    for (int q = 0; q < 5; ++q) {
      ValueSet s(g.vertex_count());
      for (std::size_t i : rng.sample(g.vertex_count(), 1 + rng.below(4))) s.insert(static_cast<Value>(i));
      CHECK(space.hull(s) == oracle::hull(space, s));
    }
  }
}

TEST_CASE("geodesic hull agrees with the oracle and sits inside the monophonic hull") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 2 + rng() % 13;
    const Graph g = testutil::random_connected_graph(n, 0.3, rng);
    const auto geo = ConvexitySpace::geodesic(g);
    const ValueSet s = testutil::random_subset(n, 1 + rng() % std::min<std::size_t>(n, 4), rng);
    const ValueSet h = geo.hull(s);
    CHECK(h == oracle::hull(geo, s));
    CHECK(h.is_subset_of(monophonic_hull(g, s)));
  }
}

TEST_CASE("Ptolemaic graphs have equal geodesic and monophonic hulls") {
  CHECK(is_ptolemaic(path_graph(5)));
  CHECK(is_ptolemaic(k13()));
  CHECK_FALSE(is_ptolemaic(cycle_graph(4)));
  CHECK_THROWS_AS(is_ptolemaic(path_graph(kPtolemaicCap + 1)), CapacityError);
  std::mt19937_64 rng(8);
  int seen = 0;
  for (int rep = 0; rep < 400; ++rep) {
    const std::size_t n = 3 + rng() % 8;
    const Graph g = testutil::random_connected_graph(n, 0.4, rng);
    if (!is_ptolemaic(g)) continue;
    ++seen;
    for (std::uint64_t mask = 1; mask < (1u << n); mask += 1 + rng() % 7) {
      const ValueSet s = testutil::mask_set(n, mask);
      CHECK(geodesic_hull(g, s) == monophonic_hull(g, s));
    }
  }
  CHECK(seen > 20);
}

TEST_CASE("graph text format round trip") {
  const Graph g = diamond_with_tail();
  const Graph back = parse_graph_text(format_graph(g));
  CHECK(back.edges() == g.edges());
  CHECK(parse_graph_text("# comment\n3 2\n0 1 # edge\n1 2\n").edge_count() == 2);
  CHECK_THROWS_AS(parse_graph_text("3 2\n0 1\n"), InputError);
  CHECK_THROWS_AS(parse_graph_text("3 1\n0 x\n"), InputError);
  CHECK_THROWS_AS(parse_graph_text("2 1\n0 5\n"), InputError);
}

TEST_CASE("generated instances pass their validators") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto chordal = generate_instance("random-chordal", {{"n", 12}, {"omega", 4}}, seed);
    REQUIRE(chordal.graph);
    CHECK(lexbfs_peo(*chordal.graph));
    CHECK(chordal.graph->is_connected());
    CHECK(clique_number(*chordal.graph) <= 4);
    const auto tree = generate_instance("random-tree", {{"n", 40}}, seed);
    CHECK(tree.graph->is_tree());
  }
  CHECK(generate_instance("path", {{"n", 5}}, 0).graph->edges() == path_graph(5).edges());
  CHECK(generate_instance("path", {{"n", 5}}, 0).to_text() == format_graph(path_graph(5)));
  CHECK_THROWS_AS(generate_instance("path", {}, 0), InputError);
  CHECK_THROWS_AS(generate_instance("path", {{"n", 5}, {"m", 1}}, 0), InputError);
  CHECK_THROWS_AS(generate_instance("path", {{"n", 2.5}}, 0), InputError);
  CHECK_THROWS_AS(generate_instance("hypercube", {{"n", 5}}, 0), InputError);
  // Same seed, same instance.
  CHECK(generate_instance("random-chordal", {{"n", 20}}, 9).to_text() ==
        generate_instance("random-chordal", {{"n", 20}}, 9).to_text());
}
