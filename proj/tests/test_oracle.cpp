#include <random>

#include "cvxagree/convexity.hpp"
#include "cvxagree/error.hpp"
#include "cvxagree/instances.hpp"
#include "cvxagree/oracle.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cvxagree;

namespace {

// Extreme points straight from a hull table.
ValueSet table_extremes(const std::vector<ValueSet>& table, std::uint64_t mask) {
  ValueSet out(table[0].universe());
  for (std::uint64_t bits = mask; bits != 0; bits &= bits - 1) {
    const int b = std::countr_zero(bits);
    if (!table[mask & ~(std::uint64_t{1} << b)].contains(static_cast<Value>(b))) out.insert(static_cast<Value>(b));
  }
  return out;
}

void compare_with_engine(const ConvexitySpace& space) {
  const std::size_t n = space.size();
  const auto table = oracle::hull_table(space);
  for (std::uint64_t m = 0; m < table.size(); ++m) {
    const ValueSet s = testutil::mask_set(n, m);
    REQUIRE(space.hull(s) == table[m]);
    CHECK(extreme_points(space, s) == table_extremes(table, m));
  }
  const auto inv = oracle::invariants(space);
  CHECK(inv.convex_geometry == is_convex_geometry(space));
  CHECK(inv.caratheodory == caratheodory_number(space));
  CHECK(inv.helly == helly_number(space, HellyStrategy::Definition));
  if (inv.convex_geometry) CHECK(inv.helly == helly_number(space, HellyStrategy::MaxFreeSet));
}

}  // namespace

TEST_CASE("oracle hull examples") {
  const auto p5 = ConvexitySpace::monophonic(path_graph(5));
  CHECK(oracle::hull(p5, ValueSet(5, {0, 4})) == ValueSet::full(5));
  const auto c4 = ConvexitySpace::monophonic(cycle_graph(4));
  CHECK(oracle::hull(c4, ValueSet(4, {0, 2})) == ValueSet::full(4));
  const auto k3 = ConvexitySpace::monophonic(complete_graph(3));
  CHECK(oracle::hull(k3, ValueSet(3, {0, 1})) == ValueSet(3, {0, 1}));
  CHECK(oracle::hull(p5, ValueSet(5)).empty());
  CHECK_THROWS_AS(oracle::hull(p5, ValueSet(4)), InputError);
}

TEST_CASE("oracle invariants examples") {
  const auto k3 = oracle::invariants(ConvexitySpace::monophonic(complete_graph(3)));
  CHECK(k3.helly == 3);
  // Every subset of K3 is convex, so each hull is witnessed by single points.
  CHECK(k3.caratheodory == 1);
  CHECK(k3.convex_geometry);
  CHECK_FALSE(oracle::invariants(ConvexitySpace::monophonic(cycle_graph(4))).convex_geometry);
  const auto chain = oracle::invariants(ConvexitySpace::algebraic(chain_semilattice(3)));
  CHECK(chain.helly == 3);
  CHECK(chain.caratheodory == 1);
  CHECK(chain.convex_geometry);
  CHECK_THROWS_AS(oracle::invariants(ConvexitySpace::monophonic(path_graph(oracle::kInvariantCap + 1))),
                  CapacityError);
}

TEST_CASE("literal Helly definition agrees with the deletion formulation") {
  std::mt19937_64 g(1);
  int compared = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + g() % 6;
    const auto space = rep % 2 ? ConvexitySpace::monophonic(testutil::random_connected_graph(n, 0.5, g))
                               : ConvexitySpace::geodesic(testutil::random_connected_graph(n, 0.5, g));
    const std::size_t literal = oracle::helly_by_families(space);
    if (literal == 0) continue;
    ++compared;
    CHECK(literal == oracle::invariants(space).helly);
  }
  CHECK(compared > 50);
}

TEST_CASE("oracle and engine agree on 1000 random instances per hull kind") {
  std::mt19937_64 g(1000);
  Rng rng(1000);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = 1 + rng.below(oracle::kInvariantCap);
    const double p = 0.2 + 0.6 * rng.unit();
    compare_with_engine(ConvexitySpace::monophonic(testutil::random_connected_graph(n, p, g)));
  }
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = 1 + rng.below(oracle::kInvariantCap);
    compare_with_engine(ConvexitySpace::geodesic(testutil::random_connected_graph(n, 0.2 + 0.6 * rng.unit(), g)));
  }
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = 1 + rng.below(oracle::kInvariantCap);
    const auto shape = rep % 2 ? LatticeShape::UnionFamily : LatticeShape::TreeOrder;
    compare_with_engine(ConvexitySpace::algebraic(random_cycle_free_lattice(n, rng, shape)));
  }
}

TEST_CASE("oracle algebraic hull of arbitrary semilattices") {
  // Subset lattices are not cycle-free, which the generators never produce.
  for (std::size_t b = 1; b <= 3; ++b) compare_with_engine(ConvexitySpace::algebraic(subset_semilattice_without_empty(b)));
}

TEST_CASE("component-witness closure matches enumeration where both run") {
  std::mt19937_64 g(52);
  for (int rep = 0; rep < 100; ++rep) {
    // Pad a random graph with a long path so the oracle leaves enumeration.
    const std::size_t core = 4 + g() % 8;
    const Graph small = testutil::random_connected_graph(core, 0.35, g);
    std::vector<Edge> edges = small.edges();
    const std::size_t n = oracle::kPathEnumerationCap + 2;
    for (Vertex v = static_cast<Vertex>(core); v < n; ++v) edges.emplace_back(v - 1, v);
    const Graph big(n, edges);
    const auto small_space = ConvexitySpace::monophonic(small);
    const auto big_space = ConvexitySpace::monophonic(big);
    const ValueSet s = testutil::random_subset(core, 1 + g() % 3, g);
    ValueSet lifted(n);
    s.for_each([&](Value v) { lifted.insert(v); });
    ValueSet expected(n);
    oracle::hull(small_space, s).for_each([&](Value v) { expected.insert(v); });
    CHECK(oracle::hull(big_space, lifted) == expected);
  }
}
