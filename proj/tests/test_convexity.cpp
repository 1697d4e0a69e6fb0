#include <random>

#include "cvxagree/convexity.hpp"
#include "cvxagree/error.hpp"
#include "cvxagree/instances.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cvxagree;

namespace {

ConvexitySpace p5() { return ConvexitySpace::monophonic(path_graph(5)); }
ConvexitySpace k3() { return ConvexitySpace::monophonic(complete_graph(3)); }
ConvexitySpace c4() { return ConvexitySpace::monophonic(cycle_graph(4)); }
ConvexitySpace vee() { return ConvexitySpace::algebraic(vee_semilattice()); }

std::vector<ConvexitySpace> small_spaces(std::uint64_t seed, int count) {
  std::vector<ConvexitySpace> out;
  std::mt19937_64 g(seed);
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    const std::size_t n = 1 + rng.below(8);
    switch (i % 4) {
      case 0:
        out.push_back(ConvexitySpace::monophonic(testutil::random_connected_graph(n, 0.4, g)));
        break;
      case 1:
        out.push_back(ConvexitySpace::geodesic(testutil::random_connected_graph(n, 0.4, g)));
        break;
      case 2:
        out.push_back(ConvexitySpace::monophonic(random_chordal(n, 2 + rng.below(3), rng)));
        break;
      default:
        out.push_back(ConvexitySpace::algebraic(random_cycle_free_lattice(n, rng, LatticeShape::UnionFamily)));
        break;
    }
  }
  return out;
}

// Some x in A and y in hull(A) \ A with y in hull(A \ b) for every b != x.
bool missing_witness(const ConvexitySpace& space, const ValueSet& a) {
  const ValueSet h = space.hull(a);
  bool missing = false;
  a.for_each([&](Value x) {
    (h - a).for_each([&](Value y) {
      bool found = false;
      a.for_each([&](Value b) {
        ValueSet rest = a;
        rest.erase(b);
        if (b != x && !space.hull(rest).contains(y)) found = true;
      });
      if (!found) missing = true;
    });
  });
  return missing;
}

}  // namespace

TEST_CASE("hull kinds parse") {
  CHECK(parse_hull_kind("geodesic") == HullKind::GeodesicGraph);
  CHECK(to_string(HullKind::AlgebraicSemilattice) == "algebraic");
  CHECK_THROWS_AS(parse_hull_kind("convex"), InputError);
}

TEST_CASE("hull validates its input") {
  CHECK(p5().hull(ValueSet(5)).empty());
  CHECK(p5().hull(p5().ground_set()) == p5().ground_set());
  CHECK_THROWS_AS(p5().hull(ValueSet(6)), InputError);
  CHECK_THROWS_AS(p5().make_set({7}), InputError);
  CHECK_THROWS_AS(vee().graph(), std::logic_error);
}

TEST_CASE("extreme points") {
  CHECK(extreme_points(p5(), p5().ground_set()) == ValueSet(5, {0, 4}));
  CHECK(extreme_points(p5(), ValueSet(5, {3})) == ValueSet(5, {3}));
  CHECK(extreme_points(c4(), c4().ground_set()).empty());
}

TEST_CASE("free and irredundant sets") {
  CHECK(is_free(k3(), k3().ground_set()));
  CHECK_FALSE(is_free(p5(), ValueSet(5, {0, 2})));
  CHECK(is_free(vee(), ValueSet(3, {0, 2})));
  CHECK(is_irredundant(p5(), ValueSet(5, {0, 4})));
  CHECK(irredundant_boundary(p5(), ValueSet(5, {0, 4})) == ValueSet(5, {1, 2, 3}));
  CHECK(is_irredundant(p5(), ValueSet(5, {2})));
  CHECK_FALSE(is_irredundant(p5(), ValueSet(5, {0, 2, 4})));
  CHECK_THROWS_AS(is_irredundant(p5(), ValueSet(5)), InputError);
}

TEST_CASE("free sets of monophonic convexity are cliques") {
  std::mt19937_64 g(3);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 1 + g() % 8;
    const Graph gr = testutil::random_connected_graph(n, 0.5, g);
    const auto space = ConvexitySpace::monophonic(gr);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      const ValueSet k = testutil::mask_set(n, mask);
      CHECK(is_free(space, k) == is_clique(gr, k));
    }
  }
}

TEST_CASE("closure laws hold exhaustively on small spaces") {
  for (const auto& space : small_spaces(21, 40)) {
    const std::size_t n = space.size();
    const std::uint64_t subsets = std::uint64_t{1} << n;
    std::vector<ValueSet> h(subsets);
    for (std::uint64_t m = 0; m < subsets; ++m) h[m] = space.hull(testutil::mask_set(n, m));
    for (std::uint64_t m = 0; m < subsets; ++m) {
      const ValueSet s = testutil::mask_set(n, m);
      CHECK(s.is_subset_of(h[m]));
      CHECK(space.hull(h[m]) == h[m]);
      for (std::uint64_t sup = m; sup < subsets; sup = (sup + 1) | m) {
        CHECK(h[m].is_subset_of(h[sup]));
      }
    }
  }
}

TEST_CASE("convex elimination orders") {
  const auto order = convex_elimination_order(p5());
  REQUIRE(order);
  CHECK(*order == std::vector<Value>{0, 1, 2, 3, 4});
  for (std::size_t i = 0; i < 5; ++i) {
    ValueSet suffix(5);
    for (std::size_t k = i; k < 5; ++k) suffix.insert((*order)[k]);
    CHECK(is_convex(p5(), suffix));
  }
  CHECK_FALSE(convex_elimination_order(c4()));
  CHECK_FALSE(convex_elimination_order(ConvexitySpace::monophonic(cycle_graph(6))));
  CHECK(convex_elimination_order(k3()));
}

TEST_CASE("convex geometries satisfy the extreme point property and peel greedily") {
  for (const auto& space : small_spaces(5, 80)) {
    const bool cg = is_convex_geometry(space);
    CHECK(cg == has_mkm_property(space));
    if (cg) CHECK(convex_elimination_order(space).has_value());
  }
  std::mt19937_64 g(15);
  for (int rep = 0; rep < 40; ++rep) {
    const Graph gr = testutil::random_connected_graph(3 + g() % 7, 0.4, g);
    CHECK(is_convex_geometry(ConvexitySpace::monophonic(gr)) == is_chordal(gr));
  }
}

TEST_CASE("minimum of a convex elimination order is extreme and minimal in the hull") {
  for (const auto& space : small_spaces(33, 60)) {
    const auto order = convex_elimination_order(space);
    if (!order) continue;
    const std::size_t n = space.size();
    const auto rank = order_rank(*order);
    auto min_of = [&](const ValueSet& s) {
      Value best = *s.first();
      s.for_each([&](Value v) {
        if (rank[v] < rank[best]) best = v;
      });
      return best;
    };
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
      const ValueSet k = testutil::mask_set(n, m);
      const Value lo = min_of(k);
      CHECK(extreme_points(space, k).contains(lo));
      CHECK(min_of(space.hull(k)) == lo);
    }
  }
}

TEST_CASE("irredundant sets consist of extreme points") {
  for (const auto& space : small_spaces(8, 60)) {
    const std::size_t n = space.size();
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
      const ValueSet a = testutil::mask_set(n, m);
      if (is_irredundant(space, a)) CHECK(extreme_points(space, a) == a);
    }
  }
}

TEST_CASE("Helly numbers") {
  CHECK(helly_number(k3()) == 3);
  CHECK(helly_number(ConvexitySpace::algebraic(chain_semilattice(3))) == 3);
  CHECK(helly_number(p5(), HellyStrategy::Definition) == 2);
  CHECK(helly_number(p5(), HellyStrategy::MaxFreeSet) == 2);
  CHECK_THROWS_AS(helly_number(c4(), HellyStrategy::MaxFreeSet), PreconditionError);
  CHECK_THROWS_AS(helly_number(ConvexitySpace::monophonic(cycle_graph(kHellyDefinitionCap + 1))), CapacityError);
  for (const auto& space : small_spaces(44, 80)) {
    if (!is_convex_geometry(space)) continue;
    CHECK(helly_number(space, HellyStrategy::Definition) == helly_number(space, HellyStrategy::MaxFreeSet));
  }
}

TEST_CASE("Caratheodory numbers") {
  CHECK(caratheodory_number(p5()) == 2);
  CHECK(caratheodory_number(vee()) == 2);
  CHECK(caratheodory_number(ConvexitySpace::monophonic(Graph(1))) == 1);
  CHECK(caratheodory_number(ConvexitySpace::algebraic(chain_semilattice(3))) == 1);
}

TEST_CASE("blocking instances") {
  const auto kk = build_blocking_instance(k3(), k3().ground_set());
  REQUIRE(kk);
  for (const auto& [key, value] : kk->mu) CHECK(value == key.second);
  CHECK(verify_blocking_instance(k3(), *kk));

  BlockingInstance forced = *kk;
  for (auto& [key, value] : forced.mu) value = key.first;
  std::string why;
  CHECK_FALSE(verify_blocking_instance(k3(), forced, &why));
  CHECK(why.find("condition 3") != std::string::npos);

  const auto pp = build_blocking_instance(p5(), ValueSet(5, {0, 4}));
  REQUIRE(pp);
  CHECK(pp->mu.at({0, 2}) == 4);
  CHECK(pp->mu.at({4, 2}) == 0);
  CHECK(verify_blocking_instance(p5(), *pp));

  CHECK_FALSE(build_blocking_instance(p5(), ValueSet(5, {0, 2, 4})));
  CHECK_THROWS_AS(build_blocking_instance(p5(), ValueSet(5, {1})), InputError);

  BlockingInstance partial = *pp;
  partial.mu.erase({0, 2});
  CHECK_THROWS_AS(verify_blocking_instance(p5(), partial), InputError);
}

TEST_CASE("every constructed blocking instance verifies") {
  int built = 0;
  for (const auto& space : small_spaces(71, 60)) {
    const std::size_t n = space.size();
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
      const ValueSet a = testutil::mask_set(n, m);
      if (a.size() < 2) continue;
      const auto inst = build_blocking_instance(space, a);
      const bool eligible = is_free(space, a) || is_irredundant(space, a);
      if (space.kind() != HullKind::GeodesicGraph) CHECK(inst.has_value() == eligible);
      if (!inst) {
        if (eligible) CHECK(missing_witness(space, a));
        continue;
      }
      ++built;
      std::string why;
      CHECK_MESSAGE(verify_blocking_instance(space, *inst, &why), why);
    }
  }
  CHECK(built > 100);
}

TEST_CASE("an irredundant geodesic set without a blocking map") {
  const std::vector<Edge> e{{0, 1}, {0, 4}, {1, 6}, {1, 7}, {2, 5}, {2, 6}, {3, 4},
                            {3, 6}, {3, 7}, {4, 6}, {5, 6}, {6, 7}};
  const auto space = ConvexitySpace::geodesic(Graph(8, e));
  const ValueSet a(8, {0, 2, 3});
  CHECK(is_irredundant(space, a));
  CHECK(irredundant_boundary(space, a) == ValueSet(8, {7}));
  CHECK(missing_witness(space, a));
  CHECK_FALSE(build_blocking_instance(space, a));
}


TEST_CASE("a geodesic space that peels greedily yet is not a convex geometry") {
  const std::vector<Edge> e{{0, 1}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 4}};
  const auto space = ConvexitySpace::geodesic(Graph(5, e));
  CHECK(convex_elimination_order(space).has_value());
  CHECK_FALSE(is_convex_geometry(space));
  CHECK_FALSE(has_mkm_property(space));
  CHECK_THROWS_AS(helly_number(space, HellyStrategy::MaxFreeSet), PreconditionError);
}
