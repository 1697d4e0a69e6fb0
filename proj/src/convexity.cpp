#include "cvxagree/convexity.hpp"

#include <bit>
#include <stdexcept>

#include "cvxagree/error.hpp"

namespace cvxagree {

std::string to_string(HullKind kind) {
  switch (kind) {
    case HullKind::MonophonicGraph:
      return "monophonic";
    case HullKind::GeodesicGraph:
      return "geodesic";
    case HullKind::AlgebraicSemilattice:
      return "algebraic";
  }
  return "unknown";
}

HullKind parse_hull_kind(const std::string& name) {
  if (name == "monophonic") return HullKind::MonophonicGraph;
  if (name == "geodesic") return HullKind::GeodesicGraph;
  if (name == "algebraic") return HullKind::AlgebraicSemilattice;
  throw InputError("unknown hull kind '" + name + "' (expected monophonic, geodesic or algebraic)");
}

ConvexitySpace ConvexitySpace::monophonic(Graph g) {
  ConvexitySpace s;
  s.kind_ = HullKind::MonophonicGraph;
  s.n_ = g.vertex_count();
  s.graph_ = std::make_shared<const Graph>(std::move(g));
  auto op = std::make_shared<const MonophonicHull>(s.graph_);
  s.hull_ = [op](const ValueSet& x) { return (*op)(x); };
  return s;
}

ConvexitySpace ConvexitySpace::geodesic(Graph g) {
  ConvexitySpace s;
  s.kind_ = HullKind::GeodesicGraph;
  s.n_ = g.vertex_count();
  s.graph_ = std::make_shared<const Graph>(std::move(g));
  auto op = std::make_shared<const GeodesicHull>(s.graph_);
  s.hull_ = [op](const ValueSet& x) { return (*op)(x); };
  return s;
}

ConvexitySpace ConvexitySpace::algebraic(Semilattice l) {
  ConvexitySpace s;
  s.kind_ = HullKind::AlgebraicSemilattice;
  s.n_ = l.size();
  s.lattice_ = std::make_shared<const Semilattice>(std::move(l));
  auto lat = s.lattice_;
  s.hull_ = [lat](const ValueSet& x) { return join_closure(*lat, x); };
  return s;
}

const Graph& ConvexitySpace::graph() const {
  if (!graph_) throw std::logic_error("convexity space is not backed by a graph");
  return *graph_;
}

const Semilattice& ConvexitySpace::semilattice() const {
  if (!lattice_) throw std::logic_error("convexity space is not backed by a semilattice");
  return *lattice_;
}

ValueSet ConvexitySpace::make_set(std::span<const Value> values) const {
  ValueSet out(n_);
  for (Value v : values) {
    if (v >= n_) throw InputError("value " + std::to_string(v) + " is not in the ground set 0.." + std::to_string(n_ - 1));
    out.insert(v);
  }
  return out;
}

ValueSet ConvexitySpace::make_set(std::initializer_list<Value> values) const {
  return make_set(std::span<const Value>(values.begin(), values.size()));
}

ValueSet ConvexitySpace::hull(const ValueSet& s) const {
  if (s.universe() != n_) {
    throw InputError("hull: set over a ground set of size " + std::to_string(s.universe()) + ", expected " +
                     std::to_string(n_));
  }
  if (s.empty()) return s;
  return hull_(s);
}

bool is_convex(const ConvexitySpace& space, const ValueSet& s) { return space.hull(s) == s; }

ValueSet extreme_points(const ConvexitySpace& space, const ValueSet& s) {
  ValueSet out(space.size());
  s.for_each([&](Value a) {
    ValueSet rest = s;
    rest.erase(a);
    if (!space.hull(rest).contains(a)) out.insert(a);
  });
  return out;
}

bool is_free(const ConvexitySpace& space, const ValueSet& k) {
  return is_convex(space, k) && extreme_points(space, k) == k;
}

ValueSet irredundant_boundary(const ConvexitySpace& space, const ValueSet& a) {
  if (a.empty()) throw InputError("irredundance is defined for nonempty sets only");
  ValueSet boundary = space.hull(a);
  a.for_each([&](Value x) {
    ValueSet rest = a;
    rest.erase(x);
    boundary -= space.hull(rest);
  });
  return boundary;
}

bool is_irredundant(const ConvexitySpace& space, const ValueSet& a) { return !irredundant_boundary(space, a).empty(); }

std::optional<std::vector<Value>> convex_elimination_order(const ConvexitySpace& space) {
  std::vector<Value> order;
  order.reserve(space.size());
  ValueSet remaining = space.ground_set();
  while (!remaining.empty()) {
    std::optional<Value> peeled;
    for (auto a = remaining.first(); a; a = remaining.next(*a)) {
      ValueSet rest = remaining;
      rest.erase(*a);
      if (!space.hull(rest).contains(*a)) {
        peeled = *a;
        break;
      }
    }
    if (!peeled) return std::nullopt;
    order.push_back(*peeled);
    remaining.erase(*peeled);
  }
  return order;
}

bool is_convex_geometry(const ConvexitySpace& space) {
  // NextClosure walks the convex sets in lectic order; each proper convex set
  // needs some outside point whose addition stays convex.
  const std::size_t n = space.size();
  ValueSet k = space.hull(space.empty_set());
  for (std::uint64_t visited = 1;; ++visited) {
    if (visited > kConvexSetCap) {
      throw CapacityError("convex-geometry check visits more than " + std::to_string(kConvexSetCap) + " convex sets");
    }
    if (k.size() < n) {
      bool extends = false;
      for (Value u = 0; u < n && !extends; ++u) {
        if (k.contains(u)) continue;
        ValueSet grown = k;
        grown.insert(u);
        extends = space.hull(grown) == grown;
      }
      if (!extends) return false;
    }
    std::optional<ValueSet> next;
    ValueSet prefix = k;  // members of k below i
    for (std::size_t i = n; i-- > 0 && !next;) {
      const auto v = static_cast<Value>(i);
      prefix.erase(v);
      if (k.contains(v)) continue;
      ValueSet seed = prefix;
      seed.insert(v);
      ValueSet b = space.hull(seed);
      ValueSet low = b;
      for (Value w = v; w < n; ++w) low.erase(w);
      if (low == prefix) next = std::move(b);
    }
    if (!next) return true;
    k = std::move(*next);
  }
}

namespace {

void require_cap(const ConvexitySpace& space, std::size_t cap, const char* what) {
  if (space.size() > cap) {
    throw CapacityError(std::string(what) + " limited to " + std::to_string(cap) + " elements, got " +
                        std::to_string(space.size()));
  }
}

ValueSet set_from_mask(std::size_t n, std::uint64_t mask) {
  ValueSet s(n);
  for (std::uint64_t bits = mask; bits != 0; bits &= bits - 1) s.insert(static_cast<Value>(std::countr_zero(bits)));
  return s;
}

bool helly_independent(const ConvexitySpace& space, const ValueSet& a) {
  ValueSet common = space.ground_set();
  for (auto x = a.first(); x; x = a.next(*x)) {
    ValueSet rest = a;
    rest.erase(*x);
    common &= space.hull(rest);
    if (common.empty()) return true;
  }
  return common.empty();
}

void grow_free(const ConvexitySpace& space, ValueSet& current, Value start, ValueSet& best) {
  for (Value v = start; v < space.size(); ++v) {
    current.insert(v);
    if (is_free(space, current)) {
      if (current.size() > best.size()) best = current;
      grow_free(space, current, v + 1, best);
    }
    current.erase(v);
  }
}

}  // namespace

bool has_mkm_property(const ConvexitySpace& space) {
  require_cap(space, kSubsetCap, "convex-geometry check");
  const std::uint64_t subsets = std::uint64_t{1} << space.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    const ValueSet k = set_from_mask(space.size(), mask);
    if (!is_convex(space, k)) continue;
    if (space.hull(extreme_points(space, k)) != k) return false;
  }
  return true;
}

ValueSet max_free_set(const ConvexitySpace& space) {
  ValueSet best(space.size());
  ValueSet current(space.size());
  grow_free(space, current, 0, best);
  return best;
}

std::size_t helly_number(const ConvexitySpace& space, HellyStrategy strategy) {
  if (strategy == HellyStrategy::Auto) {
    strategy = is_convex_geometry(space) ? HellyStrategy::MaxFreeSet : HellyStrategy::Definition;
  }
  if (strategy == HellyStrategy::MaxFreeSet) {
    if (!is_convex_geometry(space)) {
      throw PreconditionError("max-free-set Helly number requires a convex geometry");
    }
    return max_free_set(space).size();
  }
  require_cap(space, kHellyDefinitionCap, "definition-based Helly number");
  const std::size_t n = space.size();
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::size_t best = 0;
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    if (k <= best) continue;
    if (helly_independent(space, set_from_mask(n, mask))) best = k;
  }
  return best;
}

std::size_t caratheodory_number(const ConvexitySpace& space) {
  require_cap(space, kSubsetCap, "Caratheodory number");
  const std::size_t n = space.size();
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::size_t best = 0;
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    if (k <= best) continue;
    if (is_irredundant(space, set_from_mask(n, mask))) best = k;
  }
  return best;
}

// ---------------------------------------------------------------------------

std::optional<BlockingInstance> build_blocking_instance(const ConvexitySpace& space, const ValueSet& a) {
  if (a.universe() != space.size()) throw InputError("blocking instance: set over a different ground set");
  if (a.size() <= 1) throw InputError("blocking instance needs |A| > 1");
  const bool free = is_free(space, a);
  if (!free && !is_irredundant(space, a)) return std::nullopt;

  BlockingInstance inst;
  inst.a = a;
  const ValueSet h = space.hull(a);
  // hull(A \ b) for each b, computed once.
  std::map<Value, ValueSet> without;
  a.for_each([&](Value b) {
    ValueSet rest = a;
    rest.erase(b);
    without.emplace(b, space.hull(rest));
  });
  for (auto x = a.first(); x; x = a.next(*x)) {
    for (auto y = h.first(); y; y = h.next(*y)) {
      if (a.contains(*y)) {
        inst.mu[{*x, *y}] = *y;
        continue;
      }
      std::optional<Value> witness;
      for (auto b = a.first(); b; b = a.next(*b)) {
        if (*b != *x && !without.at(*b).contains(*y)) {
          witness = *b;
          break;
        }
      }
      if (!witness) return std::nullopt;
      inst.mu[{*x, *y}] = *witness;
    }
  }
  return inst;
}

bool verify_blocking_instance(const ConvexitySpace& space, const BlockingInstance& inst, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  const ValueSet& a = inst.a;
  if (a.universe() != space.size()) throw InputError("blocking instance: set over a different ground set");
  const ValueSet h = space.hull(a);
  for (const auto& [key, value] : inst.mu) {
    if (!a.contains(key.first) || !h.contains(key.second)) {
      throw InputError("blocking instance: mu defined outside A x hull(A)");
    }
  }
  for (auto x = a.first(); x; x = a.next(*x)) {
    for (auto y = h.first(); y; y = h.next(*y)) {
      if (!inst.mu.count({*x, *y})) {
        throw InputError("blocking instance: mu undefined at (" + std::to_string(*x) + "," + std::to_string(*y) + ")");
      }
    }
  }
  if (inst.m() < 2) return fail("condition 1: need m = |A| > 1");
  if (extreme_points(space, a) != a) return fail("condition 2: A is not equal to its extreme points");
  for (const auto& [key, value] : inst.mu) {
    const auto [x, y] = key;
    if (!a.contains(value)) return fail("mu(" + std::to_string(x) + "," + std::to_string(y) + ") is not in A");
    if (x == y) continue;
    if (value == x) return fail("condition 3: mu(" + std::to_string(x) + "," + std::to_string(y) + ") = x");
    ValueSet rest = a;
    rest.erase(value);
    if (space.hull(rest).contains(y)) {
      return fail("condition 4: " + std::to_string(y) + " lies in hull(A \\ mu(" + std::to_string(x) + "," +
                  std::to_string(y) + "))");
    }
  }
  return true;
}

}  // namespace cvxagree
