#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cvxagree/graph.hpp"
#include "cvxagree/semilattice.hpp"
#include "cvxagree/value_set.hpp"

namespace cvxagree {

enum class HullKind { MonophonicGraph, GeodesicGraph, AlgebraicSemilattice };

std::string to_string(HullKind kind);
/// "monophonic", "geodesic" or "algebraic"; throws InputError otherwise.
HullKind parse_hull_kind(const std::string& name);

/// Ground set 0..N-1 plus a hull operator backed by a graph or a semilattice.
/// Copies share the (immutable) backing structure.
class ConvexitySpace {
 public:
  static ConvexitySpace monophonic(Graph g);
  static ConvexitySpace geodesic(Graph g);
  static ConvexitySpace algebraic(Semilattice l);

  HullKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return n_; }
  bool is_graph() const noexcept { return graph_ != nullptr; }

  /// Throw std::logic_error when the space has no backing of that type.
  const Graph& graph() const;
  const Semilattice& semilattice() const;

  ValueSet empty_set() const { return ValueSet(n_); }
  ValueSet ground_set() const { return ValueSet::full(n_); }
  /// Throws InputError on identifiers outside the ground set.
  ValueSet make_set(std::span<const Value> values) const;
  ValueSet make_set(std::initializer_list<Value> values) const;

  /// Throws InputError if `s` is over a different ground set.
  ValueSet hull(const ValueSet& s) const;

 private:
  ConvexitySpace() = default;

  HullKind kind_ = HullKind::MonophonicGraph;
  std::size_t n_ = 0;
  std::shared_ptr<const Graph> graph_;
  std::shared_ptr<const Semilattice> lattice_;
  std::function<ValueSet(const ValueSet&)> hull_;
};

bool is_convex(const ConvexitySpace& space, const ValueSet& s);

/// { a in S : a not in hull(S \ a) }.
ValueSet extreme_points(const ConvexitySpace& space, const ValueSet& s);

/// Convex and equal to its own extreme points.
bool is_free(const ConvexitySpace& space, const ValueSet& k);

/// hull(A) minus the union of hull(A \ a). Throws InputError on empty A.
ValueSet irredundant_boundary(const ConvexitySpace& space, const ValueSet& a);
bool is_irredundant(const ConvexitySpace& space, const ValueSet& a);

/// Greedy peel of the smallest extreme point of the remaining convex set.
/// nullopt if some remaining nonempty convex set has no extreme point.
std::optional<std::vector<Value>> convex_elimination_order(const ConvexitySpace& space);
/// Every proper convex set extends by one point to a convex set (checked
/// over all convex sets, enumerated by NextClosure; cap kConvexSetCap).
/// An elimination order can exist without this holding.
bool is_convex_geometry(const ConvexitySpace& space);
inline constexpr std::uint64_t kConvexSetCap = std::uint64_t{1} << 20;

/// Every convex K equals hull(ex K). Exhaustive over subsets; cap kSubsetCap.
bool has_mkm_property(const ConvexitySpace& space);

inline constexpr std::size_t kSubsetCap = 24;
inline constexpr std::size_t kHellyDefinitionCap = 16;

enum class HellyStrategy {
  /// Largest A with the intersection over a in A of hull(A \ a) empty.
  /// Cap kHellyDefinitionCap.
  Definition,
  /// Largest free set. Only meaningful for convex geometries; throws
  /// PreconditionError otherwise.
  MaxFreeSet,
  /// MaxFreeSet on convex geometries, Definition otherwise.
  Auto,
};

std::size_t helly_number(const ConvexitySpace& space, HellyStrategy strategy = HellyStrategy::Auto);

/// Largest free set (depth-first over free sets ordered by identifier).
ValueSet max_free_set(const ConvexitySpace& space);

/// Maximum size of an irredundant set. Subset enumeration; cap kSubsetCap.
std::size_t caratheodory_number(const ConvexitySpace& space);

// ---------------------------------------------------------------------------
// Blocking instances

struct BlockingInstance {
  ValueSet a;
  /// mu[(x, y)] for x in A and y in hull(A).
  std::map<std::pair<Value, Value>, Value> mu;

  std::size_t m() const { return a.size(); }
};

/// Free A: mu(x, y) = y. Irredundant A: mu(x, y) = y for y in A, otherwise
/// the first b in A \ x (by identifier) with y not in hull(A \ b).
/// nullopt if A is neither free nor irredundant. Throws InputError if |A| <= 1.
std::optional<BlockingInstance> build_blocking_instance(const ConvexitySpace& space, const ValueSet& a);

/// Checks the four blocking conditions. Throws InputError if mu is not
/// defined on all of A x hull(A).
bool verify_blocking_instance(const ConvexitySpace& space, const BlockingInstance& inst, std::string* why = nullptr);

}  // namespace cvxagree
