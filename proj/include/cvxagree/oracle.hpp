#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cvxagree/convexity.hpp"

namespace cvxagree::oracle {

// Deliberately naive recomputations. Nothing here calls the hull operators,
// chordality routines or convexity helpers of the main library.

/// Plain induced-path enumeration (no pruning) is used up to this size.
inline constexpr std::size_t kPathEnumerationCap = 24;
/// Larger graphs switch to the component-witness closure.
inline constexpr std::size_t kGraphCap = 4096;
inline constexpr std::size_t kInvariantCap = 12;

/// Monophonic: fixpoint over enumerated induced paths (N <= kPathEnumerationCap),
/// otherwise: while some component C of G - H has two nonadjacent neighbours
/// x, y in H, add a shortest x-y path through C.
/// Geodesic: fixpoint over BFS intervals recomputed per call.
/// Algebraic: repeat pairwise joins until nothing changes.
ValueSet hull(const ConvexitySpace& space, const ValueSet& s);

/// Every hull of every subset, indexed by bitmask. N <= kInvariantCap.
std::vector<ValueSet> hull_table(const ConvexitySpace& space);

struct Invariants {
  std::size_t helly = 0;
  std::size_t caratheodory = 0;
  bool convex_geometry = false;
};

/// Helly: largest A whose sub-deletion hulls have empty intersection.
/// Caratheodory: smallest c such that every hull(U) is covered by hulls of
/// subsets of U with at most c elements. Convex geometry: every convex set is
/// the hull of its extreme points. All read a single hull table. N <= kInvariantCap.
Invariants invariants(const ConvexitySpace& space);

/// Literal Helly definition: smallest w such that every w-intersecting family
/// of convex sets has a common point. Exponential in the number of convex
/// sets; returns 0 if that number exceeds `max_convex_sets`.
std::size_t helly_by_families(const ConvexitySpace& space, std::size_t max_convex_sets = 20);

struct Report {
  std::string claim;
  std::string instance;
  std::string oracle_result;
  std::string engine_result;
  bool match = false;
};

}  // namespace cvxagree::oracle
