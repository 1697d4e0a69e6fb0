#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cvxagree/graph.hpp"
#include "cvxagree/value_set.hpp"

namespace cvxagree {

/// Finite join-semilattice given by its full join table.
///
/// The constructor validates idempotence and commutativity always and
/// associativity for up to kAssociativityCheckCap elements.
class Semilattice {
 public:
  Semilattice() = default;
  /// `table[u][v]` = u join v. Throws InputError if the axioms fail.
  explicit Semilattice(std::vector<std::vector<Value>> table);

  std::size_t size() const noexcept { return n_; }
  Value join(Value u, Value v) const { return table_[u * n_ + v]; }
  bool leq(Value u, Value v) const { return join(u, v) == v; }
  bool comparable(Value u, Value v) const { return leq(u, v) || leq(v, u); }

  std::vector<std::vector<Value>> table() const;

  static constexpr std::size_t kAssociativityCheckCap = 64;

 private:
  std::size_t n_ = 0;
  std::vector<Value> table_;
};

/// Join of a nonempty set; throws InputError on an empty set.
Value big_join(const Semilattice& l, const ValueSet& u);

/// Least superset of `s` closed under pairwise joins.
ValueSet join_closure(const Semilattice& l, const ValueSet& s);

bool is_chain(const Semilattice& l, const ValueSet& s);

Graph comparability_graph(const Semilattice& l);
bool is_cycle_free(const Semilattice& l);

/// Maximum cardinality of a chain.
std::size_t height(const Semilattice& l);

/// Smallest b such that every nonempty U has A within U, |A| <= b and
/// join(A) = join(U). Brute force over subsets; cap kBreadthCap elements.
std::size_t breadth(const Semilattice& l);
inline constexpr std::size_t kBreadthCap = 20;

/// PEO of the (chordal) comparability graph. Throws InputError if the
/// semilattice is not cycle-free.
std::vector<Value> cycle_free_elimination_order(const Semilattice& l);

// Text format: "N" then N rows of N identifiers (row-major join table).
Semilattice parse_semilattice(std::istream& in);
Semilattice parse_semilattice_text(const std::string& text);
std::string format_semilattice(const Semilattice& l);

// Fixtures.
/// 0 <= 1 <= ... <= n-1.
Semilattice chain_semilattice(std::size_t n);
/// {x=0, y=1, t=2} with x join y = t.
Semilattice vee_semilattice();
/// Nonempty subsets of {1..b}, joined by union. Element id = bitmask - 1.
Semilattice subset_semilattice_without_empty(std::size_t b);
/// Tree-shaped order: u <= v iff v is an ancestor of u. `parent[root] == root`
/// for exactly one root. Join is the lowest common ancestor.
Semilattice tree_order_semilattice(const std::vector<Value>& parent);

}  // namespace cvxagree
