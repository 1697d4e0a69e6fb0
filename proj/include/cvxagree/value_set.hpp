#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cvxagree {

/// Identifier of a value in a ground set (a vertex, a lattice element, a bag).
using Value = std::uint32_t;

/// Fixed-universe bit-vector over value identifiers 0..universe-1.
///
/// All binary operations require both operands to share the same universe;
/// mixing universes throws InputError.
class ValueSet {
 public:
  ValueSet() = default;
  explicit ValueSet(std::size_t universe);
  ValueSet(std::size_t universe, std::initializer_list<Value> values);
  ValueSet(std::size_t universe, std::span<const Value> values);

  static ValueSet full(std::size_t universe);

  std::size_t universe() const noexcept { return universe_; }

  bool contains(Value v) const noexcept {
    return v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1u) != 0;
  }
  void insert(Value v);
  void erase(Value v);
  void clear() noexcept;

  std::size_t size() const noexcept;
  bool empty() const noexcept;

  ValueSet& operator&=(const ValueSet& other);
  ValueSet& operator|=(const ValueSet& other);
  ValueSet& operator-=(const ValueSet& other);

  friend ValueSet operator&(ValueSet a, const ValueSet& b) { return a &= b; }
  friend ValueSet operator|(ValueSet a, const ValueSet& b) { return a |= b; }
  friend ValueSet operator-(ValueSet a, const ValueSet& b) { return a -= b; }
  friend bool operator==(const ValueSet& a, const ValueSet& b) = default;

  bool is_subset_of(const ValueSet& other) const;
  bool intersects(const ValueSet& other) const;

  /// Smallest identifier in the set, if any.
  std::optional<Value> first() const noexcept;
  /// Smallest identifier strictly greater than `v`, if any.
  std::optional<Value> next(Value v) const noexcept;

  std::vector<Value> to_vector() const;
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::size_t hash() const noexcept;

  /// "{0,3,5}"
  std::string to_string() const;

  template <typename F>
  void for_each(F&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        fn(static_cast<Value>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

 private:
  void require_same_universe(const ValueSet& other) const;

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ValueSetHash {
  std::size_t operator()(const ValueSet& s) const noexcept { return s.hash(); }
};

}  // namespace cvxagree
