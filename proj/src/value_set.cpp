#include "cvxagree/value_set.hpp"

#include "cvxagree/error.hpp"

namespace cvxagree {

ValueSet::ValueSet(std::size_t universe)
    : universe_(universe), words_((universe + 63) / 64, 0) {}

ValueSet::ValueSet(std::size_t universe, std::initializer_list<Value> values)
    : ValueSet(universe) {
  for (Value v : values) insert(v);
}

ValueSet::ValueSet(std::size_t universe, std::span<const Value> values)
    : ValueSet(universe) {
  for (Value v : values) insert(v);
}

ValueSet ValueSet::full(std::size_t universe) {
  ValueSet s(universe);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  if (const std::size_t tail = universe % 64; tail != 0 && !s.words_.empty()) {
    s.words_.back() = (std::uint64_t{1} << tail) - 1;
  }
  return s;
}

void ValueSet::insert(Value v) {
  if (v >= universe_) {
    throw InputError("value " + std::to_string(v) + " outside ground set of size " +
                     std::to_string(universe_));
  }
  words_[v >> 6] |= std::uint64_t{1} << (v & 63);
}

void ValueSet::erase(Value v) {
  if (v >= universe_) return;
  words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
}

void ValueSet::clear() noexcept {
  for (auto& w : words_) w = 0;
}

std::size_t ValueSet::size() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool ValueSet::empty() const noexcept {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

void ValueSet::require_same_universe(const ValueSet& other) const {
  if (universe_ != other.universe_) {
    throw InputError("value sets over different ground sets (" + std::to_string(universe_) +
                     " vs " + std::to_string(other.universe_) + ")");
  }
}

ValueSet& ValueSet::operator&=(const ValueSet& other) {
  require_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

ValueSet& ValueSet::operator|=(const ValueSet& other) {
  require_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

ValueSet& ValueSet::operator-=(const ValueSet& other) {
  require_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

bool ValueSet::is_subset_of(const ValueSet& other) const {
  require_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

bool ValueSet::intersects(const ValueSet& other) const {
  require_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

std::optional<Value> ValueSet::first() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) {
      return static_cast<Value>(w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w])));
    }
  }
  return std::nullopt;
}

std::optional<Value> ValueSet::next(Value v) const noexcept {
  std::size_t start = static_cast<std::size_t>(v) + 1;
  if (start >= universe_) return std::nullopt;
  std::size_t w = start >> 6;
  std::uint64_t bits = words_[w] & (~std::uint64_t{0} << (start & 63));
  while (true) {
    if (bits != 0) {
      return static_cast<Value>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
    }
    if (++w >= words_.size()) return std::nullopt;
    bits = words_[w];
  }
}

std::vector<Value> ValueSet::to_vector() const {
  std::vector<Value> out;
  out.reserve(size());
  for_each([&](Value v) { out.push_back(v); });
  return out;
}

std::size_t ValueSet::hash() const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ universe_;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::string ValueSet::to_string() const {
  std::string out = "{";
  bool first_item = true;
  for_each([&](Value v) {
    if (!first_item) out += ',';
    out += std::to_string(v);
    first_item = false;
  });
  out += '}';
  return out;
}

}  // namespace cvxagree
