#include "cvxagree/semilattice.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <numeric>
#include <sstream>

#include "cvxagree/error.hpp"

namespace cvxagree {

Semilattice::Semilattice(std::vector<std::vector<Value>> table) : n_(table.size()) {
  if (n_ == 0) throw InputError("semilattice needs at least one element");
  table_.resize(n_ * n_);
  for (std::size_t u = 0; u < n_; ++u) {
    if (table[u].size() != n_) throw InputError("join table row " + std::to_string(u) + " has wrong length");
    for (std::size_t v = 0; v < n_; ++v) {
      if (table[u][v] >= n_) throw InputError("join table entry outside 0..N-1");
      table_[u * n_ + v] = table[u][v];
    }
  }
  for (Value u = 0; u < n_; ++u) {
    if (join(u, u) != u) throw InputError("join is not idempotent at " + std::to_string(u));
    for (Value v = 0; v < n_; ++v) {
      if (join(u, v) != join(v, u)) {
        throw InputError("join is not commutative at (" + std::to_string(u) + "," + std::to_string(v) + ")");
      }
    }
  }
  if (n_ <= kAssociativityCheckCap) {
    for (Value u = 0; u < n_; ++u) {
      for (Value v = 0; v < n_; ++v) {
        for (Value w = 0; w < n_; ++w) {
          if (join(join(u, v), w) != join(u, join(v, w))) {
            throw InputError("join is not associative at (" + std::to_string(u) + "," + std::to_string(v) + "," +
                             std::to_string(w) + ")");
          }
        }
      }
    }
  }
}

std::vector<std::vector<Value>> Semilattice::table() const {
  std::vector<std::vector<Value>> out(n_, std::vector<Value>(n_));
  for (Value u = 0; u < n_; ++u) {
    for (Value v = 0; v < n_; ++v) out[u][v] = join(u, v);
  }
  return out;
}

Value big_join(const Semilattice& l, const ValueSet& u) {
  const auto start = u.first();
  if (!start) throw InputError("join of an empty set");
  Value acc = *start;
  u.for_each([&](Value v) { acc = l.join(acc, v); });
  return acc;
}

ValueSet join_closure(const Semilattice& l, const ValueSet& s) {
  if (s.universe() != l.size()) throw InputError("hull: set over a different ground set");
  ValueSet closed = s;
  std::vector<Value> processed;
  std::vector<Value> pending = s.to_vector();
  while (!pending.empty()) {
    const Value x = pending.back();
    pending.pop_back();
    for (Value y : processed) {
      const Value j = l.join(x, y);
      if (!closed.contains(j)) {
        closed.insert(j);
        pending.push_back(j);
      }
    }
    processed.push_back(x);
  }
  return closed;
}

bool is_chain(const Semilattice& l, const ValueSet& s) {
  bool ok = true;
  s.for_each([&](Value u) {
    s.for_each([&](Value v) { ok = ok && l.comparable(u, v); });
  });
  return ok;
}

Graph comparability_graph(const Semilattice& l) {
  std::vector<Edge> edges;
  for (Value u = 0; u < l.size(); ++u) {
    for (Value v = u + 1; v < l.size(); ++v) {
      if (l.comparable(u, v)) edges.emplace_back(u, v);
    }
  }
  return Graph(l.size(), edges);
}

bool is_cycle_free(const Semilattice& l) { return is_chordal(comparability_graph(l)); }

std::size_t height(const Semilattice& l) {
  const std::size_t n = l.size();
  // Elements sorted by the size of their down-set form a linear extension.
  std::vector<std::size_t> below(n, 0);
  for (Value v = 0; v < n; ++v) {
    for (Value u = 0; u < n; ++u) below[v] += l.leq(u, v) ? 1 : 0;
  }
  std::vector<Value> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Value a, Value b) { return below[a] < below[b]; });
  std::vector<std::size_t> longest(n, 1);
  std::size_t best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Value v = order[i];
    for (std::size_t j = 0; j < i; ++j) {
      const Value u = order[j];
      if (u != v && l.leq(u, v)) longest[v] = std::max(longest[v], longest[u] + 1);
    }
    best = std::max(best, longest[v]);
  }
  return best;
}

std::size_t breadth(const Semilattice& l) {
  const std::size_t n = l.size();
  if (n > kBreadthCap) {
    throw CapacityError("breadth limited to " + std::to_string(kBreadthCap) + " elements");
  }
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<Value> join_of(subsets, 0);
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    const auto low = static_cast<Value>(std::countr_zero(mask));
    const std::size_t rest = mask & (mask - 1);
    join_of[mask] = rest == 0 ? low : l.join(join_of[rest], low);
  }
  // reach[U] = joins attainable from subsets of U with at most k elements.
  std::vector<std::uint32_t> reach(subsets, 0);
  for (std::size_t k = 1; k <= n; ++k) {
    bool all = true;
    for (std::size_t mask = 1; mask < subsets; ++mask) {
      std::uint32_t r = 0;
      if (static_cast<std::size_t>(std::popcount(mask)) <= k) r |= std::uint32_t{1} << join_of[mask];
      for (std::size_t bits = mask; bits != 0; bits &= bits - 1) {
        r |= reach[mask & ~(std::size_t{1} << std::countr_zero(bits))];
      }
      reach[mask] = r;
      all = all && ((r >> join_of[mask]) & 1u) != 0;
    }
    if (all) return k;
  }
  return n;
}

std::vector<Value> cycle_free_elimination_order(const Semilattice& l) {
  auto peo = lexbfs_peo(comparability_graph(l));
  if (!peo) throw InputError("semilattice is not cycle-free: comparability graph is not chordal");
  return *peo;
}

// ---------------------------------------------------------------------------

namespace {

bool next_content_line(std::istream& in, std::istringstream& out) {
  std::string line;
  while (std::getline(in, line)) {
    if (const auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.clear();
    out.str(line);
    return true;
  }
  return false;
}

}  // namespace

Semilattice parse_semilattice(std::istream& in) {
  std::istringstream line;
  if (!next_content_line(in, line)) throw InputError("semilattice file: missing header line");
  long long n = -1;
  if (!(line >> n) || n <= 0) throw InputError("semilattice file: header must be 'N' with N > 0");
  std::string extra;
  if (line >> extra) throw InputError("semilattice file: trailing tokens in header");
  std::vector<std::vector<Value>> table(static_cast<std::size_t>(n));
  for (long long r = 0; r < n; ++r) {
    if (!next_content_line(in, line)) throw InputError("semilattice file: expected " + std::to_string(n) + " rows");
    long long x = 0;
    while (line >> x) {
      if (x < 0) throw InputError("semilattice file: negative identifier");
      table[static_cast<std::size_t>(r)].push_back(static_cast<Value>(x));
    }
    if (!line.eof()) throw InputError("semilattice file: non-numeric token in row " + std::to_string(r));
    if (table[static_cast<std::size_t>(r)].size() != static_cast<std::size_t>(n)) {
      throw InputError("semilattice file: row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
    }
  }
  if (next_content_line(in, line)) throw InputError("semilattice file: content after the last row");
  return Semilattice(std::move(table));
}

Semilattice parse_semilattice_text(const std::string& text) {
  std::istringstream in(text);
  return parse_semilattice(in);
}

std::string format_semilattice(const Semilattice& l) {
  std::ostringstream out;
  out << l.size() << '\n';
  for (Value u = 0; u < l.size(); ++u) {
    for (Value v = 0; v < l.size(); ++v) out << (v ? " " : "") << l.join(u, v);
    out << '\n';
  }
  return out.str();
}

Semilattice chain_semilattice(std::size_t n) {
  std::vector<std::vector<Value>> t(n, std::vector<Value>(n));
  for (Value u = 0; u < n; ++u) {
    for (Value v = 0; v < n; ++v) t[u][v] = std::max(u, v);
  }
  return Semilattice(std::move(t));
}

Semilattice vee_semilattice() { return Semilattice({{0, 2, 2}, {2, 1, 2}, {2, 2, 2}}); }

Semilattice subset_semilattice_without_empty(std::size_t b) {
  if (b == 0 || b > 12) throw InputError("subset semilattice needs 1 <= b <= 12");
  const std::size_t n = (std::size_t{1} << b) - 1;
  std::vector<std::vector<Value>> t(n, std::vector<Value>(n));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) t[u][v] = static_cast<Value>(((u + 1) | (v + 1)) - 1);
  }
  return Semilattice(std::move(t));
}

Semilattice tree_order_semilattice(const std::vector<Value>& parent) {
  const std::size_t n = parent.size();
  if (n == 0) throw InputError("tree order needs at least one element");
  std::vector<std::uint32_t> depth(n, kUnreachable);
  std::size_t roots = 0;
  for (Value v = 0; v < n; ++v) {
    if (parent[v] >= n) throw InputError("tree order: parent outside 0..N-1");
    if (parent[v] == v) ++roots;
  }
  if (roots != 1) throw InputError("tree order needs exactly one root");
  for (Value v = 0; v < n; ++v) {
    // Walk up to a vertex of known depth; more than n steps means a cycle.
    std::vector<Value> trail;
    Value cur = v;
    while (depth[cur] == kUnreachable && parent[cur] != cur) {
      trail.push_back(cur);
      cur = parent[cur];
      if (trail.size() > n) throw InputError("tree order: parent pointers contain a cycle");
    }
    if (depth[cur] == kUnreachable) depth[cur] = 0;
    for (auto it = trail.rbegin(); it != trail.rend(); ++it) depth[*it] = depth[parent[*it]] + 1;
  }
  std::vector<std::vector<Value>> t(n, std::vector<Value>(n));
  for (Value u = 0; u < n; ++u) {
    for (Value v = 0; v < n; ++v) {
      Value a = u;
      Value b = v;
      while (a != b) {
        if (depth[a] >= depth[b]) {
          a = parent[a];
        } else {
          b = parent[b];
        }
      }
      t[u][v] = a;
    }
  }
  return Semilattice(std::move(t));
}

}  // namespace cvxagree
