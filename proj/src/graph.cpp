#include "cvxagree/graph.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <sstream>
#include <unordered_set>

#include "cvxagree/error.hpp"

namespace cvxagree {

Graph::Graph(std::size_t vertex_count) : Graph(vertex_count, std::span<const Edge>{}) {}

Graph::Graph(std::size_t vertex_count, std::span<const Edge> edges)
    : adjacency_(vertex_count), neighborhood_(vertex_count, ValueSet(vertex_count)) {
  for (const auto& [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) {
      throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") references a vertex outside 0.." + std::to_string(vertex_count) + "-1");
    }
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    if (neighborhood_[u].contains(v)) {
      throw InputError("parallel edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
    neighborhood_[u].insert(v);
    neighborhood_[v].insert(u);
    ++edge_count_;
  }
  for (std::size_t u = 0; u < vertex_count; ++u) adjacency_[u] = neighborhood_[u].to_vector();

  if (vertex_count > 0) {
    const auto d = distances_from(*this, 0);
    connected_ = std::none_of(d.begin(), d.end(), [](auto x) { return x == kUnreachable; });
  }
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < vertex_count(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::uint32_t> distances_from(const Graph& g, Vertex source) {
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreachable);
  if (source >= g.vertex_count()) throw InputError("unknown vertex " + std::to_string(source));
  std::vector<Vertex> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<std::uint32_t> distances_within(const Graph& g, const ValueSet& within, Vertex source) {
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreachable);
  if (!within.contains(source)) return dist;
  std::vector<Vertex> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] == kUnreachable && within.contains(w)) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

bool is_connected_induced(const Graph& g, const ValueSet& subset) {
  const auto start = subset.first();
  if (!start) return true;
  const auto d = distances_within(g, subset, *start);
  bool ok = true;
  subset.for_each([&](Value v) { ok = ok && d[v] != kUnreachable; });
  return ok;
}

std::uint32_t diameter_of(const Graph& g, const ValueSet& subset) {
  std::uint32_t best = 0;
  subset.for_each([&](Value u) {
    const auto d = distances_from(g, u);
    subset.for_each([&](Value v) { best = std::max(best, d[v]); });
  });
  return best;
}

namespace {

std::uint32_t eccentricity(const std::vector<std::uint32_t>& d) {
  std::uint32_t e = 0;
  for (auto x : d) {
    if (x != kUnreachable) e = std::max(e, x);
  }
  return e;
}

// Farthest vertex from `source` inside G[within]; ties go to the smallest id.
std::pair<Vertex, std::vector<std::uint32_t>> farthest_within(const Graph& g, const ValueSet& within,
                                                              Vertex source) {
  auto d = distances_within(g, within, source);
  Vertex best = source;
  within.for_each([&](Value v) {
    if (d[v] != kUnreachable && d[v] > d[best]) best = v;
  });
  return {best, std::move(d)};
}

ValueSet tree_center(const Graph& g, const ValueSet& subset) {
  const auto [a, da] = farthest_within(g, subset, *subset.first());
  const auto [b, db] = farthest_within(g, subset, a);
  subset.for_each([&](Value v) {
    if (db[v] == kUnreachable) throw InputError("center: induced subgraph is disconnected");
  });
  // db holds distances from a; walk back from b along decreasing distance.
  const std::uint32_t length = db[b];
  std::vector<Vertex> path{b};
  Vertex cur = b;
  while (cur != a) {
    for (Vertex w : g.neighbors(cur)) {
      if (subset.contains(w) && db[w] + 1 == db[cur]) {
        cur = w;
        break;
      }
    }
    path.push_back(cur);
  }
  ValueSet center(g.vertex_count());
  center.insert(path[length / 2]);
  if (length % 2 == 1) center.insert(path[length / 2 + 1]);
  return center;
}

}  // namespace

std::uint32_t graph_diameter(const Graph& g) {
  if (g.vertex_count() == 0) return 0;
  if (g.is_tree()) {
    const auto all = g.vertices();
    const auto [a, da] = farthest_within(g, all, 0);
    const auto [b, db] = farthest_within(g, all, a);
    return db[b];
  }
  std::uint32_t best = 0;
  for (Vertex u = 0; u < g.vertex_count(); ++u) best = std::max(best, eccentricity(distances_from(g, u)));
  return best;
}

std::uint32_t graph_radius(const Graph& g) {
  std::uint32_t best = kUnreachable;
  for (Vertex u = 0; u < g.vertex_count(); ++u) best = std::min(best, eccentricity(distances_from(g, u)));
  return g.vertex_count() == 0 ? 0 : best;
}

ValueSet center_of_induced(const Graph& g, const ValueSet& subset) {
  if (subset.universe() != g.vertex_count()) throw InputError("center: set over a different ground set");
  if (subset.empty()) throw InputError("center of an empty vertex set");
  if (g.is_tree()) return tree_center(g, subset);

  std::uint32_t best = kUnreachable;
  ValueSet center(g.vertex_count());
  subset.for_each([&](Value u) {
    const auto d = distances_within(g, subset, u);
    std::uint32_t ecc = 0;
    subset.for_each([&](Value v) {
      if (d[v] == kUnreachable) throw InputError("center: induced subgraph is disconnected");
      ecc = std::max(ecc, d[v]);
    });
    if (ecc < best) {
      best = ecc;
      center.clear();
    }
    if (ecc == best) center.insert(u);
  });
  return center;
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> order_rank(std::span<const Vertex> order) {
  std::vector<std::size_t> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank.at(order[i]) = i;
  return rank;
}

bool is_perfect_elimination_order(const Graph& g, std::span<const Vertex> order) {
  const std::size_t n = g.vertex_count();
  if (order.size() != n) return false;
  {
    ValueSet seen(n);
    for (Vertex v : order) {
      if (v >= n || seen.contains(v)) return false;
      seen.insert(v);
    }
  }
  const auto rank = order_rank(order);
  ValueSet suffix(n);
  for (std::size_t i = n; i-- > 0;) {
    const Vertex v = order[i];
    const ValueSet later = g.neighborhood(v) & suffix;
    if (auto first_later = later.first()) {
      // The earliest later neighbour must see every other later neighbour.
      Vertex p = *first_later;
      later.for_each([&](Value w) {
        if (rank[w] < rank[p]) p = w;
      });
      ValueSet rest = later;
      rest.erase(p);
      if (!rest.is_subset_of(g.neighborhood(p))) return false;
    }
    suffix.insert(v);
  }
  return true;
}

std::optional<std::vector<Vertex>> lexbfs_peo(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::uint32_t>> label(n);
  std::vector<bool> numbered(n, false);
  std::vector<Vertex> visit;
  visit.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<Vertex> pick;
    for (Vertex v = 0; v < n; ++v) {
      if (numbered[v]) continue;
      if (!pick || label[*pick] < label[v]) pick = v;
    }
    numbered[*pick] = true;
    visit.push_back(*pick);
    const auto stamp = static_cast<std::uint32_t>(n - step);
    for (Vertex w : g.neighbors(*pick)) {
      if (!numbered[w]) label[w].push_back(stamp);
    }
  }
  std::vector<Vertex> order(visit.rbegin(), visit.rend());
  if (!is_perfect_elimination_order(g, order)) return std::nullopt;
  return order;
}

bool is_chordal(const Graph& g) { return lexbfs_peo(g).has_value(); }

bool is_clique(const Graph& g, const ValueSet& subset) {
  bool ok = true;
  subset.for_each([&](Value u) {
    ValueSet others = subset;
    others.erase(u);
    ok = ok && others.is_subset_of(g.neighborhood(u));
  });
  return ok;
}

namespace {

inline constexpr std::size_t kBronKerboschCap = 64;

void bron_kerbosch(const Graph& g, ValueSet r, ValueSet p, ValueSet x, std::vector<ValueSet>& out) {
  if (p.empty() && x.empty()) {
    out.push_back(r);
    return;
  }
  // Pivot on the vertex of P u X with most neighbours in P.
  Vertex pivot = 0;
  std::size_t best = 0;
  bool have = false;
  (p | x).for_each([&](Value u) {
    const std::size_t c = (p & g.neighborhood(u)).size();
    if (!have || c > best) {
      pivot = u;
      best = c;
      have = true;
    }
  });
  const ValueSet candidates = p - g.neighborhood(pivot);
  candidates.for_each([&](Value v) {
    ValueSet r2 = r;
    r2.insert(v);
    bron_kerbosch(g, r2, p & g.neighborhood(v), x & g.neighborhood(v), out);
    p.erase(v);
    x.insert(v);
  });
}

bool lex_less(const ValueSet& a, const ValueSet& b) { return a.to_vector() < b.to_vector(); }

}  // namespace

std::vector<ValueSet> maximal_cliques(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<ValueSet> cliques;
  if (n == 0) return cliques;
  if (auto peo = lexbfs_peo(g)) {
    ValueSet suffix(n);
    std::vector<ValueSet> candidates;
    for (std::size_t i = n; i-- > 0;) {
      const Vertex v = (*peo)[i];
      ValueSet c = g.neighborhood(v) & suffix;
      c.insert(v);
      candidates.push_back(std::move(c));
      suffix.insert(v);
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      bool maximal = true;
      for (std::size_t j = 0; j < candidates.size() && maximal; ++j) {
        if (i != j && candidates[i].size() < candidates[j].size() &&
            candidates[i].is_subset_of(candidates[j])) {
          maximal = false;
        }
      }
      if (maximal) cliques.push_back(candidates[i]);
    }
  } else {
    if (n > kBronKerboschCap) {
      throw CapacityError("maximal cliques of a non-chordal graph limited to " +
                          std::to_string(kBronKerboschCap) + " vertices");
    }
    bron_kerbosch(g, ValueSet(n), g.vertices(), ValueSet(n), cliques);
  }
  std::sort(cliques.begin(), cliques.end(), lex_less);
  return cliques;
}

std::size_t clique_number(const Graph& g) {
  std::size_t best = 0;
  for (const auto& c : maximal_cliques(g)) best = std::max(best, c.size());
  return best;
}

// ---------------------------------------------------------------------------

MonophonicHull::MonophonicHull(std::shared_ptr<const Graph> g) : graph_(std::move(g)) {
  const Graph& gr = *graph_;
  const std::size_t n = gr.vertex_count();
  if (n == 0) return;
  if (gr.is_tree()) {
    parent_.assign(n, 0);
    depth_.assign(n, kUnreachable);
    std::vector<Vertex> queue{0};
    depth_[0] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      for (Vertex w : gr.neighbors(u)) {
        if (depth_[w] == kUnreachable) {
          depth_[w] = depth_[u] + 1;
          parent_[w] = u;
          queue.push_back(w);
        }
      }
    }
    lift_.push_back(parent_);
    while ((std::size_t{1} << lift_.size()) < n) {
      const auto& prev = lift_.back();
      std::vector<Vertex> next(n);
      for (Vertex v = 0; v < n; ++v) next[v] = prev[prev[v]];
      lift_.push_back(std::move(next));
    }
    if (n <= kAncestorCap) {
      ancestors_.assign(n, ValueSet(n));
      for (Vertex u : queue) {
        if (u != 0) ancestors_[u] = ancestors_[parent_[u]];
        ancestors_[u].insert(u);
      }
    }
    return;
  }
  if (n > kVertexCap) {
    throw CapacityError("monophonic hull limited to " + std::to_string(kVertexCap) + " vertices");
  }

  // Every clique is a subset of a maximal clique; keep the separating ones.
  constexpr std::size_t kCliqueBudget = 1u << 21;
  std::unordered_set<ValueSet, ValueSetHash> seen;
  std::vector<ValueSet> cliques;
  for (const auto& mc : maximal_cliques(gr)) {
    const auto members = mc.to_vector();
    if (members.size() > 20) throw CapacityError("monophonic hull: clique too large to enumerate");
    const std::uint32_t subsets = 1u << members.size();
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
      ValueSet k(n);
      for (std::size_t b = 0; b < members.size(); ++b) {
        if ((mask >> b) & 1u) k.insert(members[b]);
      }
      if (seen.insert(k).second) {
        cliques.push_back(std::move(k));
        if (cliques.size() > kCliqueBudget) {
          throw CapacityError("monophonic hull: too many cliques to enumerate");
        }
      }
    }
  }
  std::sort(cliques.begin(), cliques.end(), lex_less);
  for (auto& k : cliques) {
    const ValueSet rest = gr.vertices() - k;
    if (rest.size() >= 2 && !is_connected_induced(gr, rest)) separating_cliques_.push_back(std::move(k));
  }
}

ValueSet MonophonicHull::operator()(const ValueSet& s) const {
  if (s.universe() != graph_->vertex_count()) {
    throw InputError("hull: set over a ground set of size " + std::to_string(s.universe()) +
                     ", expected " + std::to_string(graph_->vertex_count()));
  }
  if (s.size() <= 1) return s;
  return graph_->is_tree() ? tree_hull(s) : separator_hull(s);
}

Vertex MonophonicHull::lca(Vertex a, Vertex b) const {
  if (depth_[a] < depth_[b]) std::swap(a, b);
  for (std::size_t k = lift_.size(); k-- > 0;) {
    if (depth_[a] - depth_[b] >= (std::uint32_t{1} << k)) a = lift_[k][a];
  }
  if (a == b) return a;
  for (std::size_t k = lift_.size(); k-- > 0;) {
    if (lift_[k][a] != lift_[k][b]) {
      a = lift_[k][a];
      b = lift_[k][b];
    }
  }
  return parent_[a];
}

ValueSet MonophonicHull::tree_hull(const ValueSet& s) const {
  if (!ancestors_.empty()) {
    // Union of root paths, minus everything strictly above the common ancestor.
    Vertex top = *s.first();
    ValueSet out = ancestors_[top];
    s.for_each([&](Value x) {
      top = lca(top, x);
      out |= ancestors_[x];
    });
    if (top != 0) out -= ancestors_[parent_[top]];
    return out;
  }
  ValueSet out = s;
  const Vertex anchor = *s.first();
  s.for_each([&](Value x) {
    Vertex u = x;
    Vertex w = anchor;
    while (u != w) {
      if (depth_[u] >= depth_[w]) {
        out.insert(u);
        u = parent_[u];
      } else {
        out.insert(w);
        w = parent_[w];
      }
    }
    out.insert(u);
  });
  return out;
}

ValueSet MonophonicHull::separator_hull(const ValueSet& s) const {
  const Graph& g = *graph_;
  if (is_clique(g, s)) return s;
  ValueSet out = g.vertices();
  for (const auto& k : separating_cliques_) {
    ValueSet reached = s - k;
    ValueSet frontier = reached;
    while (!frontier.empty()) {
      ValueSet next(g.vertex_count());
      frontier.for_each([&](Value v) { next |= g.neighborhood(v); });
      next -= reached;
      next -= k;
      reached |= next;
      frontier = std::move(next);
    }
    out &= reached | k;
  }
  return out;
}

ValueSet monophonic_hull(const Graph& g, const ValueSet& s) {
  return MonophonicHull(std::make_shared<const Graph>(g))(s);
}

namespace {

// Marks every vertex lying on some chordless path from the current path's
// last vertex to `target`. `blocked` holds the closed neighbourhoods of all
// path vertices except the last one.
struct ChordlessSearch {
  const Graph& g;
  Vertex target;
  ValueSet& marked;
  std::vector<Vertex> path;

  bool reachable(Vertex from, const ValueSet& blocked) const {
    ValueSet allowed = g.vertices() - blocked;
    const auto d = distances_within(g, allowed, from);
    return d[target] != kUnreachable;
  }

  void extend(const ValueSet& blocked) {
    const Vertex last = path.back();
    ValueSet closed = blocked | g.neighborhood(last);
    closed.insert(last);
    for (Vertex x : g.neighbors(last)) {
      if (blocked.contains(x)) continue;
      if (x == target) {
        mark(x);
        continue;
      }
      // Any longer continuation would create a chord to the target.
      if (closed.contains(target)) continue;
      if (g.adjacent(x, target)) {
        mark(x);
        marked.insert(target);
        continue;
      }
      ValueSet allowed = g.vertices() - closed;
      allowed.insert(x);
      if (distances_within(g, allowed, x)[target] == kUnreachable) continue;
      path.push_back(x);
      extend(closed);
      path.pop_back();
    }
  }

  void mark(Vertex tail) {
    for (Vertex p : path) marked.insert(p);
    marked.insert(tail);
  }
};

}  // namespace

ValueSet monophonic_hull_by_paths(const Graph& g, const ValueSet& s) {
  const std::size_t n = g.vertex_count();
  if (s.universe() != n) throw InputError("hull: set over a different ground set");
  if (n > kPathSearchCap) {
    throw CapacityError("chordless-path hull limited to " + std::to_string(kPathSearchCap) + " vertices");
  }
  ValueSet hull = s;
  bool changed = true;
  while (changed) {
    changed = false;
    const auto members = hull.to_vector();
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const Vertex u = members[i];
        const Vertex w = members[j];
        if (g.adjacent(u, w)) continue;
        ValueSet marked(n);
        ChordlessSearch search{g, w, marked, {u}};
        search.extend(ValueSet(n));
        if (!marked.is_subset_of(hull)) {
          hull |= marked;
          changed = true;
        }
      }
    }
  }
  return hull;
}

// ---------------------------------------------------------------------------

GeodesicHull::GeodesicHull(std::shared_ptr<const Graph> g) : graph_(std::move(g)), n_(graph_->vertex_count()) {
  if (n_ > kVertexCap) {
    throw CapacityError("geodesic hull limited to " + std::to_string(kVertexCap) + " vertices");
  }
  distance_.resize(n_ * n_);
  for (Vertex u = 0; u < n_; ++u) {
    const auto d = distances_from(*graph_, u);
    std::copy(d.begin(), d.end(), distance_.begin() + static_cast<std::ptrdiff_t>(u * n_));
  }
}

ValueSet GeodesicHull::operator()(const ValueSet& s) const {
  if (s.universe() != n_) throw InputError("hull: set over a different ground set");
  ValueSet hull = s;
  std::vector<Vertex> processed;
  std::deque<Vertex> pending;
  s.for_each([&](Value v) { pending.push_back(v); });
  while (!pending.empty()) {
    const Vertex x = pending.front();
    pending.pop_front();
    for (Vertex y : processed) {
      const std::uint32_t dxy = dist(x, y);
      if (dxy == kUnreachable || dxy < 2) continue;
      for (Vertex v = 0; v < n_; ++v) {
        if (hull.contains(v)) continue;
        const std::uint32_t a = dist(x, v);
        const std::uint32_t b = dist(v, y);
        if (a != kUnreachable && b != kUnreachable && a + b == dxy) {
          hull.insert(v);
          pending.push_back(v);
        }
      }
    }
    processed.push_back(x);
  }
  return hull;
}

ValueSet geodesic_hull(const Graph& g, const ValueSet& s) {
  return GeodesicHull(std::make_shared<const Graph>(g))(s);
}

bool is_ptolemaic(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kPtolemaicCap) {
    throw CapacityError("Ptolemaic check limited to " + std::to_string(kPtolemaicCap) + " vertices");
  }
  if (!is_chordal(g)) return false;
  std::vector<std::vector<std::uint32_t>> full(n);
  for (Vertex u = 0; u < n; ++u) full[u] = distances_from(g, u);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    ValueSet subset(n);
    for (Vertex v = 0; v < n; ++v) {
      if ((mask >> v) & 1u) subset.insert(v);
    }
    if (!is_connected_induced(g, subset)) continue;
    bool ok = true;
    subset.for_each([&](Value u) {
      if (!ok) return;
      const auto d = distances_within(g, subset, u);
      subset.for_each([&](Value v) { ok = ok && d[v] == full[u][v]; });
    });
    if (!ok) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool next_content_line(std::istream& in, std::istringstream& out) {
  std::string line;
  while (std::getline(in, line)) {
    line = strip_comment(line);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.clear();
    out.str(line);
    return true;
  }
  return false;
}

}  // namespace

Graph parse_graph(std::istream& in) {
  std::istringstream line;
  if (!next_content_line(in, line)) throw InputError("graph file: missing header line");
  long long n = -1;
  long long m = -1;
  if (!(line >> n >> m) || n < 0 || m < 0) throw InputError("graph file: header must be 'N M'");
  std::string extra;
  if (line >> extra) throw InputError("graph file: trailing tokens in header");
  std::vector<Edge> edges;
  for (long long i = 0; i < m; ++i) {
    if (!next_content_line(in, line)) throw InputError("graph file: expected " + std::to_string(m) + " edges");
    long long u = -1;
    long long v = -1;
    if (!(line >> u >> v) || u < 0 || v < 0) throw InputError("graph file: edge line must be 'u v'");
    if (line >> extra) throw InputError("graph file: trailing tokens on edge line");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (next_content_line(in, line)) throw InputError("graph file: content after the last edge");
  return Graph(static_cast<std::size_t>(n), edges);
}

Graph parse_graph_text(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InputError("cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (Vertex i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(static_cast<Vertex>(n - 1), 0);
  return Graph(n, e);
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return Graph(n, e);
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> e;
  for (Vertex i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph(leaves + 1, e);
}

}  // namespace cvxagree
