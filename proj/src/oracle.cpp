#include "cvxagree/oracle.hpp"

#include <bit>
#include <deque>

#include "cvxagree/error.hpp"

namespace cvxagree::oracle {

namespace {

// ---- monophonic: plain enumeration of induced paths ----

void walk_induced(const Graph& g, std::vector<Vertex>& path, std::vector<bool>& on_path, Vertex target,
                  ValueSet& hit) {
  const Vertex last = path.back();
  if (last == target) {
    for (Vertex p : path) hit.insert(p);
    return;
  }
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    if (on_path[x] || !g.adjacent(last, x)) continue;
    bool chord = false;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      if (g.adjacent(path[k], x)) {
        chord = true;
        break;
      }
    }
    if (chord) continue;
    on_path[x] = true;
    path.push_back(x);
    walk_induced(g, path, on_path, target, hit);
    path.pop_back();
    on_path[x] = false;
  }
}

ValueSet monophonic_by_enumeration(const Graph& g, const ValueSet& s) {
  const std::size_t n = g.vertex_count();
  ValueSet h = s;
  for (bool grew = true; grew;) {
    grew = false;
    const auto members = h.to_vector();
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        ValueSet hit(n);
        std::vector<Vertex> path{members[i]};
        std::vector<bool> on_path(n, false);
        on_path[members[i]] = true;
        walk_induced(g, path, on_path, members[j], hit);
        if (!hit.is_subset_of(h)) {
          h |= hit;
          grew = true;
        }
      }
    }
  }
  return h;
}

// ---- monophonic: component witnesses ----

// Interior of a shortest x-y path whose interior lies in `comp`.
std::vector<Vertex> path_through(const Graph& g, const std::vector<bool>& comp, Vertex x, Vertex y) {
  const std::size_t n = g.vertex_count();
  std::vector<std::int64_t> prev(n, -1);
  std::vector<bool> seen(n, false);
  std::deque<Vertex> q{x};
  seen[x] = true;
  while (!q.empty()) {
    const Vertex u = q.front();
    q.pop_front();
    for (Vertex w : g.neighbors(u)) {
      if (seen[w]) continue;
      if (w == y && u != x) {
        std::vector<Vertex> out;
        for (std::int64_t c = u; c != static_cast<std::int64_t>(x); c = prev[static_cast<std::size_t>(c)]) {
          out.push_back(static_cast<Vertex>(c));
        }
        return out;
      }
      if (!comp[w]) continue;
      seen[w] = true;
      prev[w] = u;
      q.push_back(w);
    }
  }
  return {};
}

ValueSet monophonic_by_components(const Graph& g, const ValueSet& s) {
  const std::size_t n = g.vertex_count();
  ValueSet h = s;
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<bool> done(n, false);
    for (Vertex start = 0; start < n && !grew; ++start) {
      if (h.contains(start) || done[start]) continue;
      std::vector<bool> comp(n, false);
      std::vector<Vertex> members{start};
      comp[start] = done[start] = true;
      std::vector<Vertex> attach;
      std::vector<bool> attached(n, false);
      for (std::size_t k = 0; k < members.size(); ++k) {
        for (Vertex w : g.neighbors(members[k])) {
          if (h.contains(w)) {
            if (!attached[w]) {
              attached[w] = true;
              attach.push_back(w);
            }
          } else if (!comp[w]) {
            comp[w] = done[w] = true;
            members.push_back(w);
          }
        }
      }
      for (std::size_t a = 0; a < attach.size() && !grew; ++a) {
        for (std::size_t b = a + 1; b < attach.size() && !grew; ++b) {
          if (g.adjacent(attach[a], attach[b])) continue;
          for (Vertex v : path_through(g, comp, attach[a], attach[b])) h.insert(v);
          grew = true;
        }
      }
    }
  }
  return h;
}

// ---- geodesic ----

std::vector<std::uint32_t> bfs(const Graph& g, Vertex src) {
  std::vector<std::uint32_t> d(g.vertex_count(), std::numeric_limits<std::uint32_t>::max());
  std::deque<Vertex> q{src};
  d[src] = 0;
  while (!q.empty()) {
    const Vertex u = q.front();
    q.pop_front();
    for (Vertex w : g.neighbors(u)) {
      if (d[w] == std::numeric_limits<std::uint32_t>::max()) {
        d[w] = d[u] + 1;
        q.push_back(w);
      }
    }
  }
  return d;
}

ValueSet geodesic_by_intervals(const Graph& g, const ValueSet& s) {
  const std::size_t n = g.vertex_count();
  constexpr auto inf = std::numeric_limits<std::uint32_t>::max();
  ValueSet h = s;
  for (bool grew = true; grew;) {
    grew = false;
    const auto members = h.to_vector();
    std::vector<std::vector<std::uint32_t>> dist;
    dist.reserve(members.size());
    for (Vertex m : members) dist.push_back(bfs(g, m));
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const std::uint32_t duw = dist[i][members[j]];
        if (duw == inf) continue;
        for (Vertex v = 0; v < n; ++v) {
          if (dist[i][v] != inf && dist[j][v] != inf && dist[i][v] + dist[j][v] == duw && !h.contains(v)) {
            h.insert(v);
            grew = true;
          }
        }
      }
    }
  }
  return h;
}

// ---- algebraic ----

ValueSet join_fixpoint(const Semilattice& l, const ValueSet& s) {
  ValueSet h = s;
  for (bool grew = true; grew;) {
    grew = false;
    const auto members = h.to_vector();
    for (Value u : members) {
      for (Value v : members) {
        const Value j = l.join(u, v);
        if (!h.contains(j)) {
          h.insert(j);
          grew = true;
        }
      }
    }
  }
  return h;
}

std::uint64_t to_mask(const ValueSet& s) {
  std::uint64_t m = 0;
  s.for_each([&](Value v) { m |= std::uint64_t{1} << v; });
  return m;
}

// Every vertex on some induced u-v path, for all pairs, as bitmasks.
std::vector<std::uint64_t> induced_intervals(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint64_t> iv(n * n, 0);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u; v < n; ++v) {
      ValueSet hit(n);
      std::vector<Vertex> path{u};
      std::vector<bool> on_path(n, false);
      on_path[u] = true;
      walk_induced(g, path, on_path, v, hit);
      iv[u * n + v] = iv[v * n + u] = to_mask(hit) | (std::uint64_t{1} << u);
    }
  }
  return iv;
}

std::vector<std::uint64_t> mask_table(const ConvexitySpace& space) {
  const std::size_t n = space.size();
  if (n > kInvariantCap) {
    throw CapacityError("oracle invariants limited to " + std::to_string(kInvariantCap) + " elements");
  }
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<std::uint64_t> t(subsets);
  if (space.kind() == HullKind::MonophonicGraph) {
    // Same fixpoint as monophonic_by_enumeration, with the paths enumerated once.
    const auto iv = induced_intervals(space.graph());
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      std::uint64_t h = mask;
      for (std::uint64_t prev = ~h; prev != h;) {
        prev = h;
        for (std::uint64_t a = h; a != 0; a &= a - 1) {
          const auto u = static_cast<std::size_t>(std::countr_zero(a));
          for (std::uint64_t b = a & (a - 1); b != 0; b &= b - 1) h |= iv[u * n + static_cast<std::size_t>(std::countr_zero(b))];
        }
      }
      t[mask] = h;
    }
    return t;
  }
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    ValueSet s(n);
    for (std::size_t v = 0; v < n; ++v) {
      if ((mask >> v) & 1u) s.insert(static_cast<Value>(v));
    }
    t[mask] = to_mask(hull(space, s));
  }
  return t;
}

}  // namespace

ValueSet hull(const ConvexitySpace& space, const ValueSet& s) {
  if (s.universe() != space.size()) throw InputError("oracle hull: set over a different ground set");
  if (s.empty()) return s;
  switch (space.kind()) {
    case HullKind::MonophonicGraph: {
      const Graph& g = space.graph();
      if (g.vertex_count() > kGraphCap) throw CapacityError("oracle hull: graph too large");
      return g.vertex_count() <= kPathEnumerationCap ? monophonic_by_enumeration(g, s)
                                                     : monophonic_by_components(g, s);
    }
    case HullKind::GeodesicGraph:
      if (space.size() > kGraphCap) throw CapacityError("oracle hull: graph too large");
      return geodesic_by_intervals(space.graph(), s);
    case HullKind::AlgebraicSemilattice:
      return join_fixpoint(space.semilattice(), s);
  }
  throw InputError("oracle hull: unknown hull kind");
}

std::vector<ValueSet> hull_table(const ConvexitySpace& space) {
  const auto masks = mask_table(space);
  std::vector<ValueSet> out;
  out.reserve(masks.size());
  for (std::uint64_t m : masks) {
    ValueSet s(space.size());
    for (std::size_t v = 0; v < space.size(); ++v) {
      if ((m >> v) & 1u) s.insert(static_cast<Value>(v));
    }
    out.push_back(std::move(s));
  }
  return out;
}

Invariants invariants(const ConvexitySpace& space) {
  const std::size_t n = space.size();
  const auto t = mask_table(space);
  const std::size_t subsets = t.size();
  const std::uint64_t all = subsets - 1;
  Invariants inv;

  for (std::size_t a = 1; a < subsets; ++a) {
    std::uint64_t common = all;
    for (std::uint64_t bits = a; bits != 0; bits &= bits - 1) {
      common &= t[a & ~(std::uint64_t{1} << std::countr_zero(bits))];
    }
    if (common == 0) inv.helly = std::max<std::size_t>(inv.helly, static_cast<std::size_t>(std::popcount(a)));
  }

  // reach[U] = union of hull(S) over S within U, |S| <= c.
  std::vector<std::uint64_t> reach(subsets, 0);
  for (std::size_t c = 0; c <= n; ++c) {
    bool covered = true;
    for (std::size_t u = 0; u < subsets; ++u) {
      std::uint64_t r = static_cast<std::size_t>(std::popcount(u)) <= c ? t[u] : 0;
      for (std::uint64_t bits = u; bits != 0; bits &= bits - 1) {
        r |= reach[u & ~(std::uint64_t{1} << std::countr_zero(bits))];
      }
      reach[u] = r;
      if (r != t[u]) covered = false;
    }
    if (covered) {
      inv.caratheodory = c;
      break;
    }
  }

  inv.convex_geometry = true;
  for (std::size_t k = 0; k < subsets && inv.convex_geometry; ++k) {
    if (t[k] != k) continue;
    std::uint64_t ex = 0;
    for (std::uint64_t bits = k; bits != 0; bits &= bits - 1) {
      const std::uint64_t bit = std::uint64_t{1} << std::countr_zero(bits);
      if ((t[k & ~bit] & bit) == 0) ex |= bit;
    }
    if (t[ex] != k) inv.convex_geometry = false;
  }
  return inv;
}

std::size_t helly_by_families(const ConvexitySpace& space, std::size_t max_convex_sets) {
  const auto t = mask_table(space);
  std::vector<std::uint64_t> convex;
  for (std::size_t k = 1; k < t.size(); ++k) {
    if (t[k] == k) convex.push_back(k);
  }
  if (convex.size() > max_convex_sets) return 0;
  const std::size_t families = std::size_t{1} << convex.size();
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::uint64_t> inter(families);
  // smallest subfamily with empty intersection, kInf if none
  std::vector<std::size_t> smallest_bad(families, kInf);
  inter[0] = t.size() - 1;
  std::size_t helly = 1;
  for (std::size_t fam = 1; fam < families; ++fam) {
    const int low = std::countr_zero(fam);
    inter[fam] = inter[fam & (fam - 1)] & convex[static_cast<std::size_t>(low)];
    if (inter[fam] != 0) continue;
    std::size_t best = static_cast<std::size_t>(std::popcount(fam));
    for (std::size_t bits = fam; bits != 0; bits &= bits - 1) {
      best = std::min(best, smallest_bad[fam & ~(std::size_t{1} << std::countr_zero(bits))]);
    }
    smallest_bad[fam] = best;
    // fam is (best-1)-intersecting with empty intersection, so helly >= best.
    helly = std::max(helly, best);
  }
  return helly;
}

}  // namespace cvxagree::oracle
