#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fourcolor/color.hpp"

namespace fourcolor {

/// Per-vertex cyclic neighbor order. Entry v lists the neighbors of v
/// counter-clockwise.
using Rotations = std::vector<std::vector<VertexId>>;

using Edge = std::pair<VertexId, VertexId>;

class GraphError : public std::runtime_error {
 public:
  enum class Kind {
    OutOfRange,
    SelfLoop,
    ParallelEdge,
    Asymmetric,
    NonPlanar,
    Disconnected,
    Precondition,
    NotAnEdge,
    NotSeparating,
  };

  GraphError(Kind kind, const std::string& what, VertexId vertex = -1)
      : std::runtime_error(what), kind_(kind), vertex_(vertex) {}
  Kind kind() const { return kind_; }
  /// Vertex whose rotation triggered the error, or -1.
  VertexId vertex() const { return vertex_; }

 private:
  Kind kind_;
  VertexId vertex_;
};

/// Facial walk, listed in traversal order.
struct Face {
  std::vector<VertexId> boundary;
  std::size_t size() const { return boundary.size(); }
};

/// Three pairwise adjacent vertices with a < b < c.
struct Triangle {
  VertexId a = 0, b = 0, c = 0;
  bool separating = false;

  bool operator==(const Triangle& o) const { return a == o.a && b == o.b && c == o.c; }
};

/// A simple plane graph stored as a rotation system over dense ids 0..n-1.
///
/// Half-edge (u, i) points from u to rotation(u)[i]. Faces are traced with
/// next(u -> w) = (w -> x) where x precedes u in the rotation of w, so each
/// face lies to the left of its walk. Values are immutable once built.
class RotationGraph {
 public:
  RotationGraph() = default;

  /// Validates and builds. Throws GraphError on out-of-range ids, loops,
  /// repeated neighbors, asymmetric rotations, or an embedding whose face
  /// count violates Euler's formula for every component.
  static RotationGraph build(Rotations rotations) {
    RotationGraph g;
    g.rot_ = std::move(rotations);
    g.index();
    g.trace_faces();
    g.check_euler();
    return g;
  }

  std::size_t vertex_count() const { return rot_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::size_t face_count() const { return faces_.size(); }

  std::span<const VertexId> rotation(VertexId v) const { return rot_[idx(v)]; }
  const Rotations& rotations() const { return rot_; }
  std::size_t degree(VertexId v) const { return rot_[idx(v)].size(); }

  /// Neighbors of v in ascending id order.
  std::span<const VertexId> sorted_neighbors(VertexId v) const {
    return {sorted_.data() + offset_[idx(v)], degree(v)};
  }

  bool adjacent(VertexId u, VertexId w) const { return position(u, w).has_value(); }

  /// Index of w in rotation(u).
  std::optional<std::size_t> position(VertexId u, VertexId w) const {
    auto nb = sorted_neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), w);
    if (it == nb.end() || *it != w) return std::nullopt;
    return sorted_pos_[offset_[idx(u)] + static_cast<std::size_t>(it - nb.begin())];
  }

  /// Flat half-edge index of (u, i).
  std::size_t half_edge(VertexId u, std::size_t i) const { return offset_[idx(u)] + i; }

  /// Face containing the half-edge u -> w.
  std::size_t face_of(VertexId u, VertexId w) const {
    auto p = position(u, w);
    if (!p) throw GraphError(GraphError::Kind::NotAnEdge, edge_name(u, w) + " is not an edge");
    return face_id_[half_edge(u, *p)];
  }

  const std::vector<Face>& faces() const { return faces_; }

  /// Edges u < w in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (VertexId u = 0; u < static_cast<VertexId>(rot_.size()); ++u)
      for (VertexId w : sorted_neighbors(u))
        if (u < w) out.emplace_back(u, w);
    return out;
  }

  std::size_t component_count() const { return components_; }
  bool is_connected() const { return components_ <= 1; }

  /// Every face a triangle and E = 3V - 6.
  bool is_maximal() const {
    return vertex_count() >= 3 && is_connected() && edge_count_ == 3 * vertex_count() - 6;
  }

  VertexId min_degree_vertex() const {
    VertexId best = 0;
    for (VertexId v = 1; v < static_cast<VertexId>(rot_.size()); ++v)
      if (degree(v) < degree(best)) best = v;
    return best;
  }

  /// True when the 3-cycle a,b,c bounds a face.
  bool is_facial_triangle(VertexId a, VertexId b, VertexId c) const {
    for (auto [x, y, z] : {std::array{a, b, c}, std::array{b, a, c}}) {
      const Face& f = faces_[face_of(x, y)];
      if (f.size() == 3 && std::find(f.boundary.begin(), f.boundary.end(), z) != f.boundary.end())
        return true;
    }
    return false;
  }

  static std::string edge_name(VertexId u, VertexId w) {
    return "{" + std::to_string(u) + "," + std::to_string(w) + "}";
  }

 private:
  static std::size_t idx(VertexId v) { return static_cast<std::size_t>(v); }

  void index() {
    const auto n = static_cast<VertexId>(rot_.size());
    offset_.assign(rot_.size() + 1, 0);
    for (std::size_t v = 0; v < rot_.size(); ++v) offset_[v + 1] = offset_[v] + rot_[v].size();
    sorted_.resize(offset_.back());
    sorted_pos_.resize(offset_.back());
    std::vector<std::pair<VertexId, std::size_t>> tmp;
    for (VertexId v = 0; v < n; ++v) {
      const auto& r = rot_[idx(v)];
      tmp.clear();
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] < 0 || r[i] >= n)
          throw GraphError(GraphError::Kind::OutOfRange, "vertex " + std::to_string(v) +
                                                             " lists neighbor " + std::to_string(r[i]) +
                                                             " outside 0.." + std::to_string(n - 1),
                           v);
        if (r[i] == v)
          throw GraphError(GraphError::Kind::SelfLoop, "vertex " + std::to_string(v) + " has a self-loop", v);
        tmp.emplace_back(r[i], i);
      }
      std::sort(tmp.begin(), tmp.end());
      for (std::size_t i = 0; i < tmp.size(); ++i) {
        if (i > 0 && tmp[i].first == tmp[i - 1].first)
          throw GraphError(GraphError::Kind::ParallelEdge, "vertex " + std::to_string(v) + " lists neighbor " +
                                                               std::to_string(tmp[i].first) + " twice", v);
        sorted_[offset_[idx(v)] + i] = tmp[i].first;
        sorted_pos_[offset_[idx(v)] + i] = tmp[i].second;
      }
    }
    for (VertexId v = 0; v < n; ++v)
      for (VertexId w : rot_[idx(v)])
        if (!adjacent(w, v))
          throw GraphError(GraphError::Kind::Asymmetric, "rotation of vertex " + std::to_string(v) + " lists " +
                                                             std::to_string(w) + " but rotation of " +
                                                             std::to_string(w) + " lacks " + std::to_string(v), v);
    edge_count_ = offset_.back() / 2;
  }

  void trace_faces() {
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    face_id_.assign(offset_.back(), kUnset);
    twin_.resize(offset_.back());
    for (VertexId u = 0; u < static_cast<VertexId>(rot_.size()); ++u)
      for (std::size_t i = 0; i < rot_[idx(u)].size(); ++i)
        twin_[half_edge(u, i)] = *position(rot_[idx(u)][i], u);
    for (VertexId u = 0; u < static_cast<VertexId>(rot_.size()); ++u) {
      for (std::size_t i = 0; i < rot_[idx(u)].size(); ++i) {
        if (face_id_[half_edge(u, i)] != kUnset) continue;
        Face f;
        const std::size_t id = faces_.size();
        VertexId x = u;
        std::size_t k = i;
        while (face_id_[half_edge(x, k)] == kUnset) {
          face_id_[half_edge(x, k)] = id;
          f.boundary.push_back(x);
          const VertexId y = rot_[idx(x)][k];
          const std::size_t back = twin_[half_edge(x, k)];
          const std::size_t dy = rot_[idx(y)].size();
          k = (back + dy - 1) % dy;
          x = y;
        }
        faces_.push_back(std::move(f));
      }
    }
  }

  void check_euler() {
    const std::size_t n = rot_.size();
    std::vector<VertexId> comp(n, -1);
    std::vector<VertexId> stack;
    std::size_t isolated = 0;
    components_ = 0;
    for (VertexId s = 0; s < static_cast<VertexId>(n); ++s) {
      if (comp[idx(s)] != -1) continue;
      if (rot_[idx(s)].empty()) ++isolated;
      comp[idx(s)] = static_cast<VertexId>(components_);
      stack.push_back(s);
      while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        for (VertexId y : rot_[idx(x)])
          if (comp[idx(y)] == -1) {
            comp[idx(y)] = static_cast<VertexId>(components_);
            stack.push_back(y);
          }
      }
      ++components_;
    }
    // Each component, isolated vertices included, satisfies V - E + F = 2.
    const auto lhs = static_cast<long long>(n) - static_cast<long long>(edge_count_) +
                     static_cast<long long>(faces_.size() + isolated);
    if (lhs != 2 * static_cast<long long>(components_))
      throw GraphError(GraphError::Kind::NonPlanar,
                       "rotation system is not a plane embedding: V - E + F = " + std::to_string(lhs) +
                           " but " + std::to_string(2 * components_) + " expected for " +
                           std::to_string(components_) + " component(s)");
  }

  Rotations rot_;
  std::vector<std::size_t> offset_;
  std::vector<VertexId> sorted_;
  std::vector<std::size_t> sorted_pos_;
  std::vector<std::size_t> twin_;
  std::vector<std::size_t> face_id_;
  std::vector<Face> faces_;
  std::size_t edge_count_ = 0;
  std::size_t components_ = 0;
};

inline RotationGraph build(Rotations rotations) { return RotationGraph::build(std::move(rotations)); }

inline std::vector<Face> faces(const RotationGraph& g) { return g.faces(); }

namespace detail {

inline std::size_t index_of(const std::vector<VertexId>& r, VertexId w) {
  auto it = std::find(r.begin(), r.end(), w);
  if (it == r.end()) throw std::logic_error("rotation lookup failed");
  return static_cast<std::size_t>(it - r.begin());
}

/// Puts w into the rotation of u right after `u_out`, i.e. into the face
/// corner at u whose walk leaves u towards `u_out`. Only u's side is updated.
inline void insert_in_corner(Rotations& rot, VertexId u, VertexId u_out, VertexId w) {
  auto& r = rot[static_cast<std::size_t>(u)];
  if (r.empty()) {
    r.push_back(w);
    return;
  }
  const std::size_t p = index_of(r, u_out);
  r.insert(r.begin() + static_cast<std::ptrdiff_t>(p + 1), w);
}

/// Next half-edge target after u -> w on mutable rotations.
inline VertexId face_next(const Rotations& rot, VertexId u, VertexId w) {
  const auto& rw = rot[static_cast<std::size_t>(w)];
  const std::size_t p = index_of(rw, u);
  return rw[(p + rw.size() - 1) % rw.size()];
}

inline bool has_neighbor(const Rotations& rot, VertexId u, VertexId w) {
  const auto& r = rot[static_cast<std::size_t>(u)];
  return std::find(r.begin(), r.end(), w) != r.end();
}

}  // namespace detail

/// Induced subgraph on `vertices` (ascending) with restricted rotations.
struct Subgraph {
  RotationGraph graph;
  std::vector<VertexId> vertices;  ///< local id -> id in the source graph
};

inline Subgraph induced_subgraph(const RotationGraph& g, std::vector<VertexId> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  std::vector<VertexId> local(g.vertex_count(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) local[static_cast<std::size_t>(vertices[i])] = static_cast<VertexId>(i);
  Rotations rot(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (VertexId w : g.rotation(vertices[i]))
      if (local[static_cast<std::size_t>(w)] != -1) rot[i].push_back(local[static_cast<std::size_t>(w)]);
  return {RotationGraph::build(std::move(rot)), std::move(vertices)};
}

/// g - v. Vertex ids above v shift down by one.
inline Subgraph remove_vertex(const RotationGraph& g, VertexId v) {
  std::vector<VertexId> keep;
  keep.reserve(g.vertex_count());
  for (VertexId u = 0; u < static_cast<VertexId>(g.vertex_count()); ++u)
    if (u != v) keep.push_back(u);
  return induced_subgraph(g, std::move(keep));
}

struct Triangulation {
  RotationGraph graph;
  std::vector<Edge> added_edges;  ///< each with first < second
};

/// Adds edges until every face, the outer one included, is a triangle.
///
/// Each face walk is fanned from its smallest boundary vertex: the chord
/// joining the two walk neighbors-of-neighbor is added whenever it is new and
/// not a loop; otherwise the next boundary vertex (by id, then position) is
/// tried. Original vertices and edges are kept.
inline Triangulation triangulate(const RotationGraph& g) {
  if (g.vertex_count() < 3)
    throw GraphError(GraphError::Kind::Precondition, "triangulate needs at least 3 vertices");
  if (!g.is_connected())
    throw GraphError(GraphError::Kind::Disconnected, "triangulate needs a connected graph");
  if (g.is_maximal()) return {g, {}};

  Rotations rot = g.rotations();
  std::vector<Edge> added;
  for (const Face& face : g.faces()) {
    std::vector<VertexId> walk = face.boundary;
    while (walk.size() > 3) {
      const std::size_t len = walk.size();
      std::vector<std::size_t> order(len);
      for (std::size_t i = 0; i < len; ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t x, std::size_t y) { return walk[x] < walk[y]; });
      bool done = false;
      for (std::size_t i : order) {
        const VertexId a = walk[i], mid = walk[(i + 1) % len], b = walk[(i + 2) % len];
        if (a == b || detail::has_neighbor(rot, a, b)) continue;
        // Corner at a: left towards mid. Corner at b: left towards walk[i+3].
        detail::insert_in_corner(rot, a, mid, b);
        detail::insert_in_corner(rot, b, walk[(i + 3) % len], a);
        added.emplace_back(std::min(a, b), std::max(a, b));
        walk.erase(walk.begin() + static_cast<std::ptrdiff_t>((i + 1) % len));
        done = true;
        break;
      }
      if (!done) throw std::logic_error("triangulate: no admissible chord in a face of length " + std::to_string(len));
    }
  }
  RotationGraph out = RotationGraph::build(std::move(rot));
  if (!out.is_maximal()) throw std::logic_error("triangulate: result is not maximal");
  return {std::move(out), std::move(added)};
}

struct Contraction {
  RotationGraph graph;
  std::vector<VertexId> merge_map;  ///< source id -> id in the contracted graph
};

/// Contracts edge uw into u. w's rotation is spliced into u's at the
/// position of w; an edge wx duplicating ux is dropped at both ends.
inline Contraction contract_edge(const RotationGraph& g, VertexId u, VertexId w) {
  const auto n = static_cast<VertexId>(g.vertex_count());
  if (u < 0 || w < 0 || u >= n || w >= n || !g.adjacent(u, w))
    throw GraphError(GraphError::Kind::NotAnEdge, RotationGraph::edge_name(u, w) + " is not an edge");

  Rotations rot = g.rotations();
  auto& ru = rot[static_cast<std::size_t>(u)];
  const auto& rw = g.rotation(w);
  const std::size_t q = *g.position(w, u);
  std::vector<VertexId> splice;
  for (std::size_t k = 1; k < rw.size(); ++k) {
    const VertexId x = rw[(q + k) % rw.size()];
    auto& rx = rot[static_cast<std::size_t>(x)];
    if (g.adjacent(u, x)) {
      rx.erase(rx.begin() + static_cast<std::ptrdiff_t>(detail::index_of(rx, w)));
    } else {
      rx[detail::index_of(rx, w)] = u;
      splice.push_back(x);
    }
  }
  const std::size_t p = detail::index_of(ru, w);
  ru.erase(ru.begin() + static_cast<std::ptrdiff_t>(p));
  ru.insert(ru.begin() + static_cast<std::ptrdiff_t>(p), splice.begin(), splice.end());
  rot[static_cast<std::size_t>(w)].clear();

  std::vector<VertexId> merge(static_cast<std::size_t>(n));
  for (VertexId x = 0; x < n; ++x) merge[static_cast<std::size_t>(x)] = x < w ? x : x - 1;
  merge[static_cast<std::size_t>(w)] = merge[static_cast<std::size_t>(u)];
  Rotations out;
  out.reserve(rot.size() - 1);
  for (VertexId x = 0; x < n; ++x) {
    if (x == w) continue;
    auto r = std::move(rot[static_cast<std::size_t>(x)]);
    for (VertexId& y : r) y = merge[static_cast<std::size_t>(y)];
    out.push_back(std::move(r));
  }
  return {RotationGraph::build(std::move(out)), std::move(merge)};
}

/// Lexicographically smallest 3-cycle that does not bound a face.
inline std::optional<Triangle> find_separating_triangle(const RotationGraph& g) {
  const auto n = static_cast<VertexId>(g.vertex_count());
  std::vector<VertexId> mark(static_cast<std::size_t>(n), -1);
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId x : g.sorted_neighbors(a)) mark[static_cast<std::size_t>(x)] = a;
    for (VertexId b : g.sorted_neighbors(a)) {
      if (b <= a) continue;
      for (VertexId c : g.sorted_neighbors(b)) {
        if (c <= b || mark[static_cast<std::size_t>(c)] != a) continue;
        if (!g.is_facial_triangle(a, b, c)) return Triangle{a, b, c, true};
      }
    }
  }
  return std::nullopt;
}

/// Both sides of a separating triangle, each including the triangle.
struct TriangleSplit {
  Subgraph inner;
  Subgraph outer;
};

/// `inner` is the side entered from vertex a between b and c going
/// counter-clockwise around a; `outer` is the rest.
inline TriangleSplit split_on_triangle(const RotationGraph& g, Triangle t) {
  auto valid = [&] {
    return t.a != t.b && t.b != t.c && t.a != t.c && g.adjacent(t.a, t.b) && g.adjacent(t.b, t.c) &&
           g.adjacent(t.a, t.c);
  };
  if (!valid()) throw GraphError(GraphError::Kind::Precondition, "split_on_triangle: not a triangle");
  if (g.is_facial_triangle(t.a, t.b, t.c))
    throw GraphError(GraphError::Kind::NotSeparating, "triangle is a face, not separating");

  const std::size_t n = g.vertex_count();
  std::vector<char> side(n, 0);  // 1 = inner, 2 = outer, 3 = triangle
  for (VertexId x : {t.a, t.b, t.c}) side[static_cast<std::size_t>(x)] = 3;

  auto flood = [&](std::vector<VertexId> seeds) {
    std::vector<VertexId> stack;
    for (VertexId s : seeds)
      if (side[static_cast<std::size_t>(s)] == 0) {
        side[static_cast<std::size_t>(s)] = 1;
        stack.push_back(s);
      }
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      for (VertexId y : g.rotation(x))
        if (side[static_cast<std::size_t>(y)] == 0) {
          side[static_cast<std::size_t>(y)] = 1;
          stack.push_back(y);
        }
    }
  };
  auto arc = [&](VertexId from, VertexId to) {
    const auto r = g.rotation(t.a);
    std::vector<VertexId> out;
    std::size_t i = *g.position(t.a, from);
    for (i = (i + 1) % r.size(); r[i] != to; i = (i + 1) % r.size()) out.push_back(r[i]);
    return out;
  };

  auto seeds = arc(t.b, t.c);
  if (!seeds.empty()) {
    flood(seeds);
  } else {
    flood(arc(t.c, t.b));
    for (char& s : side) s = s == 1 ? 2 : (s == 0 ? 1 : s);
  }
  std::vector<VertexId> in, out;
  for (VertexId x = 0; x < static_cast<VertexId>(n); ++x) {
    const char s = side[static_cast<std::size_t>(x)];
    if (s == 1 || s == 3) in.push_back(x);
    if (s != 1) out.push_back(x);
  }
  if (in.size() <= 3 || out.size() <= 3)
    throw GraphError(GraphError::Kind::NotSeparating, "triangle does not separate the vertex set");
  return {induced_subgraph(g, std::move(in)), induced_subgraph(g, std::move(out))};
}

}  // namespace fourcolor
