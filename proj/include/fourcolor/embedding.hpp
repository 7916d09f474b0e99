#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "fourcolor/plane_graph.hpp"

namespace fourcolor {

inline constexpr std::size_t kMaxEmbedSearchVertices = 10;

namespace detail {

struct Corner {
  VertexId vertex;
  VertexId out;  // outgoing neighbor; the corner lies right after it
};

/// Facial walks of a partial embedding, as corner lists. Vertices of
/// degree 0 are skipped.
inline std::vector<std::vector<Corner>> corner_faces(const Rotations& rot) {
  std::vector<std::vector<Corner>> out;
  std::vector<std::vector<char>> seen(rot.size());
  for (std::size_t v = 0; v < rot.size(); ++v) seen[v].assign(rot[v].size(), 0);
  for (std::size_t v = 0; v < rot.size(); ++v) {
    for (std::size_t i = 0; i < rot[v].size(); ++i) {
      if (seen[v][i]) continue;
      std::vector<Corner> face;
      auto x = static_cast<VertexId>(v);
      std::size_t k = i;
      while (!seen[static_cast<std::size_t>(x)][k]) {
        seen[static_cast<std::size_t>(x)][k] = 1;
        const VertexId y = rot[static_cast<std::size_t>(x)][k];
        face.push_back({x, y});
        const auto& ry = rot[static_cast<std::size_t>(y)];
        k = (index_of(ry, x) + ry.size() - 1) % ry.size();
        x = y;
      }
      out.push_back(std::move(face));
    }
  }
  return out;
}

class EmbeddingSearch {
 public:
  EmbeddingSearch(std::size_t n, std::vector<Edge> order) : order_(std::move(order)), placed_(n, 0) {}

  std::optional<Rotations> run(Rotations rot, VertexId root) {
    placed_[static_cast<std::size_t>(root)] = 1;
    if (dfs(rot, 0)) return rot;
    return std::nullopt;
  }

 private:
  bool dfs(Rotations& rot, std::size_t k) {
    if (k == order_.size()) return true;
    auto [x, y] = order_[k];
    if (!placed_[static_cast<std::size_t>(x)]) std::swap(x, y);
    const auto& rx = rot[static_cast<std::size_t>(x)];
    if (!placed_[static_cast<std::size_t>(y)]) {
      placed_[static_cast<std::size_t>(y)] = 1;
      const std::size_t options = std::max<std::size_t>(rx.size(), 1);
      for (std::size_t i = 0; i < options; ++i) {
        Rotations next = rot;
        if (rx.empty())
          next[static_cast<std::size_t>(x)].push_back(y);
        else
          insert_in_corner(next, x, rx[i], y);
        next[static_cast<std::size_t>(y)].push_back(x);
        if (dfs(next, k + 1)) {
          rot = std::move(next);
          return true;
        }
      }
      placed_[static_cast<std::size_t>(y)] = 0;
      return false;
    }
    for (const auto& face : corner_faces(rot)) {
      for (const Corner& cx : face) {
        if (cx.vertex != x) continue;
        for (const Corner& cy : face) {
          if (cy.vertex != y) continue;
          Rotations next = rot;
          insert_in_corner(next, x, cx.out, y);
          insert_in_corner(next, y, cy.out, x);
          if (dfs(next, k + 1)) {
            rot = std::move(next);
            return true;
          }
        }
      }
    }
    return false;
  }

  std::vector<Edge> order_;
  std::vector<char> placed_;
};

}  // namespace detail

/// Finds a plane embedding of an abstract simple graph by exhaustive search
/// over face placements, one connected component at a time. Returns
/// nullopt when the graph is not planar. Intended for tiny graphs only;
/// throws GraphError::Precondition above `max_vertices`.
inline std::optional<RotationGraph> embed_edge_list(std::size_t n, const std::vector<Edge>& edges,
                                                    std::size_t max_vertices = kMaxEmbedSearchVertices) {
  if (n > max_vertices)
    throw GraphError(GraphError::Kind::Precondition,
                     "edge-list embedding search is limited to " + std::to_string(max_vertices) +
                         " vertices; supply a rotation file instead");
  std::vector<std::vector<VertexId>> adj(n);
  for (auto [u, w] : edges) {
    if (u < 0 || w < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(w) >= n)
      throw GraphError(GraphError::Kind::OutOfRange, "edge " + RotationGraph::edge_name(u, w) + " out of range");
    if (u == w) throw GraphError(GraphError::Kind::SelfLoop, "self-loop at vertex " + std::to_string(u));
    adj[static_cast<std::size_t>(u)].push_back(w);
    adj[static_cast<std::size_t>(w)].push_back(u);
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto& a = adj[v];
    std::sort(a.begin(), a.end());
    if (std::adjacent_find(a.begin(), a.end()) != a.end())
      throw GraphError(GraphError::Kind::ParallelEdge, "repeated edge at vertex " + std::to_string(v));
  }
  if (n >= 3 && edges.size() > 3 * n - 6) return std::nullopt;

  Rotations rot(n);
  std::vector<char> seen(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    // BFS edge order keeps the embedded part connected.
    std::vector<Edge> order;
    std::vector<VertexId> comp;
    std::queue<VertexId> q;
    q.push(static_cast<VertexId>(s));
    seen[s] = 1;
    while (!q.empty()) {
      const VertexId x = q.front();
      q.pop();
      comp.push_back(x);
      for (VertexId y : adj[static_cast<std::size_t>(x)]) {
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = 1;
          q.push(y);
        }
        // Emitted once, from whichever endpoint is dequeued first.
        if (std::find(comp.begin(), comp.end(), y) == comp.end()) order.emplace_back(x, y);
      }
    }
    Rotations local(n);
    detail::EmbeddingSearch search(n, std::move(order));
    auto found = search.run(std::move(local), static_cast<VertexId>(s));
    if (!found) return std::nullopt;
    for (VertexId x : comp) rot[static_cast<std::size_t>(x)] = std::move((*found)[static_cast<std::size_t>(x)]);
  }
  return RotationGraph::build(std::move(rot));
}

}  // namespace fourcolor
