#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fourcolor/color.hpp"
#include "fourcolor/plane_graph.hpp"

namespace fourcolor {

inline constexpr std::size_t kDefaultOracleCap = 64;

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VerifierReport {
  bool proper = false;
  std::optional<Edge> violating_edge;
  int colors_used = 0;
};

/// Scans edges in lexicographic order and reports the first monochromatic one.
inline VerifierReport verify(const RotationGraph& g, const Coloring& c) {
  if (c.size() != g.vertex_count())
    throw std::invalid_argument("coloring covers " + std::to_string(c.size()) + " vertices, graph has " +
                                std::to_string(g.vertex_count()));
  for (VertexId v = 0; v < static_cast<VertexId>(c.size()); ++v)
    if (c[v] < 1 || c[v] > kMaxColor)
      throw std::invalid_argument("vertex " + std::to_string(v) + " is uncolored or has color " +
                                  std::to_string(c[v]) + " outside 1.." + std::to_string(kMaxColor));
  VerifierReport r;
  r.colors_used = c.colors_used();
  for (VertexId u = 0; u < static_cast<VertexId>(g.vertex_count()) && !r.violating_edge; ++u)
    for (VertexId w : g.sorted_neighbors(u))
      if (u < w && c[u] == c[w]) {
        r.violating_edge = Edge{u, w};
        break;
      }
  r.proper = !r.violating_edge;
  return r;
}

struct ExactOptions {
  std::size_t cap = kDefaultOracleCap;
  /// Optional per-vertex color domain; empty means {1..k} everywhere.
  std::vector<ColorSet> allowed;
};

namespace detail {

/// DSATUR-ordered backtracking with forward checking.
class ExactColorer {
 public:
  ExactColorer(const RotationGraph& g, int k, std::vector<ColorSet> allowed)
      : g_(g), k_(k), n_(g.vertex_count()), color_(n_, kNoColor), blocked_(n_ * (kMaxColor + 1), 0) {
    const ColorSet full = ColorSet::first(k);
    uniform_domains_ = allowed.empty();
    domain_.assign(n_, full);
    if (!allowed.empty())
      for (std::size_t v = 0; v < n_; ++v) domain_[v] = allowed[v] & full;
  }

  std::optional<Coloring> solve() {
    for (std::size_t v = 0; v < n_; ++v)
      if (domain_[v].empty()) return std::nullopt;
    if (!search(0, 0)) return std::nullopt;
    return Coloring(color_);
  }

 private:
  ColorSet available(std::size_t v) const {
    ColorSet s = domain_[v];
    for (Color c : domain_[v].colors())
      if (blocked_[v * (kMaxColor + 1) + static_cast<std::size_t>(c)] > 0) s.erase(c);
    return s;
  }

  int uncolored_degree(std::size_t v) const {
    int d = 0;
    for (VertexId w : g_.rotation(static_cast<VertexId>(v)))
      if (color_[static_cast<std::size_t>(w)] == kNoColor) ++d;
    return d;
  }

  bool search(std::size_t colored, Color max_used) {
    if (colored == n_) return true;
    std::size_t best = n_;
    int best_avail = kMaxColor + 1, best_deg = -1;
    for (std::size_t v = 0; v < n_; ++v) {
      if (color_[v] != kNoColor) continue;
      const int a = available(v).size();
      if (a == 0) return false;
      const int d = uncolored_degree(v);
      if (a < best_avail || (a == best_avail && d > best_deg)) {
        best = v;
        best_avail = a;
        best_deg = d;
      }
    }
    for (Color c : available(best).colors()) {
      // Colors above max_used + 1 are interchangeable with max_used + 1.
      if (uniform_domains_ && c > max_used + 1) break;
      if (assign(best, c)) {
        if (search(colored + 1, std::max(max_used, c))) return true;
      }
      unassign(best, c);
    }
    return false;
  }

  bool assign(std::size_t v, Color c) {
    color_[v] = c;
    bool ok = true;
    for (VertexId w : g_.rotation(static_cast<VertexId>(v))) {
      const auto wi = static_cast<std::size_t>(w);
      ++blocked_[wi * (kMaxColor + 1) + static_cast<std::size_t>(c)];
      if (color_[wi] == kNoColor && available(wi).empty()) ok = false;
    }
    return ok;
  }

  void unassign(std::size_t v, Color c) {
    color_[v] = kNoColor;
    for (VertexId w : g_.rotation(static_cast<VertexId>(v)))
      --blocked_[static_cast<std::size_t>(w) * (kMaxColor + 1) + static_cast<std::size_t>(c)];
  }

  const RotationGraph& g_;
  int k_;
  std::size_t n_;
  std::vector<Color> color_;
  std::vector<int> blocked_;
  std::vector<ColorSet> domain_;
  bool uniform_domains_ = true;
};

}  // namespace detail

/// Exact k-coloring by backtracking. Absence of a result is definitive.
/// Throws OracleError when the graph exceeds `options.cap` vertices.
inline std::optional<Coloring> exact_color(const RotationGraph& g, int k, const ExactOptions& options = {}) {
  if (k < 1 || k > kMaxColor) throw std::invalid_argument("exact_color: k must be in 1..5");
  if (g.vertex_count() > options.cap)
    throw OracleError("exact_color: " + std::to_string(g.vertex_count()) + " vertices exceed the cap of " +
                      std::to_string(options.cap));
  if (!options.allowed.empty() && options.allowed.size() != g.vertex_count())
    throw std::invalid_argument("exact_color: domain list size mismatch");
  return detail::ExactColorer(g, k, options.allowed).solve();
}

/// Vertices of the {a,b} Kempe chain through `start` (which must carry a or b).
inline std::vector<VertexId> kempe_chain(const RotationGraph& g, const Coloring& c, VertexId start, Color a,
                                         Color b) {
  std::vector<VertexId> chain;
  if (c[start] != a && c[start] != b) return chain;
  std::vector<char> seen(g.vertex_count(), 0);
  seen[static_cast<std::size_t>(start)] = 1;
  chain.push_back(start);
  for (std::size_t i = 0; i < chain.size(); ++i)
    for (VertexId w : g.rotation(chain[i])) {
      const Color cw = c[w];
      if (!seen[static_cast<std::size_t>(w)] && (cw == a || cw == b)) {
        seen[static_cast<std::size_t>(w)] = 1;
        chain.push_back(w);
      }
    }
  return chain;
}

/// Swaps colors a and b along the Kempe chain through `start`.
inline void kempe_swap(const RotationGraph& g, Coloring& c, VertexId start, Color a, Color b) {
  for (VertexId v : kempe_chain(g, c, start, a, b)) c[v] = c[v] == a ? b : a;
}

/// Five-coloring by repeated removal of a minimum-degree vertex, with the
/// classical Kempe exchange when a degree-5 vertex sees all five colors.
inline Coloring kempe_five_color(const RotationGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> deg(n);
  std::set<std::pair<std::size_t, VertexId>> queue;
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
    deg[static_cast<std::size_t>(v)] = g.degree(v);
    queue.emplace(g.degree(v), v);
  }
  std::vector<char> removed(n, 0);
  std::vector<VertexId> order;
  order.reserve(n);
  while (!queue.empty()) {
    auto [d, v] = *queue.begin();
    queue.erase(queue.begin());
    removed[static_cast<std::size_t>(v)] = 1;
    order.push_back(v);
    for (VertexId w : g.rotation(v)) {
      const auto wi = static_cast<std::size_t>(w);
      if (removed[wi]) continue;
      queue.erase({deg[wi], w});
      queue.emplace(--deg[wi], w);
    }
  }

  Coloring c(n);
  // Restricted to colored vertices, c is a coloring of the subgraph induced
  // by the vertices re-inserted so far; uncolored vertices carry kNoColor
  // and never join a chain.
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    std::vector<VertexId> ring;
    for (VertexId w : g.rotation(v))
      if (c[w] != kNoColor) ring.push_back(w);
    std::vector<Color> taken;
    for (VertexId w : ring) taken.push_back(c[w]);
    Color free = smallest_free_color(taken);
    if (free == kNoColor) {
      if (ring.size() != 5) throw std::logic_error("kempe_five_color: saturated vertex of degree != 5");
      for (int first = 0; first < 2 && free == kNoColor; ++first) {
        const VertexId x = ring[static_cast<std::size_t>(first)], y = ring[static_cast<std::size_t>(first + 2)];
        const Color a = c[x], b = c[y];
        auto chain = kempe_chain(g, c, x, a, b);
        if (std::find(chain.begin(), chain.end(), y) == chain.end()) {
          for (VertexId u : chain) c[u] = c[u] == a ? b : a;
          free = a;
        }
      }
      if (free == kNoColor) throw std::logic_error("kempe_five_color: both Kempe exchanges blocked");
    }
    c[v] = free;
  }
  return c;
}

/// Exact search for a proper 4-coloring of `g` in which the vertices of
/// `ring` use at most `max_ring_colors` distinct colors. Excluded color sets
/// are tried with the largest colors first. Throws OracleError above `cap`.
inline std::optional<Coloring> constrained_recolor(const RotationGraph& g, std::span<const VertexId> ring,
                                                   int max_ring_colors = 3, std::size_t cap = kDefaultOracleCap) {
  if (g.vertex_count() > cap)
    throw OracleError("constrained_recolor: " + std::to_string(g.vertex_count()) + " vertices exceed the cap of " +
                      std::to_string(cap));
  if (max_ring_colors >= 4) return exact_color(g, 4, {cap, {}});
  if (max_ring_colors < 1) return std::nullopt;
  // Ring palettes in lexicographic order: {1,2,3}, {1,2,4}, {1,3,4}, {2,3,4} for three colors.
  std::vector<std::vector<Color>> palettes;
  for (unsigned bits = 1; bits < 16; ++bits) {
    const ColorSet s = ColorSet::from_bits(static_cast<std::uint8_t>(bits << 1));
    if (s.size() == max_ring_colors) palettes.push_back(s.colors());
  }
  std::sort(palettes.begin(), palettes.end());
  for (const auto& colors : palettes) {
    ColorSet palette;
    for (Color c : colors) palette.insert(c);
    ExactOptions options{cap, std::vector<ColorSet>(g.vertex_count(), ColorSet::first(4))};
    for (VertexId r : ring) options.allowed[static_cast<std::size_t>(r)] = palette;
    if (auto c = exact_color(g, 4, options)) return c;
  }
  return std::nullopt;
}

}  // namespace fourcolor
