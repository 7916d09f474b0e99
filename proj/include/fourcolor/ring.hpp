#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fourcolor/color.hpp"
#include "fourcolor/plane_graph.hpp"

namespace fourcolor {

class RingError : public std::runtime_error {
 public:
  enum class Kind {
    NotACycle,          ///< neighbors of the center do not form a cycle
    FourColorResidual,  ///< some R_i holds all of 1..4
    SharedNeighbor,     ///< consecutive ring vertices share != 1 outside neighbor
    DisjointResidual,   ///< consecutive residual sets do not intersect
  };
  RingError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Neighbors of `center` in rotation order.
struct Ring {
  VertexId center = -1;
  std::vector<VertexId> cycle;

  std::size_t size() const { return cycle.size(); }
  VertexId operator[](std::size_t i) const { return cycle[i % cycle.size()]; }
};

/// Per ring position, the colors seen on that ring vertex's neighbors
/// outside the ring and the center.
struct ResidualSets {
  std::vector<ColorSet> sets;

  std::size_t size() const { return sets.size(); }
  ColorSet operator[](std::size_t i) const { return sets[i % sets.size()]; }
  bool operator==(const ResidualSets&) const = default;

  ColorSet union_all() const {
    ColorSet u;
    for (ColorSet s : sets) u = u | s;
    return u;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < sets.size(); ++i) s += (i ? "," : "") + sets[i].to_string();
    return s + ")";
  }
};

inline Ring neighbor_ring(const RotationGraph& g, VertexId v) {
  Ring ring{v, {g.rotation(v).begin(), g.rotation(v).end()}};
  const std::size_t d = ring.size();
  const std::size_t checks = d < 2 ? 0 : (d == 2 ? 1 : d);
  for (std::size_t i = 0; i < checks; ++i)
    if (!g.adjacent(ring[i], ring[i + 1]))
      throw RingError(RingError::Kind::NotACycle, "neighbors " + std::to_string(ring[i]) + " and " +
                                                      std::to_string(ring[i + 1]) + " of vertex " +
                                                      std::to_string(v) + " are not adjacent");
  return ring;
}

/// Residual sets of `ring` (ids in `g_minus_v`) under a coloring of the
/// vertices outside the ring. Ring entries of `outside` are ignored.
///
/// For d >= 3 also checks that consecutive ring vertices share exactly one
/// outside neighbor and that consecutive sets intersect.
inline ResidualSets residual_sets(const RotationGraph& g_minus_v, std::span<const VertexId> ring,
                                  const Coloring& outside) {
  const std::size_t n = g_minus_v.vertex_count();
  if (outside.size() != n) throw std::invalid_argument("residual_sets: coloring size mismatch");
  std::vector<char> on_ring(n, 0);
  for (VertexId r : ring) on_ring[static_cast<std::size_t>(r)] = 1;
  for (VertexId u = 0; u < static_cast<VertexId>(n); ++u)
    if (!on_ring[static_cast<std::size_t>(u)] && outside[u] == kNoColor)
      throw std::invalid_argument("residual_sets: vertex " + std::to_string(u) + " outside the ring is uncolored");

  const std::size_t d = ring.size();
  ResidualSets out;
  out.sets.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (VertexId w : g_minus_v.rotation(ring[i]))
      if (!on_ring[static_cast<std::size_t>(w)]) out.sets[i].insert(outside[w]);
    if (ColorSet::first(4).subset_of(out.sets[i]))
      throw RingError(RingError::Kind::FourColorResidual,
                      "ring position " + std::to_string(i + 1) + " sees " + out.sets[i].to_string());
  }
  if (d >= 3) {
    for (std::size_t i = 0; i < d; ++i) {
      const VertexId a = ring[i], b = ring[(i + 1) % d];
      std::size_t shared = 0;
      for (VertexId w : g_minus_v.rotation(a))
        if (!on_ring[static_cast<std::size_t>(w)] && g_minus_v.adjacent(w, b)) ++shared;
      if (shared != 1)
        throw RingError(RingError::Kind::SharedNeighbor, "ring vertices " + std::to_string(a) + " and " +
                                                             std::to_string(b) + " share " + std::to_string(shared) +
                                                             " outside neighbors");
      if ((out.sets[i] & out.sets[(i + 1) % d]).empty())
        throw RingError(RingError::Kind::DisjointResidual,
                        "residual sets at positions " + std::to_string(i + 1) + " and " +
                            std::to_string((i + 1) % d + 1) + " are disjoint");
    }
  }
  return out;
}

/// Proper coloring of the ring cycle with position i drawn from
/// palette \ R_i, or nullopt. Returns the lexicographically smallest
/// solution: the first color is fixed in ascending order, a backward sweep
/// records which colors can still close the cycle, and a forward pass takes
/// the smallest feasible color at each position.
inline std::optional<std::vector<Color>> ring_list_color(const ResidualSets& sets, ColorSet palette) {
  const std::size_t d = sets.size();
  if (d == 0) return std::vector<Color>{};
  std::vector<ColorSet> allowed(d);
  for (std::size_t i = 0; i < d; ++i) allowed[i] = palette - sets[i];
  if (d == 1) {
    if (allowed[0].empty()) return std::nullopt;
    return std::vector<Color>{allowed[0].min()};
  }

  std::vector<ColorSet> feasible(d);
  for (Color first : allowed[0].colors()) {
    // feasible[i]: colors at position i that extend to a valid suffix.
    feasible[d - 1] = allowed[d - 1];
    feasible[d - 1].erase(first);
    for (std::size_t i = d - 1; i-- > 1;) {
      feasible[i] = ColorSet{};
      for (Color c : allowed[i].colors()) {
        ColorSet rest = feasible[i + 1];
        rest.erase(c);
        if (!rest.empty()) feasible[i].insert(c);
      }
    }
    ColorSet second = feasible[1];
    second.erase(first);
    if (second.empty()) continue;
    std::vector<Color> out(d);
    out[0] = first;
    for (std::size_t i = 1; i < d; ++i) {
      ColorSet choice = feasible[i];
      choice.erase(out[i - 1]);
      out[i] = choice.min();
    }
    return out;
  }
  return std::nullopt;
}

struct RingSolution {
  Color excluded = kNoColor;
  std::vector<Color> colors;
};

/// Tries palettes {1..4} \ {c} for c = 4, 3, 2, 1 and returns the first
/// ring coloring found.
inline std::optional<RingSolution> ring_three_colorable(const ResidualSets& sets) {
  for (Color excluded = 4; excluded >= 1; --excluded) {
    ColorSet palette = ColorSet::first(4);
    palette.erase(excluded);
    if (auto colors = ring_list_color(sets, palette)) return RingSolution{excluded, std::move(*colors)};
  }
  return std::nullopt;
}

/// Which ring edges to contract. Edge i joins ring positions i and i+1.
struct ContractionPlan {
  enum class Kind { WholeRing, EdgePair };
  Kind kind = Kind::WholeRing;
  std::size_t first = 0;
  std::size_t second = 0;
  /// Edge pairs on a 4-ring collapse the ring to a single edge.
  bool ring_degenerate = false;

  std::string label() const {
    if (kind == Kind::WholeRing) return "whole-ring";
    return "edge-pair(" + std::to_string(first + 1) + "," + std::to_string(second + 1) + ")" +
           (ring_degenerate ? " degenerate" : "");
  }
  bool operator==(const ContractionPlan&) const = default;
};

/// WholeRing first, then every pair of ring edges sharing no endpoint in
/// lexicographic order.
inline std::vector<ContractionPlan> enumerate_plans(std::size_t d) {
  std::vector<ContractionPlan> plans{ContractionPlan{}};
  if (d < 4) return plans;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 2; j < d; ++j) {
      if (i == 0 && j == d - 1) continue;
      plans.push_back({ContractionPlan::Kind::EdgePair, i, j, d == 4});
    }
  return plans;
}

struct PlanResult {
  RotationGraph graph;
  std::vector<VertexId> merge_map;   ///< id in g_minus_v -> id in graph
  std::vector<VertexId> ring_image;  ///< contracted ring, consecutive duplicates removed
};

/// Contracts the ring edges named by `plan` one at a time.
inline PlanResult apply_plan(const RotationGraph& g_minus_v, std::span<const VertexId> ring,
                             const ContractionPlan& plan) {
  const std::size_t d = ring.size();
  if (d < 2) throw std::invalid_argument("apply_plan: ring needs at least 2 vertices");
  std::vector<std::pair<std::size_t, std::size_t>> steps;  // ring positions to merge
  if (plan.kind == ContractionPlan::Kind::WholeRing) {
    for (std::size_t k = 1; k < d; ++k) steps.emplace_back(0, k);
  } else {
    if (plan.first >= d || plan.second >= d || plan.first == plan.second ||
        (plan.first + 1) % d == plan.second || (plan.second + 1) % d == plan.first)
      throw std::invalid_argument("apply_plan: edge pair " + plan.label() + " is not valid for a " +
                                  std::to_string(d) + "-ring");
    steps.emplace_back(plan.first, (plan.first + 1) % d);
    steps.emplace_back(plan.second, (plan.second + 1) % d);
  }

  RotationGraph g = g_minus_v;
  std::vector<VertexId> merge(g.vertex_count());
  for (std::size_t i = 0; i < merge.size(); ++i) merge[i] = static_cast<VertexId>(i);
  for (auto [a, b] : steps) {
    auto c = contract_edge(g, merge[static_cast<std::size_t>(ring[a])], merge[static_cast<std::size_t>(ring[b])]);
    for (VertexId& m : merge) m = c.merge_map[static_cast<std::size_t>(m)];
    g = std::move(c.graph);
  }
  std::vector<VertexId> image;
  for (VertexId r : ring) {
    const VertexId m = merge[static_cast<std::size_t>(r)];
    if (image.empty() || image.back() != m) image.push_back(m);
  }
  while (image.size() > 1 && image.front() == image.back()) image.pop_back();
  return {std::move(g), std::move(merge), std::move(image)};
}

}  // namespace fourcolor
