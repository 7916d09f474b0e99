#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fourcolor/color.hpp"
#include "fourcolor/oracle.hpp"
#include "fourcolor/plane_graph.hpp"
#include "fourcolor/ring.hpp"
#include "fourcolor/trace.hpp"

namespace fourcolor {

inline constexpr const char* kAlgorithmVersion = "fourcolor-ladder/1";

/// Limits for the recoloring ladder.
///
/// `max_attempts` caps contraction attempts (whole-ring and edge-pair
/// steps) over the whole recursion of one four_color call. The direct step
/// always runs; the Kempe and oracle recolorings do not recurse and are
/// bounded on their own.
struct Budget {
  std::size_t max_attempts = 64;
  std::size_t oracle_cap = kDefaultOracleCap;
  bool kempe_recolor = true;
  bool oracle_recolor = true;
  bool oracle_fallback = true;
  bool kempe_fallback = true;
};

class StrategiesExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ColorResult {
  Coloring coloring;
  Trace trace;
};

namespace detail {

class Colorer {
 public:
  explicit Colorer(const Budget& budget, std::size_t root_order) : budget_(budget), root_order_(root_order) {}

  Trace& trace() { return trace_; }

  /// Any simple plane graph: splits components, triangulates when needed.
  Coloring color_any(const RotationGraph& g, std::size_t depth) {
    check_depth(depth);
    const std::size_t n = g.vertex_count();
    if (n == 0) return Coloring{};
    if (!g.is_connected()) {
      Coloring out(n);
      std::vector<char> done(n, 0);
      for (VertexId s = 0; s < static_cast<VertexId>(n); ++s) {
        if (done[static_cast<std::size_t>(s)]) continue;
        std::vector<VertexId> comp{s};
        done[static_cast<std::size_t>(s)] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i)
          for (VertexId w : g.rotation(comp[i]))
            if (!done[static_cast<std::size_t>(w)]) {
              done[static_cast<std::size_t>(w)] = 1;
              comp.push_back(w);
            }
        Subgraph sub = induced_subgraph(g, comp);
        Coloring c = color_any(sub.graph, depth);
        for (std::size_t i = 0; i < sub.vertices.size(); ++i) out[sub.vertices[i]] = c[static_cast<VertexId>(i)];
      }
      return out;
    }
    if (n <= 2) return base_case(g, depth);
    if (g.is_maximal()) return color_maximal(g, depth);
    return color_maximal(triangulate(g).graph, depth);
  }

  /// Maximal plane graph. Vertices of degree <= 3 are peeled off in
  /// minimum-degree order before the remainder is split or reduced.
  Coloring color_maximal(const RotationGraph& g, std::size_t depth) {
    check_depth(depth);
    const std::size_t n = g.vertex_count();
    if (n <= 4) return base_case(g, depth);
    if (g.degree(g.min_degree_vertex()) > 3) return core(g, depth);

    std::vector<std::size_t> deg(n);
    std::set<std::pair<std::size_t, VertexId>> queue;
    for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
      deg[static_cast<std::size_t>(v)] = g.degree(v);
      queue.emplace(g.degree(v), v);
    }
    std::vector<char> alive(n, 1);
    std::vector<std::pair<VertexId, std::vector<VertexId>>> peeled;
    std::size_t remaining = n;
    while (remaining > 4) {
      const auto [d, v] = *queue.begin();
      if (d > 3) break;
      queue.erase(queue.begin());
      std::vector<VertexId> nbrs;
      for (VertexId w : g.rotation(v))
        if (alive[static_cast<std::size_t>(w)]) nbrs.push_back(w);
      trace_.add({EventKind::LowDegree, depth, remaining, v, static_cast<int>(d), "", true, ""});
      alive[static_cast<std::size_t>(v)] = 0;
      --remaining;
      for (VertexId w : nbrs) {
        const auto wi = static_cast<std::size_t>(w);
        queue.erase({deg[wi], w});
        queue.emplace(--deg[wi], w);
      }
      peeled.emplace_back(v, std::move(nbrs));
    }

    std::vector<VertexId> keep;
    for (VertexId v = 0; v < static_cast<VertexId>(n); ++v)
      if (alive[static_cast<std::size_t>(v)]) keep.push_back(v);
    Subgraph rest = induced_subgraph(g, std::move(keep));
    Coloring inner = core(rest.graph, depth + 1);
    Coloring out(n);
    for (std::size_t i = 0; i < rest.vertices.size(); ++i) out[rest.vertices[i]] = inner[static_cast<VertexId>(i)];
    for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) {
      std::vector<Color> taken;
      for (VertexId w : it->second) taken.push_back(out[w]);
      out[it->first] = smallest_free_color(taken);
    }
    return out;
  }

  /// Maximal plane graph with minimum degree >= 4, or at most 4 vertices.
  Coloring core(const RotationGraph& g, std::size_t depth) {
    check_depth(depth);
    if (g.vertex_count() <= 4) return base_case(g, depth);
    const VertexId v = g.min_degree_vertex();
    const std::size_t d = g.degree(v);
    if (d <= 3) return color_maximal(g, depth);
    if (d > 5) throw std::logic_error("maximal plane graph with minimum degree " + std::to_string(d));
    if (auto t = find_separating_triangle(g)) return case1(g, *t, depth);
    if (auto c = case2(g, v, depth)) return std::move(*c);
    return fallback(g, depth);
  }

  Coloring case1(const RotationGraph& g, const Triangle& t, std::size_t depth) {
    TriangleSplit split = split_on_triangle(g, t);
    trace_.add({EventKind::SeparatingSplit, depth, g.vertex_count(), t.a, 3, "", true,
                "triangle (" + std::to_string(t.a) + "," + std::to_string(t.b) + "," + std::to_string(t.c) +
                    ") inner=" + std::to_string(split.inner.vertices.size()) +
                    " outer=" + std::to_string(split.outer.vertices.size())});
    const Coloring ci = color_any(split.inner.graph, depth + 1);
    const Coloring co = color_any(split.outer.graph, depth + 1);
    return merge_on_triangle(g, t, split, ci, co);
  }

  static Coloring merge_on_triangle(const RotationGraph& g, const Triangle& t, const TriangleSplit& split,
                                    const Coloring& ci, const Coloring& co) {
    auto local = [](const Subgraph& s, VertexId x) {
      auto it = std::lower_bound(s.vertices.begin(), s.vertices.end(), x);
      return static_cast<VertexId>(it - s.vertices.begin());
    };
    std::array<Color, 3> src{}, dst{};
    Color top = 4;
    const std::array<VertexId, 3> tri{t.a, t.b, t.c};
    for (std::size_t k = 0; k < 3; ++k) {
      src[k] = co[local(split.outer, tri[k])];
      dst[k] = ci[local(split.inner, tri[k])];
      top = std::max({top, src[k], dst[k]});
    }
    const ColorPermutation perm = align_permutation(src, dst, top);
    Coloring out(g.vertex_count());
    for (std::size_t i = 0; i < split.outer.vertices.size(); ++i)
      out[split.outer.vertices[i]] = perm(co[static_cast<VertexId>(i)]);
    for (std::size_t i = 0; i < split.inner.vertices.size(); ++i)
      out[split.inner.vertices[i]] = ci[static_cast<VertexId>(i)];
    return out;
  }

  struct Closure {
    std::optional<Coloring> coloring;  ///< of g - v, ring included
    Color center = kNoColor;
    std::string reason;
  };

  /// Keeps the colors outside the ring and looks for a ring coloring with
  /// at most three colors.
  Closure close_ring(const RotationGraph& gm, const std::vector<VertexId>& ring, Coloring outside) {
    for (VertexId r : ring) outside[r] = kNoColor;
    ResidualSets sets;
    try {
      sets = residual_sets(gm, ring, outside);
    } catch (const RingError& e) {
      return {std::nullopt, kNoColor, std::string("residual sets rejected: ") + e.what()};
    }
    if (ring.size() == 5)
      for (ColorSet s : sets.sets)
        if (s.size() == 1) trace_.note("residual.singleton_at_degree5");
    auto sol = ring_three_colorable(sets);
    if (!sol) {
      const bool any4 = ring_list_color(sets, ColorSet::first(4)).has_value();
      return {std::nullopt, kNoColor,
              std::string(any4 ? "ring forced to four colors" : "ring needs a fifth color") + " R=" +
                  sets.to_string()};
    }
    for (std::size_t i = 0; i < ring.size(); ++i) outside[ring[i]] = sol->colors[i];
    if (!verify(gm, outside).proper) return {std::nullopt, kNoColor, "ring coloring clashes inside G - v"};
    return {std::move(outside), sol->excluded, "R=" + sets.to_string()};
  }

  static std::optional<Color> ring_free_color(const Coloring& c, const std::vector<VertexId>& ring) {
    ColorSet used;
    for (VertexId r : ring) {
      if (c[r] > 4) return std::nullopt;
      used.insert(c[r]);
    }
    if (used.size() > 3) return std::nullopt;
    return (ColorSet::first(4) - used).min();
  }

  std::optional<Coloring> case2(const RotationGraph& g, VertexId v, std::size_t depth) {
    const Ring ring = neighbor_ring(g, v);
    const Subgraph gm = remove_vertex(g, v);
    std::vector<VertexId> rg;
    for (VertexId r : ring.cycle) rg.push_back(r < v ? r : r - 1);
    const int d = static_cast<int>(ring.size());
    const std::size_t order = g.vertex_count();

    auto lift = [&](const Coloring& cm, Color center) {
      Coloring out(g.vertex_count());
      for (std::size_t i = 0; i < cm.size(); ++i) out[gm.vertices[i]] = cm[static_cast<VertexId>(i)];
      out[v] = center;
      return out;
    };
    auto attempt = [&](const char* step, const std::string& what, bool ok, const std::string& why) {
      trace_.add({EventKind::StrategyAttempt, depth, order, v, d, step, ok, what + ": " + why});
    };

    // S0: color G - v, keep it if the ring already misses a color, else
    // recolor the ring over the same outside coloring.
    const Coloring c0 = color_any(gm.graph, depth + 1);
    if (auto free = ring_free_color(c0, rg)) {
      trace_.add({EventKind::RingDirect, depth, order, v, d, "S0", true, "ring already uses at most 3 colors"});
      return lift(c0, *free);
    }
    if (Closure cl = close_ring(gm.graph, rg, c0); cl.coloring) {
      trace_.add({EventKind::RingDirect, depth, order, v, d, "S0", true, "ring recolored over G_1: " + cl.reason});
      return lift(*cl.coloring, cl.center);
    } else {
      attempt("S0", "direct", false, cl.reason);
    }

    // S1 / S2: contract the ring (whole, then edge pairs), color the minor,
    // keep its colors on G_1 and recolor the ring.
    for (const ContractionPlan& plan : enumerate_plans(ring.size())) {
      const char* step = plan.kind == ContractionPlan::Kind::WholeRing ? "S1" : "S2";
      if (attempts_ >= budget_.max_attempts) {
        trace_.note("budget.contractions_skipped");
        break;
      }
      ++attempts_;
      const PlanResult pr = apply_plan(gm.graph, rg, plan);
      const Coloring ch = color_any(pr.graph, depth + 1);
      Coloring outside(gm.graph.vertex_count());
      for (std::size_t u = 0; u < outside.size(); ++u)
        outside[static_cast<VertexId>(u)] = ch[pr.merge_map[u]];
      Closure cl = close_ring(gm.graph, rg, std::move(outside));
      attempt(step, plan.label(), cl.coloring.has_value(), cl.reason);
      if (cl.coloring) return lift(*cl.coloring, cl.center);
    }

    // S3: Kempe exchanges on the S0 coloring (not part of the inductive argument).
    if (budget_.kempe_recolor && c0.palette_size() <= 4) {
      if (auto r = kempe_recolor(gm.graph, rg, c0)) {
        attempt("S3", "kempe", true, r->second);
        gap(depth, order, v, d, "S3 kempe recoloring");
        return lift(r->first.first, r->first.second);
      }
      attempt("S3", "kempe", false, "no single or double exchange frees a ring color");
    }

    // S4: exact search over G - v with the ring limited to three colors.
    if (budget_.oracle_recolor && gm.graph.vertex_count() <= budget_.oracle_cap) {
      if (auto c = constrained_recolor(gm.graph, rg, 3, budget_.oracle_cap)) {
        attempt("S4", "oracle", true, "exact recoloring found");
        gap(depth, order, v, d, "S4 oracle recoloring");
        return lift(*c, *ring_free_color(*c, rg));
      }
      attempt("S4", "oracle", false, "no 4-coloring of G - v with three ring colors");
    }
    return std::nullopt;
  }

  Coloring fallback(const RotationGraph& g, std::size_t depth) {
    const std::size_t order = g.vertex_count();
    if (budget_.oracle_fallback && order <= budget_.oracle_cap) {
      if (auto c = exact_color(g, 4, {budget_.oracle_cap, {}})) {
        trace_.add({EventKind::FallbackOracle, depth, order, -1, 0, "", true, "exact 4-coloring"});
        gap(depth, order, -1, 0, "oracle fallback");
        return std::move(*c);
      }
    }
    if (!budget_.kempe_fallback)
      throw StrategiesExhausted("every coloring strategy failed on a graph of order " + std::to_string(order));
    trace_.add({EventKind::FallbackKempe, depth, order, -1, 0, "", true, "Kempe five-coloring"});
    gap(depth, order, -1, 0, "Kempe fallback");
    return kempe_five_color(g);
  }

 private:
  using Recolor = std::pair<std::pair<Coloring, Color>, std::string>;

  std::optional<Recolor> kempe_recolor(const RotationGraph& gm, const std::vector<VertexId>& ring,
                                       const Coloring& start) {
    auto accept = [&](const Coloring& c) -> std::optional<std::pair<Coloring, Color>> {
      if (auto free = ring_free_color(c, ring)) return std::make_pair(c, *free);
      Closure cl = close_ring(gm, ring, c);
      if (cl.coloring) return std::make_pair(std::move(*cl.coloring), cl.center);
      return std::nullopt;
    };
    auto swaps = [&](const Coloring& base) {
      std::vector<std::pair<Coloring, std::string>> out;
      for (std::size_t i = 0; i < ring.size(); ++i)
        for (Color b = 1; b <= 4; ++b) {
          const Color a = base[ring[i]];
          if (a == b) continue;
          Coloring c = base;
          kempe_swap(gm, c, ring[i], a, b);
          out.emplace_back(std::move(c), "(" + std::to_string(a) + "," + std::to_string(b) + ")@v" +
                                             std::to_string(i + 1));
        }
      return out;
    };
    auto singles = swaps(start);
    for (auto& [c, label] : singles)
      if (auto r = accept(c)) return Recolor{std::move(*r), "exchange " + label};
    for (auto& [c, label] : singles)
      for (auto& [c2, label2] : swaps(c))
        if (auto r = accept(c2)) return Recolor{std::move(*r), "exchanges " + label + " then " + label2};
    return std::nullopt;
  }

  Coloring base_case(const RotationGraph& g, std::size_t depth) {
    trace_.add({EventKind::BaseCase, depth, g.vertex_count(), -1, 0, "", true, ""});
    // Order <= 4 and, when connected with <= 2 vertices or maximal, complete.
    Coloring c(g.vertex_count());
    for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
      std::vector<Color> taken;
      for (VertexId w : g.rotation(v)) taken.push_back(c[w]);
      c[v] = smallest_free_color(taken);
    }
    return c;
  }

  void gap(std::size_t depth, std::size_t order, VertexId v, int d, const std::string& what) {
    trace_.add({EventKind::GapEvent, depth, order, v, d, "", true,
                "contraction strategies failed; closed by " + what});
  }

  void check_depth(std::size_t depth) const {
    if (depth > root_order_ + 1) throw std::logic_error("recursion depth exceeded the vertex count");
  }

  Budget budget_;
  std::size_t root_order_;
  std::size_t attempts_ = 0;
  Trace trace_;
};

}  // namespace detail

/// Colors a simple plane graph with at most four colors by the inductive
/// reduction (low-degree removal, separating-triangle split, ring recoloring
/// via contraction), falling back to five colors only when every strategy
/// fails. The result is always verified proper.
inline ColorResult four_color(const RotationGraph& g, const Budget& budget = {}) {
  detail::Colorer colorer(budget, g.vertex_count());
  Coloring c = colorer.color_any(g, 0);
  if (g.vertex_count() > 0 && !verify(g, c).proper) throw std::logic_error("four_color produced an improper coloring");
  return {std::move(c), std::move(colorer.trace())};
}

/// Colors g - v recursively, then gives v the smallest color missing from
/// its at most three neighbors.
inline ColorResult handle_low_degree(const RotationGraph& g, VertexId v, const Budget& budget = {}) {
  if (g.degree(v) > 3) throw std::invalid_argument("handle_low_degree: degree of v exceeds 3");
  detail::Colorer colorer(budget, g.vertex_count());
  colorer.trace().add({EventKind::LowDegree, 0, g.vertex_count(), v, static_cast<int>(g.degree(v)), "", true, ""});
  const Subgraph rest = remove_vertex(g, v);
  const Coloring inner = colorer.color_any(rest.graph, 1);
  Coloring out(g.vertex_count());
  for (std::size_t i = 0; i < rest.vertices.size(); ++i) out[rest.vertices[i]] = inner[static_cast<VertexId>(i)];
  std::vector<Color> taken;
  for (VertexId w : g.rotation(v)) taken.push_back(out[w]);
  out[v] = smallest_free_color(taken);
  return {std::move(out), std::move(colorer.trace())};
}

/// Colors both sides of separating triangle t and permutes the outer side's
/// colors to agree on the triangle.
inline ColorResult handle_case1(const RotationGraph& g, const Triangle& t, const Budget& budget = {}) {
  detail::Colorer colorer(budget, g.vertex_count());
  Coloring c = colorer.case1(g, t, 0);
  return {std::move(c), std::move(colorer.trace())};
}

/// Runs the recoloring ladder at a vertex v of degree 4 or 5 in a maximal
/// plane graph without separating triangles. Throws StrategiesExhausted when
/// no step closes the ring.
inline ColorResult handle_case2(const RotationGraph& g, VertexId v, const Budget& budget = {}) {
  if (!g.is_maximal()) throw std::invalid_argument("handle_case2: graph must be a plane triangulation");
  if (g.degree(v) < 4 || g.degree(v) > 5) throw std::invalid_argument("handle_case2: degree of v must be 4 or 5");
  if (find_separating_triangle(g)) throw std::invalid_argument("handle_case2: graph has a separating triangle");
  detail::Colorer colorer(budget, g.vertex_count());
  auto c = colorer.case2(g, v, 0);
  if (!c) throw StrategiesExhausted("no ladder step closed the ring");
  return {std::move(*c), std::move(colorer.trace())};
}

}  // namespace fourcolor
