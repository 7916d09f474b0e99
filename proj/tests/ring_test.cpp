#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fourcolor/generators.hpp"
#include "fourcolor/oracle.hpp"
#include "fourcolor/ring.hpp"
#include "testing/oracles.hpp"

using namespace fourcolor;
namespace oracle = testing_oracle;

namespace {

std::vector<std::uint8_t> bits_of(const ResidualSets& r) {
  std::vector<std::uint8_t> out;
  for (ColorSet s : r.sets) out.push_back(s.bits());
  return out;
}

std::vector<Color> palette_colors(ColorSet p) { return p.colors(); }

// Apex x joined to every ring vertex of W5: G - hub has the ring plus x.
RotationGraph w5_with_apex() {
  // hub 0, ring 1..5, apex 6 on the outer face.
  Rotations rot = wheel(5).rotations();
  for (VertexId i = 1; i <= 5; ++i) {
    auto& r = rot[static_cast<std::size_t>(i)];
    // ring vertex i has rotation (i+1, 0, i-1); the outer corner lies after i-1.
    r.push_back(6);
  }
  rot.push_back({5, 4, 3, 2, 1});
  return RotationGraph::build(std::move(rot));
}

}  // namespace

TEST(NeighborRing, WheelHub) {
  const Ring r = neighbor_ring(wheel(5), 0);
  EXPECT_EQ(r.cycle, (std::vector<VertexId>{1, 2, 3, 4, 5}));
}

TEST(NeighborRing, IcosahedronRingsAreCycles) {
  const RotationGraph g = gen_fixture("icosahedron");
  const auto adj = oracle::adjacency(g);
  for (VertexId v = 0; v < 12; ++v) {
    const Ring r = neighbor_ring(g, v);
    ASSERT_EQ(r.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) {
      EXPECT_TRUE(adj[static_cast<std::size_t>(v)].count(r[i]));
      EXPECT_TRUE(adj[static_cast<std::size_t>(r[i])].count(r[i + 1]));
    }
  }
}

TEST(NeighborRing, MissingRingEdge) {
  // C4 plus a center joined to all of it; one ring edge removed.
  const RotationGraph g = wheel(4);
  EXPECT_NO_THROW(neighbor_ring(g, 0));
  const RotationGraph cut = RotationGraph::build({{1, 2, 3, 4}, {0, 4}, {3, 0}, {4, 0, 2}, {1, 0, 3}});
  EXPECT_THROW(neighbor_ring(cut, 0), RingError);
}

TEST(ResidualSets, ApexColoredOne) {
  const RotationGraph g = w5_with_apex();
  const Subgraph gm = remove_vertex(g, 0);
  const std::vector<VertexId> ring{0, 1, 2, 3, 4};
  Coloring c(gm.graph.vertex_count());
  c[5] = 1;
  const ResidualSets r = residual_sets(gm.graph, ring, c);
  for (ColorSet s : r.sets) EXPECT_EQ(s, (ColorSet{1}));
}

TEST(ResidualSets, IcosahedronFromOracleColoring) {
  const RotationGraph g = gen_fixture("icosahedron");
  for (VertexId v = 0; v < 12; ++v) {
    const Ring ring = neighbor_ring(g, v);
    const Subgraph gm = remove_vertex(g, v);
    std::vector<VertexId> rg;
    for (VertexId r : ring.cycle) rg.push_back(r < v ? r : r - 1);
    const auto c = exact_color(gm.graph, 4);
    ASSERT_TRUE(c);
    const ResidualSets r = residual_sets(gm.graph, rg, *c);
    for (std::size_t i = 0; i < 5; ++i) {
      EXPECT_GE(r[i].size(), 2);
      EXPECT_LE(r[i].size(), 3);
      EXPECT_FALSE((r[i] & r[i + 1]).empty());
    }
  }
}

TEST(ResidualSets, FourColorsRejected) {
  // Ring vertex 0 of a star-like context sees four outside colors.
  const RotationGraph g = RotationGraph::build({{1, 2, 3, 4}, {0}, {0}, {0}, {0}});
  Coloring c(5);
  for (VertexId v = 1; v <= 4; ++v) c[v] = v;
  const std::vector<VertexId> ring{0};
  try {
    residual_sets(g, ring, c);
    FAIL();
  } catch (const RingError& e) {
    EXPECT_EQ(e.kind(), RingError::Kind::FourColorResidual);
  }
}

TEST(RingListColor, Examples) {
  EXPECT_EQ(ring_list_color({{{1, 3}, {2, 3}, {1, 3}, {2, 3}}}, {1, 2, 3}), (std::vector<Color>{2, 1, 2, 1}));
  EXPECT_FALSE(ring_list_color({{{1, 2}, {1, 2}, {1, 2}, {1, 2}, {1, 2}}}, {1, 2, 3}));
  EXPECT_EQ(ring_list_color({{{}, {}, {}, {}}}, {1, 2}), (std::vector<Color>{1, 2, 1, 2}));
}

TEST(RingThreeColorable, Examples) {
  const ResidualSets mixed{{{1, 2}, {2, 3}, {1, 3}, {1, 2}, {2, 3}}};
  const auto s = ring_three_colorable(mixed);
  ASSERT_TRUE(s);
  bool brute = false;
  for (Color ex = 1; ex <= 4; ++ex) {
    ColorSet p = ColorSet::first(4);
    p.erase(ex);
    brute = brute || !oracle::ring_solutions(bits_of(mixed), palette_colors(p)).empty();
  }
  EXPECT_TRUE(brute);

  const auto ones = ring_three_colorable({{{1}, {1}, {1}, {1}}});
  ASSERT_TRUE(ones);
  EXPECT_EQ(ones->excluded, 4);
  EXPECT_EQ(ones->colors, (std::vector<Color>{2, 3, 2, 3}));
}

TEST(RingThreeColorable, SquaredConfigurationHasNoThreeColorSolution) {
  // Every ring coloring of this configuration uses all four colors.
  const ResidualSets sq{{{1, 2}, {1, 2}, {1, 3}, {1, 3}, {2, 3}}};
  const auto all = oracle::ring_solutions(bits_of(sq), {1, 2, 3, 4});
  ASSERT_FALSE(all.empty());
  for (const auto& s : all) EXPECT_EQ(std::set<Color>(s.begin(), s.end()).size(), 4u);
  EXPECT_FALSE(ring_three_colorable(sq));
}

TEST(RingListColor, ExhaustiveAgreementD4) {
  // All 16^4 tuples of subsets of {1..4} against every palette.
  const std::vector<ColorSet> palettes{ColorSet::first(4), {1, 2, 3}, {1, 2, 4}, {2, 3, 4}, {1, 2}};
  std::size_t mismatches = 0;
  for (unsigned code = 0; code < 65536; ++code) {
    ResidualSets r;
    for (int i = 0; i < 4; ++i) r.sets.push_back(ColorSet::from_bits(static_cast<std::uint8_t>(((code >> (4 * i)) & 0xF) << 1)));
    for (ColorSet p : palettes) {
      const auto got = ring_list_color(r, p);
      const auto brute = oracle::ring_solutions(bits_of(r), palette_colors(p));
      if (got.has_value() != !brute.empty()) ++mismatches;
      // Smallest-color-first: the result is the lexicographic minimum.
      if (got && !brute.empty() && *got != *std::min_element(brute.begin(), brute.end())) ++mismatches;
    }
  }
  EXPECT_EQ(mismatches, 0u);
}

TEST(RingListColor, SampledAgreementD3D5) {
  std::mt19937_64 rng(17);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    const std::size_t d = trial % 2 ? 5 : 3;
    ResidualSets r;
    for (std::size_t i = 0; i < d; ++i) r.sets.push_back(ColorSet::from_bits(static_cast<std::uint8_t>((rng() & 0xF) << 1)));
    const ColorSet p = ColorSet::from_bits(static_cast<std::uint8_t>((1 + rng() % 15) << 1));
    const auto got = ring_list_color(r, p);
    const auto brute = oracle::ring_solutions(bits_of(r), palette_colors(p));
    if (got.has_value() != !brute.empty()) ++mismatches;
    if (got) {
      // Solution validity.
      for (std::size_t i = 0; i < d; ++i) {
        if (r[i].contains((*got)[i]) || !p.contains((*got)[i]) || (*got)[i] == (*got)[(i + 1) % d]) ++mismatches;
      }
    }
  }
  EXPECT_EQ(mismatches, 0u);
}

TEST(RingThreeColorable, SolutionsUseAtMostThreeColors) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 5000; ++trial) {
    ResidualSets r;
    for (int i = 0; i < 5; ++i) r.sets.push_back(ColorSet::from_bits(static_cast<std::uint8_t>((rng() & 0xF) << 1)));
    const auto s = ring_three_colorable(r);
    if (!s) continue;
    std::set<Color> used(s->colors.begin(), s->colors.end());
    EXPECT_LE(used.size(), 3u);
    EXPECT_FALSE(used.count(s->excluded));
    for (std::size_t i = 0; i < 5; ++i) {
      EXPECT_FALSE(r[i].contains(s->colors[i]));
      EXPECT_NE(s->colors[i], s->colors[(i + 1) % 5]);
    }
  }
}

TEST(Plans, Counts) {
  const auto p5 = enumerate_plans(5);
  ASSERT_EQ(p5.size(), 6u);
  EXPECT_EQ(p5[0].kind, ContractionPlan::Kind::WholeRing);
  for (std::size_t i = 1; i < p5.size(); ++i) {
    EXPECT_EQ(p5[i].kind, ContractionPlan::Kind::EdgePair);
    EXPECT_FALSE(p5[i].ring_degenerate);
  }
  const auto p4 = enumerate_plans(4);
  ASSERT_EQ(p4.size(), 3u);
  EXPECT_TRUE(p4[1].ring_degenerate);
  EXPECT_TRUE(p4[2].ring_degenerate);
  EXPECT_EQ(enumerate_plans(3).size(), 1u);
}

TEST(ApplyPlan, WholeRingOnW5Context) {
  const RotationGraph g = w5_with_apex();
  const Subgraph gm = remove_vertex(g, 0);
  const std::vector<VertexId> ring{0, 1, 2, 3, 4};
  const PlanResult r = apply_plan(gm.graph, ring, enumerate_plans(5)[0]);
  EXPECT_EQ(r.graph.vertex_count(), 2u);
  EXPECT_EQ(r.ring_image.size(), 1u);
  EXPECT_TRUE(r.graph.adjacent(r.ring_image[0], r.merge_map[5]));
}

TEST(ApplyPlan, EdgePairMakesTriangle) {
  const RotationGraph g = gen_fixture("icosahedron");
  const Ring ring = neighbor_ring(g, 0);
  const Subgraph gm = remove_vertex(g, 0);
  std::vector<VertexId> rg;
  for (VertexId x : ring.cycle) rg.push_back(x - 1);
  for (const auto& plan : enumerate_plans(5)) {
    if (plan.kind != ContractionPlan::Kind::EdgePair) continue;
    const PlanResult r = apply_plan(gm.graph, rg, plan);
    ASSERT_EQ(r.ring_image.size(), 3u) << plan.label();
    EXPECT_TRUE(r.graph.adjacent(r.ring_image[0], r.ring_image[1]));
    EXPECT_TRUE(r.graph.adjacent(r.ring_image[1], r.ring_image[2]));
    EXPECT_TRUE(r.graph.adjacent(r.ring_image[0], r.ring_image[2]));
    EXPECT_EQ(r.graph.vertex_count(), gm.graph.vertex_count() - 2);
  }
}

TEST(ApplyPlan, OffRingVerticesKeepTheirColors) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const RotationGraph g = gen_random_triangulation(12 + seed % 20, seed, GenMode::Flip);
    VertexId v = -1;
    for (VertexId x = 0; x < static_cast<VertexId>(g.vertex_count()); ++x)
      if (g.degree(x) == 5 || g.degree(x) == 4) v = x;
    if (v < 0) continue;
    const Ring ring = neighbor_ring(g, v);
    const Subgraph gm = remove_vertex(g, v);
    std::vector<VertexId> rg;
    for (VertexId x : ring.cycle) rg.push_back(x < v ? x : x - 1);
    for (const auto& plan : enumerate_plans(ring.size())) {
      const PlanResult r = apply_plan(gm.graph, rg, plan);
      // Lifted colors of G_1 vertices are exactly the contracted colors.
      const auto c = exact_color(r.graph, 4);
      ASSERT_TRUE(c);
      std::set<VertexId> ring_set(rg.begin(), rg.end());
      Coloring lifted(gm.graph.vertex_count());
      for (std::size_t u = 0; u < lifted.size(); ++u) lifted[static_cast<VertexId>(u)] = (*c)[r.merge_map[u]];
      for (VertexId u = 0; u < static_cast<VertexId>(gm.graph.vertex_count()); ++u) {
        if (ring_set.count(u)) continue;
        for (VertexId w : gm.graph.rotation(u))
          if (!ring_set.count(w)) { EXPECT_NE(lifted[u], lifted[w]); }
      }
    }
  }
}
