#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fourcolor/embedding.hpp"
#include "fourcolor/generators.hpp"
#include "fourcolor/plane_graph.hpp"
#include "testing/oracles.hpp"

using namespace fourcolor;
namespace oracle = testing_oracle;

namespace {

GraphError::Kind build_error(Rotations rot) {
  try {
    RotationGraph::build(std::move(rot));
  } catch (const GraphError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "build accepted an invalid rotation system";
  return GraphError::Kind::Precondition;
}

Rotations cycle(std::size_t n) {
  Rotations rot(n);
  for (std::size_t i = 0; i < n; ++i)
    rot[i] = {static_cast<VertexId>((i + 1) % n), static_cast<VertexId>((i + n - 1) % n)};
  return rot;
}

bool contains_edges_of(const RotationGraph& big, const RotationGraph& small) {
  for (auto [u, w] : small.edges())
    if (!big.adjacent(u, w)) return false;
  return true;
}

}  // namespace

TEST(Build, K4HasFourTriangularFaces) {
  const RotationGraph g = gen_fixture("k4");
  EXPECT_EQ(g.vertex_count(), 4u);
  EXPECT_EQ(g.edge_count(), 6u);
  ASSERT_EQ(g.face_count(), 4u);
  for (const Face& f : g.faces()) EXPECT_EQ(f.boundary.size(), 3u);
}

TEST(Build, TriangleHasTwoFaces) {
  const RotationGraph g = build(cycle(3));
  ASSERT_EQ(g.face_count(), 2u);
  EXPECT_EQ(g.faces()[0].boundary.size(), 3u);
  EXPECT_EQ(g.faces()[1].boundary.size(), 3u);
}

TEST(Build, C4HasTwoFacesOfLengthFour) {
  const RotationGraph g = build(cycle(4));
  ASSERT_EQ(g.face_count(), 2u);
  for (const Face& f : g.faces()) EXPECT_EQ(f.boundary.size(), 4u);
}

TEST(Build, K5RotationFailsEuler) {
  Rotations k5(5);
  for (VertexId v = 0; v < 5; ++v)
    for (VertexId w = 0; w < 5; ++w)
      if (w != v) k5[static_cast<std::size_t>(v)].push_back(w);
  EXPECT_EQ(build_error(k5), GraphError::Kind::NonPlanar);
}

TEST(Build, DistinctDiagnostics) {
  EXPECT_EQ(build_error({{1}, {}}), GraphError::Kind::Asymmetric);
  EXPECT_EQ(build_error({{0}}), GraphError::Kind::SelfLoop);
  EXPECT_EQ(build_error({{1, 1}, {0, 0}}), GraphError::Kind::ParallelEdge);
  EXPECT_EQ(build_error({{2}, {}}), GraphError::Kind::OutOfRange);
}

TEST(Build, AsymmetryNamesTheVertex) {
  try {
    RotationGraph::build({{1, 2}, {0, 2}, {1}});
    FAIL();
  } catch (const GraphError& e) {
    EXPECT_EQ(e.vertex(), 0);
  }
}

TEST(Build, DisconnectedCountsEachComponent) {
  // A triangle plus an isolated vertex: V - E + F = 4 - 3 + (2 + 1) = 2 * 2.
  const RotationGraph g = build({{1, 2}, {2, 0}, {0, 1}, {}});
  EXPECT_EQ(g.component_count(), 2u);
  EXPECT_FALSE(g.is_connected());
}

TEST(Faces, OctahedronHasEightTriangles) {
  const RotationGraph g = gen_fixture("octahedron");
  EXPECT_EQ(faces(g).size(), 8u);
  EXPECT_EQ(oracle::facial_triangles(g).size(), 8u);
  EXPECT_EQ(2 * g.edge_count() / 3, 8u);
}

TEST(Faces, EveryHalfEdgeOnExactlyOneFace) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const RotationGraph g = build(oracle::thin_out(gen_random_triangulation(30, rng()).rotations(), 40, rng));
    std::size_t total = 0;
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const Face& f : g.faces()) {
      total += f.boundary.size();
      for (std::size_t i = 0; i < f.boundary.size(); ++i)
        EXPECT_TRUE(seen.emplace(f.boundary[i], f.boundary[(i + 1) % f.boundary.size()]).second);
    }
    EXPECT_EQ(total, 2 * g.edge_count());
  }
}

TEST(Triangulate, MaximalInputUnchanged) {
  const RotationGraph g = gen_fixture("k4");
  const Triangulation t = triangulate(g);
  EXPECT_TRUE(t.added_edges.empty());
  EXPECT_EQ(t.graph.rotations(), g.rotations());
}

TEST(Triangulate, C4GetsTwoEdges) {
  const Triangulation t = triangulate(build(cycle(4)));
  EXPECT_EQ(t.added_edges.size(), 2u);
  EXPECT_EQ(t.graph.edge_count(), 6u);
  EXPECT_TRUE(t.graph.is_maximal());
}

TEST(Triangulate, RejectsTinyGraphs) {
  EXPECT_THROW(triangulate(build({{1}, {0}})), GraphError);
}

TEST(Triangulate, RandomPlaneGraphsBecomeSupergraphTriangulations) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const RotationGraph g = build(oracle::thin_out(gen_random_triangulation(50, rng(), GenMode::Flip).rotations(), 80, rng));
    const Triangulation t = triangulate(g);
    EXPECT_EQ(t.graph.vertex_count(), 50u);
    EXPECT_EQ(t.graph.edge_count(), 3 * 50 - 6u);
    EXPECT_EQ(oracle::facial_triangles(t.graph).size(), 2 * 50 - 4u);
    EXPECT_TRUE(contains_edges_of(t.graph, g));
    EXPECT_EQ(t.graph.edge_count(), g.edge_count() + t.added_edges.size());
    EXPECT_TRUE(triangulate(t.graph).added_edges.empty());
  }
}

TEST(Triangulate, MinimumDegreeAtMostFive) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const RotationGraph g = gen_random_triangulation(40, seed, seed % 2 ? GenMode::Flip : GenMode::Stacked);
    EXPECT_LE(g.degree(g.min_degree_vertex()), 5u);
  }
}

TEST(Contract, TriangleEdgeBecomesSingleEdge) {
  const Contraction c = contract_edge(build(cycle(3)), 0, 1);
  EXPECT_EQ(c.graph.vertex_count(), 2u);
  EXPECT_EQ(c.graph.edge_count(), 1u);
  EXPECT_EQ(c.merge_map, (std::vector<VertexId>{0, 0, 1}));
}

TEST(Contract, W5RingEdgeGivesW4) {
  const RotationGraph w5 = wheel(5);
  const Contraction c = contract_edge(w5, 1, 2);
  EXPECT_EQ(oracle::signature(c.graph), oracle::signature(wheel(4)));
}

TEST(Contract, NotAnEdge) {
  EXPECT_THROW(contract_edge(gen_fixture("octahedron"), 0, 5), GraphError);
}

TEST(Contract, RandomContractionsKeepInvariants) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 5 + rng() % 40;
    const RotationGraph g = gen_random_triangulation(n, rng(), trial % 2 ? GenMode::Flip : GenMode::Stacked);
    const auto u = static_cast<VertexId>(rng() % g.vertex_count());
    const VertexId w = g.rotation(u)[rng() % g.degree(u)];
    const Contraction c = contract_edge(g, u, w);
    ASSERT_EQ(c.graph.vertex_count(), g.vertex_count() - 1);
    EXPECT_TRUE(c.graph.is_connected());
    EXPECT_EQ(c.merge_map[static_cast<std::size_t>(u)], c.merge_map[static_cast<std::size_t>(w)]);
    // Every edge of the result pulls back to an edge of g.
    for (auto [x, y] : c.graph.edges()) {
      bool found = false;
      for (VertexId a = 0; a < static_cast<VertexId>(g.vertex_count()) && !found; ++a)
        if (c.merge_map[static_cast<std::size_t>(a)] == x)
          for (VertexId b : g.rotation(a))
            if (c.merge_map[static_cast<std::size_t>(b)] == y) found = true;
      EXPECT_TRUE(found);
    }
    // Contracting an edge of a triangulation with no separating triangle
    // through it keeps it maximal; the edge count drops by 3 in that case.
    if (g.edge_count() - c.graph.edge_count() == 3) { EXPECT_TRUE(c.graph.is_maximal()); }
  }
}

TEST(SeparatingTriangle, OctahedronAndK4HaveNone) {
  EXPECT_FALSE(find_separating_triangle(gen_fixture("octahedron")));
  EXPECT_FALSE(find_separating_triangle(gen_fixture("k4")));
  EXPECT_FALSE(oracle::separating_triangle(gen_fixture("octahedron")));
}

TEST(SeparatingTriangle, GluedK4sReturnSharedTriangle) {
  const RotationGraph g = gen_fixture("glued-k4s");
  const auto t = find_separating_triangle(g);
  ASSERT_TRUE(t);
  const auto expected = oracle::separating_triangle(g);
  ASSERT_TRUE(expected);
  EXPECT_EQ((std::array<int, 3>{t->a, t->b, t->c}), *expected);
  EXPECT_TRUE(t->separating);
}

TEST(SeparatingTriangle, MatchesExhaustiveScan) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const RotationGraph g = gen_random_triangulation(6 + seed % 20, seed, seed % 3 ? GenMode::Flip : GenMode::Stacked);
    const auto t = find_separating_triangle(g);
    const auto expected = oracle::separating_triangle(g);
    ASSERT_EQ(t.has_value(), expected.has_value());
    if (t) { EXPECT_EQ((std::array<int, 3>{t->a, t->b, t->c}), *expected); }
  }
}

TEST(Split, GluedK4sGiveTwoK4s) {
  const RotationGraph g = gen_fixture("glued-k4s");
  const TriangleSplit s = split_on_triangle(g, *find_separating_triangle(g));
  EXPECT_EQ(s.inner.graph.vertex_count(), 4u);
  EXPECT_EQ(s.outer.graph.vertex_count(), 4u);
  EXPECT_EQ(s.inner.graph.edge_count(), 6u);
  EXPECT_EQ(s.outer.graph.edge_count(), 6u);
}

TEST(Split, IcosahedronWithGluedInterior) {
  const RotationGraph ico = gen_fixture("icosahedron");
  const RotationGraph guest = gen_random_triangulation(7, 1);
  const auto& hf = ico.faces().front().boundary;
  const auto& gf = guest.faces().front().boundary;
  const RotationGraph g = glue_into_face(ico, {hf[0], hf[1], hf[2]}, guest, {gf[0], gf[1], gf[2]});
  ASSERT_EQ(g.vertex_count(), 16u);
  EXPECT_TRUE(g.is_maximal());
  Triangle t{hf[0], hf[1], hf[2], true};
  const TriangleSplit s = split_on_triangle(g, t);
  const std::size_t small = std::min(s.inner.vertices.size(), s.outer.vertices.size());
  EXPECT_EQ(small, 3u + 4u);
  EXPECT_EQ(s.inner.vertices.size() + s.outer.vertices.size(), 16u + 3u);
}

TEST(Split, FacialTriangleRejected) {
  const RotationGraph g = gen_fixture("octahedron");
  const auto& f = g.faces().front().boundary;
  EXPECT_THROW(split_on_triangle(g, {f[0], f[1], f[2], false}), GraphError);
}

TEST(Split, SidesPartitionVerticesAndEdges) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const RotationGraph g = gen_random_triangulation(8 + seed % 30, seed);
    const auto t = find_separating_triangle(g);
    if (!t) continue;
    const TriangleSplit s = split_on_triangle(g, *t);
    std::set<VertexId> in(s.inner.vertices.begin(), s.inner.vertices.end());
    std::set<VertexId> out(s.outer.vertices.begin(), s.outer.vertices.end());
    std::set<VertexId> both;
    for (VertexId v : in)
      if (out.count(v)) both.insert(v);
    EXPECT_EQ(both, (std::set<VertexId>{t->a, t->b, t->c}));
    EXPECT_EQ(in.size() + out.size() - 3, g.vertex_count());
    EXPECT_EQ(s.inner.graph.edge_count() + s.outer.graph.edge_count() - 3, g.edge_count());
    EXPECT_LT(s.inner.graph.vertex_count(), g.vertex_count());
    EXPECT_GE(s.inner.graph.vertex_count(), 4u);
    EXPECT_GE(s.outer.graph.vertex_count(), 4u);
  }
}

TEST(Embedding, SmallEdgeLists) {
  // K4 as an abstract edge list embeds with four triangular faces.
  const auto k4 = embed_edge_list(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  ASSERT_TRUE(k4);
  EXPECT_EQ(k4->face_count(), 4u);
  // K5 and K3,3 are rejected.
  std::vector<Edge> k5, k33;
  for (VertexId u = 0; u < 5; ++u)
    for (VertexId w = u + 1; w < 5; ++w) k5.emplace_back(u, w);
  for (VertexId u = 0; u < 3; ++u)
    for (VertexId w = 3; w < 6; ++w) k33.emplace_back(u, w);
  EXPECT_FALSE(embed_edge_list(5, k5));
  EXPECT_FALSE(embed_edge_list(6, k33));
  EXPECT_THROW(embed_edge_list(11, {}), GraphError);
}

TEST(Embedding, AgreesWithGeneratedEmbeddings) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RotationGraph g = gen_random_triangulation(4 + seed % 7, seed, GenMode::Flip);
    const auto e = embed_edge_list(g.vertex_count(), g.edges());
    ASSERT_TRUE(e);
    EXPECT_EQ(e->face_count(), g.face_count());
    EXPECT_EQ(e->edges(), g.edges());
  }
}
