#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "fourcolor/plane_graph.hpp"

namespace fourcolor {

enum class GenMode { Stacked, Flip };

inline const char* to_string(GenMode m) { return m == GenMode::Stacked ? "stacked" : "flip"; }

inline GenMode parse_gen_mode(const std::string& s) {
  if (s == "stacked") return GenMode::Stacked;
  if (s == "flip") return GenMode::Flip;
  throw std::invalid_argument("unknown generator mode '" + s + "' (expected stacked or flip)");
}

namespace detail {

/// Reduction by modulo keeps results identical across standard libraries.
inline std::size_t pick(std::mt19937_64& rng, std::size_t k) { return static_cast<std::size_t>(rng() % k); }

inline Rotations k4_rotations() { return {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}}; }

/// Inserts x into the triangular face walked a -> b -> c.
inline void stack_vertex(Rotations& rot, VertexId x, VertexId a, VertexId b, VertexId c) {
  insert_in_corner(rot, a, b, x);
  insert_in_corner(rot, b, c, x);
  insert_in_corner(rot, c, a, x);
  rot.push_back({a, b, c});
}

/// Replaces edge u-w by the other diagonal of its two faces when that keeps
/// the graph simple and every degree at least 3.
inline bool try_flip(Rotations& rot, VertexId u, VertexId w) {
  if (rot[static_cast<std::size_t>(u)].size() <= 3 || rot[static_cast<std::size_t>(w)].size() <= 3) return false;
  const VertexId x = face_next(rot, u, w);  // face u -> w -> x
  const VertexId y = face_next(rot, w, u);  // face w -> u -> y
  if (x == y || has_neighbor(rot, x, y)) return false;
  auto erase = [&](VertexId a, VertexId b) {
    auto& r = rot[static_cast<std::size_t>(a)];
    r.erase(r.begin() + static_cast<std::ptrdiff_t>(index_of(r, b)));
  };
  erase(u, w);
  erase(w, u);
  // The merged face is u -> y -> w -> x -> u.
  insert_in_corner(rot, x, u, y);
  insert_in_corner(rot, y, w, x);
  return true;
}

}  // namespace detail

/// Random maximal plane graph on n vertices. Stacked mode starts from K4 and
/// repeatedly puts a new vertex into a uniformly chosen face other than the
/// outer one. Flip mode then performs 2n random edge-flip attempts.
inline RotationGraph gen_random_triangulation(std::size_t n, std::uint64_t seed, GenMode mode = GenMode::Stacked) {
  if (n < 4) throw std::invalid_argument("gen_random_triangulation: n must be at least 4");
  std::mt19937_64 rng(seed);
  Rotations rot = detail::k4_rotations();
  std::vector<std::array<VertexId, 3>> inner;
  {
    const RotationGraph k4 = RotationGraph::build(rot);
    const auto& fs = k4.faces();
    for (std::size_t i = 1; i < fs.size(); ++i) inner.push_back({fs[i].boundary[0], fs[i].boundary[1], fs[i].boundary[2]});
  }
  rot.reserve(n);
  for (auto x = static_cast<VertexId>(rot.size()); static_cast<std::size_t>(x) < n; ++x) {
    const std::size_t f = detail::pick(rng, inner.size());
    const auto [a, b, c] = inner[f];
    detail::stack_vertex(rot, x, a, b, c);
    inner[f] = {a, b, x};
    inner.push_back({b, c, x});
    inner.push_back({c, a, x});
  }
  if (mode == GenMode::Flip) {
    for (std::size_t k = 0; k < 2 * n; ++k) {
      const auto u = static_cast<VertexId>(detail::pick(rng, n));
      const auto& ru = rot[static_cast<std::size_t>(u)];
      detail::try_flip(rot, u, ru[detail::pick(rng, ru.size())]);
    }
  }
  return RotationGraph::build(std::move(rot));
}

/// Hub 0 joined to the cycle 1..d.
inline RotationGraph wheel(std::size_t d) {
  if (d < 3) throw std::invalid_argument("wheel: d must be at least 3");
  Rotations rot(d + 1);
  for (std::size_t i = 1; i <= d; ++i) {
    rot[0].push_back(static_cast<VertexId>(i));
    const auto next = static_cast<VertexId>(i % d + 1), prev = static_cast<VertexId>((i + d - 2) % d + 1);
    rot[i] = {next, 0, prev};
  }
  return RotationGraph::build(std::move(rot));
}

/// Fills face a -> b -> c of `host` with `guest`, identifying the guest face
/// p -> q -> r with c, b, a (in that order of p, q, r). Guest vertices off
/// that face are appended after the host's.
inline RotationGraph glue_into_face(const RotationGraph& host, std::array<VertexId, 3> host_face,
                                    const RotationGraph& guest, std::array<VertexId, 3> guest_face) {
  const auto [a, b, c] = host_face;
  const auto [p, q, r] = guest_face;
  if (!host.is_facial_triangle(a, b, c) || host.faces()[host.face_of(a, b)].boundary.size() != 3 ||
      host.face_of(a, b) != host.face_of(b, c))
    throw GraphError(GraphError::Kind::Precondition, "glue_into_face: host walk is not a triangular face");
  if (guest.face_of(p, q) != guest.face_of(q, r) || guest.faces()[guest.face_of(p, q)].boundary.size() != 3)
    throw GraphError(GraphError::Kind::Precondition, "glue_into_face: guest walk is not a triangular face");

  const std::size_t nh = host.vertex_count();
  std::vector<VertexId> map(guest.vertex_count(), -1);
  map[static_cast<std::size_t>(p)] = c;
  map[static_cast<std::size_t>(q)] = b;
  map[static_cast<std::size_t>(r)] = a;
  auto next_id = static_cast<VertexId>(nh);
  for (std::size_t v = 0; v < map.size(); ++v)
    if (map[v] == -1) map[v] = next_id++;

  Rotations rot = host.rotations();
  rot.resize(static_cast<std::size_t>(next_id));
  for (VertexId v = 0; v < static_cast<VertexId>(guest.vertex_count()); ++v) {
    if (v == p || v == q || v == r) continue;
    for (VertexId w : guest.rotation(v)) rot[static_cast<std::size_t>(map[static_cast<std::size_t>(v)])].push_back(map[static_cast<std::size_t>(w)]);
  }
  // At each face vertex the guest's neighbors strictly between its face
  // predecessor and successor go right after the predecessor's image.
  const std::array<std::array<VertexId, 3>, 3> corners{{{p, r, q}, {q, p, r}, {r, q, p}}};
  for (auto [v, pred, succ] : corners) {
    const auto rv = guest.rotation(v);
    const std::size_t start = *guest.position(v, pred);
    std::vector<VertexId> between;
    for (std::size_t k = 1; k < rv.size(); ++k) {
      const VertexId w = rv[(start + k) % rv.size()];
      if (w == succ) break;
      between.push_back(map[static_cast<std::size_t>(w)]);
    }
    auto& rh = rot[static_cast<std::size_t>(map[static_cast<std::size_t>(v)])];
    const std::size_t at = detail::index_of(rh, map[static_cast<std::size_t>(pred)]) + 1;
    rh.insert(rh.begin() + static_cast<std::ptrdiff_t>(at), between.begin(), between.end());
  }
  return RotationGraph::build(std::move(rot));
}

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"k4", "octahedron", "icosahedron", "errera", "wheel(d)", "glued-k4s"};
  return names;
}

/// Named fixtures. "wheel(d)" takes 3 <= d <= 64, e.g. "wheel(5)".
inline RotationGraph gen_fixture(const std::string& name) {
  if (name == "k4") return RotationGraph::build(detail::k4_rotations());
  if (name == "octahedron")
    return RotationGraph::build({{1, 3, 4, 2}, {0, 2, 5, 3}, {1, 0, 4, 5}, {4, 0, 1, 5}, {2, 0, 3, 5}, {3, 1, 2, 4}});
  if (name == "icosahedron")
    return RotationGraph::build({{1, 5, 11, 7, 8},
                                 {0, 8, 2, 6, 5},
                                 {1, 8, 9, 3, 6},
                                 {2, 9, 10, 4, 6},
                                 {3, 10, 11, 5, 6},
                                 {4, 11, 0, 1, 6},
                                 {5, 1, 2, 3, 4},
                                 {11, 10, 9, 8, 0},
                                 {7, 9, 2, 1, 0},
                                 {8, 7, 10, 3, 2},
                                 {9, 7, 11, 4, 3},
                                 {5, 4, 10, 7, 0}});
  if (name == "errera")
    return RotationGraph::build({{1, 14, 16, 7, 15},
                                 {0, 15, 9, 2, 14},
                                 {1, 9, 3, 10, 8, 14},
                                 {4, 10, 2, 9, 11},
                                 {5, 12, 10, 3, 11},
                                 {6, 12, 4, 11, 13},
                                 {7, 16, 8, 12, 5, 13},
                                 {16, 6, 13, 15, 0},
                                 {14, 2, 10, 12, 6, 16},
                                 {3, 2, 1, 15, 13, 11},
                                 {3, 4, 12, 8, 2},
                                 {13, 5, 4, 3, 9},
                                 {10, 4, 5, 6, 8},
                                 {15, 7, 6, 5, 11, 9},
                                 {2, 8, 16, 0, 1},
                                 {9, 1, 0, 7, 13},
                                 {8, 6, 7, 0, 14}});
  if (name == "glued-k4s") {
    const RotationGraph k4 = RotationGraph::build(detail::k4_rotations());
    const auto& f = k4.faces().front().boundary;
    return glue_into_face(k4, {f[0], f[1], f[2]}, k4, {f[0], f[1], f[2]});
  }
  if (name.rfind("wheel(", 0) == 0 && name.size() > 7 && name.back() == ')') {
    const std::string digits = name.substr(6, name.size() - 7);
    if (digits.find_first_not_of("0123456789") == std::string::npos && digits.size() <= 2) {
      const std::size_t d = std::stoul(digits);
      if (d >= 3 && d <= 64) return wheel(d);
    }
  }
  throw std::invalid_argument("unknown fixture '" + name + "'");
}

}  // namespace fourcolor
