#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fourcolor/atlas.hpp"
#include "fourcolor/color.hpp"
#include "fourcolor/embedding.hpp"
#include "fourcolor/plane_graph.hpp"
#include "fourcolor/trace.hpp"

namespace fourcolor::io {

using json = nlohmann::json;

/// Malformed input. `line` is 1-based, 0 when no line applies.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// ---- edge list: "p V E", then "e u w" per edge, 1-indexed, "c" comments ----

struct EdgeListFile {
  std::size_t n = 0;
  std::vector<Edge> edges;  ///< 0-indexed
};

inline EdgeListFile parse_edge_list(std::string_view text) {
  EdgeListFile out;
  bool header = false;
  std::size_t declared = 0, lineno = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      if (header) throw FormatError("second 'p' header", lineno);
      long long v = -1, e = -1;
      std::string extra;
      if (!(ls >> v >> e) || v < 0 || e < 0 || (ls >> extra))
        throw FormatError("expected 'p <V> <E>' with non-negative counts", lineno);
      out.n = static_cast<std::size_t>(v);
      declared = static_cast<std::size_t>(e);
      header = true;
    } else if (tag == "e") {
      if (!header) throw FormatError("edge before the 'p' header", lineno);
      long long u = 0, w = 0;
      std::string extra;
      if (!(ls >> u >> w) || (ls >> extra)) throw FormatError("expected 'e <u> <w>'", lineno);
      if (u < 1 || w < 1 || u > static_cast<long long>(out.n) || w > static_cast<long long>(out.n))
        throw FormatError("endpoint outside 1.." + std::to_string(out.n), lineno);
      if (u == w) throw FormatError("self-loop at vertex " + std::to_string(u), lineno);
      Edge e{static_cast<VertexId>(std::min(u, w) - 1), static_cast<VertexId>(std::max(u, w) - 1)};
      for (const Edge& f : out.edges)
        if (f == e) throw FormatError("repeated edge " + std::to_string(u) + " " + std::to_string(w), lineno);
      out.edges.push_back(e);
    } else {
      throw FormatError("unknown line tag '" + tag + "'", lineno);
    }
  }
  if (!header) throw FormatError("missing 'p <V> <E>' header");
  if (out.edges.size() != declared)
    throw FormatError("header declares " + std::to_string(declared) + " edges, found " +
                      std::to_string(out.edges.size()));
  return out;
}

inline std::string emit_edge_list(const RotationGraph& g, const std::string& comment = {}) {
  std::string s;
  if (!comment.empty()) s += "c " + comment + "\n";
  s += "p " + std::to_string(g.vertex_count()) + " " + std::to_string(g.edge_count()) + "\n";
  for (auto [u, w] : g.edges()) s += "e " + std::to_string(u + 1) + " " + std::to_string(w + 1) + "\n";
  return s;
}

// ---- rotation document: {"n", "generator"?, "seed"?, "rotations"} ----

struct RotationFile {
  RotationGraph graph;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> generator;
};

namespace detail {

/// Line on which each entry of the top-level "rotations" array starts.
inline std::vector<std::size_t> rotation_lines(std::string_view text) {
  std::vector<std::size_t> lines;
  const auto key = text.find("\"rotations\"");
  if (key == std::string_view::npos) return lines;
  std::size_t line = 1;
  for (std::size_t i = 0; i < key; ++i)
    if (text[i] == '\n') ++line;
  int depth = 0;
  for (std::size_t i = key; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '\n') ++line;
    if (ch == '[') {
      if (++depth == 2) lines.push_back(line);
    } else if (ch == ']') {
      if (--depth == 0) break;
    }
  }
  return lines;
}

}  // namespace detail

inline RotationFile parse_rotation_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw FormatError(std::string("invalid JSON: ") + e.what(), line);
  }
  if (!doc.is_object() || !doc.contains("rotations") || !doc["rotations"].is_array())
    throw FormatError("expected an object with a \"rotations\" array");
  const auto lines = detail::rotation_lines(text);
  auto line_of = [&](std::size_t v) { return v < lines.size() ? lines[v] : 0; };

  Rotations rot;
  for (const auto& entry : doc["rotations"]) {
    const std::size_t v = rot.size();
    if (!entry.is_array()) throw FormatError("rotation of vertex " + std::to_string(v) + " is not an array", line_of(v));
    std::vector<VertexId> r;
    for (const auto& x : entry) {
      if (!x.is_number_integer())
        throw FormatError("rotation of vertex " + std::to_string(v) + " holds a non-integer", line_of(v));
      r.push_back(x.get<VertexId>());
    }
    rot.push_back(std::move(r));
  }
  if (doc.contains("n")) {
    if (!doc["n"].is_number_unsigned() || doc["n"].get<std::size_t>() != rot.size())
      throw FormatError("\"n\" does not match the " + std::to_string(rot.size()) + " rotations given");
  }
  RotationFile out{RotationGraph{}, std::nullopt, std::nullopt};
  try {
    out.graph = RotationGraph::build(std::move(rot));
  } catch (const GraphError& e) {
    const std::size_t line = e.vertex() >= 0 ? line_of(static_cast<std::size_t>(e.vertex()))
                                             : (lines.empty() ? 0 : lines.front());
    throw FormatError(e.what(), line);
  }
  if (doc.contains("seed") && doc["seed"].is_number_unsigned()) out.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("generator") && doc["generator"].is_string()) out.generator = doc["generator"].get<std::string>();
  return out;
}

/// Canonical form: fixed key order, one rotation per line.
inline std::string emit_rotation_json(const RotationGraph& g, std::optional<std::uint64_t> seed = std::nullopt,
                                      const std::optional<std::string>& generator = std::nullopt) {
  std::string s = "{\n  \"n\": " + std::to_string(g.vertex_count()) + ",\n";
  if (generator) s += "  \"generator\": " + json(*generator).dump() + ",\n";
  if (seed) s += "  \"seed\": " + std::to_string(*seed) + ",\n";
  s += "  \"rotations\": [";
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
    s += v ? ",\n    [" : "\n    [";
    bool first = true;
    for (VertexId w : g.rotation(v)) {
      s += (first ? "" : ", ") + std::to_string(w);
      first = false;
    }
    s += "]";
  }
  s += g.vertex_count() ? "\n  ]\n}\n" : "]\n}\n";
  return s;
}

// ---- instances ----

struct Instance {
  RotationGraph graph;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> generator;
  bool from_edge_list = false;
};

/// Rotation documents start with '{'; anything else is read as an edge list
/// and embedded by exhaustive search (small graphs only).
inline Instance parse_instance(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    RotationFile f = parse_rotation_json(text);
    return {std::move(f.graph), f.seed, std::move(f.generator), false};
  }
  EdgeListFile el = parse_edge_list(text);
  if (el.n > kMaxEmbedSearchVertices)
    throw FormatError("edge lists are embedded only up to " + std::to_string(kMaxEmbedSearchVertices) +
                      " vertices; this one has " + std::to_string(el.n) +
                      ". Supply a rotation document or use a generator");
  auto g = embed_edge_list(el.n, el.edges);
  if (!g) throw FormatError("graph is not planar");
  return {std::move(*g), std::nullopt, std::nullopt, true};
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << content;
}

inline Instance load_instance(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_instance(text);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

// ---- colorings: {"n", "colors"} with colors[v] for 0-indexed v ----

inline std::string emit_coloring_json(const Coloring& c) {
  json doc;
  doc["n"] = c.size();
  doc["colors"] = c.values();
  return doc.dump() + "\n";
}

inline Coloring parse_coloring_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("colors") || !doc["colors"].is_array())
    throw FormatError("expected an object with a \"colors\" array");
  std::vector<Color> colors;
  for (const auto& x : doc["colors"]) {
    if (!x.is_number_integer()) throw FormatError("color of vertex " + std::to_string(colors.size()) + " is not an integer");
    colors.push_back(x.get<Color>());
  }
  if (doc.contains("n") && (!doc["n"].is_number_unsigned() || doc["n"].get<std::size_t>() != colors.size()))
    throw FormatError("\"n\" does not match the number of colors");
  return Coloring(std::move(colors));
}

// ---- DOT ----

inline std::string emit_dot(const RotationGraph& g, const Coloring* c = nullptr) {
  static const char* fills[] = {"white", "tomato", "gold", "lightskyblue", "palegreen", "orchid"};
  std::string s = "graph G {\n  node [style=filled];\n";
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
    s += "  " + std::to_string(v);
    if (c && static_cast<std::size_t>(v) < c->size() && (*c)[v] >= 0 && (*c)[v] <= kMaxColor)
      s += " [label=\"" + std::to_string(v) + ":" + std::to_string((*c)[v]) + "\", fillcolor=" + fills[(*c)[v]] + "]";
    s += ";\n";
  }
  for (auto [u, w] : g.edges()) s += "  " + std::to_string(u) + " -- " + std::to_string(w) + ";\n";
  return s + "}\n";
}

// ---- traces and atlas reports ----

inline json trace_to_json(const Trace& t) {
  json doc;
  json events = json::array();
  for (const auto& e : t.events()) {
    json j{{"kind", to_string(e.kind)}, {"depth", e.depth}, {"order", e.order}, {"success", e.success}};
    if (e.vertex >= 0) j["vertex"] = e.vertex;
    if (e.degree > 0) j["degree"] = e.degree;
    if (!e.strategy.empty()) j["strategy"] = e.strategy;
    if (!e.detail.empty()) j["detail"] = e.detail;
    events.push_back(std::move(j));
  }
  json counts = json::object();
  for (EventKind k : kAllEventKinds) counts[to_string(k)] = t.count(k);
  doc["counts"] = counts;
  doc["strategies"] = t.strategy_counters();
  doc["notes"] = t.notes();
  doc["events"] = std::move(events);
  return doc;
}

inline json atlas_to_json(const AtlasReport& r) {
  auto counts = [](const ClassCounts& c) {
    json j = json::object();
    for (auto [k, n] : c) j[to_string(k)] = n;
    return j;
  };
  auto sets = [](const ResidualSets& s) {
    json j = json::array();
    for (ColorSet x : s.sets) j.push_back(x.colors());
    return j;
  };
  json doc;
  doc["d"] = r.d;
  doc["unconstrained_total"] = r.unconstrained_total;
  json stats = json::object();
  for (const auto& s : r.statistics) stats[s.name] = {{"total", s.total}, {"by_class", counts(s.by_class)}};
  doc["statistics"] = stats;
  json comps = json::array();
  for (const auto& c : r.comparisons)
    comps.push_back({{"quantity", c.quantity},
                     {"basis", c.basis},
                     {"computed", c.computed},
                     {"stated", c.stated},
                     {"agrees", c.agrees()}});
  doc["comparisons"] = comps;
  doc["class_reduction"] = to_string(r.dihedral_table ? Reduction::ColorDihedral : Reduction::Color);
  json classes = json::array();
  for (const auto& c : r.classes) {
    json j{{"canonical", sets(c.canonical.sets)},
           {"classification", to_string(c.classification)},
           {"orbit_size", c.members.size()}};
    if (auto s = sample_ring_coloring(c.canonical.sets)) j["sample_ring_coloring"] = *s;
    json members = json::array();
    for (const auto& m : c.members) members.push_back(sets(m.sets));
    j["members"] = std::move(members);
    classes.push_back(std::move(j));
  }
  doc["classes"] = std::move(classes);
  return doc;
}

}  // namespace fourcolor::io
