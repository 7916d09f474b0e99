// fourcolor: command-line front end for the coloring library.
//
// Exit codes: 0 success, 1 improper coloring (verify), 2 five colors used
// (color), 3 malformed input or failed operation.

#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fourcolor/atlas.hpp"
#include "fourcolor/colorer.hpp"
#include "fourcolor/formats.hpp"
#include "fourcolor/fuzz.hpp"
#include "fourcolor/generators.hpp"

namespace fc = fourcolor;
namespace io = fourcolor::io;

namespace {

constexpr int kInputError = 3;

fc::Budget make_budget(std::size_t attempts, bool no_kempe_fallback) {
  fc::Budget b;
  b.max_attempts = attempts;
  b.kempe_fallback = !no_kempe_fallback;
  return b;
}

int cmd_color(const std::string& file, const fc::Budget& budget, const std::string& emit, const std::string& dot,
              const std::string& trace_path) {
  const io::Instance inst = io::load_instance(file);
  fc::ColorResult res = fc::four_color(inst.graph, budget);
  const fc::VerifierReport rep = fc::verify(inst.graph, res.coloring);
  std::cout << "vertices: " << inst.graph.vertex_count() << "\n";
  std::cout << "colors_used: " << rep.colors_used << "\n";
  std::cout << "verified: " << (rep.proper ? "yes" : "no") << "\n";
  std::cout << "trace: " << res.trace.summary() << "\n";
  if (!emit.empty()) io::write_file(emit, io::emit_coloring_json(res.coloring));
  if (!dot.empty()) io::write_file(dot, io::emit_dot(inst.graph, &res.coloring));
  if (!trace_path.empty()) io::write_file(trace_path, io::trace_to_json(res.trace).dump(2) + "\n");
  if (!rep.proper) return kInputError;
  return res.coloring.palette_size() > 4 ? 2 : 0;
}

int cmd_verify(const std::string& file, const std::string& coloring) {
  const io::Instance inst = io::load_instance(file);
  const fc::Coloring c = io::parse_coloring_json(io::read_file(coloring));
  if (c.size() != inst.graph.vertex_count())
    throw io::FormatError(coloring + ": coloring has " + std::to_string(c.size()) + " entries, graph has " +
                          std::to_string(inst.graph.vertex_count()) + " vertices");
  const fc::VerifierReport rep = fc::verify(inst.graph, c);
  if (rep.proper) {
    std::cout << "proper, colors_used: " << rep.colors_used << "\n";
    return 0;
  }
  const auto [u, w] = *rep.violating_edge;
  std::cout << "improper: edge " << u << " " << w << " has both endpoints colored " << c[u] << "\n";
  return 1;
}

int cmd_triangulate(const std::string& file, const std::string& out, bool edge_list) {
  const io::Instance inst = io::load_instance(file);
  const fc::Triangulation t = fc::triangulate(inst.graph);
  const std::string text = edge_list ? io::emit_edge_list(t.graph) : io::emit_rotation_json(t.graph);
  if (out.empty())
    std::cout << text;
  else
    io::write_file(out, text);
  std::cerr << "added edges: " << t.added_edges.size() << "\n";
  return 0;
}

int cmd_atlas(std::size_t d, bool dihedral, const std::string& out) {
  const fc::AtlasReport r = fc::atlas_report(d, dihedral);
  std::cout << r.to_text();
  const std::string path = out.empty() ? "atlas_d" + std::to_string(d) + ".json" : out;
  io::write_file(path, io::atlas_to_json(r).dump(2) + "\n");
  std::cout << "structured report: " << path << "\n";
  return 0;
}

int cmd_fuzz(fc::FuzzOptions o, const std::string& modes) {
  if (modes == "stacked")
    o.modes = fc::ModeMix::Stacked;
  else if (modes == "flip")
    o.modes = fc::ModeMix::Flip;
  else
    o.modes = fc::ModeMix::Mixed;
  const fc::FuzzSummary s = fc::run_fuzz(o);
  std::cout << s.to_text();
  return s.verifier_failures || s.exceptions ? 1 : 0;
}

int cmd_bench(const std::vector<std::size_t>& sizes, std::uint64_t seed) {
  std::cout << std::setw(10) << "n" << std::setw(14) << "color_ms" << std::setw(8) << "colors" << std::setw(14)
            << "kempe_ms" << std::setw(8) << "colors" << "\n";
  for (const auto& row : fc::run_bench(sizes, seed))
    std::cout << std::setw(10) << row.n << std::setw(14) << std::fixed << std::setprecision(2) << row.color_ms
              << std::setw(8) << row.color_colors << std::setw(14) << row.kempe_ms << std::setw(8) << row.kempe_colors
              << "\n";
  return 0;
}

int cmd_gen(const std::string& fixture, std::size_t n, std::uint64_t seed, const std::string& mode,
            const std::string& out, bool edge_list) {
  fc::RotationGraph g;
  std::optional<std::uint64_t> s;
  std::optional<std::string> label;
  if (!fixture.empty()) {
    g = fc::gen_fixture(fixture);
    label = fixture;
  } else {
    const fc::GenMode m = fc::parse_gen_mode(mode);
    g = fc::gen_random_triangulation(n, seed, m);
    s = seed;
    label = fc::to_string(m);
  }
  const std::string text = edge_list ? io::emit_edge_list(g) : io::emit_rotation_json(g, s, label);
  if (out.empty())
    std::cout << text;
  else
    io::write_file(out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Four-coloring workbench for plane graphs"};
  app.require_subcommand(1);

  std::string file, coloring, emit, dot, trace_path, out, fixture, modes = "mixed", gen_mode = "stacked";
  std::size_t attempts = fc::Budget{}.max_attempts, d = 5, n = 100;
  std::uint64_t seed = 1;
  bool no_kempe = false, dihedral = false, edge_list = false;
  fc::FuzzOptions fuzz;
  fuzz.jobs = fc::default_jobs();
  std::string fuzz_out;
  std::vector<std::size_t> sizes{1000, 10000};

  auto* color = app.add_subcommand("color", "four-color an instance");
  color->add_option("file", file, "rotation document or edge list")->required();
  color->add_option("--budget", attempts, "contraction attempts per call");
  color->add_option("--emit", emit, "write the coloring document here");
  color->add_option("--dot", dot, "write a DOT rendering here");
  color->add_option("--trace", trace_path, "write the trace document here");
  color->add_flag("--no-kempe-fallback", no_kempe, "fail instead of using five colors");

  auto* verify = app.add_subcommand("verify", "check a coloring");
  verify->add_option("file", file)->required();
  verify->add_option("coloring", coloring)->required();

  auto* tri = app.add_subcommand("triangulate", "add edges until every face is a triangle");
  tri->add_option("file", file)->required();
  tri->add_option("-o,--out", out);
  tri->add_flag("--edge-list", edge_list, "emit an edge list instead of a rotation document");

  auto* atlas = app.add_subcommand("atlas", "enumerate and classify ring configurations");
  atlas->add_option("--d", d)->check(CLI::IsMember({4, 5}));
  atlas->add_flag("--dihedral", dihedral, "tabulate classes modulo ring symmetry too");
  atlas->add_option("-o,--out", out, "structured report path (default atlas_d<d>.json)");

  auto* fz = app.add_subcommand("fuzz", "parallel random campaign");
  fz->add_option("--n-min", fuzz.n_min);
  fz->add_option("--n-max", fuzz.n_max);
  fz->add_option("--count", fuzz.count);
  fz->add_option("--seed", fuzz.seed);
  fz->add_option("--jobs", fuzz.jobs, "threads (default FOURCOLOR_JOBS or core count)");
  fz->add_option("--modes", modes)->check(CLI::IsMember({"stacked", "flip", "mixed"}));
  fz->add_option("--budget", attempts);
  fz->add_option("--out", fuzz_out, "directory for runs.jsonl and corpus/");

  auto* bench = app.add_subcommand("bench", "time four_color against the Kempe five-colorer");
  bench->add_option("--sizes", sizes)->delimiter(',');
  bench->add_option("--seed", seed);

  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--fixture", fixture, "k4, octahedron, icosahedron, errera, wheel(d), glued-k4s");
  gen->add_option("--n", n);
  gen->add_option("--seed", seed);
  gen->add_option("--mode", gen_mode)->check(CLI::IsMember({"stacked", "flip"}));
  gen->add_option("-o,--out", out);
  gen->add_flag("--edge-list", edge_list);

  CLI11_PARSE(app, argc, argv);

  try {
    if (color->parsed()) return cmd_color(file, make_budget(attempts, no_kempe), emit, dot, trace_path);
    if (verify->parsed()) return cmd_verify(file, coloring);
    if (tri->parsed()) return cmd_triangulate(file, out, edge_list);
    if (atlas->parsed()) return cmd_atlas(d, dihedral, out);
    if (fz->parsed()) {
      fuzz.budget = make_budget(attempts, false);
      if (!fuzz_out.empty()) fuzz.out_dir = std::filesystem::path(fuzz_out);
      return cmd_fuzz(fuzz, modes);
    }
    if (bench->parsed()) return cmd_bench(sizes, seed);
    if (gen->parsed()) return cmd_gen(fixture, n, seed, gen_mode, out, edge_list);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
