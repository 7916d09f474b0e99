#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "fourcolor/colorer.hpp"
#include "fourcolor/formats.hpp"
#include "fourcolor/generators.hpp"
#include "fourcolor/oracle.hpp"

namespace fourcolor {

/// FNV-1a over the canonical rotation document of the graph alone.
inline std::string instance_digest(const RotationGraph& g) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : io::emit_rotation_json(g)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Seed of instance `index` in a campaign; independent of job count.
inline std::uint64_t instance_seed(std::uint64_t campaign_seed, std::uint64_t index) {
  return splitmix64(campaign_seed ^ splitmix64(index));
}

/// Job count from FOURCOLOR_JOBS, else the hardware concurrency.
inline std::size_t default_jobs() {
  if (const char* env = std::getenv("FOURCOLOR_JOBS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct RunRecord {
  std::size_t index = 0;
  std::string digest;
  std::uint64_t seed = 0;
  std::string generator;
  std::size_t n = 0;
  std::string algorithm = kAlgorithmVersion;
  int colors_used = 0;
  bool verified = false;
  std::map<std::string, std::size_t> events;
  std::map<std::string, std::size_t> strategies;
  std::map<std::string, std::size_t> notes;
  std::size_t gap_events = 0;
  std::string error;
  double wall_ms = 0;

  nlohmann::json to_json(bool with_timing = true) const {
    nlohmann::json j{{"index", index},     {"digest", digest},         {"seed", seed},
                     {"generator", generator}, {"n", n},               {"algorithm", algorithm},
                     {"colors_used", colors_used}, {"verified", verified}, {"events", events},
                     {"strategies", strategies}, {"notes", notes},     {"gap_events", gap_events}};
    if (!error.empty()) j["error"] = error;
    if (with_timing) j["wall_ms"] = wall_ms;
    return j;
  }
};

/// Colors g once and fills a record. Exceptions are captured, not thrown.
inline RunRecord run_instance(const RotationGraph& g, const Budget& budget, Trace* trace_out = nullptr) {
  RunRecord rec;
  rec.n = g.vertex_count();
  rec.digest = instance_digest(g);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    ColorResult res = four_color(g, budget);
    const VerifierReport rep = verify(g, res.coloring);
    rec.verified = rep.proper;
    rec.colors_used = rep.colors_used;
    for (EventKind k : kAllEventKinds)
      if (res.trace.count(k)) rec.events[to_string(k)] = res.trace.count(k);
    rec.strategies = res.trace.strategy_counters();
    rec.notes = res.trace.notes();
    rec.gap_events = res.trace.count(EventKind::GapEvent);
    if (trace_out) *trace_out = std::move(res.trace);
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

enum class ModeMix { Stacked, Flip, Mixed };

struct FuzzOptions {
  std::size_t n_min = 5;
  std::size_t n_max = 200;
  std::size_t count = 1000;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  ModeMix modes = ModeMix::Mixed;
  Budget budget;
  /// When set: runs.jsonl is appended there and flagged instances are
  /// written under corpus/.
  std::optional<std::filesystem::path> out_dir;
};

struct FuzzSummary {
  std::size_t runs = 0;
  std::size_t verifier_failures = 0;
  std::size_t exceptions = 0;
  std::size_t five_color_runs = 0;
  std::size_t gap_runs = 0;
  std::size_t gap_events = 0;
  std::size_t persisted = 0;
  std::map<std::string, std::size_t> strategies;
  std::map<std::string, std::size_t> events;

  std::string to_text() const {
    std::string s = "runs: " + std::to_string(runs) + "\nverifier failures: " + std::to_string(verifier_failures) +
                    "\nexceptions: " + std::to_string(exceptions) + "\nfive-color runs: " +
                    std::to_string(five_color_runs) + "\nruns with GapEvent: " + std::to_string(gap_runs) +
                    " (events: " + std::to_string(gap_events) + ")\npersisted instances: " + std::to_string(persisted) +
                    "\n";
    for (const auto& [k, v] : events) s += "event " + k + ": " + std::to_string(v) + "\n";
    for (const auto& [k, v] : strategies) s += "strategy " + k + ": " + std::to_string(v) + "\n";
    return s;
  }
};

/// Instance `index` of a campaign, as (graph, seed, generator label).
struct FuzzInstance {
  RotationGraph graph;
  std::uint64_t seed = 0;
  GenMode mode = GenMode::Stacked;
};

inline FuzzInstance fuzz_instance(const FuzzOptions& o, std::size_t index) {
  const std::uint64_t s = instance_seed(o.seed, index);
  const std::size_t span = o.n_max - o.n_min + 1;
  const std::size_t n = o.n_min + static_cast<std::size_t>(splitmix64(s) % span);
  GenMode mode = o.modes == ModeMix::Flip ? GenMode::Flip : GenMode::Stacked;
  if (o.modes == ModeMix::Mixed) mode = (splitmix64(s + 1) & 1) ? GenMode::Flip : GenMode::Stacked;
  return {gen_random_triangulation(n, s, mode), s, mode};
}

/// Runs a campaign on `jobs` threads. Records reach `sink` (and runs.jsonl)
/// in index order regardless of scheduling.
inline FuzzSummary run_fuzz(const FuzzOptions& o, const std::function<void(const RunRecord&)>& sink = {}) {
  if (o.n_min < 4 || o.n_max < o.n_min) throw std::invalid_argument("fuzz: need 4 <= n-min <= n-max");
  std::ofstream records;
  std::filesystem::path corpus;
  if (o.out_dir) {
    corpus = *o.out_dir / "corpus";
    std::filesystem::create_directories(corpus);
    records.open(*o.out_dir / "runs.jsonl", std::ios::app);
    if (!records) throw std::runtime_error("fuzz: cannot open " + (*o.out_dir / "runs.jsonl").string());
  }

  std::vector<std::optional<RunRecord>> slots(o.count);
  std::vector<char> persisted(o.count, 0);
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < o.count; i = next++) {
      FuzzInstance inst = fuzz_instance(o, i);
      RunRecord rec = run_instance(inst.graph, o.budget);
      rec.index = i;
      rec.seed = inst.seed;
      rec.generator = to_string(inst.mode);
      bool keep = false;
      if (o.out_dir && (rec.gap_events > 0 || !rec.verified || !rec.error.empty())) {
        io::write_file((corpus / (rec.digest + ".json")).string(),
                       io::emit_rotation_json(inst.graph, inst.seed, std::string(to_string(inst.mode))));
        keep = true;
      }
      std::lock_guard<std::mutex> lock(mu);
      persisted[i] = keep;
      slots[i] = std::move(rec);
      ready.notify_all();
    }
  };

  const std::size_t jobs = std::max<std::size_t>(1, std::min(o.jobs, o.count));
  std::vector<std::thread> pool;
  for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);

  FuzzSummary sum;
  for (std::size_t i = 0; i < o.count; ++i) {
    RunRecord rec;
    {
      std::unique_lock<std::mutex> lock(mu);
      ready.wait(lock, [&] { return slots[i].has_value(); });
      rec = std::move(*slots[i]);
      slots[i].reset();
      sum.persisted += persisted[i];
    }
    ++sum.runs;
    if (!rec.error.empty())
      ++sum.exceptions;
    else if (!rec.verified)
      ++sum.verifier_failures;
    if (rec.colors_used > 4) ++sum.five_color_runs;
    if (rec.gap_events) ++sum.gap_runs;
    sum.gap_events += rec.gap_events;
    for (const auto& [k, v] : rec.strategies) sum.strategies[k] += v;
    for (const auto& [k, v] : rec.events) sum.events[k] += v;
    if (records) records << rec.to_json().dump() << "\n";
    if (sink) sink(rec);
  }
  for (auto& t : pool) t.join();
  return sum;
}

struct BenchRow {
  std::size_t n = 0;
  double color_ms = 0;
  double kempe_ms = 0;
  int color_colors = 0;
  int kempe_colors = 0;
};

/// Wall time of four_color and kempe_five_color on stacked triangulations.
inline std::vector<BenchRow> run_bench(const std::vector<std::size_t>& sizes, std::uint64_t seed = 1,
                                       const Budget& budget = {}) {
  std::vector<BenchRow> rows;
  for (std::size_t n : sizes) {
    const RotationGraph g = gen_random_triangulation(n, seed);
    BenchRow row{n, 0, 0, 0, 0};
    auto t0 = std::chrono::steady_clock::now();
    row.color_colors = verify(g, four_color(g, budget).coloring).colors_used;
    auto t1 = std::chrono::steady_clock::now();
    row.kempe_colors = verify(g, kempe_five_color(g)).colors_used;
    auto t2 = std::chrono::steady_clock::now();
    row.color_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    row.kempe_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fourcolor
