#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "fourcolor/color.hpp"
#include "fourcolor/ring.hpp"

namespace fourcolor {

enum class Classification { Avoidable5th, GoodLE3, Forced4 };

inline constexpr std::array kAllClassifications{Classification::Avoidable5th, Classification::GoodLE3,
                                                Classification::Forced4};

inline const char* to_string(Classification c) {
  switch (c) {
    case Classification::Avoidable5th: return "Avoidable5th";
    case Classification::GoodLE3: return "GoodLE3";
    case Classification::Forced4: return "Forced4";
  }
  return "?";
}

/// One ring configuration: residual sets R_1..R_d, each a subset of {1,2,3}.
struct RingConfig {
  ResidualSets sets;
  Classification classification = Classification::GoodLE3;

  std::size_t d() const { return sets.size(); }

  /// 4 bits per set, R_1 most significant; numeric order is lexicographic order.
  std::uint32_t key() const {
    std::uint32_t k = 0;
    for (ColorSet s : sets.sets) k = (k << 4) | static_cast<std::uint32_t>((s.bits() >> 1) & 0xF);
    return k;
  }
};

struct AtlasConstraints {
  bool adjacent_intersect = true;  ///< consecutive sets share a color
  bool no_adjacent_full = true;    ///< no two consecutive sets both {1,2,3}
  bool pairs_at_five = true;       ///< d = 5: every set has at least two colors

  static AtlasConstraints none() { return {false, false, false}; }
};

/// Nonempty subsets of {1,2,3} in ascending bit order.
inline const std::array<ColorSet, 7>& atlas_subsets() {
  static const std::array<ColorSet, 7> subsets = [] {
    std::array<ColorSet, 7> s{};
    for (unsigned b = 1; b < 8; ++b) s[b - 1] = ColorSet::from_bits(static_cast<std::uint8_t>(b << 1));
    return s;
  }();
  return subsets;
}

inline bool satisfies(const ResidualSets& r, const AtlasConstraints& c) {
  const std::size_t d = r.size();
  const ColorSet full = ColorSet::first(3);
  for (std::size_t i = 0; i < d; ++i) {
    const ColorSet a = r[i], b = r[i + 1];
    if (a.empty() || !a.subset_of(full)) return false;
    if (c.adjacent_intersect && (a & b).empty()) return false;
    if (c.no_adjacent_full && a == full && b == full) return false;
    if (c.pairs_at_five && d == 5 && a.size() < 2) return false;
  }
  return true;
}

/// Avoidable5th: no ring coloring inside {1,2,3,4}. Forced4: some, but every
/// one uses all four colors. GoodLE3: a three-color ring coloring exists.
inline Classification classify(const ResidualSets& sets) {
  if (!ring_list_color(sets, ColorSet::first(4))) return Classification::Avoidable5th;
  if (!ring_three_colorable(sets)) return Classification::Forced4;
  return Classification::GoodLE3;
}

inline std::vector<RingConfig> enumerate_configs(std::size_t d, const AtlasConstraints& c = {}) {
  if (d < 1 || d > 5) throw std::invalid_argument("enumerate_configs: d must be in 1..5");
  const auto& subsets = atlas_subsets();
  std::vector<RingConfig> out;
  std::vector<std::size_t> idx(d, 0);
  while (true) {
    ResidualSets r;
    for (std::size_t i : idx) r.sets.push_back(subsets[i]);
    if (satisfies(r, c)) out.push_back({r, classify(r)});
    std::size_t pos = d;
    while (pos > 0 && ++idx[pos - 1] == subsets.size()) idx[--pos] = 0;
    if (pos == 0) break;
  }
  return out;
}

struct AtlasClass {
  RingConfig canonical;
  std::vector<RingConfig> members;  ///< ascending by key
  Classification classification = Classification::GoodLE3;
};

enum class Reduction { Color, ColorDihedral, Dihedral, Rotation, ColorRotation };

inline const char* to_string(Reduction r) {
  switch (r) {
    case Reduction::Color: return "color permutations";
    case Reduction::ColorDihedral: return "color permutations + ring rotations/reflections";
    case Reduction::Dihedral: return "ring rotations/reflections";
    case Reduction::Rotation: return "ring rotations";
    case Reduction::ColorRotation: return "color permutations + ring rotations";
  }
  return "?";
}

namespace detail {

inline std::vector<std::array<Color, 4>> color_permutations() {
  std::vector<std::array<Color, 4>> out;
  std::array<Color, 4> p{1, 2, 3, 4};
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::vector<ResidualSets> ring_images(const ResidualSets& r, bool reflections) {
  const std::size_t d = r.size();
  std::vector<ResidualSets> out;
  for (std::size_t s = 0; s < d; ++s) {
    ResidualSets rot, ref;
    for (std::size_t i = 0; i < d; ++i) {
      rot.sets.push_back(r[s + i]);
      ref.sets.push_back(r[s + d - i]);
    }
    out.push_back(std::move(rot));
    if (reflections) out.push_back(std::move(ref));
  }
  return out;
}

}  // namespace detail

/// Orbits of `configs` under the chosen action. Images leaving the config
/// list (for instance a set picking up color 4) are dropped, so orbits are
/// the group orbits intersected with the list. Classes are ordered by their
/// canonical (lexicographically smallest) member.
inline std::vector<AtlasClass> reduce_classes(const std::vector<RingConfig>& configs,
                                              Reduction reduction = Reduction::Color) {
  std::unordered_map<std::uint32_t, std::size_t> index;
  for (std::size_t i = 0; i < configs.size(); ++i) index.emplace(configs[i].key(), i);
  const bool colors = reduction == Reduction::Color || reduction == Reduction::ColorDihedral ||
                      reduction == Reduction::ColorRotation;
  const bool ring = reduction != Reduction::Color;
  const bool reflections = reduction == Reduction::ColorDihedral || reduction == Reduction::Dihedral;
  std::vector<std::array<Color, 4>> perms;
  if (colors)
    perms = detail::color_permutations();
  else
    perms.push_back({1, 2, 3, 4});

  std::vector<char> seen(configs.size(), 0);
  std::vector<std::size_t> order(configs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return configs[a].key() < configs[b].key(); });

  std::vector<AtlasClass> classes;
  for (std::size_t start : order) {
    if (seen[start]) continue;
    // One application of the group from any member yields the whole orbit.
    std::vector<std::size_t> members;
    const ResidualSets& base = configs[start].sets;
    for (const auto& p : perms) {
      const ColorPermutation pi = ColorPermutation::from_images(std::array<Color, 5>{p[0], p[1], p[2], p[3], 5});
      ResidualSets img;
      for (ColorSet s : base.sets) img.sets.push_back(pi.apply(s));
      std::vector<ResidualSets> variants = ring ? detail::ring_images(img, reflections) : std::vector{img};
      for (const auto& v : variants) {
        auto it = index.find(RingConfig{v}.key());
        if (it == index.end() || seen[it->second]) continue;
        seen[it->second] = 1;
        members.push_back(it->second);
      }
    }
    std::sort(members.begin(), members.end(),
              [&](std::size_t a, std::size_t b) { return configs[a].key() < configs[b].key(); });
    AtlasClass cls;
    cls.canonical = configs[members.front()];
    cls.classification = cls.canonical.classification;
    for (std::size_t m : members) {
      if (configs[m].classification != cls.classification)
        throw std::logic_error("classification is not constant on the orbit of " + cls.canonical.sets.to_string());
      cls.members.push_back(configs[m]);
    }
    classes.push_back(std::move(cls));
  }
  return classes;
}

using ClassCounts = std::map<Classification, std::size_t>;

struct AtlasStatistic {
  std::string name;
  std::size_t total = 0;
  ClassCounts by_class;
};

struct AtlasComparison {
  std::string quantity;
  std::size_t computed = 0;
  std::size_t stated = 0;
  std::string basis;

  bool agrees() const { return computed == stated; }
};

struct AtlasReport {
  std::size_t d = 0;
  bool dihedral_table = false;
  std::size_t unconstrained_total = 0;
  std::vector<RingConfig> configs;
  std::vector<AtlasClass> classes;  ///< table rows, color or color+dihedral
  std::vector<AtlasStatistic> statistics;
  std::vector<AtlasComparison> comparisons;

  const AtlasStatistic& statistic(const std::string& name) const {
    for (const auto& s : statistics)
      if (s.name == name) return s;
    throw std::out_of_range("no atlas statistic named " + name);
  }

  std::string to_text() const;
};

namespace detail {

inline AtlasStatistic count_classes(const std::string& name, const std::vector<AtlasClass>& classes) {
  AtlasStatistic s{name, classes.size(), {}};
  for (Classification c : kAllClassifications) s.by_class[c] = 0;
  for (const auto& cls : classes) ++s.by_class[cls.classification];
  return s;
}

}  // namespace detail

/// Ring coloring witnessing a class: three colors when possible, else four.
inline std::optional<std::vector<Color>> sample_ring_coloring(const ResidualSets& sets) {
  if (auto s = ring_three_colorable(sets)) return s->colors;
  return ring_list_color(sets, ColorSet::first(4));
}

/// Enumerates, classifies and reduces the ring configurations for d and
/// compares the counts with the ones stated in the source text.
inline AtlasReport atlas_report(std::size_t d, bool dihedral_table = false, const AtlasConstraints& constraints = {}) {
  AtlasReport r;
  r.d = d;
  r.dihedral_table = dihedral_table;
  r.unconstrained_total = 1;
  for (std::size_t i = 0; i < d; ++i) r.unconstrained_total *= atlas_subsets().size();
  r.configs = enumerate_configs(d, constraints);

  AtlasStatistic configs{"configurations", r.configs.size(), {}};
  for (Classification c : kAllClassifications) configs.by_class[c] = 0;
  for (const auto& c : r.configs) ++configs.by_class[c.classification];
  r.statistics.push_back(configs);

  const auto color = reduce_classes(r.configs, Reduction::Color);
  const auto color_dihedral = reduce_classes(r.configs, Reduction::ColorDihedral);
  r.statistics.push_back(detail::count_classes("classes/color", color));
  r.statistics.push_back(detail::count_classes("classes/color+dihedral", color_dihedral));
  r.statistics.push_back(detail::count_classes("classes/color+rotation", reduce_classes(r.configs, Reduction::ColorRotation)));
  r.statistics.push_back(detail::count_classes("orbits/dihedral", reduce_classes(r.configs, Reduction::Dihedral)));
  r.statistics.push_back(detail::count_classes("orbits/rotation", reduce_classes(r.configs, Reduction::Rotation)));
  r.classes = dihedral_table ? color_dihedral : color;

  auto stat = [&](const std::string& name) -> const AtlasStatistic& { return r.statistic(name); };
  if (d == 5) {
    r.comparisons = {
        {"classes", stat("classes/color").total, 23, "color permutations"},
        {"classes", stat("classes/color+dihedral").total, 23, "color permutations + ring symmetry"},
        {"squared classes", stat("classes/color").by_class.at(Classification::Forced4), 4, "color permutations"},
        {"squared classes", stat("classes/color+dihedral").by_class.at(Classification::Forced4), 4,
         "color permutations + ring symmetry"},
        {"figures", stat("orbits/dihedral").total, 88, "ring symmetry orbits"},
        {"squared figures", stat("orbits/dihedral").by_class.at(Classification::Forced4), 15, "ring symmetry orbits"},
        {"avoidable figures", stat("orbits/dihedral").by_class.at(Classification::Avoidable5th), 9,
         "ring symmetry orbits"},
        {"avoidable classes", stat("classes/color+dihedral").by_class.at(Classification::Avoidable5th), 5,
         "color permutations + ring symmetry"},
    };
  } else if (d == 4) {
    r.comparisons = {
        {"figures", stat("classes/color+dihedral").total, 5, "color permutations + ring symmetry"},
        {"figures", stat("classes/color").total, 5, "color permutations"},
        {"figures", stat("orbits/dihedral").total, 5, "ring symmetry orbits"},
    };
  }
  return r;
}

inline std::string AtlasReport::to_text() const {
  std::ostringstream out;
  auto counts = [](const ClassCounts& c) {
    std::string s;
    for (auto [k, n] : c) s += std::string(s.empty() ? "" : " ") + to_string(k) + "=" + std::to_string(n);
    return s;
  };
  out << "atlas d=" << d << "\n";
  out << "unconstrained tuples: " << unconstrained_total << "\n";
  for (const auto& s : statistics) out << s.name << ": " << s.total << " (" << counts(s.by_class) << ")\n";
  out << "comparisons:\n";
  for (const auto& c : comparisons)
    out << "  " << c.quantity << " [" << c.basis << "]: computed " << c.computed << ", stated " << c.stated << ": "
        << (c.agrees() ? "agrees" : "DISCREPANCY") << "\n";
  out << "class table (" << to_string(dihedral_table ? Reduction::ColorDihedral : Reduction::Color) << "): "
      << classes.size() << " classes\n";
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& c = classes[i];
    out << "  " << (i + 1) << ". " << c.canonical.sets.to_string() << " " << to_string(c.classification)
        << " orbit=" << c.members.size();
    if (auto s = sample_ring_coloring(c.canonical.sets)) {
      out << " ring=(";
      for (std::size_t k = 0; k < s->size(); ++k) out << (k ? "," : "") << (*s)[k];
      out << ")";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace fourcolor
