#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "fourcolor/atlas.hpp"
#include "testing/oracles.hpp"

using namespace fourcolor;
namespace oracle = testing_oracle;

namespace {

ResidualSets sets_of(std::initializer_list<ColorSet> s) { return ResidualSets{std::vector<ColorSet>(s)}; }

std::vector<std::uint8_t> bits_of(const ResidualSets& r) {
  std::vector<std::uint8_t> out;
  for (ColorSet s : r.sets) out.push_back(s.bits());
  return out;
}

Classification as_classification(oracle::Kind k) {
  switch (k) {
    case oracle::Kind::Avoidable5th: return Classification::Avoidable5th;
    case oracle::Kind::GoodLE3: return Classification::GoodLE3;
    case oracle::Kind::Forced4: return Classification::Forced4;
  }
  return Classification::GoodLE3;
}

ClassCounts counts(std::size_t a, std::size_t g, std::size_t f) {
  return {{Classification::Avoidable5th, a}, {Classification::GoodLE3, g}, {Classification::Forced4, f}};
}

}  // namespace

TEST(AtlasEnumeration, MatchesNaiveFilter) {
  for (std::size_t d : {3u, 4u, 5u})
    for (int mask = 0; mask < 8; ++mask) {
      const AtlasConstraints c{(mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0};
      const auto configs = enumerate_configs(d, c);
      const auto naive = oracle::naive_configs(d, c.adjacent_intersect, c.no_adjacent_full, c.pairs_at_five);
      std::set<std::vector<std::uint8_t>> a, b(naive.begin(), naive.end());
      for (const auto& cfg : configs) a.insert(bits_of(cfg.sets));
      EXPECT_EQ(a.size(), configs.size());
      EXPECT_EQ(a, b) << "d=" << d << " mask=" << mask;
    }
}

TEST(AtlasEnumeration, ClassificationMatchesBruteForce) {
  for (std::size_t d : {4u, 5u})
    for (const auto& cfg : enumerate_configs(d, AtlasConstraints::none()))
      ASSERT_EQ(cfg.classification, as_classification(oracle::classify(bits_of(cfg.sets)))) << cfg.sets.to_string();
}

TEST(AtlasEnumeration, UnconstrainedTotal) {
  EXPECT_EQ(enumerate_configs(5, AtlasConstraints::none()).size(), 16807u);
  EXPECT_EQ(atlas_report(5).unconstrained_total, 16807u);
  EXPECT_EQ(atlas_report(4).unconstrained_total, 2401u);
  EXPECT_THROW(enumerate_configs(6), std::invalid_argument);
}

TEST(AtlasConstraintsTest, TargetedRejections) {
  const AtlasConstraints all;
  EXPECT_TRUE(satisfies(sets_of({{1, 2}, {2, 3}, {1, 3}, {1, 2}, {2, 3}}), all));
  // Consecutive sets {1,2} and {3} are disjoint.
  EXPECT_FALSE(satisfies(sets_of({{1, 2}, {3}, {1, 3}, {1, 2}}), all));
  EXPECT_TRUE(satisfies(sets_of({{1, 2}, {3}, {1, 3}, {1, 2}}), {false, true, true}));
  // Two full sets side by side.
  EXPECT_FALSE(satisfies(sets_of({{1, 2, 3}, {1, 2, 3}, {1, 2}, {1, 2}}), all));
  EXPECT_TRUE(satisfies(sets_of({{1, 2, 3}, {1, 2, 3}, {1, 2}, {1, 2}}), {true, false, true}));
  // A singleton at d = 5, but not at d = 4.
  EXPECT_FALSE(satisfies(sets_of({{1}, {1, 2}, {1, 2}, {1, 2}, {1, 2}}), all));
  EXPECT_TRUE(satisfies(sets_of({{1}, {1, 2}, {1, 2}, {1, 2}, {1, 2}}), {true, true, false}));
  EXPECT_TRUE(satisfies(sets_of({{1}, {1, 2}, {1, 2}, {1, 2}}), all));
  // Wrap-around pair.
  EXPECT_FALSE(satisfies(sets_of({{1, 2}, {1, 2}, {1, 2}, {3}}), all));
}

TEST(AtlasClassify, KnownConfigurations) {
  EXPECT_EQ(classify(sets_of({{1, 2}, {1, 2}, {1, 2}, {1, 2}, {1, 2, 3}})), Classification::Avoidable5th);
  EXPECT_EQ(classify(sets_of({{1, 2}, {1, 2}, {1, 3}, {1, 3}, {2, 3}})), Classification::Forced4);
  EXPECT_EQ(classify(sets_of({{1, 2}, {2, 3}, {1, 3}, {1, 2}, {2, 3}})), Classification::GoodLE3);
}

TEST(AtlasClassify, InvariantUnderColorPermutationAndRingSymmetry) {
  const auto configs = enumerate_configs(5, AtlasConstraints::none());
  std::array<Color, 4> perm{2, 3, 1, 4};
  for (std::size_t i = 0; i < configs.size(); i += 7) {
    const ResidualSets& r = configs[i].sets;
    ResidualSets permuted, rotated, reflected;
    for (std::size_t k = 0; k < r.size(); ++k) {
      ColorSet s;
      for (Color c : r[k].colors()) s.insert(perm[static_cast<std::size_t>(c - 1)]);
      permuted.sets.push_back(s);
      rotated.sets.push_back(r[k + 2]);
      reflected.sets.push_back(r[r.size() - k]);
    }
    EXPECT_EQ(classify(permuted), configs[i].classification);
    EXPECT_EQ(classify(rotated), configs[i].classification);
    EXPECT_EQ(classify(reflected), configs[i].classification);
  }
}

TEST(AtlasReduce, SwapOneTwoStaysInClass) {
  const auto configs = enumerate_configs(5);
  const auto classes = reduce_classes(configs, Reduction::Color);
  auto class_of = [&](const ResidualSets& r) {
    for (std::size_t i = 0; i < classes.size(); ++i)
      for (const auto& m : classes[i].members)
        if (m.sets == r) return static_cast<int>(i);
    return -1;
  };
  const ResidualSets a = sets_of({{1, 2}, {2, 3}, {1, 3}, {1, 2}, {2, 3}});
  const ResidualSets b = sets_of({{1, 2}, {1, 3}, {2, 3}, {1, 2}, {1, 3}});
  ASSERT_GE(class_of(a), 0);
  EXPECT_EQ(class_of(a), class_of(b));
}

TEST(AtlasReduce, ClassesPartitionConfigs) {
  const auto configs = enumerate_configs(5);
  for (Reduction red : {Reduction::Color, Reduction::ColorDihedral, Reduction::Dihedral, Reduction::Rotation,
                        Reduction::ColorRotation}) {
    std::set<std::uint32_t> keys;
    std::size_t members = 0;
    for (const auto& cls : reduce_classes(configs, red)) {
      EXPECT_EQ(cls.canonical.key(), cls.members.front().key());
      for (const auto& m : cls.members) {
        keys.insert(m.key());
        EXPECT_EQ(m.classification, cls.classification);
      }
      members += cls.members.size();
    }
    EXPECT_EQ(members, configs.size());
    EXPECT_EQ(keys.size(), configs.size());
  }
}

TEST(AtlasReport, FrozenCountsDegreeFive) {
  const AtlasReport r = atlas_report(5);
  EXPECT_EQ(r.statistic("configurations").total, 783u);
  EXPECT_EQ(r.statistic("configurations").by_class, counts(93, 540, 150));
  EXPECT_EQ(r.statistic("classes/color").by_class, counts(21, 90, 25));
  EXPECT_EQ(r.statistic("classes/color+dihedral").by_class, counts(5, 14, 4));
  EXPECT_EQ(r.statistic("classes/color+rotation").by_class, counts(5, 18, 5));
  EXPECT_EQ(r.statistic("orbits/dihedral").by_class, counts(18, 69, 15));
  EXPECT_EQ(r.statistic("orbits/rotation").by_class, counts(21, 108, 30));
  EXPECT_EQ(r.classes.size(), 136u);
  EXPECT_EQ(atlas_report(5, true).classes.size(), 23u);
}

TEST(AtlasReport, FrozenCountsDegreeFour) {
  const AtlasReport r = atlas_report(4);
  EXPECT_EQ(r.statistic("configurations").total, 816u);
  EXPECT_EQ(r.statistic("classes/color").total, 145u);
  EXPECT_EQ(r.statistic("classes/color+dihedral").total, 37u);
  EXPECT_EQ(r.statistic("classes/color+rotation").total, 43u);
  EXPECT_EQ(r.statistic("orbits/dihedral").total, 162u);
  EXPECT_EQ(r.statistic("orbits/rotation").total, 216u);
}

TEST(AtlasReport, StatedCountsOnColorDihedralBasis) {
  const AtlasReport r = atlas_report(5, true);
  std::size_t agreeing = 0;
  for (const auto& c : r.comparisons)
    if (c.basis == "color permutations + ring symmetry" && (c.quantity == "classes" || c.quantity == "squared classes")) {
      EXPECT_TRUE(c.agrees()) << c.quantity;
      ++agreeing;
    }
  EXPECT_EQ(agreeing, 2u);
  const std::string text = r.to_text();
  EXPECT_NE(text.find("agrees"), std::string::npos);
  EXPECT_NE(text.find("23 classes"), std::string::npos);
}

TEST(AtlasReport, SampleColoringsRespectSets) {
  for (const auto& cls : atlas_report(5, true).classes) {
    const auto s = sample_ring_coloring(cls.canonical.sets);
    if (cls.classification == Classification::Avoidable5th) {
      EXPECT_FALSE(s);
      continue;
    }
    ASSERT_TRUE(s);
    for (std::size_t i = 0; i < s->size(); ++i) {
      EXPECT_FALSE(cls.canonical.sets[i].contains((*s)[i]));
      EXPECT_NE((*s)[i], (*s)[(i + 1) % s->size()]);
    }
    const std::set<Color> used(s->begin(), s->end());
    EXPECT_EQ(used.size() == 4, cls.classification == Classification::Forced4);
  }
}
