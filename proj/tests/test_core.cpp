#include <random>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace pbe;
using testing_helpers::ids;

namespace {

std::vector<ProjectId> pid(std::initializer_list<int> xs) {
  std::vector<ProjectId> out;
  for (auto x : xs)
    out.push_back(ProjectId{x});
  return out;
}

} // namespace

TEST(ProjectSetTest, SetAlgebra) {
  auto a = ProjectSet::from_bits(0b1011);
  auto b = ProjectSet::from_bits(0b0110);
  EXPECT_EQ((a | b).bits(), 0b1111u);
  EXPECT_EQ((a & b).bits(), 0b0010u);
  EXPECT_EQ((a - b).bits(), 0b1001u);
  EXPECT_EQ(a.size(), 3u);
  EXPECT_EQ(a.lowest(), 0u);
  EXPECT_TRUE((a & b).subset_of(a));
  EXPECT_EQ(a.positions(), (std::vector<std::size_t>{0, 1, 3}));
}

TEST(InstanceTest, CostOfSets) {
  const auto unit = Instance::unit(10, 3);
  EXPECT_EQ(unit.cost(ProjectSet{}), 0);
  EXPECT_EQ(unit.cost(unit.set_of({1, 2, 3})), 3);
  const auto inst = testing_helpers::with_costs({1, 1, 1, 6, 6, 3, 3}, 12);
  EXPECT_EQ(inst.cost(inst.set_of({4, 6, 7})), 12);
}

TEST(InstanceTest, RejectsBadProjects) {
  EXPECT_THROW(testing_helpers::with_costs({1, 4}, 3), InvalidInput);
  EXPECT_THROW(testing_helpers::with_costs({0}, 3), InvalidInput);
  EXPECT_THROW(Instance::unit(2, 0), InvalidInput);
  EXPECT_THROW(Instance({{ProjectId{1}, 1, {}}, {ProjectId{1}, 1, {}}}, 2), InvalidInput);
  EXPECT_THROW(Instance::unit(65, 1), InvalidInput);
}

TEST(InstanceTest, PositionsFollowIndexOrder) {
  Instance inst({{ProjectId{9}, 1, {}}, {ProjectId{4}, 1, {}}, {ProjectId{10}, 1, {}}}, 2);
  EXPECT_EQ(inst.id(0), ProjectId{4});
  EXPECT_EQ(inst.position(ProjectId{10}), 2u);
  EXPECT_THROW(inst.position(ProjectId{5}), InvalidInput);
}

TEST(GreedySelectTest, Examples) {
  const auto unit = Instance::unit(10, 3);
  EXPECT_EQ(ids(unit, greedy_select(unit, unit.set_of({1, 4, 5, 10}), pid({1, 4, 5, 10}), 3)),
            (std::vector<int>{1, 4, 5}));
  EXPECT_TRUE(greedy_select(unit, {}, {}, 3).empty());
  const auto inst = testing_helpers::with_costs({2, 2, 1}, 3);
  EXPECT_EQ(ids(inst, greedy_select(inst, inst.all(), pid({1, 2, 3}), 3)),
            (std::vector<int>{1, 3}));
}

TEST(GreedySelectTest, OrderMustCoverTheSet) {
  const auto unit = Instance::unit(4, 2);
  EXPECT_THROW(greedy_select(unit, unit.set_of({1, 2}), pid({1}), 2), InvalidInput);
  EXPECT_THROW(greedy_select(unit, unit.set_of({1, 2}), pid({1, 3}), 2), InvalidInput);
  EXPECT_THROW(greedy_select(unit, unit.set_of({1, 2}), pid({1, 1, 2}), 2), InvalidInput);
}

TEST(GreedySelectTest, FeasibleAndExhaustiveOnRandomInstances) {
  SuiteGenerator gen({.seed = 7});
  for (int round = 0; round < 300; ++round) {
    const auto inst = gen.instance();
    const auto members = gen.subset(inst.all());
    auto order = inst.ids(members);
    std::shuffle(order.begin(), order.end(), gen.rng());
    const auto budget = static_cast<Cost>(gen.uniform(1, static_cast<std::size_t>(inst.budget())));
    const auto s = greedy_select(inst, members, order, budget);
    ASSERT_TRUE(s.subset_of(members));
    ASSERT_LE(inst.cost(s), budget);
    (members - s).for_each([&](std::size_t p) {
      EXPECT_GT(inst.cost(s) + inst.cost(p), budget);
    });
    // Dropping a selected project and re-running never overspends.
    s.for_each([&](std::size_t p) {
      auto rest = order;
      std::erase(rest, inst.id(p));
      EXPECT_LE(inst.cost(greedy_select(inst, members.without(p), rest, budget)), budget);
    });
  }
}

TEST(TiebreakTest, Project) {
  const auto unit = Instance::unit(10, 3);
  EXPECT_EQ(tiebreak_project(unit, unit.set_of({2, 3})), ProjectId{2});
  EXPECT_EQ(tiebreak_project(unit, unit.set_of({7})), ProjectId{7});
  EXPECT_EQ(tiebreak_project(unit, unit.set_of({9, 4, 10})), ProjectId{4});
  EXPECT_THROW(tiebreak_project(unit, {}), InvalidInput);
}

TEST(TiebreakTest, Order) {
  const auto unit = Instance::unit(9, 3);
  EXPECT_EQ(tiebreak_order(unit, {pid({1}), pid({3, 2}), pid({9, 8, 7, 6, 5, 4})}),
            pid({1, 2, 3, 4, 5, 6, 7, 8, 9}));
  EXPECT_EQ(tiebreak_order(unit, {pid({3, 1})}), pid({1, 3}));
  EXPECT_EQ(tiebreak_order(unit, {pid({5}), pid({2}), pid({7})}), pid({5, 2, 7}));
  EXPECT_THROW(tiebreak_order(unit, {pid({1, 2}), pid({2})}), InvalidInput);
  EXPECT_THROW(tiebreak_order(unit, {pid({1})}, unit.set_of({1, 2})), InvalidInput);
}

TEST(TiebreakTest, OrderRefinesClasses) {
  SuiteGenerator gen({.seed = 3});
  for (int round = 0; round < 200; ++round) {
    const auto inst = gen.instance();
    std::vector<std::vector<ProjectId>> classes;
    for (auto id : inst.ids(inst.all())) {
      if (classes.empty() || gen.uniform(0, 2) == 0)
        classes.emplace_back();
      classes.back().push_back(id);
    }
    std::shuffle(classes.begin(), classes.end(), gen.rng());
    for (auto &c : classes)
      std::shuffle(c.begin(), c.end(), gen.rng());
    const auto strict = tiebreak_order(inst, classes, inst.all());
    ASSERT_EQ(strict.size(), inst.size());
    std::size_t at = 0;
    for (const auto &c : classes) {
      auto sorted = c;
      std::sort(sorted.begin(), sorted.end());
      for (auto id : sorted)
        EXPECT_EQ(strict[at++], id);
    }
  }
}

TEST(TiebreakTest, FamilyExamples) {
  const auto unit = Instance::unit(7, 3);
  EXPECT_EQ(tiebreak_family({unit.set_of({2}), unit.set_of({1, 3})}), unit.set_of({1, 3}));
  EXPECT_EQ(tiebreak_family({unit.set_of({1, 2, 3}), unit.set_of({1, 6, 7})}),
            unit.set_of({1, 2, 3}));
  EXPECT_EQ(tiebreak_family({unit.set_of({4})}), unit.set_of({4}));
  EXPECT_EQ(tiebreak_family({unit.set_of({4}), unit.set_of({4})}), unit.set_of({4}));
  EXPECT_THROW(tiebreak_family(std::span<const ProjectSet>{}), InvalidInput);
}

// The pairwise definition, the lexicographic characterisation and the
// library agree on every family of up to three sets over four projects,
// and on random larger families over five projects.
TEST(TiebreakTest, FamilyMatchesPairwiseDefinition) {
  auto lex_max = [](const std::vector<ProjectSet> &f) {
    auto key = [](ProjectSet s) {
      std::string k;
      for (std::size_t i = 0; i < 5; ++i)
        k += s.contains(i) ? '1' : '0';
      return k;
    };
    return *std::max_element(f.begin(), f.end(),
                             [&](ProjectSet a, ProjectSet b) { return key(a) < key(b); });
  };
  for (ProjectSet::Bits a = 0; a < 16; ++a)
    for (ProjectSet::Bits b = 0; b < 16; ++b)
      for (ProjectSet::Bits c = 0; c < 16; ++c) {
        std::vector<ProjectSet> f{ProjectSet::from_bits(a), ProjectSet::from_bits(b),
                                  ProjectSet::from_bits(c)};
        const auto got = tiebreak_family(f);
        ASSERT_EQ(got, oracle::tiebreak(f));
        ASSERT_EQ(got, lex_max(f));
      }
  std::mt19937_64 rng(11);
  for (int round = 0; round < 2000; ++round) {
    std::vector<ProjectSet> f(1 + rng() % 12);
    for (auto &s : f)
      s = ProjectSet::from_bits(rng() % 32);
    ASSERT_EQ(tiebreak_family(f), oracle::tiebreak(f));
    ASSERT_EQ(tiebreak_family(f), lex_max(f));
  }
}
