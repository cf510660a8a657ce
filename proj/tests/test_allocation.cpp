#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace pbe;
using testing_helpers::ids;

namespace {

ApprovalProfile example1_ballots(const Instance &inst) {
  return {inst.set_of({1, 4, 5}), inst.set_of({1, 2, 6}), inst.set_of({1, 2, 7}),
          inst.set_of({1, 3, 8}), inst.set_of({1, 3, 9})};
}

Instance final_example() { return testing_helpers::with_costs({4, 4, 4, 6, 6, 3, 3, 3}, 12); }

ApprovalProfile final_ballots(const Instance &inst) {
  return {inst.set_of({6, 7, 8}), inst.set_of({4, 5}), inst.set_of({1, 2, 3})};
}

TieBreakPolicy unit_policy(const Instance &inst) {
  return {{inst.set_of({1, 2, 3, 5}), inst.set_of({4, 5, 6, 7})}};
}

} // namespace

TEST(ApprovalScoresTest, Examples) {
  const auto inst = Instance::unit(10, 3);
  const auto shortlist = inst.all().without(9);
  const auto s = approval_scores(inst, shortlist, example1_ballots(inst));
  EXPECT_EQ(s, (ApprovalScores{5, 2, 2, 1, 1, 1, 1, 1, 1, 0}));
  EXPECT_EQ(approval_scores(inst, shortlist, {}), ApprovalScores(10, 0));
  EXPECT_EQ(approval_scores(inst, shortlist, {inst.set_of({1})}),
            (ApprovalScores{1, 0, 0, 0, 0, 0, 0, 0, 0, 0}));
  EXPECT_THROW(approval_scores(inst, shortlist, {inst.set_of({10})}), InvalidInput);
}

TEST(GreedyApprovalTest, Examples) {
  const auto inst = Instance::unit(10, 3);
  const auto shortlist = inst.all().without(9);
  EXPECT_EQ(ids(inst, greedy_approval(inst, shortlist, example1_ballots(inst))),
            (std::vector<int>{1, 2, 3}));
  const auto one = Instance::unit(3, 1);
  EXPECT_EQ(greedy_approval(one, one.all(), {one.set_of({1})}), one.set_of({1}));
}

TEST(GreedyApprovalTest, MatchesComposedOracle) {
  SuiteGenerator gen({.seed = 51});
  for (int round = 0; round < 500; ++round) {
    const auto inst = gen.instance();
    const auto shortlist = gen.subset(inst.all());
    const auto profile = gen.profile(shortlist, gen.agents());
    ASSERT_EQ(greedy_approval(inst, shortlist, profile),
              oracle::greedy_approval(inst, shortlist, profile));
  }
}

TEST(ApprovalMaximisingTest, Examples) {
  const auto inst = Instance::unit(10, 3);
  const auto shortlist = inst.all().without(9);
  EXPECT_EQ(ids(inst, approval_maximising(inst, shortlist, example1_ballots(inst))),
            (std::vector<int>{1, 2, 3}));

  const auto fin = final_example();
  auto ballots = final_ballots(fin);
  EXPECT_EQ(ids(fin, approval_maximising(fin, fin.all(), ballots)), (std::vector<int>{1, 2, 3}));
  ballots[0] = fin.set_of({5, 6, 7});
  EXPECT_EQ(ids(fin, approval_maximising(fin, fin.all(), ballots)), (std::vector<int>{5, 6, 7}));

  const auto unit = Instance::unit(7, 4);
  ApprovalProfile truthful{unit.set_of({1, 2, 3, 4}), unit.set_of({4, 5, 6, 7})};
  EXPECT_EQ(ids(unit, approval_maximising(unit, unit.all(), truthful, unit_policy(unit))),
            (std::vector<int>{4, 5, 6, 7}));
  truthful[0] = unit.set_of({1, 2, 3});
  EXPECT_EQ(ids(unit, approval_maximising(unit, unit.all(), truthful, unit_policy(unit))),
            (std::vector<int>{1, 2, 3, 5}));
}

TEST(ApprovalMaximisingTest, PolicyRejectsDuplicates) {
  const auto unit = Instance::unit(3, 1);
  TieBreakPolicy p{{unit.set_of({1}), unit.set_of({1})}};
  EXPECT_THROW(approval_maximising(unit, unit.all(), {unit.set_of({1})}, p), InvalidInput);
}

TEST(ApprovalMaximisingTest, MatchesSubsetScan) {
  SuiteGenerator gen({.max_projects = 10, .max_agents = 5, .seed = 53});
  for (int round = 0; round < 400; ++round) {
    const auto inst = gen.instance();
    const auto shortlist = gen.subset(inst.all());
    const auto profile = gen.profile(shortlist, gen.agents());
    const auto got = approval_maximising(inst, shortlist, profile);
    const auto expected = oracle::approval_maximising(inst, shortlist, profile);
    ASSERT_EQ(oracle::approval_value(got, profile), oracle::approval_value(expected, profile));
    ASSERT_EQ(got, expected) << "round " << round;
  }
}

TEST(ApprovalMaximisingTest, ExplicitPolicyWinsAmongMaximisers) {
  SuiteGenerator gen({.max_projects = 6, .unit_cost = true, .seed = 55});
  for (int round = 0; round < 200; ++round) {
    const auto inst = gen.instance();
    const auto profile = gen.profile(inst.all(), gen.agents());
    TieBreakPolicy policy;
    for (int j = 0; j < 3; ++j) {
      const auto s = gen.subset(inst.all());
      if (std::find(policy.priority.begin(), policy.priority.end(), s) == policy.priority.end())
        policy.priority.push_back(s);
    }
    const auto best = oracle::approval_value(oracle::approval_maximising(inst, inst.all(), profile),
                                             profile);
    std::optional<ProjectSet> expected;
    for (auto s : policy.priority)
      if (inst.cost(s) <= inst.budget() && oracle::approval_value(s, profile) == best) {
        expected = s;
        break;
      }
    const auto got = approval_maximising(inst, inst.all(), profile, policy);
    EXPECT_EQ(got, expected.value_or(oracle::approval_maximising(inst, inst.all(), profile)));
  }
}

TEST(ClassifyAllocationTest, Examples) {
  const auto inst = Instance::unit(9, 3);
  EXPECT_EQ(classify_allocation(inst, inst.all(), inst.set_of({1, 2, 3})),
            AllocationStatus::exhaustive);
  EXPECT_EQ(classify_allocation(inst, inst.all(), inst.set_of({1, 2})),
            AllocationStatus::feasible_not_exhaustive);
  EXPECT_EQ(classify_allocation(inst, inst.all(), inst.set_of({1, 2, 3, 4})),
            AllocationStatus::infeasible);
}

TEST(AllocationRulesTest, CoincideOnUnitCosts) {
  for (std::size_t m = 1; m <= 5; ++m)
    for (Cost b = 1; b <= static_cast<Cost>(m); ++b) {
      const auto inst = Instance::unit(m, b);
      for (std::size_t n = 1; n <= 3; ++n)
        for (const auto &profile : oracle::all_profiles(inst.all(), n))
          ASSERT_EQ(greedy_approval(inst, inst.all(), profile),
                    approval_maximising(inst, inst.all(), profile));
    }
}

TEST(AllocationRulesTest, ExhaustiveAndUnanimousOnRandomInstances) {
  SuiteGenerator gen({.max_projects = 6, .seed = 57});
  std::vector<AllocationCase> cases;
  for (int round = 0; round < 60; ++round) {
    const auto inst = gen.instance();
    const auto shortlist = gen.subset(inst.all());
    cases.push_back({inst, shortlist, gen.profile(shortlist, gen.agents())});
  }
  for (auto axiom : {AllocationAxiom::exhaustive, AllocationAxiom::unanimous,
                     AllocationAxiom::strongly_unanimous})
    EXPECT_TRUE(check_allocation_axiom(GreedyApprovalRule{}, axiom, cases).holds());
  for (auto axiom : {AllocationAxiom::exhaustive, AllocationAxiom::unanimous})
    EXPECT_TRUE(check_allocation_axiom(ApprovalMaximisingRule{}, axiom, cases).holds());
}

// With unequal costs the dissenting voter can outweigh the shared ballot.
TEST(AllocationRulesTest, ApprovalMaximisingStrongUnanimityNeedsUnitCosts) {
  const auto inst = testing_helpers::with_costs({3, 1, 1, 1}, 3);
  const ApprovalProfile profile{inst.set_of({1}), inst.set_of({1}), inst.set_of({2, 3, 4})};
  EXPECT_EQ(ids(inst, approval_maximising(inst, inst.all(), profile)), (std::vector<int>{2, 3, 4}));
  EXPECT_EQ(ids(inst, greedy_approval(inst, inst.all(), profile)), (std::vector<int>{1}));

  const std::vector<AllocationCase> costly{{inst, inst.all(), profile}};
  const auto v = check_allocation_axiom(ApprovalMaximisingRule{}, AllocationAxiom::strongly_unanimous,
                                        costly);
  ASSERT_FALSE(v.holds());
  ASSERT_TRUE(v.witness->required);
  EXPECT_FALSE(v.witness->required->subset_of(v.witness->outcome));

  SuiteGenerator gen({.max_projects = 6, .unit_cost = true, .seed = 59});
  std::vector<AllocationCase> unit;
  for (int round = 0; round < 60; ++round) {
    const auto u = gen.instance();
    const auto shortlist = gen.subset(u.all());
    unit.push_back({u, shortlist, gen.profile(shortlist, gen.agents())});
  }
  EXPECT_TRUE(check_allocation_axiom(ApprovalMaximisingRule{}, AllocationAxiom::strongly_unanimous,
                                     unit)
                  .holds());
}
