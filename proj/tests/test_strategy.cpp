#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace pbe;
using testing_helpers::ids;
using testing_helpers::order;

namespace {

template <class R, class F>
StageGame<R, F> game_from(const char *name, R r, F f,
                          PreferenceModel model = PreferenceModel::overlap) {
  const auto sc = testing_helpers::fixture(name);
  const auto inst = sc.instance();
  StageGame<R, F> g{std::move(r), std::move(f), inst, sc.typed_agents(inst), std::nullopt, model};
  if (sc.shortlisting_profile)
    g.proposals = sc.sets(inst, *sc.shortlisting_profile);
  return g;
}

KMedianRule median_rule() {
  const auto sc = testing_helpers::fixture("k-median-manipulation");
  return {1, sc.metric(sc.instance())};
}

} // namespace

TEST(BestResponseTest, Examples) {
  const auto inst = Instance::unit(2, 1);
  const auto br = best_response(GreedyApprovalRule{}, inst, inst.all(),
                                {ProjectSet{}, inst.set_of({2})}, 0, inst.set_of({1}),
                                PreferenceModel::overlap);
  EXPECT_EQ(br.ballot, inst.set_of({1}));
  EXPECT_EQ(br.outcome, inst.set_of({1}));

  const auto four = Instance::unit(4, 2);
  const auto top = four.set_of({2, 4});
  for (auto rule : {0, 1}) {
    const auto r = rule == 0 ? best_response(GreedyApprovalRule{}, four, four.all(), {ProjectSet{}},
                                             0, top, PreferenceModel::overlap)
                             : best_response(ApprovalMaximisingRule{}, four, four.all(),
                                             {ProjectSet{}}, 0, top, PreferenceModel::overlap);
    EXPECT_EQ(r.ballot, top);
    EXPECT_TRUE(top.subset_of(r.outcome));
  }
  EXPECT_THROW(best_response(GreedyApprovalRule{}, Instance::unit(13, 2),
                             Instance::unit(13, 2).all(), {ProjectSet{}}, 0, {},
                             PreferenceModel::overlap),
               ResourceLimit);
}

TEST(FStarTest, Examples) {
  const auto inst = Instance::unit(10, 3);
  const auto sc = testing_helpers::fixture("example1");
  const auto orders = sc.orders(inst);
  const auto shortlist = inst.all().without(0);
  ApprovalProfile ideal;
  for (const auto &o : orders)
    ideal.push_back(ideal_set(inst, o, shortlist));
  EXPECT_EQ(ids(inst, f_star(GreedyApprovalRule{}, inst, shortlist, ideal, 0, ideal[0],
                             PreferenceModel::overlap)),
            (std::vector<int>{2, 4, 5}));

  const auto truthful_shortlist = inst.all().without(9);
  ApprovalProfile truthful;
  for (const auto &o : orders)
    truthful.push_back(ideal_set(inst, o, truthful_shortlist));
  const auto got = f_star(GreedyApprovalRule{}, inst, truthful_shortlist, truthful, 0,
                          truthful[0], PreferenceModel::overlap);
  EXPECT_EQ(got, oracle::f_star(GreedyApprovalRule{}, inst, truthful_shortlist, truthful, 0,
                                truthful[0], PreferenceModel::overlap));
  EXPECT_EQ(ids(inst, got), (std::vector<int>{1, 2, 3}));

  const auto one = Instance::unit(3, 2);
  const auto top = one.set_of({1, 3});
  EXPECT_TRUE(top.subset_of(f_star(ApprovalMaximisingRule{}, one, one.all(), {ProjectSet{}}, 0,
                                   top, PreferenceModel::cost)));
}

TEST(FStarTest, NeverWorseThanTruthfulAndMatchesOracle) {
  SuiteGenerator gen({.max_projects = 6, .max_agents = 3, .seed = 71});
  for (int round = 0; round < 200; ++round) {
    const auto inst = gen.instance();
    const auto shortlist = gen.subset(inst.all());
    const auto profile = gen.profile(shortlist, gen.agents());
    const auto agent = gen.uniform(0, profile.size() - 1);
    const auto ideal = ideal_set(inst, gen.order(inst), shortlist);
    for (auto model : {PreferenceModel::overlap, PreferenceModel::cost}) {
      const auto a = f_star(GreedyApprovalRule{}, inst, shortlist, profile, agent, ideal, model);
      ASSERT_EQ(a, oracle::f_star(GreedyApprovalRule{}, inst, shortlist, profile, agent, ideal,
                                  model));
      EXPECT_GE(preference_score(model, inst, ideal, a),
                preference_score(model, inst, ideal,
                                 greedy_approval(inst, shortlist, profile)));
      const auto b =
          f_star(ApprovalMaximisingRule{}, inst, shortlist, profile, agent, ideal, model);
      ASSERT_EQ(b, oracle::f_star(ApprovalMaximisingRule{}, inst, shortlist, profile, agent,
                                  ideal, model));
    }
  }
}

TEST(ManipulationTest, AwarenessFixtureEmptyProposal) {
  const auto game = game_from("theorem-rfssp", NominationRule{}, GreedyApprovalRule{});
  for (auto mode : {ManipulationMode::pessimistic, ManipulationMode::anticipative}) {
    const auto v = check_manipulation(game, 0, ProjectSet{}, mode);
    EXPECT_EQ(v.status, ManipulationStatus::successful);
    EXPECT_TRUE(v.exact);
  }
}

TEST(ManipulationTest, NominationAnticipative) {
  const auto game = game_from("example1", NominationRule{}, GreedyApprovalRule{});
  const auto &inst = game.instance;
  const auto v =
      check_manipulation(game, 0, inst.set_of({4, 5, 10}), ManipulationMode::anticipative);
  EXPECT_EQ(v.status, ManipulationStatus::successful);
  EXPECT_EQ(ids(inst, *v.witness.outcome), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(ids(inst, *v.witness.deviated_outcome), (std::vector<int>{2, 4, 5}));
}

TEST(ManipulationTest, KMedianPessimistic) {
  auto game = game_from("k-median-manipulation", median_rule(), ApprovalMaximisingRule{});
  const auto &inst = game.instance;
  const auto v = check_manipulation(game, 0, inst.set_of({1, 2, 5}), ManipulationMode::pessimistic);
  EXPECT_EQ(v.status, ManipulationStatus::successful);
  EXPECT_TRUE(v.exact);
  EXPECT_EQ(ids(inst, v.witness.shortlist), (std::vector<int>{4, 6, 7}));
  EXPECT_EQ(ids(inst, v.witness.deviated_shortlist), (std::vector<int>{1, 2, 5}));
}

TEST(ManipulationTest, AnticipativeIgnoresProfileCap) {
  const auto game = game_from("example1", NominationRule{}, GreedyApprovalRule{});
  StrategyOptions tight;
  tight.profile_cap = 1;
  const auto d = game.instance.set_of({4, 5, 10});
  const auto a = check_manipulation(game, 0, d, ManipulationMode::anticipative);
  const auto b = check_manipulation(game, 0, d, ManipulationMode::anticipative,
                                    FsspVariant::restricted, tight);
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.witness.deviated_outcome, b.witness.deviated_outcome);
  EXPECT_THROW(check_manipulation(game, 0, d, ManipulationMode::pessimistic,
                                  FsspVariant::restricted, tight),
               ResourceLimit);
}

TEST(ManipulationTest, SampledVerdictsStayInexact) {
  const auto game = game_from("example1", NominationRule{}, GreedyApprovalRule{});
  StrategyOptions opts;
  opts.profile_cap = 1 << 10;
  opts.best_response_cap = 10;
  opts.sampling = true;
  opts.samples = 16;
  const auto v = check_manipulation(game, 0, game.instance.set_of({4, 5, 10}),
                                    ManipulationMode::pessimistic, FsspVariant::restricted, opts);
  if (v.status == ManipulationStatus::unsuccessful)
    EXPECT_TRUE(v.exact); // a refuting pair is a certificate
  else
    EXPECT_EQ(v.status, ManipulationStatus::unknown);
}

// The min/max decomposition agrees with enumerating every pair of profiles.
TEST(ManipulationTest, MatchesProfilePairEnumeration) {
  SuiteGenerator gen({.min_projects = 2, .max_projects = 3, .min_agents = 2, .max_agents = 3,
                      .max_cost = 2, .seed = 73});
  int successes = 0;
  for (int round = 0; round < 120; ++round) {
    const auto inst = gen.instance();
    const auto n = gen.agents();
    std::vector<Agent> agents;
    for (std::size_t i = 0; i < n; ++i)
      agents.push_back({gen.order(inst), gen.subset(inst.all())});
    const auto model = round % 2 ? PreferenceModel::cost : PreferenceModel::overlap;
    StageGame<NominationRule, GreedyApprovalRule> game{{}, {}, inst, agents, std::nullopt, model};
    const auto deviation = gen.subset(agents[0].awareness);
    auto profile = game.base_profile();
    profile[0] = truthful_proposal(game, profile, 0, FsspVariant::restricted);
    const auto shortlist = nomination(inst, profile);
    profile[0] = deviation;
    const auto deviated = nomination(inst, profile);
    const auto expected = oracle::manipulation_pairs(GreedyApprovalRule{}, inst, shortlist,
                                                     deviated, 0, n, agents[0].order, model);
    const auto p = check_manipulation(game, 0, deviation, ManipulationMode::pessimistic);
    const auto o = check_manipulation(game, 0, deviation, ManipulationMode::optimistic);
    ASSERT_EQ(p.status == ManipulationStatus::successful, expected.pessimistic) << round;
    ASSERT_EQ(o.status == ManipulationStatus::successful, expected.optimistic) << round;
    if (expected.pessimistic) {
      EXPECT_TRUE(expected.optimistic);
      ++successes;
    }
  }
  EXPECT_GT(successes, 0);
}

TEST(FsspTest, AwarenessFixture) {
  const auto game = game_from("theorem-rfssp", NominationRule{}, GreedyApprovalRule{});
  for (auto mode : {ManipulationMode::pessimistic, ManipulationMode::anticipative}) {
    const auto r = check_fssp(game, FsspVariant::restricted, mode);
    ASSERT_FALSE(r.holds());
    EXPECT_EQ(r.witness->agent, 0u);
    EXPECT_TRUE(r.witness->deviation.empty());
    const auto u = check_fssp(game, FsspVariant::unrestricted, mode);
    EXPECT_TRUE(u.holds());
    EXPECT_TRUE(u.exact);
  }
}

TEST(FsspTest, DeviationSpaceOrder) {
  const auto inst = Instance::unit(3, 1);
  const auto space = deviation_space(inst.all(), inst.set_of({1}));
  ASSERT_EQ(space.size(), 7u);
  EXPECT_TRUE(space[0].empty());
  EXPECT_EQ(space[1], inst.set_of({2}));
  EXPECT_EQ(space[2], inst.set_of({3}));
  EXPECT_EQ(space[3], inst.set_of({1, 2}));
  EXPECT_EQ(space.back(), inst.all());
}

TEST(FsspTest, NominationUnrestrictedPessimisticOnSmallGames) {
  SuiteGenerator gen({.min_projects = 2, .max_projects = 3, .min_agents = 2, .max_agents = 3,
                      .max_cost = 2, .seed = 75});
  for (int round = 0; round < 60; ++round) {
    const auto inst = gen.instance();
    const auto n = gen.agents();
    std::vector<Agent> agents;
    for (std::size_t i = 0; i < n; ++i)
      agents.push_back({gen.order(inst), gen.subset(inst.all())});
    StageGame<NominationRule, GreedyApprovalRule> g{{}, {}, inst, agents, std::nullopt};
    const auto v = check_fssp(g, FsspVariant::unrestricted, ManipulationMode::pessimistic);
    EXPECT_TRUE(v.holds()) << "round " << round;
    EXPECT_TRUE(v.exact);
  }
}

TEST(ImplicationTest, AwarenessFixtureIsConsistent) {
  const auto game = game_from("theorem-rfssp", NominationRule{}, GreedyApprovalRule{});
  const std::vector<FsspCells> cells{fssp_cells(game, "theorem-rfssp")};
  const auto report = verify_fssp_implications(cells);
  EXPECT_TRUE(report.consistent());
  EXPECT_EQ(cells[0].restricted[0], false);
  EXPECT_EQ(cells[0].unrestricted[0], true);
}

TEST(ImplicationTest, FabricatedTableIsFlagged) {
  FsspCells bad{"fabricated", {false, true, true}, {true, true, true}, {true, true, true}};
  const std::vector<FsspCells> table{bad};
  const auto report = verify_fssp_implications(table);
  EXPECT_FALSE(report.consistent());
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_NE(report.violations[0].find("R-FSSP-O holds but R-FSSP-P fails"), std::string::npos);

  FsspCells mismatch{"widened", {true, true, true}, {true, true, false}, {true, true, true}};
  EXPECT_FALSE(verify_fssp_implications(std::vector<FsspCells>{mismatch}).consistent());
}

TEST(ImplicationTest, UnrestrictedHoldingWhileRestrictedFailsIsAllowed) {
  FsspCells cells{"u-only", {false, false, false}, {true, true, true}, {true, true, true}};
  EXPECT_TRUE(verify_fssp_implications(std::vector<FsspCells>{cells}).consistent());
}

TEST(ImplicationTest, RandomGamesAreConsistent) {
  SuiteGenerator gen({.min_projects = 2, .max_projects = 3, .min_agents = 2, .max_agents = 2,
                      .max_cost = 2, .seed = 77});
  std::vector<FsspCells> table;
  for (int round = 0; round < 25; ++round) {
    const auto inst = gen.instance();
    std::vector<Agent> agents;
    for (std::size_t i = 0; i < 2; ++i)
      agents.push_back({gen.order(inst), gen.subset(inst.all())});
    StageGame<NominationRule, ApprovalMaximisingRule> g{{}, {}, inst, agents, std::nullopt};
    table.push_back(fssp_cells(g, "game " + std::to_string(round)));
  }
  const auto report = verify_fssp_implications(table);
  for (const auto &v : report.violations)
    ADD_FAILURE() << v;
}

TEST(StageGameTest, ProposalsMustStayWithinAwareness) {
  auto game = game_from("theorem-rfssp", NominationRule{}, GreedyApprovalRule{});
  game.proposals = ShortlistingProfile{game.instance.set_of({2}), game.instance.set_of({2})};
  EXPECT_THROW(game.base_profile(), InvalidInput);
  game.proposals = ShortlistingProfile{game.instance.set_of({1})};
  EXPECT_THROW(game.base_profile(), InvalidInput);
}

TEST(ModeParsingTest, RoundTrip) {
  for (auto m : {ManipulationMode::pessimistic, ManipulationMode::optimistic,
                 ManipulationMode::anticipative})
    EXPECT_EQ(parse_mode(to_string(m)), m);
  for (auto v : {FsspVariant::restricted, FsspVariant::unrestricted})
    EXPECT_EQ(parse_variant(to_string(v)), v);
  EXPECT_THROW(parse_mode("hopeful"), InvalidInput);
}
