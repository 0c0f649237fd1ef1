#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <memory>
#include <random>

#include "leakproof/game.hpp"
#include "leakproof/leakage.hpp"
#include "leakproof/solver.hpp"
#include "leakproof/strategy.hpp"

using namespace leakproof;

namespace {

Rational R(long long n, long long d = 1) { return Rational(n, d); }

GameTree matching_pennies() {
  PlayerSet players{2, false};
  ValueTypeSpace values({{R(0)}, {R(0)}}, {{R(1)}, {R(1)}});
  std::vector<std::vector<std::vector<Rational>>> util(2);
  util[0] = {{R(-1)}, {R(1)}, {R(1)}, {R(-1)}};
  util[1] = {{R(1)}, {R(-1)}, {R(-1)}, {R(1)}};
  OutcomeSpace outcomes = OutcomeSpace::table({"HH", "HT", "TH", "TT"}, util);
  StageSpec root;
  root.actions[0] = {"Heads", "Tails"};
  root.actions[1] = {"Heads", "Tails"};
  root.children[{"Heads", "Heads"}] = StageSpec{{}, {}, "HH"};
  root.children[{"Heads", "Tails"}] = StageSpec{{}, {}, "HT"};
  root.children[{"Tails", "Heads"}] = StageSpec{{}, {}, "TH"};
  root.children[{"Tails", "Tails"}] = StageSpec{{}, {}, "TT"};
  return build_game(players, values, outcomes, root);
}

GameTree appendix_b() {
  PlayerSet players{2, false};
  ValueTypeSpace values({{R(0), R(1)}, {R(0)}}, {{R(1, 2), R(1, 2)}, {R(1)}});
  std::vector<std::string> labels{"x", "y", "z", "m", "n"};
  std::vector<std::vector<std::vector<Rational>>> util(2);
  util[0] = {{R(0), R(2)}, {R(2), R(0)}, {R(-2), R(-2)}, {R(-2), R(-2)}, {R(2), R(2)}};
  util[1] = {{R(1), R(1)}, {R(1), R(1)}, {R(-2), R(-2)}, {R(2), R(2)}, {R(-2), R(-2)}};
  OutcomeSpace outcomes = OutcomeSpace::table(labels, util);
  const std::vector<std::string> p1{"a1H", "a1L", "a1H*", "a1L*"};
  const std::vector<std::string> p2{"a*", "a2H*", "a2L*", "a2H'", "a2L'"};
  const char* grid[4][5] = {{"x", "z", "z", "m", "z"},
                            {"y", "z", "z", "z", "m"},
                            {"z", "x", "z", "n", "z"},
                            {"z", "z", "y", "z", "n"}};
  StageSpec root;
  root.actions[0] = p1;
  root.actions[1] = p2;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 5; ++c) root.children[{p1[r], p2[c]}] = StageSpec{{}, {}, grid[r][c]};
  }
  SocialChoiceFunction f;
  f.outcome_by_theta = {outcomes.find("y"), outcomes.find("x")};
  return build_game(players, values, outcomes, root, f);
}

StrategyProfileView uniform_mp_profile(const GameTree& g) {
  auto s0 = std::make_shared<DefaultProfile>(2);
  s0->set(0, 0, g.root(), Dist{R(1, 2), R(1, 2)});
  s0->set(1, 0, g.root(), Dist{R(1, 2), R(1, 2)});
  return StrategyProfileView::from_default(s0, "uniform");
}

// Player 1 mirrors an observed action; plays uniform unseen.
StrategyProfileView match_observed_profile(std::shared_ptr<const GameTree> g) {
  return StrategyProfileView(
      [g](PlayerId i, ValueIndex, int, const PrivateHistory& h) -> Dist {
        if (i == 1 && !h.leaked.empty()) {
          return pure_dist(h.leaked[0].second, g->action_count(h.public_h, i));
        }
        return Dist{R(1, 2), R(1, 2)};
      },
      "match-observed");
}

}  // namespace

TEST_CASE("outcome distribution: uniform players, any order") {
  GameTree g = matching_pennies();
  auto prof = uniform_mp_profile(g);
  for (const auto& order : enumerate_orders(2)) {
    auto dist = outcome_distribution(g, prof, {0, 0}, {0, 0}, order);
    REQUIRE(dist.size() == 4);
    Rational sum(0);
    for (const auto& [z, p] : dist) {
      CHECK(p == R(1, 4));
      sum += p;
    }
    CHECK(sum == R(1));  // normalization
  }
}

TEST_CASE("outcome distribution respects within-stage leakage") {
  auto g = std::make_shared<GameTree>(matching_pennies());
  auto prof = match_observed_profile(g);
  LeakageOrder order = LeakageOrder::unique_fastest(2, 1);
  auto dist = outcome_distribution(*g, prof, {0, 0}, {0, 0}, order);
  // Player 1 matches player 0's coin: only HH and TT occur.
  CHECK(dist.at(g->find_history("Heads,Heads")) == R(1, 2));
  CHECK(dist.at(g->find_history("Tails,Tails")) == R(1, 2));
  CHECK(dist.size() == 2);
  CHECK(expected_utility(*g, prof, {0, 0}, {0, 0}, order, 1) == R(1));
  CHECK(expected_utility(*g, prof, {0, 0}, {0, 0}, order, 0) == R(-1));  // zero sum
}

TEST_CASE("flow conservation under random rational profiles") {
  GameTree g = appendix_b();
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto s0 = std::make_shared<DefaultProfile>(2);
    for (ValueIndex t = 0; t < 2; ++t) {
      std::vector<long long> w(4);
      long long total = 0;
      for (auto& x : w) total += (x = 1 + rng() % 5);
      Dist d;
      for (auto x : w) d.push_back(R(x, total));
      s0->set(0, t, g.root(), d);
    }
    std::vector<long long> w(5);
    long long total = 0;
    for (auto& x : w) total += (x = 1 + rng() % 5);
    Dist d;
    for (auto x : w) d.push_back(R(x, total));
    s0->set(1, 0, g.root(), d);

    auto prof = StrategyProfileView::from_default(s0);
    for (ValueIndex t = 0; t < 2; ++t) {
      auto dist = outcome_distribution(g, prof, {t, 0}, {0, 0}, LeakageOrder::all_equal(2));
      Rational sum(0);
      for (const auto& [z, p] : dist) sum += p;
      CHECK(sum == R(1));
    }
  }
}

TEST_CASE("expected utility of the matching-pennies equilibrium is zero") {
  GameTree g = matching_pennies();
  auto prof = uniform_mp_profile(g);
  CHECK(expected_utility(g, prof, {0, 0}, {0, 0}, LeakageOrder::all_equal(2), 0) == R(0));
  CHECK(expected_utility(g, prof, {0, 0}, {0, 0}, LeakageOrder::all_equal(2), 1) == R(0));
}

TEST_CASE("bayes update: root belief is the prior") {
  GameTree g = appendix_b();
  auto s0 = std::make_shared<DefaultProfile>(2);
  s0->set_pure(0, 1, g.root(), 0, 4);
  s0->set_pure(0, 0, g.root(), 1, 4);
  s0->set_pure(1, 0, g.root(), 0, 5);
  auto prof = StrategyProfileView::from_default(s0);
  LeakageTypeSpace space = minimal_type_space(2);
  Atoms atoms = bayes_update(g, prof, space, 1, 0, PrivateHistory{g.root(), {}});
  REQUIRE(atoms.size() == 2);
  CHECK(atoms[0].w == R(1, 2));
  CHECK(atoms[1].w == R(1, 2));
}

TEST_CASE("bayes update: observed action identifies the type") {
  GameTree g = appendix_b();
  auto s0 = std::make_shared<DefaultProfile>(2);
  s0->set_pure(0, 1, g.root(), 0, 4);  // high -> a1H
  s0->set_pure(0, 0, g.root(), 1, 4);  // low -> a1L
  s0->set_pure(1, 0, g.root(), 0, 5);
  auto prof = StrategyProfileView::from_default(s0);
  LeakageTypeSpace space = minimal_type_space(2);
  int fast = space.find_type(1, "t1");
  Atoms atoms = bayes_update(g, prof, space, 1, fast, PrivateHistory{g.root(), {{0, 0}}});
  REQUIRE(atoms.size() == 1);
  CHECK(atoms[0].theta[0] == 1);  // point mass on the high type
  CHECK(atoms[0].w == R(1, 2));
}

TEST_CASE("bayes update: impossible observation falls back to the prior") {
  GameTree g = appendix_b();
  auto s0 = std::make_shared<DefaultProfile>(2);
  s0->set_pure(0, 1, g.root(), 0, 4);
  s0->set_pure(0, 0, g.root(), 1, 4);
  s0->set_pure(1, 0, g.root(), 0, 5);
  auto prof = StrategyProfileView::from_default(s0);
  LeakageTypeSpace space = minimal_type_space(2);
  int fast = space.find_type(1, "t1");
  // a1H* is outside both types' supports: the factor is dropped.
  Atoms atoms = bayes_update(g, prof, space, 1, fast, PrivateHistory{g.root(), {{0, 2}}});
  REQUIRE(atoms.size() == 2);
  CHECK(atoms[0].w == R(1, 2));
  CHECK(atoms[1].w == R(1, 2));
}

TEST_CASE("best response of the informed player in matching pennies") {
  auto g = std::make_shared<GameTree>(matching_pennies());
  auto prof = uniform_mp_profile(*g);
  LeakageTypeSpace space = minimal_type_space(2);
  int fast = space.find_type(1, "t1");
  PrivateHistory seen_heads{g->root(), {{0, 0}}};
  Atoms atoms = bayes_update(*g, prof, space, 1, fast, seen_heads);
  for (auto& a : atoms) a.theta[1] = 0;
  Evaluator ev(*g, prof, 1, space.type(1, fast).signature);
  auto payoff = Evaluator::utility_payoff(*g, 1);
  std::map<std::string, int> plan;
  Rational best = ev.best_at(seen_heads, atoms, payoff, &plan);
  Rational mass = total_weight(atoms);
  CHECK(best / mass == R(1));  // mismatching the observed coin wins 1
  CHECK(plan.at(seen_heads.key(*g)) == 0);  // match the observed coin
  // Following the uniform prescription is worth 0.
  auto my_plan = [&](const PrivateHistory& ph) { return prof.act(1, 0, fast, ph); };
  CHECK(ev.follow_at(seen_heads, atoms, my_plan, payoff) / mass == R(0));
}

TEST_CASE("verify: uniform profile passes on the zero-profile space") {
  GameTree g = matching_pennies();
  auto prof = uniform_mp_profile(g);
  LeakageTypeSpace zero = common_knowledge_space(LeakageOrder::all_equal(2), "zero");
  VerifyReport rep = verify_equilibrium(g, prof, zero);
  CHECK(rep.pass);
  CHECK(rep.max_gain == R(0));
}

TEST_CASE("verify: uniform profile fails under the minimal family with gain 1") {
  GameTree g = matching_pennies();
  auto prof = uniform_mp_profile(g);
  VerifyReport rep = verify_equilibrium(g, prof, minimal_type_space(2));
  CHECK_FALSE(rep.pass);
  CHECK(rep.max_gain == R(1));
  REQUIRE(!rep.violations.empty());
  // The witness replays: applying the deviation plan reproduces the gain.
  const CellResult& viol = rep.violations.front();
  CHECK(viol.gain() == R(1));
}

TEST_CASE("appendix profile is an exact equilibrium under no leakage") {
  GameTree g = appendix_b();
  auto s0 = std::make_shared<DefaultProfile>(2);
  s0->set_pure(0, 1, g.root(), 0, 4);
  s0->set_pure(0, 0, g.root(), 1, 4);
  s0->set_pure(1, 0, g.root(), 0, 5);
  auto prof = StrategyProfileView::from_default(s0);
  LeakageTypeSpace zero = common_knowledge_space(LeakageOrder::all_equal(2), "zero");
  VerifyReport rep = verify_equilibrium(g, prof, zero);
  CHECK(rep.pass);

  // Direct no-leakage route agrees (dual-route check).
  NoLeakCheck direct = check_no_leak_pbe(g, *s0);
  CHECK(direct.pass == rep.pass);

  // Under the minimal family the informed player deviates.
  VerifyReport leak = verify_equilibrium(g, prof, minimal_type_space(2));
  CHECK_FALSE(leak.pass);
  CHECK_FALSE(leak.on_path_pass);
  CHECK(leak.max_on_path_gain == R(1));  // m pays 2 instead of 1
  CHECK(leak.max_gain == R(4));          // off-path: reacting to a2H* saves 2-(-2)
}

TEST_CASE("default equilibrium search finds the appendix profile") {
  GameTree g = appendix_b();
  DefaultProfile s0 = default_equilibrium(g);
  CHECK(s0.at(0, 1, g.root()) == pure_dist(0, 4));  // high -> a1H
  CHECK(s0.at(0, 0, g.root()) == pure_dist(1, 4));  // low -> a1L
  CHECK(s0.at(1, 0, g.root()) == pure_dist(0, 5));  // a*
}

TEST_CASE("default equilibrium search finds uniform matching pennies") {
  GameTree g = matching_pennies();
  DefaultProfile s0 = default_equilibrium(g);
  CHECK(s0.at(0, 0, g.root()) == Dist{R(1, 2), R(1, 2)});
  CHECK(s0.at(1, 0, g.root()) == Dist{R(1, 2), R(1, 2)});
}

TEST_CASE("best response dominates random plans") {
  auto g = std::make_shared<GameTree>(matching_pennies());
  auto prof = uniform_mp_profile(*g);
  LeakageTypeSpace space = minimal_type_space(2);
  int fast = space.find_type(1, "t1");
  Evaluator ev(*g, prof, 1, space.type(1, fast).signature);
  auto payoff = Evaluator::utility_payoff(*g, 1);
  std::mt19937_64 rng(13);
  for (const auto& start : private_histories(*g, LeakageOrder::unique_fastest(2, 1), 1)) {
    Atoms atoms = bayes_update(*g, prof, space, 1, fast, start.h);
    for (auto& a : atoms) a.theta[1] = 0;
    Rational best = ev.best_at(start.h, atoms, payoff);
    for (int k = 0; k < 1000; ++k) {
      int action = static_cast<int>(rng() % 2);
      auto plan = [&](const PrivateHistory&) { return pure_dist(action, 2); };
      CHECK(ev.follow_at(start.h, atoms, plan, payoff) <= best);
    }
  }
}

TEST_CASE("undefined opponent plan surfaces as an error") {
  GameTree g = matching_pennies();
  StrategyProfileView broken([](PlayerId, ValueIndex, int, const PrivateHistory&) -> Dist {
    return {};
  });
  CHECK_THROWS_AS(outcome_distribution(g, broken, {0, 0}, {0, 0}, LeakageOrder::all_equal(2)),
                  UndefinedPlan);
}
