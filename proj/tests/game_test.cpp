#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "leakproof/game.hpp"
#include "leakproof/prune.hpp"
#include "leakproof/strategy.hpp"

using namespace leakproof;

namespace {

Rational R(long long n, long long d = 1) { return Rational(n, d); }

// 2x2 matching pennies: player 0 wins on a match.
GameTree matching_pennies() {
  PlayerSet players{2, false};
  ValueTypeSpace values({{R(0)}, {R(0)}}, {{R(1)}, {R(1)}});
  std::vector<std::string> labels{"HH", "HT", "TH", "TT"};
  std::vector<std::vector<std::vector<Rational>>> util(2);
  util[0] = {{R(-1)}, {R(1)}, {R(1)}, {R(-1)}};
  util[1] = {{R(1)}, {R(-1)}, {R(-1)}, {R(1)}};
  OutcomeSpace outcomes = OutcomeSpace::table(labels, util);

  StageSpec root;
  root.actions[0] = {"Heads", "Tails"};
  root.actions[1] = {"Heads", "Tails"};
  root.children[{"Heads", "Heads"}] = StageSpec{{}, {}, "HH"};
  root.children[{"Heads", "Tails"}] = StageSpec{{}, {}, "HT"};
  root.children[{"Tails", "Heads"}] = StageSpec{{}, {}, "TH"};
  root.children[{"Tails", "Tails"}] = StageSpec{{}, {}, "TT"};
  return build_game(players, values, outcomes, root);
}

// One-stage game with two value types for player 0, five actions for player 1.
GameTree appendix_b() {
  PlayerSet players{2, false};
  ValueTypeSpace values({{R(0), R(1)}, {R(0)}}, {{R(1, 2), R(1, 2)}, {R(1)}});
  std::vector<std::string> labels{"x", "y", "z", "m", "n"};
  std::vector<std::vector<std::vector<Rational>>> util(2);
  // theta flat: 0 = low, 1 = high (player 1 has a single type)
  util[0] = {{R(0), R(2)}, {R(2), R(0)}, {R(-2), R(-2)}, {R(-2), R(-2)}, {R(2), R(2)}};
  util[1] = {{R(1), R(1)}, {R(1), R(1)}, {R(-2), R(-2)}, {R(2), R(2)}, {R(-2), R(-2)}};
  OutcomeSpace outcomes = OutcomeSpace::table(labels, util);

  const std::vector<std::string> p1{"a1H", "a1L", "a1H*", "a1L*"};
  const std::vector<std::string> p2{"a*", "a2H*", "a2L*", "a2H'", "a2L'"};
  // Outcome matrix rows follow p1, columns follow p2.
  const char* grid[4][5] = {{"x", "z", "z", "m", "z"},
                            {"y", "z", "z", "z", "m"},
                            {"z", "x", "z", "n", "z"},
                            {"z", "z", "y", "z", "n"}};
  StageSpec root;
  root.actions[0] = p1;
  root.actions[1] = p2;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 5; ++c) {
      root.children[{p1[r], p2[c]}] = StageSpec{{}, {}, grid[r][c]};
    }
  }
  SocialChoiceFunction f;
  f.outcome_by_theta = {outcomes.find("y"), outcomes.find("x")};
  return build_game(players, values, outcomes, root, f);
}

}  // namespace

TEST_CASE("matching pennies builds with four terminals") {
  GameTree g = matching_pennies();
  CHECK(g.size() == 5);
  CHECK(successors(g, g.root()).size() == 4);
  for (HistoryId z : g.terminals()) CHECK(successors(g, z).empty());
  CHECK(g.history_key(g.root()) == "");
  HistoryId ht = g.child_at(g.root(), {0, 1});
  CHECK(g.history_key(ht) == "Heads,Tails");
  CHECK(g.find_history("Heads,Tails") == ht);
  CHECK(g.utility(0, g.node(ht).outcome, {0, 0}) == R(1));
}

TEST_CASE("appendix game: root has the 4x5 product of children") {
  GameTree g = appendix_b();
  CHECK(successors(g, g.root()).size() == 20);
  CHECK(g.terminals().size() == 20);
  CHECK(g.scf().has_value());
  // f(high) = x, f(low) = y
  CHECK(g.outcomes().label(g.scf()->at(g.values(), {1, 0})) == "x");
  CHECK(g.outcomes().label(g.scf()->at(g.values(), {0, 0})) == "y");
}

TEST_CASE("a mover with a single action is rejected") {
  PlayerSet players{2, false};
  ValueTypeSpace values({{R(0)}, {R(0)}}, {{R(1)}, {R(1)}});
  OutcomeSpace outcomes = OutcomeSpace::table({"w"}, {{{R(0)}}, {{R(0)}}});
  StageSpec root;
  root.actions[0] = {"only"};
  root.actions[1] = {"a", "b"};
  root.children[{"only", "a"}] = StageSpec{{}, {}, "w"};
  root.children[{"only", "b"}] = StageSpec{{}, {}, "w"};
  CHECK_THROWS_AS(build_game(players, values, outcomes, root), StructureError);
}

TEST_CASE("missing product child raises DanglingHistory") {
  PlayerSet players{2, false};
  ValueTypeSpace values({{R(0)}, {R(0)}}, {{R(1)}, {R(1)}});
  OutcomeSpace outcomes = OutcomeSpace::table({"w"}, {{{R(0)}}, {{R(0)}}});
  StageSpec root;
  root.actions[0] = {"a", "b"};
  root.actions[1] = {"c", "d"};
  root.children[{"a", "c"}] = StageSpec{{}, {}, "w"};
  root.children[{"a", "d"}] = StageSpec{{}, {}, "w"};
  root.children[{"b", "c"}] = StageSpec{{}, {}, "w"};
  root.children[{"b", "x"}] = StageSpec{{}, {}, "w"};  // wrong label
  CHECK_THROWS_AS(build_game(players, values, outcomes, root), DanglingHistory);
}

TEST_CASE("terminal without outcome raises MissingOutcome") {
  PlayerSet players{1, false};
  ValueTypeSpace values({{R(0)}}, {{R(1)}});
  OutcomeSpace outcomes = OutcomeSpace::table({"w"}, {{{R(0)}}});
  StageSpec root;
  root.actions[0] = {"a", "b"};
  root.children[{"a"}] = StageSpec{{}, {}, "w"};
  root.children[{"b"}] = StageSpec{{}, {}, "nope"};
  CHECK_THROWS_AS(build_game(players, values, outcomes, root), MissingOutcome);
}

TEST_CASE("unknown history id") {
  GameTree g = matching_pennies();
  CHECK_THROWS_AS(successors(g, 99), UnknownHistory);
}

TEST_CASE("prune against the no-leakage equilibrium collapses the game") {
  GameTree g = appendix_b();
  DefaultProfile s0(2);
  s0.set_pure(0, 1, g.root(), 0, 4);  // high type plays a1H
  s0.set_pure(0, 0, g.root(), 1, 4);  // low type plays a1L
  s0.set_pure(1, 0, g.root(), 0, 5);  // player 1 plays a*
  CHECK_FALSE(is_pruned(g, s0));

  PruneResult pr = prune(g, s0);
  const GameTree& p = pr.tree;
  // Player 1 becomes degenerate; player 0 keeps {a1H, a1L}.
  CHECK(p.size() == 3);
  CHECK(p.movers(p.root()) == std::vector<PlayerId>{0});
  CHECK(p.action_count(p.root(), 0) == 2);
  CHECK(p.outcomes().label(p.node(p.child_at(p.root(), {0, -1})).outcome) == "x");
  CHECK(p.outcomes().label(p.node(p.child_at(p.root(), {1, -1})).outcome) == "y");
  // Restricted profile follows the original.
  CHECK(pr.restricted.at(0, 1, p.root()) == pure_dist(0, 2));
  CHECK(pr.restricted.at(0, 0, p.root()) == pure_dist(1, 2));

  // Idempotence: pruning again changes nothing.
  CHECK(is_pruned(p, pr.restricted));
  PruneResult again = prune(p, pr.restricted);
  CHECK(again.tree.size() == p.size());
  CHECK(again.tree.history_key(1) == p.history_key(1));
}

TEST_CASE("full-support profile leaves the tree unchanged") {
  GameTree g = matching_pennies();
  DefaultProfile s0(2);
  Dist uniform{R(1, 2), R(1, 2)};
  s0.set(0, 0, g.root(), uniform);
  s0.set(1, 0, g.root(), uniform);
  CHECK(is_pruned(g, s0));
  PruneResult pr = prune(g, s0);
  CHECK(pr.tree.size() == g.size());
  CHECK(pr.tree.action_count(pr.tree.root(), 0) == 2);
  CHECK(pr.tree.action_count(pr.tree.root(), 1) == 2);
}

TEST_CASE("prune with an incomplete strategy is rejected") {
  GameTree g = matching_pennies();
  DefaultProfile s0(2);
  s0.set(0, 0, g.root(), Dist{R(1, 2), R(1, 2)});
  // malformed: mass on a single action for player 1 is fine, but an
  // incomplete profile must throw before any pruning happens
  CHECK_THROWS_AS(prune(g, s0), UndefinedPlan);
}

TEST_CASE("uniform grid lands exactly on bounds") {
  auto grid = uniform_grid(R(0), R(1), R(1, 20));
  CHECK(grid.size() == 21);
  CHECK(grid.front() == R(0));
  CHECK(grid.back() == R(1));
  CHECK_THROWS_AS(uniform_grid(R(0), R(1), R(3, 10)), GridError);
}
