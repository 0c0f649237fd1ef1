#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "leakproof/auction.hpp"
#include "leakproof/checks.hpp"
#include "leakproof/game.hpp"
#include "leakproof/strategy.hpp"

namespace leakproof {

struct CheckRow {
  std::string name;
  std::string expected;
  std::string computed;
  bool pass = false;
  std::string provenance;  // "exact" | "derived" | "reference"
  std::string note;
};

struct FixtureResult {
  std::string fixture;
  bool pass = true;
  std::vector<CheckRow> rows;
  std::vector<std::string> notes;
  double seconds = 0;
  // Optional CSV series (first row = header), e.g. bid functions.
  std::vector<std::vector<std::string>> series;

  void row(CheckRow r) {
    pass = pass && r.pass;
    rows.push_back(std::move(r));
  }
};

struct Fixture {
  std::string name;
  std::string summary;
  std::function<FixtureResult(unsigned seed)> run;
};

const std::vector<Fixture>& fixture_catalog();
FixtureResult run_fixture(const std::string& name, unsigned seed = 1);

// Shared constructions (also used by the test suites).
GameTree matching_pennies_game();
GameTree appendix_b_game();
DefaultProfile appendix_b_default(const GameTree& g);
// The two common-knowledge leakage equilibria of the appendix game.
StrategyProfileView appendix_b_profile_fast0(std::shared_ptr<const GameTree> g);
StrategyProfileView appendix_b_profile_fast1(std::shared_ptr<const GameTree> g);

ValueTypeSpace uniform_values(int bidders, const Rational& lo, const Rational& hi,
                              const Rational& step);
// Pareto cdf F(v) = 1 - (v + 1/2)^-2 discretized on [1/2, vmax] with the tail
// mass on the top grid point.
ValueTypeSpace pareto_values(int bidders, const Rational& vmax, const Rational& step);
Rational pareto_cdf(const Rational& v);

AuctionSpec uniform_auction(AuctionFormat format, int bidders, const Rational& value_step,
                            const Rational& bid_step, const Rational& reserve, TieBreak tie);

// Verdicts needed by the proposition crosschecks, computed at desk scale.
std::vector<MechanismVerdicts> mechanism_verdict_catalog();

}  // namespace leakproof
