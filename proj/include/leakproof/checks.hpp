#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "leakproof/auction.hpp"
#include "leakproof/game.hpp"
#include "leakproof/leakage.hpp"
#include "leakproof/solver.hpp"
#include "leakproof/strategy.hpp"

namespace leakproof {

struct Witness {
  std::string space;
  int pair_index = -1;
  PlayerId player = -1;
  ValueIndex theta = -1;
  int ltype = -1;
  std::string history;
  Rational gain;
  DeviationPlan plan;
  std::string note;
};

struct SubResult {
  std::string key;
  bool pass = true;
  std::string note;
};

struct PropertyReport {
  std::string property;
  std::string subject;
  bool pass = true;
  std::vector<SubResult> subs;
  std::optional<Witness> witness;
  std::map<std::string, std::string> metrics;
  std::vector<std::string> notes;

  void metric(const std::string& name, const Rational& v) { metrics[name] = v.str(); }
  void sub(const std::string& key, bool ok, const std::string& note = "") {
    subs.push_back({key, ok, note});
    if (!ok) pass = false;
  }
};

using Family = std::vector<std::shared_ptr<const LeakageTypeSpace>>;

// The equilibrium-extension profile: every player follows the no-leakage
// default wherever their own past play is consistent with it, and plays a
// lazily computed best response against the others' default continuations
// after own deviations.
StrategyProfileView extend_with_best_responses(std::shared_ptr<const GameTree> g,
                                               std::shared_ptr<const DefaultProfile> s0,
                                               std::shared_ptr<const LeakageTypeSpace> space);

struct LeakageProofOptions {
  Rational eps = Rational(0);
  bool require_pruned = false;  // throw NotPruned instead of noting it
};

// Does the default mechanism survive leakage? For every space in the family,
// extends s0 and verifies that following the default is an eps-best response
// at every private history on the default path of play.
PropertyReport is_leakage_proof(std::shared_ptr<const GameTree> g,
                                std::shared_ptr<const DefaultProfile> s0, const Family& family,
                                const LeakageProofOptions& opts = {});

// Searches for an eps-PBE yielding f(theta) for every value and type profile,
// trying the default extension first and then any provided profiles.
PropertyReport implements(std::shared_ptr<const GameTree> g, const SocialChoiceFunction& f,
                          const Family& family, const Rational& eps,
                          std::shared_ptr<const DefaultProfile> s0 = nullptr,
                          const std::vector<StrategyProfileView>& provided = {});

// Both directions of the implementability equivalence on the supplied
// family; disagreement is reported as a counterexample candidate together
// with which assumptions the inputs violate.
PropertyReport theorem1_crosscheck(std::shared_ptr<const GameTree> g,
                                   const SocialChoiceFunction& f, const Family& family,
                                   std::shared_ptr<const DefaultProfile> s0,
                                   const std::vector<StrategyProfileView>& provided = {});

// Efficiency under leakage for auctions, plus the companion certificate: a
// leakage-proof eps-PBE with eps = 2*delta that is always efficient.
PropertyReport is_efficient_under_leakage(std::shared_ptr<const GameTree> g,
                                          std::shared_ptr<const DefaultProfile> s0,
                                          const Family& family, const Rational& eps);

// The induced allocation q(theta) must not depend on the leakage-type pair.
PropertyReport allocation_invariance(std::shared_ptr<const GameTree> g,
                                     const StrategyProfileView& profile, const Family& family);

struct Lemma1Cell {
  int pair_index;
  PlayerId player;
  int ltype;
  PrivateHistory history;
};

// Monotone interim allocation on the feasible set and the two-sided payoff
// bounds for mimicking weakly slower leakage types, all exact.
PropertyReport lemma1_bounds(std::shared_ptr<const GameTree> g,
                             const StrategyProfileView& profile,
                             std::shared_ptr<const LeakageTypeSpace> space,
                             const Lemma1Cell& cell, bool invariance_checked);

// Same checks swept over every on-path cell of every admissible pair.
PropertyReport lemma1_bounds_sweep(std::shared_ptr<const GameTree> g,
                                   const StrategyProfileView& profile,
                                   std::shared_ptr<const LeakageTypeSpace> space);

// Ex-post incentive compatibility of a no-leakage profile: no player gains by
// deviating even knowing the full value profile. The sequential variant
// repeats the check at every on-path stage history.
PropertyReport is_epic(std::shared_ptr<const GameTree> g,
                       std::shared_ptr<const DefaultProfile> s0);
PropertyReport sequential_epic_on_path(std::shared_ptr<const GameTree> g,
                                       std::shared_ptr<const DefaultProfile> s0);

// One catalog entry for the cross-mechanism implication checks.
struct MechanismVerdicts {
  std::string name;
  bool is_static = true;
  bool pure = true;
  bool epic = false;
  bool leakage_proof = false;
};

// pure EPIC => leakage-proof; static leakage-proof => EPIC; and the two
// documented non-implications must be witnessed by the catalog.
PropertyReport proposition_crosschecks(const std::vector<MechanismVerdicts>& catalog);

// Permutation anonymity of (q, m) and zero rent for the lowest feasible type
// at every on-path cell.
PropertyReport assumption_audit(std::shared_ptr<const GameTree> g, const AuctionSpec& spec,
                                const StrategyProfileView& profile,
                                std::shared_ptr<const LeakageTypeSpace> space);

}  // namespace leakproof
