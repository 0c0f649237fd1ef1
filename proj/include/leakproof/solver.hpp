#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "leakproof/game.hpp"
#include "leakproof/leakage.hpp"
#include "leakproof/strategy.hpp"

namespace leakproof {

// One support point of a player's subjective uncertainty: a full value
// profile, a full leakage-type profile and a believed order, with an
// (unnormalized) weight. The owner's own entries are fixed by the caller.
struct Atom {
  ThetaProfile theta;
  std::vector<int> ltypes;
  LeakageOrder order;
  Rational w;
};

using Atoms = std::vector<Atom>;

Rational total_weight(const Atoms& atoms);

// Posterior of player i with leakage type t_i at a private history, given
// that everyone else follows `profile`. Updates by Bayes' rule stage by
// stage; an observed opponent action that is impossible under the running
// posterior contributes no update (the deviation is treated as
// uninformative), which realizes the default off-path belief policy.
// Entries for player i in the returned atoms are -1 placeholders.
Atoms bayes_update(const GameTree& g, const StrategyProfileView& profile,
                   const LeakageTypeSpace& space, PlayerId i, int t_i,
                   const PrivateHistory& h_i);

// Weighted-value engine for one perspective player. Walks the public tree,
// resolving stages atom by atom over opponents' strategy supports while the
// perspective player's choices pool atoms that share an observation.
class Evaluator {
 public:
  using TerminalPayoff = std::function<Rational(const Atom&, OutcomeId)>;
  using MyPlay = std::function<Dist(const PrivateHistory&)>;

  Evaluator(const GameTree& g, const StrategyProfileView& others, PlayerId me,
            std::set<PlayerId> my_signature);

  static TerminalPayoff utility_payoff(const GameTree& g, PlayerId me);

  // Sum over atoms of w * E[payoff] when the perspective player follows
  // `plan` from the given private history on. Linear in weights.
  Rational follow_at(const PrivateHistory& start, const Atoms& atoms, const MyPlay& plan,
                     const TerminalPayoff& payoff) const;

  // Same, maximizing over the perspective player's continuation plans.
  // Ties break to the lowest action index. Records the argmax when asked.
  Rational best_at(const PrivateHistory& start, const Atoms& atoms, const TerminalPayoff& payoff,
                   std::map<std::string, int>* plan_out = nullptr) const;

 private:
  enum class Mode { kFollow, kBest };
  Rational eval(HistoryId h, const Atoms& atoms, Mode mode, const MyPlay* plan,
                const TerminalPayoff& payoff, std::map<std::string, int>* plan_out) const;
  Rational eval_stage(HistoryId h, const std::vector<std::pair<PlayerId, ActionIndex>>& fixed_obs,
                      const Atoms& atoms, Mode mode, const MyPlay* plan,
                      const TerminalPayoff& payoff, std::map<std::string, int>* plan_out) const;

  const GameTree& g_;
  const StrategyProfileView& others_;
  PlayerId me_;
  std::set<PlayerId> sig_;
};

// Forward distribution over terminal histories for a fully specified
// environment: value profile, leakage-type profile and true order.
std::map<HistoryId, Rational> outcome_distribution(const GameTree& g,
                                                   const StrategyProfileView& profile,
                                                   const ThetaProfile& theta,
                                                   const std::vector<int>& ltypes,
                                                   const LeakageOrder& order);

Rational expected_utility(const GameTree& g, const StrategyProfileView& profile,
                          const ThetaProfile& theta, const std::vector<int>& ltypes,
                          const LeakageOrder& order, PlayerId i);

struct CellResult {
  int pair_index = -1;
  PlayerId player = -1;
  ValueIndex theta = -1;
  int ltype = -1;
  std::string history;
  bool on_path = false;
  Rational posterior_mass;  // unnormalized total weight
  Rational prescribed;      // unnormalized
  Rational best;            // unnormalized
  Rational gain() const {   // normalized deviation gain
    return posterior_mass.is_zero() ? Rational(0) : (best - prescribed) / posterior_mass;
  }
  DeviationPlan witness;
};

struct VerifyReport {
  bool pass = true;
  Rational eps;
  long long cells = 0;
  Rational max_gain = Rational(0);          // over all cells
  Rational max_on_path_gain = Rational(0);  // over on-path cells
  std::vector<CellResult> violations;       // gain > eps, sorted by cell key
  bool on_path_pass = true;                 // no violation at an on-path cell
};

struct VerifyOptions {
  Rational eps = Rational(0);
  bool keep_all_violations = true;
  long long max_violations = 200;
};

// Sequential-rationality audit of a strategy profile over every admissible
// (type profile, order) pair of the space: at each private history of each
// (player, value type, leakage type), the prescribed continuation must be
// within eps of the best response under the Bayesian posterior.
VerifyReport verify_equilibrium(const GameTree& g, const StrategyProfileView& profile,
                                const LeakageTypeSpace& space, const VerifyOptions& opts = {});

// Independent direct check that a no-leakage profile is a PBE of the game
// without leakage. Deliberately implemented apart from the Evaluator so the
// two routes can cross-validate each other.
struct NoLeakCheck {
  bool pass = true;
  Rational max_gain = Rational(0);
  std::string first_violation;
};
NoLeakCheck check_no_leak_pbe(const GameTree& g, const DefaultProfile& s0,
                              const Rational& eps = Rational(0));

// Finds a no-leakage PBE by exhaustive pure search, then (for one-stage
// two-player games with singleton value types) support-2 mixed search.
DefaultProfile default_equilibrium(const GameTree& g, long long pure_budget = 200000);

}  // namespace leakproof
