#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "leakproof/rational.hpp"

namespace leakproof {

using PlayerId = int;
using HistoryId = int;
using OutcomeId = int;
using ActionIndex = int;
using ValueIndex = int;

// Value type per player in a full profile, indexed into each player's grid.
using ThetaProfile = std::vector<ValueIndex>;

struct PlayerSet {
  int n = 0;            // strategic players, ids 0..n-1
  bool seller = false;  // passive seller collecting payments (auctions)

  void validate() const;
};

// Per-player finite value grid with prior. Grids must be strictly increasing
// and equally spaced when they have more than one point.
class ValueTypeSpace {
 public:
  ValueTypeSpace() = default;
  ValueTypeSpace(std::vector<std::vector<Rational>> grids,
                 std::vector<std::vector<Rational>> priors);

  int players() const { return static_cast<int>(grids_.size()); }
  int count(PlayerId i) const { return static_cast<int>(grids_[i].size()); }
  const std::vector<Rational>& grid(PlayerId i) const { return grids_[i]; }
  const std::vector<Rational>& prior(PlayerId i) const { return priors_[i]; }
  const Rational& value(PlayerId i, ValueIndex m) const { return grids_[i][m]; }
  const Rational& mass(PlayerId i, ValueIndex m) const { return priors_[i][m]; }

  // Common spacing across all players with >= 2 values. Throws if mixed.
  Rational delta() const;
  Rational spacing(PlayerId i) const;  // spacing of player i's grid

  long long profile_count() const;
  long long flat_index(const ThetaProfile& t) const;
  ThetaProfile profile_at(long long flat) const;
  Rational prior_mass(const ThetaProfile& t) const;  // product of marginals

 private:
  std::vector<std::vector<Rational>> grids_;
  std::vector<std::vector<Rational>> priors_;
};

// Auction terminal payload: per-bidder win probability and payment.
struct AuctionOutcome {
  std::vector<Rational> q;
  std::vector<Rational> m;

  bool operator==(const AuctionOutcome& o) const { return q == o.q && m == o.m; }
  bool operator<(const AuctionOutcome& o) const {
    return q != o.q ? q < o.q : m < o.m;
  }
};

// Finite outcome set with utilities. Either an explicit utility table
// u[player][outcome][theta_flat] or quasilinear auction payoffs q_i*theta_i - m_i
// derived from per-outcome AuctionOutcome payloads.
class OutcomeSpace {
 public:
  static OutcomeSpace table(std::vector<std::string> labels,
                            std::vector<std::vector<std::vector<Rational>>> util);
  static OutcomeSpace quasilinear(std::vector<std::string> labels,
                                  std::vector<AuctionOutcome> payloads);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(OutcomeId x) const { return labels_[x]; }
  OutcomeId find(const std::string& label) const;  // -1 if absent
  bool is_quasilinear() const { return quasilinear_; }
  const AuctionOutcome& auction(OutcomeId x) const;

  Rational utility(PlayerId i, OutcomeId x, const ThetaProfile& theta,
                   const ValueTypeSpace& values) const;
  void validate(int players, long long theta_profiles) const;

 private:
  std::vector<std::string> labels_;
  bool quasilinear_ = false;
  std::vector<AuctionOutcome> payloads_;
  std::vector<std::vector<std::vector<Rational>>> util_;  // [player][outcome][theta_flat]
};

// Recursive stage description consumed by build_game.
struct StageSpec {
  std::map<PlayerId, std::vector<std::string>> actions;  // movers and their action labels
  // Children keyed by the movers' action labels in ascending player order.
  std::map<std::vector<std::string>, StageSpec> children;
  std::string outcome;  // terminal outcome label (children empty)
};

struct SocialChoiceFunction {
  std::vector<OutcomeId> outcome_by_theta;  // indexed by flat theta profile

  OutcomeId at(const ValueTypeSpace& v, const ThetaProfile& t) const {
    return outcome_by_theta[v.flat_index(t)];
  }
};

// Finite multistage game with observed actions and simultaneous moves.
// Histories are stored densely; children of a nonterminal history are the
// full cartesian product of its movers' action sets, addressed in mixed-radix
// order (later players vary fastest).
class GameTree {
 public:
  struct Node {
    HistoryId parent = -1;
    int stage = 0;
    std::vector<ActionIndex> incoming;             // per player, -1 if not mover at parent
    std::vector<std::vector<std::string>> actions; // per player; empty = not a mover here
    std::vector<HistoryId> children;               // product order; empty = terminal
    OutcomeId outcome = -1;
  };

  GameTree() = default;

  const PlayerSet& players() const { return players_; }
  const ValueTypeSpace& values() const { return values_; }
  const OutcomeSpace& outcomes() const { return outcomes_; }
  const std::optional<SocialChoiceFunction>& scf() const { return scf_; }

  HistoryId root() const { return 0; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const Node& node(HistoryId h) const;
  bool is_terminal(HistoryId h) const { return node(h).children.empty(); }
  std::vector<PlayerId> movers(HistoryId h) const;
  int action_count(HistoryId h, PlayerId i) const {
    return static_cast<int>(node(h).actions[i].size());
  }
  const std::string& action_label(HistoryId h, PlayerId i, ActionIndex a) const {
    return node(h).actions[i][a];
  }
  // Child for a full action vector (entries for non-movers ignored).
  HistoryId child_at(HistoryId h, const std::vector<ActionIndex>& avec) const;
  std::vector<HistoryId> terminals() const;
  std::vector<HistoryId> nonterminals() const;
  int max_stage() const;

  // Path of a history as action labels, e.g. "H,T|accept,wait". Identity key.
  std::string history_key(HistoryId h) const;
  HistoryId find_history(const std::string& key) const;  // -1 if absent

  Rational utility(PlayerId i, OutcomeId x, const ThetaProfile& theta) const {
    return outcomes_.utility(i, x, theta, values_);
  }

  void validate() const;

 private:
  friend class GameTreeBuilder;
  PlayerSet players_;
  ValueTypeSpace values_;
  OutcomeSpace outcomes_;
  std::optional<SocialChoiceFunction> scf_;
  std::vector<Node> nodes_;
};

// Low-level builder used by build_game and the auction constructors.
class GameTreeBuilder {
 public:
  GameTreeBuilder(PlayerSet players, ValueTypeSpace values, OutcomeSpace outcomes);
  // Adds all children of `h` as the product of the movers' action sets.
  // Returns ids in product order.
  std::vector<HistoryId> expand(HistoryId h, std::vector<std::vector<std::string>> actions);
  void set_outcome(HistoryId h, OutcomeId x);
  void set_scf(SocialChoiceFunction f);
  HistoryId root() const { return 0; }
  GameTree finish();  // validates

 private:
  GameTree g_;
};

GameTree build_game(const PlayerSet& players, const ValueTypeSpace& values,
                    const OutcomeSpace& outcomes, const StageSpec& tree_spec,
                    std::optional<SocialChoiceFunction> scf = std::nullopt);

std::vector<HistoryId> successors(const GameTree& g, HistoryId h);

// Uniform grid helper: {lo, lo+step, ..., hi}.
std::vector<Rational> uniform_grid(const Rational& lo, const Rational& hi, const Rational& step);

}  // namespace leakproof
