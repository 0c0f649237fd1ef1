#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "leakproof/game.hpp"
#include "leakproof/leakage.hpp"

namespace leakproof {

// Probability distribution over the action indices of one decision point.
using Dist = std::vector<Rational>;

bool dist_valid(const Dist& d);           // nonnegative, sums to exactly 1
int dist_support_size(const Dist& d);
Dist pure_dist(int action, int count);

// No-leakage strategy profile: one distribution per (player, value type,
// public history where the player moves).
class DefaultProfile {
 public:
  DefaultProfile() = default;
  explicit DefaultProfile(int players) : by_player_(players) {}

  int players() const { return static_cast<int>(by_player_.size()); }
  void set(PlayerId i, ValueIndex theta, HistoryId h, Dist d);
  void set_pure(PlayerId i, ValueIndex theta, HistoryId h, int action, int action_count);
  const Dist& at(PlayerId i, ValueIndex theta, HistoryId h) const;  // UndefinedPlan
  bool defined(PlayerId i, ValueIndex theta, HistoryId h) const;

  // Defined at every nonterminal history where the player moves, for every type.
  void validate_complete(const GameTree& g) const;
  bool operator==(const DefaultProfile& o) const { return by_player_ == o.by_player_; }

  // Histories where player i has entries.
  std::vector<HistoryId> histories(PlayerId i) const;

 private:
  // [player] -> history -> per-theta dist
  std::vector<std::map<HistoryId, std::vector<Dist>>> by_player_;
};

// Full leakage-aware profile: distribution per (player, value type, leakage
// type, private history). Backed by a closure so fixture tables, no-leakage
// profiles and lazily-built extensions share one interface.
class StrategyProfileView {
 public:
  using Fn = std::function<Dist(PlayerId, ValueIndex, int ltype, const PrivateHistory&)>;

  StrategyProfileView() = default;
  explicit StrategyProfileView(Fn fn, std::string label = "") : fn_(std::move(fn)), label_(std::move(label)) {}

  Dist act(PlayerId i, ValueIndex theta, int ltype, const PrivateHistory& h) const {
    if (!fn_) throw UndefinedPlan("empty strategy profile");
    Dist d = fn_(i, theta, ltype, h);
    if (d.empty()) throw UndefinedPlan("no plan for player " + std::to_string(i));
    return d;
  }
  const std::string& label() const { return label_; }

  // Ignores leaks and leakage types.
  static StrategyProfileView from_default(std::shared_ptr<const DefaultProfile> s0,
                                          std::string label = "default");

 private:
  Fn fn_;
  std::string label_;
};

// Explicit table usable for fixture equilibria that react to leaks.
class StrategyTable {
 public:
  explicit StrategyTable(int players) : players_(players) {}

  void set(PlayerId i, ValueIndex theta, int ltype, const std::string& private_key, Dist d);
  // Fallback consulted when no leak-specific entry exists: keyed by public history.
  void set_public(PlayerId i, ValueIndex theta, int ltype, HistoryId h, Dist d);

  StrategyProfileView view(std::shared_ptr<const GameTree> g, std::string label = "table") const;

 private:
  struct Key {
    PlayerId i;
    ValueIndex theta;
    int ltype;
    std::string hkey;
    bool operator<(const Key& o) const {
      return std::tie(i, theta, ltype, hkey) < std::tie(o.i, o.theta, o.ltype, o.hkey);
    }
  };
  int players_;
  std::map<Key, Dist> cells_;
  std::map<std::tuple<PlayerId, ValueIndex, int, HistoryId>, Dist> public_cells_;
  friend class StrategyProfileView;
};

// A pure continuation plan for one (player, value type, leakage type),
// recorded per private-history key. Used for best-response witnesses.
struct DeviationPlan {
  PlayerId player = -1;
  ValueIndex theta = -1;
  int ltype = -1;
  std::map<std::string, int> action_at;  // private key -> action index

  bool empty() const { return action_at.empty(); }
};

// Profile equal to `base` except that one (player, theta, ltype) slice follows
// the plan where the plan has an entry.
StrategyProfileView with_deviation(const GameTree& g, const StrategyProfileView& base,
                                   const DeviationPlan& plan);

}  // namespace leakproof
