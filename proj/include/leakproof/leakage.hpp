#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "leakproof/game.hpp"

namespace leakproof {

// Complete transitive speed ranking. Lower rank means slower; player j
// observes player i's concurrent action iff rank[i] < rank[j].
struct LeakageOrder {
  std::vector<int> rank;

  int players() const { return static_cast<int>(rank.size()); }
  bool slower(PlayerId i, PlayerId j) const { return rank[i] < rank[j]; }  // i strictly slower
  bool equal_speed(PlayerId i, PlayerId j) const { return rank[i] == rank[j]; }
  // Players whose concurrent actions i observes.
  std::set<PlayerId> observed_by(PlayerId i) const;
  LeakageOrder normalized() const;  // ranks compressed to 0..k
  bool operator==(const LeakageOrder& o) const;
  bool operator<(const LeakageOrder& o) const;
  std::string str() const;

  static LeakageOrder all_equal(int n);
  static LeakageOrder unique_fastest(int n, PlayerId i);
};

// All weak orders on n players (normalized ranks).
std::vector<LeakageOrder> enumerate_orders(int n);

// Orders under which player i observes exactly the same set as under `order`.
std::vector<LeakageOrder> consistent_orders(const LeakageOrder& order, PlayerId i);

// One weighted belief entry: a believed order plus believed opponent types.
struct BeliefAtom {
  Rational weight;
  LeakageOrder order;
  std::vector<int> opp_types;  // per player; entry for the owner ignored (-1)
};

struct LeakageType {
  std::string name;
  std::set<PlayerId> signature;    // players this type expects to observe
  std::vector<BeliefAtom> belief;  // weights sum to 1
};

// Finite leakage type space. Admissible (profile, order) pairs are the
// combinations where every player's believed orders match their true
// observation set under the pair's order.
class LeakageTypeSpace {
 public:
  struct AdmissiblePair {
    std::vector<int> profile;  // type index per player
    LeakageOrder order;
    Rational prior_weight = Rational(1);  // optional common prior over pairs
  };

  LeakageTypeSpace() = default;
  LeakageTypeSpace(std::string name, std::vector<std::vector<LeakageType>> types);

  const std::string& name() const { return name_; }
  int players() const { return static_cast<int>(types_.size()); }
  int count(PlayerId i) const { return static_cast<int>(types_[i].size()); }
  const LeakageType& type(PlayerId i, int t) const { return types_[i][t]; }
  int find_type(PlayerId i, const std::string& name) const;  // -1 if absent

  const std::vector<AdmissiblePair>& admissible() const { return admissible_; }
  void set_pair_priors(std::vector<Rational> weights);  // aligned with admissible()

  // True iff the zero profile and every one-profile permutation is admissible.
  bool minimally_rich() const;
  // Consistency of first-order beliefs holds for every admissible pair by
  // construction; this re-checks it directly.
  bool first_order_consistent() const;

  int zero_type(PlayerId i) const;  // index of the believes-all-equal type, -1 if absent

 private:
  void enumerate_admissible();
  std::string name_;
  std::vector<std::vector<LeakageType>> types_;
  std::vector<AdmissiblePair> admissible_;
};

// Zero profile plus all one-profiles: types "t0" and "t1" per player.
LeakageTypeSpace minimal_type_space(int n);

// Common knowledge of a fixed order: a single type per player.
LeakageTypeSpace common_knowledge_space(const LeakageOrder& order, const std::string& name = "");

// Hierarchical beliefs by speed class: members of class m believe order
// per_class_orders[m-1] is common knowledge among class m and faster, and know
// the beliefs of slower classes. Last entry must equal the true order.
LeakageTypeSpace nested_type_space(const LeakageOrder& order,
                                   const std::vector<LeakageOrder>& per_class_orders);

// A player's information inside a stage: public history plus the concurrent
// actions leaked from strictly slower movers.
struct PrivateHistory {
  HistoryId public_h = 0;
  std::vector<std::pair<PlayerId, ActionIndex>> leaked;  // sorted by player

  bool operator==(const PrivateHistory& o) const {
    return public_h == o.public_h && leaked == o.leaked;
  }
  bool operator<(const PrivateHistory& o) const {
    return public_h != o.public_h ? public_h < o.public_h : leaked < o.leaked;
  }
  std::string key(const GameTree& g) const;
};

struct AnnotatedPrivateHistory {
  PrivateHistory h;
  std::optional<bool> on_path;  // set when a strategy profile was supplied
};

class StrategyProfileView;  // fwd (strategy.hpp)

// Enumerates every (public history, leaked combination) pair player i can
// face under `order`. With a profile, annotates on-path reachability.
std::vector<AnnotatedPrivateHistory> private_histories(
    const GameTree& g, const LeakageOrder& order, PlayerId i,
    const StrategyProfileView* opponents = nullptr,
    const std::vector<int>* ltype_profile = nullptr);

}  // namespace leakproof
