#include "leakproof/leakage.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "leakproof/strategy.hpp"

namespace leakproof {

std::set<PlayerId> LeakageOrder::observed_by(PlayerId i) const {
  std::set<PlayerId> obs;
  for (PlayerId j = 0; j < players(); ++j) {
    if (j != i && slower(j, i)) obs.insert(j);
  }
  return obs;
}

LeakageOrder LeakageOrder::normalized() const {
  std::vector<int> sorted = rank;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  LeakageOrder out;
  out.rank.resize(rank.size());
  for (size_t i = 0; i < rank.size(); ++i) {
    out.rank[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), rank[i]) -
                                   sorted.begin());
  }
  return out;
}

bool LeakageOrder::operator==(const LeakageOrder& o) const {
  return normalized().rank == o.normalized().rank;
}

bool LeakageOrder::operator<(const LeakageOrder& o) const {
  return normalized().rank < o.normalized().rank;
}

std::string LeakageOrder::str() const {
  std::string s;
  for (size_t i = 0; i < rank.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(rank[i]);
  }
  return "[" + s + "]";
}

LeakageOrder LeakageOrder::all_equal(int n) { return LeakageOrder{std::vector<int>(n, 0)}; }

LeakageOrder LeakageOrder::unique_fastest(int n, PlayerId i) {
  LeakageOrder o{std::vector<int>(n, 0)};
  o.rank[i] = 1;
  return o;
}

std::vector<LeakageOrder> enumerate_orders(int n) {
  std::set<std::vector<int>> seen;
  std::vector<int> rank(n, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      seen.insert(LeakageOrder{rank}.normalized().rank);
      return;
    }
    for (int r = 0; r < n; ++r) {
      rank[i] = r;
      rec(i + 1);
    }
  };
  rec(0);
  std::vector<LeakageOrder> out;
  for (const auto& r : seen) out.push_back(LeakageOrder{r});
  return out;
}

std::vector<LeakageOrder> consistent_orders(const LeakageOrder& order, PlayerId i) {
  std::set<PlayerId> want = order.observed_by(i);
  std::vector<LeakageOrder> out;
  for (const auto& cand : enumerate_orders(order.players())) {
    if (cand.observed_by(i) == want) out.push_back(cand);
  }
  return out;
}

LeakageTypeSpace::LeakageTypeSpace(std::string name, std::vector<std::vector<LeakageType>> types)
    : name_(std::move(name)), types_(std::move(types)) {
  for (PlayerId i = 0; i < players(); ++i) {
    for (const auto& t : types_[i]) {
      Rational sum(0);
      for (const auto& atom : t.belief) {
        if (atom.order.players() != players()) {
          throw InconsistentOrder("belief order has wrong player count");
        }
        if (static_cast<int>(atom.opp_types.size()) != players()) {
          throw InconsistentOrder("belief opponent-type vector has wrong length");
        }
        for (PlayerId j = 0; j < players(); ++j) {
          if (j == i) continue;
          if (atom.opp_types[j] < 0 || atom.opp_types[j] >= count(j)) {
            throw InconsistentOrder("dangling type id in belief of " + t.name);
          }
        }
        // Every believed order must induce exactly this type's signature.
        if (atom.order.observed_by(i) != t.signature) {
          throw InconsistentOrder("belief order contradicts observation signature of " + t.name);
        }
        sum += atom.weight;
      }
      if (sum != Rational(1)) throw InconsistentOrder("belief weights of " + t.name + " not 1");
    }
  }
  enumerate_admissible();
}

int LeakageTypeSpace::find_type(PlayerId i, const std::string& name) const {
  for (int t = 0; t < count(i); ++t) {
    if (types_[i][t].name == name) return t;
  }
  return -1;
}

void LeakageTypeSpace::enumerate_admissible() {
  admissible_.clear();
  const int n = players();
  std::vector<LeakageOrder> orders = enumerate_orders(n);
  std::vector<int> profile(n, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      for (const auto& ord : orders) {
        bool ok = true;
        for (PlayerId j = 0; j < n && ok; ++j) {
          // First-order consistency: the true observation set must match the
          // signature every believed order induces.
          if (types_[j][profile[j]].signature != ord.observed_by(j)) ok = false;
        }
        if (ok) admissible_.push_back({profile, ord, Rational(1)});
      }
      return;
    }
    for (int t = 0; t < count(i); ++t) {
      profile[i] = t;
      rec(i + 1);
    }
  };
  rec(0);
}

void LeakageTypeSpace::set_pair_priors(std::vector<Rational> weights) {
  if (weights.size() != admissible_.size()) {
    throw InconsistentOrder("pair prior length mismatch");
  }
  Rational sum(0);
  for (const auto& w : weights) sum += w;
  if (sum != Rational(1)) throw InconsistentOrder("pair priors must sum to 1");
  for (size_t k = 0; k < weights.size(); ++k) admissible_[k].prior_weight = weights[k];
}

int LeakageTypeSpace::zero_type(PlayerId i) const {
  for (int t = 0; t < count(i); ++t) {
    if (types_[i][t].signature.empty()) {
      bool all_equal_belief = true;
      for (const auto& atom : types_[i][t].belief) {
        if (!(atom.order == LeakageOrder::all_equal(players()))) all_equal_belief = false;
      }
      if (all_equal_belief) return t;
    }
  }
  return -1;
}

bool LeakageTypeSpace::minimally_rich() const {
  const int n = players();
  auto has_pair = [&](const std::vector<std::set<PlayerId>>& sigs, const LeakageOrder& ord) {
    for (const auto& p : admissible_) {
      if (!(p.order == ord)) continue;
      bool match = true;
      for (PlayerId i = 0; i < n; ++i) {
        if (types_[i][p.profile[i]].signature != sigs[i]) match = false;
      }
      if (match) return true;
    }
    return false;
  };
  std::vector<std::set<PlayerId>> zero(n);
  if (!has_pair(zero, LeakageOrder::all_equal(n))) return false;
  for (PlayerId f = 0; f < n; ++f) {
    std::vector<std::set<PlayerId>> sigs(n);
    for (PlayerId j = 0; j < n; ++j) {
      if (j != f) sigs[f].insert(j);
    }
    if (!has_pair(sigs, LeakageOrder::unique_fastest(n, f))) return false;
  }
  return true;
}

bool LeakageTypeSpace::first_order_consistent() const {
  for (const auto& pair : admissible_) {
    for (PlayerId i = 0; i < players(); ++i) {
      const LeakageType& t = types_[i][pair.profile[i]];
      auto allowed = consistent_orders(pair.order, i);
      for (const auto& atom : t.belief) {
        bool in = false;
        for (const auto& ord : allowed) {
          if (ord == atom.order) in = true;
        }
        if (!in) return false;
      }
    }
  }
  return true;
}

namespace {

LeakageType make_zero_type(int n, PlayerId i, const std::string& name, int zero_index) {
  LeakageType t;
  t.name = name;
  std::vector<int> opp(n, zero_index);
  opp[i] = -1;
  t.belief = {{Rational(1), LeakageOrder::all_equal(n), opp}};
  return t;
}

}  // namespace

LeakageTypeSpace minimal_type_space(int n) {
  std::vector<std::vector<LeakageType>> types(n);
  for (PlayerId i = 0; i < n; ++i) {
    types[i].push_back(make_zero_type(n, i, "t0", 0));
    if (n > 1) {
      LeakageType fast;
      fast.name = "t1";
      for (PlayerId j = 0; j < n; ++j) {
        if (j != i) fast.signature.insert(j);
      }
      std::vector<int> opp(n, 0);  // everyone else the zero type
      opp[i] = -1;
      fast.belief = {{Rational(1), LeakageOrder::unique_fastest(n, i), opp}};
      types[i].push_back(fast);
    }
  }
  return LeakageTypeSpace("minimal", std::move(types));
}

LeakageTypeSpace common_knowledge_space(const LeakageOrder& order, const std::string& name) {
  const int n = order.players();
  std::vector<std::vector<LeakageType>> types(n);
  for (PlayerId i = 0; i < n; ++i) {
    LeakageType t;
    t.name = "ck";
    t.signature = order.observed_by(i);
    std::vector<int> opp(n, 0);
    opp[i] = -1;
    t.belief = {{Rational(1), order, opp}};
    types[i].push_back(t);
  }
  std::string label = name.empty() ? "ck" + order.str() : name;
  return LeakageTypeSpace(label, std::move(types));
}

LeakageTypeSpace nested_type_space(const LeakageOrder& order,
                                   const std::vector<LeakageOrder>& per_class_orders) {
  const int n = order.players();
  LeakageOrder norm = order.normalized();
  int classes = 0;
  for (int r : norm.rank) classes = std::max(classes, r + 1);
  if (static_cast<int>(per_class_orders.size()) != classes) {
    throw InconsistentOrder("need one order per speed class");
  }
  if (!(per_class_orders.back() == order)) {
    throw InconsistentOrder("fastest class must hold the true order");
  }
  for (int m = 0; m < classes; ++m) {
    for (PlayerId j = 0; j < n; ++j) {
      if (norm.rank[j] != m) continue;
      if (per_class_orders[m].observed_by(j) != order.observed_by(j)) {
        throw InconsistentOrder("class order inconsistent for player " + std::to_string(j));
      }
    }
  }

  // Type t^(m) for player j: believes order per_class_orders[m-1]; attributes
  // type t^(min(level, m)) to everyone else. Players carry types for their own
  // class level and every slower level so attributions resolve.
  std::vector<std::vector<LeakageType>> types(n);
  for (PlayerId j = 0; j < n; ++j) {
    int own_level = norm.rank[j];
    for (int m = 0; m <= own_level; ++m) {
      LeakageType t;
      t.name = "lvl" + std::to_string(m);
      t.signature = per_class_orders[m].observed_by(j);
      std::vector<int> opp(n, 0);
      for (PlayerId k = 0; k < n; ++k) {
        if (k == j) {
          opp[k] = -1;
          continue;
        }
        opp[k] = std::min(norm.rank[k], m);  // slower classes keep their own level
      }
      t.belief = {{Rational(1), per_class_orders[m], opp}};
      types[j].push_back(t);
    }
  }
  return LeakageTypeSpace("nested" + order.str(), std::move(types));
}

std::string PrivateHistory::key(const GameTree& g) const {
  std::string k = g.history_key(public_h);
  if (!leaked.empty()) {
    k += "~";
    bool first = true;
    for (const auto& [j, a] : leaked) {
      if (!first) k += ";";
      first = false;
      k += "p" + std::to_string(j) + ":" + g.action_label(public_h, j, a);
    }
  }
  return k;
}

std::vector<AnnotatedPrivateHistory> private_histories(const GameTree& g,
                                                       const LeakageOrder& order, PlayerId i,
                                                       const StrategyProfileView* opponents,
                                                       const std::vector<int>* ltype_profile) {
  std::vector<AnnotatedPrivateHistory> out;
  std::set<PrivateHistory> on_path;

  if (opponents != nullptr) {
    // Mark reachability: walk support of the profile for every theta profile.
    const auto& vals = g.values();
    for (long long f = 0; f < vals.profile_count(); ++f) {
      ThetaProfile theta = vals.profile_at(f);
      std::function<void(HistoryId)> walk = [&](HistoryId h) {
        if (g.is_terminal(h)) return;
        auto ms = g.movers(h);
        // Supports per mover given realized slower actions; enumerate jointly.
        std::vector<ActionIndex> avec(g.players().n, -1);
        std::function<void(size_t)> assign = [&](size_t k) {
          if (k == ms.size()) {
            walk(g.child_at(h, avec));
            return;
          }
          PlayerId j = ms[k];
          PrivateHistory hj{h, {}};
          for (PlayerId s : ms) {
            if (order.slower(s, j) && avec[s] >= 0) hj.leaked.push_back({s, avec[s]});
          }
          std::sort(hj.leaked.begin(), hj.leaked.end());
          int lt = ltype_profile ? (*ltype_profile)[j] : 0;
          Dist d = opponents->act(j, theta[j], lt, hj);
          if (j == i) on_path.insert(hj);
          for (ActionIndex a = 0; a < static_cast<int>(d.size()); ++a) {
            if (d[a].is_zero()) continue;
            avec[j] = a;
            assign(k + 1);
          }
          avec[j] = -1;
        };
        // Resolve slower movers first so leaks are available.
        std::sort(ms.begin(), ms.end(), [&](PlayerId a, PlayerId b) {
          return order.rank[a] != order.rank[b] ? order.rank[a] < order.rank[b] : a < b;
        });
        assign(0);
      };
      walk(g.root());
    }
  }

  for (HistoryId h = 0; h < g.size(); ++h) {
    if (g.is_terminal(h)) continue;
    auto ms = g.movers(h);
    bool moves = std::find(ms.begin(), ms.end(), i) != ms.end();
    if (!moves) continue;
    std::vector<PlayerId> observed;
    for (PlayerId j : ms) {
      if (j != i && order.slower(j, i)) observed.push_back(j);
    }
    // All combinations of observed players' actions.
    std::vector<ActionIndex> combo(observed.size(), 0);
    std::function<void(size_t)> rec = [&](size_t k) {
      if (k == observed.size()) {
        PrivateHistory ph{h, {}};
        for (size_t j = 0; j < observed.size(); ++j) ph.leaked.push_back({observed[j], combo[j]});
        std::sort(ph.leaked.begin(), ph.leaked.end());
        AnnotatedPrivateHistory a{ph, std::nullopt};
        if (opponents != nullptr) a.on_path = on_path.count(ph) > 0;
        out.push_back(std::move(a));
        return;
      }
      for (ActionIndex a = 0; a < g.action_count(h, observed[k]); ++a) {
        combo[k] = a;
        rec(k + 1);
      }
    };
    rec(0);
  }
  std::sort(out.begin(), out.end(),
            [](const AnnotatedPrivateHistory& a, const AnnotatedPrivateHistory& b) {
              return a.h < b.h;
            });
  return out;
}

}  // namespace leakproof
