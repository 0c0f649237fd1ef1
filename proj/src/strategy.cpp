#include "leakproof/strategy.hpp"

#include <algorithm>

namespace leakproof {

bool dist_valid(const Dist& d) {
  if (d.empty()) return false;
  Rational sum(0);
  for (const auto& p : d) {
    if (p < Rational(0)) return false;
    sum += p;
  }
  return sum == Rational(1);
}

int dist_support_size(const Dist& d) {
  int c = 0;
  for (const auto& p : d) {
    if (!p.is_zero()) ++c;
  }
  return c;
}

Dist pure_dist(int action, int count) {
  Dist d(count, Rational(0));
  d[action] = Rational(1);
  return d;
}

void DefaultProfile::set(PlayerId i, ValueIndex theta, HistoryId h, Dist d) {
  if (!dist_valid(d)) throw UndefinedPlan("invalid action distribution");
  auto& per_theta = by_player_.at(i)[h];
  if (static_cast<int>(per_theta.size()) <= theta) per_theta.resize(theta + 1);
  per_theta[theta] = std::move(d);
}

void DefaultProfile::set_pure(PlayerId i, ValueIndex theta, HistoryId h, int action,
                              int action_count) {
  set(i, theta, h, pure_dist(action, action_count));
}

const Dist& DefaultProfile::at(PlayerId i, ValueIndex theta, HistoryId h) const {
  auto it = by_player_.at(i).find(h);
  if (it == by_player_.at(i).end() || theta >= static_cast<int>(it->second.size()) ||
      it->second[theta].empty()) {
    throw UndefinedPlan("player " + std::to_string(i) + " has no plan at history " +
                        std::to_string(h));
  }
  return it->second[theta];
}

bool DefaultProfile::defined(PlayerId i, ValueIndex theta, HistoryId h) const {
  auto it = by_player_.at(i).find(h);
  return it != by_player_.at(i).end() && theta < static_cast<int>(it->second.size()) &&
         !it->second[theta].empty();
}

void DefaultProfile::validate_complete(const GameTree& g) const {
  for (HistoryId h = 0; h < g.size(); ++h) {
    if (g.is_terminal(h)) continue;
    for (PlayerId i : g.movers(h)) {
      for (ValueIndex t = 0; t < g.values().count(i); ++t) {
        const Dist& d = at(i, t, h);
        if (static_cast<int>(d.size()) != g.action_count(h, i) || !dist_valid(d)) {
          throw UndefinedPlan("bad distribution at " + g.history_key(h));
        }
      }
    }
  }
}

std::vector<HistoryId> DefaultProfile::histories(PlayerId i) const {
  std::vector<HistoryId> hs;
  for (const auto& [h, _] : by_player_.at(i)) hs.push_back(h);
  return hs;
}

StrategyProfileView StrategyProfileView::from_default(std::shared_ptr<const DefaultProfile> s0,
                                                      std::string label) {
  return StrategyProfileView(
      [s0](PlayerId i, ValueIndex theta, int, const PrivateHistory& h) {
        return s0->at(i, theta, h.public_h);
      },
      std::move(label));
}

void StrategyTable::set(PlayerId i, ValueIndex theta, int ltype, const std::string& private_key,
                        Dist d) {
  if (!dist_valid(d)) throw UndefinedPlan("invalid action distribution");
  cells_[Key{i, theta, ltype, private_key}] = std::move(d);
}

void StrategyTable::set_public(PlayerId i, ValueIndex theta, int ltype, HistoryId h, Dist d) {
  if (!dist_valid(d)) throw UndefinedPlan("invalid action distribution");
  public_cells_[{i, theta, ltype, h}] = std::move(d);
}

StrategyProfileView StrategyTable::view(std::shared_ptr<const GameTree> g,
                                        std::string label) const {
  auto cells = std::make_shared<std::map<Key, Dist>>(cells_);
  auto pub = std::make_shared<std::map<std::tuple<PlayerId, ValueIndex, int, HistoryId>, Dist>>(
      public_cells_);
  return StrategyProfileView(
      [g, cells, pub](PlayerId i, ValueIndex theta, int ltype, const PrivateHistory& h) -> Dist {
        auto it = cells->find(Key{i, theta, ltype, h.key(*g)});
        if (it != cells->end()) return it->second;
        auto pit = pub->find({i, theta, ltype, h.public_h});
        if (pit != pub->end()) return pit->second;
        return {};
      },
      std::move(label));
}

StrategyProfileView with_deviation(const GameTree& g, const StrategyProfileView& base,
                                   const DeviationPlan& plan) {
  auto shared_plan = std::make_shared<DeviationPlan>(plan);
  const GameTree* gp = &g;
  return StrategyProfileView(
      [gp, base, shared_plan](PlayerId i, ValueIndex theta, int ltype,
                              const PrivateHistory& h) -> Dist {
        if (i == shared_plan->player && theta == shared_plan->theta &&
            ltype == shared_plan->ltype) {
          auto it = shared_plan->action_at.find(h.key(*gp));
          if (it != shared_plan->action_at.end()) {
            return pure_dist(it->second, gp->action_count(h.public_h, i));
          }
        }
        return base.act(i, theta, ltype, h);
      },
      base.label() + "+deviation");
}

}  // namespace leakproof
