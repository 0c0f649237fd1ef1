#include "leakproof/auction.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace leakproof {

std::string format_name(AuctionFormat f) {
  switch (f) {
    case AuctionFormat::first_price: return "first_price";
    case AuctionFormat::second_price: return "second_price";
    case AuctionFormat::dutch: return "dutch";
    case AuctionFormat::english: return "english";
  }
  return "?";
}

std::string tie_break_name(TieBreak t) {
  switch (t) {
    case TieBreak::uniform_random: return "uniform_random";
    case TieBreak::no_allocation: return "no_allocation";
    case TieBreak::fast_wins: return "fast_wins";
  }
  return "?";
}

std::vector<Rational> AuctionSpec::levels() const {
  std::vector<Rational> out;
  for (const auto& b : bid_grid) {
    if (b >= reserve) out.push_back(b);
  }
  return out;
}

namespace {

void validate_spec(const AuctionSpec& spec) {
  if (spec.bidders < 1) throw GridError("need at least one bidder");
  if (spec.bid_grid.empty()) throw GridError("empty bid grid");
  for (size_t k = 1; k < spec.bid_grid.size(); ++k) {
    if (!(spec.bid_grid[k - 1] < spec.bid_grid[k])) throw GridError("bid grid not increasing");
  }
  if (spec.reserve < Rational(0)) throw GridError("negative reserve");
  bool on_grid = false;
  for (const auto& b : spec.bid_grid) {
    if (b == spec.reserve) on_grid = true;
  }
  if (!on_grid) throw GridError("reserve " + spec.reserve.str() + " not on the bid grid");
  if (spec.tie == TieBreak::fast_wins) {
    if (!spec.non_anonymous || spec.favored < 0 || spec.favored >= spec.bidders) {
      throw TieBreakError("fast_wins needs a non-anonymous fixture with a favored bidder");
    }
  }
  if (spec.values.players() != spec.bidders) throw GridError("value space bidder mismatch");
}

AuctionOutcome no_sale(int n) {
  AuctionOutcome o;
  o.q.assign(n, Rational(0));
  o.m.assign(n, Rational(0));
  return o;
}

// Resolves a sale among `contenders` at `price` under the tie rule. Payments
// are expected payments of the allocation lottery.
AuctionOutcome resolve_sale(const AuctionSpec& spec, const std::vector<PlayerId>& contenders,
                            const Rational& price) {
  AuctionOutcome o = no_sale(spec.bidders);
  if (contenders.empty()) return o;
  if (contenders.size() == 1) {
    o.q[contenders[0]] = Rational(1);
    o.m[contenders[0]] = price;
    return o;
  }
  switch (spec.tie) {
    case TieBreak::no_allocation:
      return o;
    case TieBreak::fast_wins:
      for (PlayerId c : contenders) {
        if (c == spec.favored) {
          o.q[c] = Rational(1);
          o.m[c] = price;
          return o;
        }
      }
      [[fallthrough]];  // favored bidder not involved: uniform among the rest
    case TieBreak::uniform_random: {
      Rational share(1, static_cast<long long>(contenders.size()));
      for (PlayerId c : contenders) {
        o.q[c] = share;
        o.m[c] = price * share;
      }
      return o;
    }
  }
  return o;
}

// Static sealed-bid outcome. Action 0 is pass; action k bids levels[k-1].
AuctionOutcome sealed_bid_outcome(const AuctionSpec& spec, const std::vector<Rational>& levels,
                                  const std::vector<ActionIndex>& actions) {
  int best = 0;  // highest taken bid action, 0 = everyone passed
  for (PlayerId i = 0; i < spec.bidders; ++i) best = std::max(best, actions[i]);
  if (best == 0) return no_sale(spec.bidders);
  std::vector<PlayerId> winners;
  for (PlayerId i = 0; i < spec.bidders; ++i) {
    if (actions[i] == best) winners.push_back(i);
  }
  Rational price = levels[best - 1];  // first price: own bid
  if (spec.format == AuctionFormat::second_price) {
    int second = 0;
    bool skipped_top = false;
    for (PlayerId i = 0; i < spec.bidders; ++i) {
      if (actions[i] == best && !skipped_top) {
        skipped_top = true;  // drop one copy of the top bid
        continue;
      }
      second = std::max(second, actions[i]);
    }
    price = max(second > 0 ? levels[second - 1] : spec.reserve, spec.reserve);
  }
  return resolve_sale(spec, winners, price);
}

class OutcomeRegistry {
 public:
  explicit OutcomeRegistry(int bidders) : bidders_(bidders) {}

  OutcomeId add(const AuctionOutcome& o) {
    auto it = ids_.find(o);
    if (it != ids_.end()) return it->second;
    OutcomeId id = static_cast<OutcomeId>(payloads_.size());
    ids_[o] = id;
    payloads_.push_back(o);
    std::string label = "q=[";
    for (int i = 0; i < bidders_; ++i) label += (i ? "," : "") + o.q[i].str();
    label += "];m=[";
    for (int i = 0; i < bidders_; ++i) label += (i ? "," : "") + o.m[i].str();
    label += "]";
    labels_.push_back(label);
    return id;
  }
  OutcomeSpace finish() { return OutcomeSpace::quasilinear(labels_, payloads_); }

 private:
  int bidders_;
  std::map<AuctionOutcome, OutcomeId> ids_;
  std::vector<AuctionOutcome> payloads_;
  std::vector<std::string> labels_;
};

GameTree build_sealed_bid(const AuctionSpec& spec) {
  std::vector<Rational> levels = spec.levels();
  std::vector<std::string> action_labels{"pass"};
  for (const auto& b : levels) action_labels.push_back("bid:" + b.str());
  const int acount = static_cast<int>(action_labels.size());

  // Outcomes first: the outcome space is fixed before the tree is grown.
  OutcomeRegistry reg(spec.bidders);
  std::vector<ActionIndex> actions(spec.bidders, 0);
  std::vector<OutcomeId> outcome_of;  // product order, later bidders fastest
  std::function<void(int)> enumerate = [&](int i) {
    if (i == spec.bidders) {
      outcome_of.push_back(reg.add(sealed_bid_outcome(spec, levels, actions)));
      return;
    }
    for (ActionIndex a = 0; a < acount; ++a) {
      actions[i] = a;
      enumerate(i + 1);
    }
  };
  enumerate(0);

  GameTreeBuilder b({spec.bidders, true}, spec.values, reg.finish());
  std::vector<std::vector<std::string>> acts(spec.bidders, action_labels);
  std::vector<HistoryId> kids = b.expand(b.root(), acts);
  for (size_t k = 0; k < kids.size(); ++k) b.set_outcome(kids[k], outcome_of[k]);
  return b.finish();
}

GameTree build_dutch(const AuctionSpec& spec) {
  std::vector<Rational> ticks = spec.levels();
  std::reverse(ticks.begin(), ticks.end());  // descending clock

  OutcomeRegistry reg(spec.bidders);
  OutcomeId none = reg.add(no_sale(spec.bidders));
  std::vector<std::vector<OutcomeId>> sale_at(ticks.size());
  for (size_t t = 0; t < ticks.size(); ++t) {
    for (int mask = 1; mask < (1 << spec.bidders); ++mask) {
      std::vector<PlayerId> acc;
      for (PlayerId i = 0; i < spec.bidders; ++i) {
        if (mask & (1 << i)) acc.push_back(i);
      }
      sale_at[t].push_back(reg.add(resolve_sale(spec, acc, ticks[t])));
    }
  }

  GameTreeBuilder b({spec.bidders, true}, spec.values, reg.finish());
  std::function<void(HistoryId, size_t)> grow = [&](HistoryId h, size_t t) {
    std::vector<std::vector<std::string>> acts(spec.bidders,
                                               std::vector<std::string>{"wait", "accept"});
    std::vector<HistoryId> kids = b.expand(h, acts);
    // Child order: later bidders vary fastest; wait=0, accept=1.
    for (size_t k = 0; k < kids.size(); ++k) {
      int mask = 0;
      size_t rem = k;
      for (int i = spec.bidders - 1; i >= 0; --i) {
        if (rem % 2) mask |= (1 << i);
        rem /= 2;
      }
      if (mask == 0) {
        if (t + 1 < ticks.size()) {
          grow(kids[k], t + 1);
        } else {
          b.set_outcome(kids[k], none);  // clock exhausted at the reserve
        }
      } else {
        b.set_outcome(kids[k], sale_at[t][mask - 1]);
      }
    }
  };
  grow(b.root(), 0);
  return b.finish();
}

GameTree build_english(const AuctionSpec& spec) {
  std::vector<Rational> ticks = spec.levels();  // ascending clock

  OutcomeRegistry reg(spec.bidders);
  std::vector<std::vector<OutcomeId>> sale_at(ticks.size());
  for (size_t t = 0; t < ticks.size(); ++t) {
    for (int mask = 1; mask < (1 << spec.bidders); ++mask) {
      std::vector<PlayerId> group;
      for (PlayerId i = 0; i < spec.bidders; ++i) {
        if (mask & (1 << i)) group.push_back(i);
      }
      sale_at[t].push_back(reg.add(resolve_sale(spec, group, ticks[t])));
    }
  }
  OutcomeId none = reg.add(no_sale(spec.bidders));

  GameTreeBuilder b({spec.bidders, true}, spec.values, reg.finish());
  std::function<void(HistoryId, size_t, int)> grow = [&](HistoryId h, size_t t, int active) {
    std::vector<std::vector<std::string>> acts(spec.bidders);
    std::vector<PlayerId> act_list;
    for (PlayerId i = 0; i < spec.bidders; ++i) {
      if (active & (1 << i)) {
        acts[i] = {"stay", "exit"};
        act_list.push_back(i);
      }
    }
    std::vector<HistoryId> kids = b.expand(h, acts);
    for (size_t k = 0; k < kids.size(); ++k) {
      int exit_mask = 0;
      size_t rem = k;
      for (int j = static_cast<int>(act_list.size()) - 1; j >= 0; --j) {
        if (rem % 2) exit_mask |= (1 << act_list[j]);
        rem /= 2;
      }
      int stayers = active & ~exit_mask;
      int stay_count = __builtin_popcount(static_cast<unsigned>(stayers));
      if (stay_count == 1) {
        // Last one in wins where the second-to-last exited: this tick.
        b.set_outcome(kids[k], sale_at[t][stayers - 1]);
      } else if (stay_count == 0) {
        // Simultaneous final exits.
        b.set_outcome(kids[k], sale_at[t][exit_mask - 1]);
      } else if (t + 1 < ticks.size()) {
        grow(kids[k], t + 1, stayers);
      } else {
        // Clock exhausted with several stayers.
        b.set_outcome(kids[k], sale_at[t][stayers - 1]);
      }
    }
  };
  if (spec.bidders == 1) {
    // Degenerate: a single bidder takes or leaves the good at the reserve.
    std::vector<std::vector<std::string>> acts{{"stay", "exit"}};
    std::vector<HistoryId> kids = b.expand(b.root(), acts);
    b.set_outcome(kids[0], sale_at[0][0]);
    b.set_outcome(kids[1], none);
  } else {
    grow(b.root(), 0, (1 << spec.bidders) - 1);
  }
  return b.finish();
}

}  // namespace

GameTree build_auction(const AuctionSpec& spec) {
  validate_spec(spec);
  switch (spec.format) {
    case AuctionFormat::first_price:
    case AuctionFormat::second_price:
      return build_sealed_bid(spec);
    case AuctionFormat::dutch:
      return build_dutch(spec);
    case AuctionFormat::english:
      return build_english(spec);
  }
  throw GridError("unknown format");
}

// --- Myerson machinery ---------------------------------------------------

bool VirtualValueTable::increasing() const {
  for (const auto& row : v) {
    for (size_t s = 1; s < row.size(); ++s) {
      if (!(row[s - 1] < row[s])) return false;
    }
  }
  return true;
}

VirtualValueTable virtual_values(const ValueTypeSpace& values) {
  VirtualValueTable table;
  table.v.resize(values.players());
  for (PlayerId i = 0; i < values.players(); ++i) {
    const int m = values.count(i);
    Rational cum(0);
    for (int s = 0; s < m; ++s) {
      cum += values.mass(i, s);
      if (s == m - 1) {
        table.v[i].push_back(values.value(i, s));  // empty upper tail
        continue;
      }
      if (values.mass(i, s).is_zero()) {
        throw ZeroPriorMass("zero prior mass at grid index " + std::to_string(s));
      }
      Rational gap = values.value(i, s + 1) - values.value(i, s);
      table.v[i].push_back(values.value(i, s) - gap * (Rational(1) - cum) / values.mass(i, s));
    }
  }
  return table;
}

std::vector<Rational> myerson_allocation(const VirtualValueTable& table,
                                         const ThetaProfile& theta) {
  const int n = static_cast<int>(table.v.size());
  std::vector<Rational> q(n, Rational(0));
  Rational best = table.v[0][theta[0]];
  for (PlayerId i = 1; i < n; ++i) best = max(best, table.v[i][theta[i]]);
  if (best < Rational(0)) return q;
  std::vector<PlayerId> winners;
  for (PlayerId i = 0; i < n; ++i) {
    if (table.v[i][theta[i]] == best) winners.push_back(i);
  }
  Rational share(1, static_cast<long long>(winners.size()));
  for (PlayerId i : winners) q[i] = share;
  return q;
}

Rational optimal_reserve(const ValueTypeSpace& values) {
  VirtualValueTable table = virtual_values(values);
  for (int s = 0; s < values.count(0); ++s) {
    if (table.v[0][s] >= Rational(0)) return values.value(0, s);
  }
  throw AllNegative("every virtual value is negative");
}

Rational myerson_virtual_surplus(const ValueTypeSpace& values, const VirtualValueTable& table) {
  Rational total(0);
  for (long long f = 0; f < values.profile_count(); ++f) {
    ThetaProfile theta = values.profile_at(f);
    Rational mass = values.prior_mass(theta);
    if (mass.is_zero()) continue;
    std::vector<Rational> q = myerson_allocation(table, theta);
    Rational surplus(0);
    for (PlayerId i = 0; i < values.players(); ++i) surplus += q[i] * table.v[i][theta[i]];
    total += mass * surplus;
  }
  return total;
}

// --- Interim expectations and revenue ------------------------------------

InterimQuantities interim_qm(const GameTree& g, const StrategyProfileView& profile,
                             const LeakageTypeSpace& space,
                             const LeakageTypeSpace::AdmissiblePair& pair, PlayerId i,
                             ValueIndex theta_hat, int ltype_hat, int ltype_true,
                             const PrivateHistory& h, bool require_on_path) {
  const auto& true_sig = space.type(i, ltype_true).signature;
  const auto& hat_sig = space.type(i, ltype_hat).signature;
  for (PlayerId j : hat_sig) {
    if (!true_sig.count(j)) {
      throw PrereqFailed("pretended leakage type observes more than the true type");
    }
  }
  if (require_on_path) {
    bool found_on_path = false;
    for (const auto& aph : private_histories(g, pair.order, i, &profile, &pair.profile)) {
      if (aph.h == h) found_on_path = aph.on_path.value_or(false);
    }
    if (!found_on_path) throw OffPathHistory("history " + h.key(g) + " is off path");
  }

  Atoms atoms = bayes_update(g, profile, space, i, ltype_true, h);
  Rational mass = total_weight(atoms);
  for (auto& a : atoms) a.theta[i] = theta_hat;
  Evaluator ev(g, profile, i, true_sig);
  // The pretended plan reads only what the slower type would see.
  auto plan = [&](const PrivateHistory& ph) {
    PrivateHistory seen{ph.public_h, {}};
    for (const auto& [j, a] : ph.leaked) {
      if (hat_sig.count(j)) seen.leaked.push_back({j, a});
    }
    return profile.act(i, theta_hat, ltype_hat, seen);
  };
  auto q_payoff = [&g, i](const Atom&, OutcomeId x) { return g.outcomes().auction(x).q[i]; };
  auto m_payoff = [&g, i](const Atom&, OutcomeId x) { return g.outcomes().auction(x).m[i]; };
  InterimQuantities out;
  out.q = ev.follow_at(h, atoms, plan, q_payoff) / mass;
  out.m = ev.follow_at(h, atoms, plan, m_payoff) / mass;
  return out;
}

Rational revenue(const GameTree& g, const StrategyProfileView& profile,
                 const LeakageTypeSpace::AdmissiblePair& pair) {
  if (!g.outcomes().is_quasilinear()) throw PrereqFailed("revenue needs auction outcomes");
  Rational total(0);
  const auto& values = g.values();
  for (long long f = 0; f < values.profile_count(); ++f) {
    ThetaProfile theta = values.profile_at(f);
    Rational mass = values.prior_mass(theta);
    if (mass.is_zero()) continue;
    for (const auto& [z, p] : outcome_distribution(g, profile, theta, pair.profile, pair.order)) {
      const AuctionOutcome& o = g.outcomes().auction(g.node(z).outcome);
      Rational pay(0);
      for (PlayerId i = 0; i < g.players().n; ++i) pay += o.m[i];
      total += mass * p * pay;
    }
  }
  return total;
}

Rational expected_revenue(const GameTree& g, const StrategyProfileView& profile,
                          const LeakageTypeSpace& space) {
  Rational total(0);
  Rational wsum(0);
  for (const auto& pair : space.admissible()) {
    total += pair.prior_weight * revenue(g, profile, pair);
    wsum += pair.prior_weight;
  }
  if (wsum.is_zero()) throw PrereqFailed("type space has no admissible pairs");
  return total / wsum;
}

// --- Default equilibria ---------------------------------------------------

namespace {

// Action index of a truthful bid: the value must sit on the level grid.
ActionIndex truthful_action(const AuctionSpec& spec, const std::vector<Rational>& levels,
                            const Rational& value) {
  if (value < spec.reserve) return 0;  // pass
  for (size_t k = 0; k < levels.size(); ++k) {
    if (levels[k] == value) return static_cast<ActionIndex>(k + 1);
  }
  throw GridError("value " + value.str() + " not on the bid grid");
}

DefaultProfile truthful_second_price(const GameTree& g, const AuctionSpec& spec) {
  std::vector<Rational> levels = spec.levels();
  DefaultProfile s0(spec.bidders);
  const int acount = static_cast<int>(levels.size()) + 1;
  for (PlayerId i = 0; i < spec.bidders; ++i) {
    for (ValueIndex t = 0; t < spec.values.count(i); ++t) {
      s0.set_pure(i, t, g.root(), truthful_action(spec, levels, spec.values.value(i, t)), acount);
    }
  }
  return s0;
}

DefaultProfile truthful_english(const GameTree& g, const AuctionSpec& spec) {
  std::vector<Rational> ticks = spec.levels();
  DefaultProfile s0(spec.bidders);
  for (HistoryId h = 0; h < g.size(); ++h) {
    if (g.is_terminal(h)) continue;
    const Rational& price = ticks[g.node(h).stage];
    for (PlayerId i : g.movers(h)) {
      for (ValueIndex t = 0; t < spec.values.count(i); ++t) {
        bool stay = spec.values.value(i, t) > price;
        s0.set_pure(i, t, h, stay ? 0 : 1, 2);
      }
    }
  }
  return s0;
}

// Clock price at a dutch history: ticks descend one level per stage.
Rational dutch_price(const std::vector<Rational>& levels, int stage) {
  return levels[levels.size() - 1 - stage];
}

// Best-response sweeps to a fixed point, deepest decisions first.
DefaultProfile sweep_equilibrium(const GameTree& g, const AuctionSpec& spec, int max_sweeps) {
  auto s0 = std::make_shared<DefaultProfile>(spec.bidders);
  std::vector<Rational> levels = spec.levels();

  // Seed: shade to the highest level at or below half the value (sealed
  // bids), or accept once the clock falls to that level (dutch).
  auto seed_level = [&](const Rational& value) -> int {
    if (value < spec.reserve) return -1;
    int best = -1;
    for (size_t k = 0; k < levels.size(); ++k) {
      if (levels[k] * Rational(2) <= value) best = static_cast<int>(k);
    }
    return best < 0 ? 0 : best;  // half-value below the reserve: lowest level
  };
  for (HistoryId h = 0; h < g.size(); ++h) {
    if (g.is_terminal(h)) continue;
    for (PlayerId i : g.movers(h)) {
      int acount = g.action_count(h, i);
      for (ValueIndex t = 0; t < spec.values.count(i); ++t) {
        int lvl = seed_level(spec.values.value(i, t));
        if (spec.format == AuctionFormat::dutch) {
          bool accept = lvl >= 0 && dutch_price(levels, g.node(h).stage) <= levels[lvl];
          s0->set_pure(i, t, h, accept ? 1 : 0, acount);
        } else {
          s0->set_pure(i, t, h, lvl < 0 ? 0 : lvl + 1, acount);
        }
      }
    }
  }

  StrategyProfileView view = StrategyProfileView::from_default(s0, "sweep");
  LeakageTypeSpace zero = common_knowledge_space(LeakageOrder::all_equal(spec.bidders), "zero");
  std::vector<HistoryId> order = g.nonterminals();
  std::sort(order.begin(), order.end(), [&](HistoryId a, HistoryId b) {
    return g.node(a).stage != g.node(b).stage ? g.node(a).stage > g.node(b).stage : a < b;
  });

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool changed = false;
    for (PlayerId i = 0; i < spec.bidders; ++i) {
      Evaluator ev(g, view, i, {});
      auto payoff = Evaluator::utility_payoff(g, i);
      for (HistoryId h : order) {
        auto movers = g.movers(h);
        if (std::find(movers.begin(), movers.end(), i) == movers.end()) continue;
        PrivateHistory ph{h, {}};
        Atoms base = bayes_update(g, view, zero, i, 0, ph);
        for (ValueIndex t = 0; t < spec.values.count(i); ++t) {
          Atoms atoms = base;
          for (auto& a : atoms) a.theta[i] = t;
          int acount = g.action_count(h, i);
          ActionIndex best_a = 0;
          Rational best_v;
          for (ActionIndex a = 0; a < acount; ++a) {
            auto plan = [&](const PrivateHistory& p2) {
              if (p2.public_h == h) return pure_dist(a, acount);
              return s0->at(i, t, p2.public_h);
            };
            Rational v = ev.follow_at(ph, atoms, plan, payoff);
            if (a == 0 || v > best_v) {
              best_v = v;
              best_a = a;
            }
          }
          if (!(s0->at(i, t, h) == pure_dist(best_a, acount))) {
            s0->set_pure(i, t, h, best_a, acount);
            changed = true;
          }
        }
      }
    }
    if (!changed) break;
  }
  return *s0;
}

}  // namespace

DefaultProfile auction_default_equilibrium(const GameTree& g, const AuctionSpec& spec,
                                           int max_sweeps) {
  switch (spec.format) {
    case AuctionFormat::second_price:
      return truthful_second_price(g, spec);
    case AuctionFormat::english:
      return truthful_english(g, spec);
    case AuctionFormat::first_price:
    case AuctionFormat::dutch:
      return sweep_equilibrium(g, spec, max_sweeps);
  }
  throw GridError("unknown format");
}

LeaderFollowerEquilibrium leader_follower_equilibrium(std::shared_ptr<const GameTree> g,
                                                      const AuctionSpec& spec, PlayerId fast) {
  if (spec.bidders != 2) throw PrereqFailed("leader-follower needs two bidders");
  if (spec.format != AuctionFormat::first_price && spec.format != AuctionFormat::second_price) {
    throw PrereqFailed("leader-follower needs a one-stage auction");
  }
  PlayerId slow = 1 - fast;
  HistoryId root = g->root();
  const int acount = g->action_count(root, fast);

  auto util = [&](PlayerId who, ValueIndex theta, ActionIndex a_slow, ActionIndex a_fast) {
    std::vector<ActionIndex> avec(2);
    avec[slow] = a_slow;
    avec[fast] = a_fast;
    OutcomeId x = g->node(g->child_at(root, avec)).outcome;
    ThetaProfile th(2, theta);  // quasilinear payoff reads own entry only
    return g->utility(who, x, th);
  };

  LeaderFollowerEquilibrium out;
  // Follower: best reply to each observed leader action.
  for (ActionIndex a_slow = 0; a_slow < g->action_count(root, slow); ++a_slow) {
    for (ValueIndex t = 0; t < spec.values.count(fast); ++t) {
      ActionIndex best = 0;
      Rational best_v = util(fast, t, a_slow, 0);
      for (ActionIndex a = 1; a < acount; ++a) {
        Rational v = util(fast, t, a_slow, a);
        if (v > best_v) {
          best_v = v;
          best = a;
        }
      }
      out.follower_reaction[{a_slow, t}] = best;
    }
  }
  // Leader: best bid against the anticipated reactions, in expectation.
  out.leader_action.resize(spec.values.count(slow));
  for (ValueIndex t = 0; t < spec.values.count(slow); ++t) {
    ActionIndex best = 0;
    Rational best_v;
    for (ActionIndex a = 0; a < g->action_count(root, slow); ++a) {
      Rational v(0);
      for (ValueIndex tf = 0; tf < spec.values.count(fast); ++tf) {
        Rational mass = spec.values.mass(fast, tf);
        if (mass.is_zero()) continue;
        v += mass * util(slow, t, a, out.follower_reaction[{a, tf}]);
      }
      if (a == 0 || v > best_v) {
        best_v = v;
        best = a;
      }
    }
    out.leader_action[t] = best;
  }

  auto reaction = std::make_shared<std::map<std::pair<ActionIndex, ValueIndex>, ActionIndex>>(
      out.follower_reaction);
  auto leader = std::make_shared<std::vector<ActionIndex>>(out.leader_action);
  int leader_acount = g->action_count(root, slow);
  out.profile = StrategyProfileView(
      [g, reaction, leader, fast, slow, acount, leader_acount](
          PlayerId i, ValueIndex theta, int, const PrivateHistory& h) -> Dist {
        if (i == slow) return pure_dist((*leader)[theta], leader_acount);
        // The follower reacts to the observed bid. Without an observation
        // (never the case in this environment) fall back to reacting to pass.
        ActionIndex seen = 0;
        for (const auto& [j, a] : h.leaked) {
          if (j == slow) seen = a;
        }
        return pure_dist(reaction->at({seen, theta}), acount);
      },
      "leader-follower");
  return out;
}

Rational paranoid_best_bid(const Rational& theta,
                           const std::function<Rational(const Rational&)>& cdf,
                           const std::vector<Rational>& bid_grid, const Rational& reserve) {
  if (theta < reserve) throw PrereqFailed("paranoid bidder below the reserve");
  bool have = false;
  Rational best_bid(0), best_v(0);
  for (const auto& b : bid_grid) {
    if (b < reserve || b > theta) continue;
    Rational v = (theta - b) * cdf(b);
    if (!have || v > best_v) {
      have = true;
      best_v = v;
      best_bid = b;
    }
  }
  if (!have) throw GridError("no feasible bid on the grid");
  return best_bid;
}

}  // namespace leakproof
