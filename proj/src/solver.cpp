#include "leakproof/solver.hpp"

#include <algorithm>
#include <functional>

namespace leakproof {

Rational total_weight(const Atoms& atoms) {
  Rational t(0);
  for (const auto& a : atoms) t += a.w;
  return t;
}

namespace {

// Leaked concurrent actions visible to mover j under `order`, taken from the
// already-assigned entries of `avec`.
std::vector<std::pair<PlayerId, ActionIndex>> leaks_for(const LeakageOrder& order, PlayerId j,
                                                        const std::vector<PlayerId>& movers,
                                                        const std::vector<ActionIndex>& avec) {
  std::vector<std::pair<PlayerId, ActionIndex>> l;
  for (PlayerId k : movers) {
    if (k != j && order.slower(k, j) && avec[k] >= 0) l.push_back({k, avec[k]});
  }
  std::sort(l.begin(), l.end());
  return l;
}

std::vector<PlayerId> sorted_by_rank(std::vector<PlayerId> ps, const LeakageOrder& order) {
  std::sort(ps.begin(), ps.end(), [&](PlayerId a, PlayerId b) {
    return order.rank[a] != order.rank[b] ? order.rank[a] < order.rank[b] : a < b;
  });
  return ps;
}

}  // namespace

Atoms bayes_update(const GameTree& g, const StrategyProfileView& profile,
                   const LeakageTypeSpace& space, PlayerId i, int t_i,
                   const PrivateHistory& h_i) {
  const int n = g.players().n;
  const LeakageType& own = space.type(i, t_i);

  // Prior: belief over (order, opponent leakage types) times the value prior.
  Atoms atoms;
  std::function<void(const BeliefAtom&, ThetaProfile&, PlayerId, const Rational&)> fill =
      [&](const BeliefAtom& b, ThetaProfile& theta, PlayerId j, const Rational& w) {
        if (j == n) {
          Atom a;
          a.theta = theta;
          a.ltypes = b.opp_types;
          a.ltypes[i] = t_i;
          a.order = b.order;
          a.w = w;
          atoms.push_back(std::move(a));
          return;
        }
        if (j == i) {
          theta[j] = -1;
          fill(b, theta, j + 1, w);
          return;
        }
        for (ValueIndex m = 0; m < g.values().count(j); ++m) {
          const Rational& p = g.values().mass(j, m);
          if (p.is_zero()) continue;
          theta[j] = m;
          fill(b, theta, j + 1, w * p);
        }
      };
  for (const BeliefAtom& b : own.belief) {
    if (b.weight.is_zero()) continue;
    ThetaProfile theta(n, -1);
    fill(b, theta, 0, b.weight);
  }

  // One multiplicative Bayes factor per (stage, opponent). A factor whose
  // total mass is zero corresponds to an opponent action no type explains;
  // it is dropped, leaving the running posterior untouched.
  auto apply_factor = [&](PlayerId j, HistoryId h, ActionIndex observed,
                          const std::vector<PlayerId>& movers,
                          const std::vector<ActionIndex>& avec) {
    std::vector<Rational> f(atoms.size(), Rational(0));
    Rational mass(0);
    for (size_t k = 0; k < atoms.size(); ++k) {
      const Atom& a = atoms[k];
      if (a.w.is_zero()) continue;
      PrivateHistory hj{h, leaks_for(a.order, j, movers, avec)};
      Dist d = profile.act(j, a.theta[j], a.ltypes[j], hj);
      f[k] = d[observed];
      mass += a.w * f[k];
    }
    if (mass.is_zero()) return;  // uninformative deviation
    for (size_t k = 0; k < atoms.size(); ++k) atoms[k].w *= f[k];
  };

  // Walk the public path.
  std::vector<HistoryId> path;
  for (HistoryId cur = h_i.public_h; cur != 0; cur = g.node(cur).parent) path.push_back(cur);
  std::reverse(path.begin(), path.end());
  for (HistoryId child : path) {
    HistoryId h = g.node(child).parent;
    const auto& incoming = g.node(child).incoming;
    std::vector<PlayerId> movers = g.movers(h);
    std::vector<ActionIndex> avec(n, -1);
    for (PlayerId j : movers) avec[j] = incoming[j];
    for (PlayerId j : movers) {
      if (j == i) continue;
      apply_factor(j, h, incoming[j], movers, avec);
    }
  }

  // Current-stage leaked actions.
  if (!h_i.leaked.empty()) {
    std::vector<PlayerId> movers = g.movers(h_i.public_h);
    std::vector<ActionIndex> avec(n, -1);
    for (const auto& [j, a] : h_i.leaked) avec[j] = a;
    for (const auto& [j, a] : h_i.leaked) apply_factor(j, h_i.public_h, a, movers, avec);
  }

  Atoms out;
  for (auto& a : atoms) {
    if (!a.w.is_zero()) out.push_back(std::move(a));
  }
  return out;
}

Evaluator::Evaluator(const GameTree& g, const StrategyProfileView& others, PlayerId me,
                     std::set<PlayerId> my_signature)
    : g_(g), others_(others), me_(me), sig_(std::move(my_signature)) {}

Evaluator::TerminalPayoff Evaluator::utility_payoff(const GameTree& g, PlayerId me) {
  return [&g, me](const Atom& a, OutcomeId x) { return g.utility(me, x, a.theta); };
}

Rational Evaluator::follow_at(const PrivateHistory& start, const Atoms& atoms, const MyPlay& plan,
                              const TerminalPayoff& payoff) const {
  return eval_stage(start.public_h, start.leaked, atoms, Mode::kFollow, &plan, payoff, nullptr);
}

Rational Evaluator::best_at(const PrivateHistory& start, const Atoms& atoms,
                            const TerminalPayoff& payoff,
                            std::map<std::string, int>* plan_out) const {
  return eval_stage(start.public_h, start.leaked, atoms, Mode::kBest, nullptr, payoff, plan_out);
}

Rational Evaluator::eval(HistoryId h, const Atoms& atoms, Mode mode, const MyPlay* plan,
                         const TerminalPayoff& payoff,
                         std::map<std::string, int>* plan_out) const {
  if (atoms.empty()) return Rational(0);
  const auto& nd = g_.node(h);
  if (nd.children.empty()) {
    Rational v(0);
    for (const auto& a : atoms) {
      if (!a.w.is_zero()) v += a.w * payoff(a, nd.outcome);
    }
    return v;
  }
  return eval_stage(h, {}, atoms, mode, plan, payoff, plan_out);
}

Rational Evaluator::eval_stage(HistoryId h,
                               const std::vector<std::pair<PlayerId, ActionIndex>>& fixed_obs,
                               const Atoms& atoms, Mode mode, const MyPlay* plan,
                               const TerminalPayoff& payoff,
                               std::map<std::string, int>* plan_out) const {
  const int n = g_.players().n;
  std::vector<PlayerId> movers = g_.movers(h);
  bool me_moves = std::find(movers.begin(), movers.end(), me_) != movers.end();

  // Children pooled per full action vector so later own decisions see the
  // whole posterior consistent with what was publicly revealed.
  auto recurse_pooled = [&](const std::map<std::vector<ActionIndex>, Atoms>& pooled) {
    Rational v(0);
    for (const auto& [avec, sub] : pooled) {
      v += eval(g_.child_at(h, avec), sub, mode, plan, payoff, plan_out);
    }
    return v;
  };

  if (!me_moves) {
    std::map<std::vector<ActionIndex>, Atoms> pooled;
    for (const Atom& atom : atoms) {
      if (atom.w.is_zero()) continue;
      std::vector<PlayerId> order_movers = sorted_by_rank(movers, atom.order);
      std::vector<ActionIndex> avec(n, -1);
      std::function<void(size_t, const Rational&)> assign = [&](size_t k, const Rational& p) {
        if (k == order_movers.size()) {
          Atom a = atom;
          a.w = atom.w * p;
          pooled[avec].push_back(std::move(a));
          return;
        }
        PlayerId j = order_movers[k];
        PrivateHistory hj{h, leaks_for(atom.order, j, movers, avec)};
        Dist d = others_.act(j, atom.theta[j], atom.ltypes[j], hj);
        for (ActionIndex a = 0; a < static_cast<int>(d.size()); ++a) {
          if (d[a].is_zero()) continue;
          avec[j] = a;
          assign(k + 1, p * d[a]);
          avec[j] = -1;
        }
      };
      assign(0, Rational(1));
    }
    return recurse_pooled(pooled);
  }

  // Perspective player moves here. Partition the other movers by visibility.
  std::vector<PlayerId> observed, hidden;
  for (PlayerId j : movers) {
    if (j == me_) continue;
    (sig_.count(j) ? observed : hidden).push_back(j);
  }
  std::map<PlayerId, ActionIndex> pinned(
      {});  // fixed observations (weights already conditioned)
  for (const auto& [j, a] : fixed_obs) pinned[j] = a;

  Rational value(0);
  // Enumerate observation combos; pinned players contribute no new factor.
  std::vector<ActionIndex> avec(n, -1);
  std::function<void(size_t, const Atoms&)> per_obs = [&](size_t k, const Atoms& cur) {
    if (k < observed.size()) {
      PlayerId j = observed[k];
      auto pin = pinned.find(j);
      if (pin != pinned.end()) {
        avec[j] = pin->second;
        per_obs(k + 1, cur);
        avec[j] = -1;
        return;
      }
      for (ActionIndex a = 0; a < g_.action_count(h, j); ++a) {
        avec[j] = a;
        Atoms next;
        next.reserve(cur.size());
        for (const Atom& atom : cur) {
          if (atom.w.is_zero()) continue;
          // Observed movers are strictly slower than me in every believed
          // order, so their own leaks come from other observed movers only.
          PrivateHistory hj{h, leaks_for(atom.order, j, movers, avec)};
          Dist d = others_.act(j, atom.theta[j], atom.ltypes[j], hj);
          if (d[a].is_zero()) continue;
          Atom na = atom;
          na.w = atom.w * d[a];
          next.push_back(std::move(na));
        }
        if (!next.empty()) per_obs(k + 1, next);
        avec[j] = -1;
      }
      return;
    }

    // Full observation in hand: this is one of my information states.
    PrivateHistory info{h, {}};
    for (PlayerId j : observed) info.leaked.push_back({j, avec[j]});
    std::sort(info.leaked.begin(), info.leaked.end());

    const int my_actions = g_.action_count(h, me_);
    std::vector<Rational> choice_value(my_actions, Rational(0));
    for (ActionIndex mine = 0; mine < my_actions; ++mine) {
      avec[me_] = mine;
      std::map<std::vector<ActionIndex>, Atoms> pooled;
      for (const Atom& atom : cur) {
        if (atom.w.is_zero()) continue;
        std::vector<PlayerId> order_hidden = sorted_by_rank(hidden, atom.order);
        std::function<void(size_t, const Rational&)> assign = [&](size_t t, const Rational& p) {
          if (t == order_hidden.size()) {
            Atom a = atom;
            a.w = atom.w * p;
            pooled[avec].push_back(std::move(a));
            return;
          }
          PlayerId j = order_hidden[t];
          PrivateHistory hj{h, leaks_for(atom.order, j, movers, avec)};
          Dist d = others_.act(j, atom.theta[j], atom.ltypes[j], hj);
          for (ActionIndex a = 0; a < static_cast<int>(d.size()); ++a) {
            if (d[a].is_zero()) continue;
            avec[j] = a;
            assign(t + 1, p * d[a]);
            avec[j] = -1;
          }
        };
        assign(0, Rational(1));
      }
      choice_value[mine] = recurse_pooled(pooled);
      avec[me_] = -1;
    }

    if (mode == Mode::kFollow) {
      Dist mine = (*plan)(info);
      if (static_cast<int>(mine.size()) != my_actions) {
        throw UndefinedPlan("plan has wrong action count at " + info.key(g_));
      }
      for (ActionIndex a = 0; a < my_actions; ++a) {
        if (!mine[a].is_zero()) value += mine[a] * choice_value[a];
      }
    } else {
      ActionIndex argmax = 0;
      for (ActionIndex a = 1; a < my_actions; ++a) {
        if (choice_value[a] > choice_value[argmax]) argmax = a;
      }
      if (plan_out) (*plan_out)[info.key(g_)] = argmax;
      value += choice_value[argmax];
    }
  };
  per_obs(0, atoms);
  return value;
}

std::map<HistoryId, Rational> outcome_distribution(const GameTree& g,
                                                   const StrategyProfileView& profile,
                                                   const ThetaProfile& theta,
                                                   const std::vector<int>& ltypes,
                                                   const LeakageOrder& order) {
  std::map<HistoryId, Rational> dist;
  const int n = g.players().n;
  std::function<void(HistoryId, const Rational&)> walk = [&](HistoryId h, const Rational& p) {
    if (g.is_terminal(h)) {
      dist[h] += p;
      return;
    }
    std::vector<PlayerId> movers = g.movers(h);
    std::vector<PlayerId> by_rank = sorted_by_rank(movers, order);
    std::vector<ActionIndex> avec(n, -1);
    std::function<void(size_t, const Rational&)> assign = [&](size_t k, const Rational& q) {
      if (k == by_rank.size()) {
        walk(g.child_at(h, avec), q);
        return;
      }
      PlayerId j = by_rank[k];
      PrivateHistory hj{h, leaks_for(order, j, movers, avec)};
      Dist d = profile.act(j, theta[j], ltypes[j], hj);
      if (static_cast<int>(d.size()) != g.action_count(h, j)) {
        throw UndefinedPlan("plan has wrong action count at " + hj.key(g));
      }
      for (ActionIndex a = 0; a < static_cast<int>(d.size()); ++a) {
        if (d[a].is_zero()) continue;
        avec[j] = a;
        assign(k + 1, q * d[a]);
        avec[j] = -1;
      }
    };
    assign(0, p);
  };
  walk(g.root(), Rational(1));
  return dist;
}

Rational expected_utility(const GameTree& g, const StrategyProfileView& profile,
                          const ThetaProfile& theta, const std::vector<int>& ltypes,
                          const LeakageOrder& order, PlayerId i) {
  Rational v(0);
  for (const auto& [z, p] : outcome_distribution(g, profile, theta, ltypes, order)) {
    v += p * g.utility(i, g.node(z).outcome, theta);
  }
  return v;
}

VerifyReport verify_equilibrium(const GameTree& g, const StrategyProfileView& profile,
                                const LeakageTypeSpace& space, const VerifyOptions& opts) {
  VerifyReport rep;
  rep.eps = opts.eps;
  const auto& pairs = space.admissible();
  for (size_t pi = 0; pi < pairs.size(); ++pi) {
    const auto& pair = pairs[pi];
    for (PlayerId i = 0; i < g.players().n; ++i) {
      int t_i = pair.profile[i];
      const auto& sig = space.type(i, t_i).signature;
      auto phs = private_histories(g, pair.order, i, &profile, &pair.profile);
      Evaluator ev(g, profile, i, sig);
      auto payoff = Evaluator::utility_payoff(g, i);
      for (const auto& aph : phs) {
        Atoms base = bayes_update(g, profile, space, i, t_i, aph.h);
        Rational mass = total_weight(base);
        for (ValueIndex theta = 0; theta < g.values().count(i); ++theta) {
          Atoms atoms = base;
          for (auto& a : atoms) a.theta[i] = theta;
          auto my_plan = [&](const PrivateHistory& ph) { return profile.act(i, theta, t_i, ph); };
          Rational prescribed = ev.follow_at(aph.h, atoms, my_plan, payoff);
          std::map<std::string, int> plan;
          Rational best = ev.best_at(aph.h, atoms, payoff, &plan);
          ++rep.cells;
          Rational gain_unnorm = best - prescribed;
          Rational gain = mass.is_zero() ? Rational(0) : gain_unnorm / mass;
          rep.max_gain = max(rep.max_gain, gain);
          bool on_path = aph.on_path.value_or(false);
          if (on_path) rep.max_on_path_gain = max(rep.max_on_path_gain, gain);
          if (gain > opts.eps) {
            rep.pass = false;
            if (on_path) rep.on_path_pass = false;
            if (static_cast<long long>(rep.violations.size()) < opts.max_violations) {
              CellResult c;
              c.pair_index = static_cast<int>(pi);
              c.player = i;
              c.theta = theta;
              c.ltype = t_i;
              c.history = aph.h.key(g);
              c.on_path = on_path;
              c.posterior_mass = mass;
              c.prescribed = prescribed;
              c.best = best;
              c.witness.player = i;
              c.witness.theta = theta;
              c.witness.ltype = t_i;
              c.witness.action_at = plan;
              rep.violations.push_back(std::move(c));
            }
          }
        }
      }
    }
  }
  return rep;
}

NoLeakCheck check_no_leak_pbe(const GameTree& g, const DefaultProfile& s0, const Rational& eps) {
  NoLeakCheck out;
  const int n = g.players().n;
  struct WAtom {
    ThetaProfile theta;
    Rational w;
  };

  // Value of play from h for player i with value theta_i, opponents following
  // s0, other value types weighted by `atoms`. mode: follow own s0 or best.
  std::function<Rational(HistoryId, PlayerId, ValueIndex, std::vector<WAtom>&, bool)> val =
      [&](HistoryId h, PlayerId i, ValueIndex ti, std::vector<WAtom>& atoms,
          bool best) -> Rational {
    if (g.is_terminal(h)) {
      Rational v(0);
      OutcomeId x = g.node(h).outcome;
      for (auto& a : atoms) {
        a.theta[i] = ti;
        v += a.w * g.utility(i, x, a.theta);
      }
      return v;
    }
    std::vector<PlayerId> movers = g.movers(h);
    bool me_moves = std::find(movers.begin(), movers.end(), i) != movers.end();
    std::vector<PlayerId> opp;
    for (PlayerId j : movers) {
      if (j != i) opp.push_back(j);
    }
    // Opponent joint actions per atom.
    std::map<std::vector<ActionIndex>, std::vector<WAtom>> pooled;
    for (const WAtom& atom : atoms) {
      std::vector<ActionIndex> avec(n, -1);
      std::function<void(size_t, const Rational&)> assign = [&](size_t k, const Rational& p) {
        if (k == opp.size()) {
          pooled[avec].push_back({atom.theta, atom.w * p});
          return;
        }
        PlayerId j = opp[k];
        const Dist& d = s0.at(j, atom.theta[j], h);
        for (ActionIndex a = 0; a < static_cast<int>(d.size()); ++a) {
          if (d[a].is_zero()) continue;
          avec[j] = a;
          assign(k + 1, p * d[a]);
          avec[j] = -1;
        }
      };
      assign(0, Rational(1));
    }
    if (!me_moves) {
      Rational v(0);
      for (auto& [avec, sub] : pooled) v += val(g.child_at(h, avec), i, ti, sub, best);
      return v;
    }
    int my_actions = g.action_count(h, i);
    std::vector<Rational> per_action(my_actions, Rational(0));
    for (ActionIndex mine = 0; mine < my_actions; ++mine) {
      for (auto& [avec, sub] : pooled) {
        std::vector<ActionIndex> full = avec;
        full[i] = mine;
        std::vector<WAtom> copy = sub;
        per_action[mine] += val(g.child_at(h, full), i, ti, copy, best);
      }
    }
    if (best) {
      Rational m = per_action[0];
      for (const auto& v : per_action) m = max(m, v);
      return m;
    }
    Rational v(0);
    const Dist& mine = s0.at(i, ti, h);
    for (ActionIndex a = 0; a < my_actions; ++a) {
      if (!mine[a].is_zero()) v += mine[a] * per_action[a];
    }
    return v;
  };

  for (HistoryId h = 0; h < g.size(); ++h) {
    if (g.is_terminal(h)) continue;
    for (PlayerId i : g.movers(h)) {
      // Posterior over opponents' values along the public path, dropping
      // uninformative (zero-mass) factors.
      std::vector<WAtom> atoms;
      {
        std::function<void(ThetaProfile&, PlayerId, const Rational&)> fill =
            [&](ThetaProfile& th, PlayerId j, const Rational& w) {
              if (j == n) {
                atoms.push_back({th, w});
                return;
              }
              if (j == i) {
                th[j] = -1;
                fill(th, j + 1, w);
                return;
              }
              for (ValueIndex m = 0; m < g.values().count(j); ++m) {
                if (g.values().mass(j, m).is_zero()) continue;
                th[j] = m;
                fill(th, j + 1, w * g.values().mass(j, m));
              }
            };
        ThetaProfile th(n, -1);
        fill(th, 0, Rational(1));
      }
      std::vector<HistoryId> path;
      for (HistoryId cur = h; cur != 0; cur = g.node(cur).parent) path.push_back(cur);
      std::reverse(path.begin(), path.end());
      for (HistoryId child : path) {
        HistoryId parent = g.node(child).parent;
        for (PlayerId j : g.movers(parent)) {
          if (j == i) continue;
          ActionIndex obs = g.node(child).incoming[j];
          Rational mass(0);
          std::vector<Rational> f(atoms.size());
          for (size_t k = 0; k < atoms.size(); ++k) {
            f[k] = s0.at(j, atoms[k].theta[j], parent)[obs];
            mass += atoms[k].w * f[k];
          }
          if (mass.is_zero()) continue;
          for (size_t k = 0; k < atoms.size(); ++k) atoms[k].w *= f[k];
        }
      }
      Rational mass(0);
      for (const auto& a : atoms) mass += a.w;
      for (ValueIndex ti = 0; ti < g.values().count(i); ++ti) {
        std::vector<WAtom> a1 = atoms;
        std::vector<WAtom> a2 = atoms;
        Rational follow = val(h, i, ti, a1, false);
        Rational best_v = val(h, i, ti, a2, true);
        Rational gain = mass.is_zero() ? Rational(0) : (best_v - follow) / mass;
        out.max_gain = max(out.max_gain, gain);
        if (gain > eps && out.pass) {
          out.pass = false;
          out.first_violation = "player " + std::to_string(i) + " theta " + std::to_string(ti) +
                                " at " + g.history_key(h);
        } else if (gain > eps) {
          out.pass = false;
        }
      }
    }
  }
  return out;
}

DefaultProfile default_equilibrium(const GameTree& g, long long pure_budget) {
  struct Cell {
    PlayerId i;
    ValueIndex theta;
    HistoryId h;
    int actions;
  };
  std::vector<Cell> cells;
  for (HistoryId h = 0; h < g.size(); ++h) {
    if (g.is_terminal(h)) continue;
    for (PlayerId i : g.movers(h)) {
      for (ValueIndex t = 0; t < g.values().count(i); ++t) {
        cells.push_back({i, t, h, g.action_count(h, i)});
      }
    }
  }
  long double combos = 1;
  for (const auto& c : cells) combos *= c.actions;
  if (combos <= static_cast<long double>(pure_budget)) {
    std::vector<int> choice(cells.size(), 0);
    while (true) {
      DefaultProfile s0(g.players().n);
      for (size_t k = 0; k < cells.size(); ++k) {
        s0.set_pure(cells[k].i, cells[k].theta, cells[k].h, choice[k], cells[k].actions);
      }
      if (check_no_leak_pbe(g, s0).pass) return s0;
      int k = static_cast<int>(cells.size()) - 1;
      while (k >= 0 && choice[k] + 1 == cells[k].actions) choice[k--] = 0;
      if (k < 0) break;
      ++choice[k];
    }
  }

  // Support-2 mixed search: one-stage, two players, singleton value types.
  bool one_stage = true;
  for (HistoryId c : g.node(g.root()).children) {
    if (!g.is_terminal(c)) one_stage = false;
  }
  if (one_stage && g.players().n == 2 && g.values().count(0) == 1 && g.values().count(1) == 1) {
    auto movers = g.movers(g.root());
    if (movers.size() == 2) {
      ThetaProfile th{0, 0};
      auto u = [&](PlayerId who, ActionIndex a0, ActionIndex a1) {
        HistoryId z = g.child_at(g.root(), {a0, a1});
        return g.utility(who, g.node(z).outcome, th);
      };
      int n0 = g.action_count(g.root(), 0), n1 = g.action_count(g.root(), 1);
      for (int a = 0; a < n0; ++a) {
        for (int b = a + 1; b < n0; ++b) {
          for (int c = 0; c < n1; ++c) {
            for (int d = c + 1; d < n1; ++d) {
              // q on c makes player 0 indifferent between a and b.
              Rational A = u(0, a, c) - u(0, b, c);
              Rational B = u(0, a, d) - u(0, b, d);
              if (A == B) continue;
              Rational q = B / (B - A);
              // p on a makes player 1 indifferent between c and d.
              Rational C = u(1, a, c) - u(1, a, d);
              Rational D = u(1, b, c) - u(1, b, d);
              if (C == D) continue;
              Rational p = D / (D - C);
              if (!(q > Rational(0)) || !(q < Rational(1))) continue;
              if (!(p > Rational(0)) || !(p < Rational(1))) continue;
              DefaultProfile s0(2);
              Dist d0(n0, Rational(0)), d1(n1, Rational(0));
              d0[a] = p;
              d0[b] = Rational(1) - p;
              d1[c] = q;
              d1[d] = Rational(1) - q;
              s0.set(0, 0, g.root(), d0);
              s0.set(1, 0, g.root(), d1);
              if (check_no_leak_pbe(g, s0).pass) return s0;
            }
          }
        }
      }
    }
  }
  throw NoEquilibriumFound("search exhausted; supply an equilibrium");
}

}  // namespace leakproof
