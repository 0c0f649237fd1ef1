#include "leakproof/checks.hpp"

#include <algorithm>
#include <functional>

#include "leakproof/prune.hpp"

namespace leakproof {

namespace {

// Player i's own past actions along h are consistent with s0 for this value.
bool own_play_rationalizable(const GameTree& g, const DefaultProfile& s0, PlayerId i,
                             ValueIndex theta, HistoryId h) {
  for (HistoryId cur = h; cur != 0;) {
    const auto& nd = g.node(cur);
    HistoryId parent = nd.parent;
    if (nd.incoming[i] >= 0 && s0.at(i, theta, parent)[nd.incoming[i]].is_zero()) return false;
    cur = parent;
  }
  return true;
}

Rational game_delta(const GameTree& g) { return g.values().delta(); }

std::vector<Rational> expected_allocation(const GameTree& g, const StrategyProfileView& profile,
                                          const ThetaProfile& theta,
                                          const LeakageTypeSpace::AdmissiblePair& pair) {
  std::vector<Rational> q(g.players().n, Rational(0));
  for (const auto& [z, p] : outcome_distribution(g, profile, theta, pair.profile, pair.order)) {
    const AuctionOutcome& o = g.outcomes().auction(g.node(z).outcome);
    for (PlayerId i = 0; i < g.players().n; ++i) q[i] += p * o.q[i];
  }
  return q;
}

}  // namespace

StrategyProfileView extend_with_best_responses(std::shared_ptr<const GameTree> g,
                                               std::shared_ptr<const DefaultProfile> s0,
                                               std::shared_ptr<const LeakageTypeSpace> space) {
  auto base = StrategyProfileView::from_default(s0, "default");
  struct Cache {
    std::map<std::tuple<PlayerId, ValueIndex, int, std::string>, int> plan;
  };
  auto cache = std::make_shared<Cache>();
  return StrategyProfileView(
      [g, s0, space, base, cache](PlayerId i, ValueIndex theta, int t,
                                  const PrivateHistory& h) -> Dist {
        if (own_play_rationalizable(*g, *s0, i, theta, h.public_h)) {
          return s0->at(i, theta, h.public_h);  // leaks ignored on the default path
        }
        auto key = std::make_tuple(i, theta, t, h.key(*g));
        auto it = cache->plan.find(key);
        if (it == cache->plan.end()) {
          Atoms atoms = bayes_update(*g, base, *space, i, t, h);
          for (auto& a : atoms) a.theta[i] = theta;
          Evaluator ev(*g, base, i, space->type(i, t).signature);
          std::map<std::string, int> plan;
          ev.best_at(h, atoms, Evaluator::utility_payoff(*g, i), &plan);
          for (const auto& [k2, a2] : plan) {
            cache->plan[std::make_tuple(i, theta, t, k2)] = a2;
          }
          it = cache->plan.find(key);
          if (it == cache->plan.end()) throw UndefinedPlan("extension missed " + h.key(*g));
        }
        return pure_dist(it->second, g->action_count(h.public_h, i));
      },
      "extended(" + space->name() + ")");
}

PropertyReport is_leakage_proof(std::shared_ptr<const GameTree> g,
                                std::shared_ptr<const DefaultProfile> s0, const Family& family,
                                const LeakageProofOptions& opts) {
  PropertyReport rep;
  rep.property = "leakage_proof";
  bool pruned = is_pruned(*g, *s0);
  if (!pruned) {
    if (opts.require_pruned) throw NotPruned("game has histories unreachable under the default");
    rep.notes.push_back("pruning assumption violated: unreachable histories are present");
  }
  bool has_minimal = false;
  for (const auto& space : family) has_minimal |= space->minimally_rich();
  if (!has_minimal) {
    rep.notes.push_back("family has no minimally rich space; verdict is not conclusive");
  }

  for (const auto& space : family) {
    StrategyProfileView ext = extend_with_best_responses(g, s0, space);
    VerifyReport vrep = verify_equilibrium(*g, ext, *space, {opts.eps});
    rep.sub(space->name(), vrep.on_path_pass);
    rep.metric("max_on_path_gain[" + space->name() + "]", vrep.max_on_path_gain);
    if (!vrep.on_path_pass && !rep.witness) {
      for (const auto& v : vrep.violations) {
        if (!v.on_path) continue;
        Witness w;
        w.space = space->name();
        w.pair_index = v.pair_index;
        w.player = v.player;
        w.theta = v.theta;
        w.ltype = v.ltype;
        w.history = v.history;
        w.gain = v.gain();
        w.plan = v.witness;
        w.note = "profitable reaction to leaked information";
        rep.witness = w;
        break;
      }
    }
  }
  return rep;
}

namespace {

// Every outcome in the support of play equals f(theta), for every pair.
bool outcomes_match_scf(const GameTree& g, const StrategyProfileView& profile,
                        const SocialChoiceFunction& f, const LeakageTypeSpace& space,
                        std::string* fail_note) {
  for (size_t pi = 0; pi < space.admissible().size(); ++pi) {
    const auto& pair = space.admissible()[pi];
    for (long long fl = 0; fl < g.values().profile_count(); ++fl) {
      ThetaProfile theta = g.values().profile_at(fl);
      if (g.values().prior_mass(theta).is_zero()) continue;
      OutcomeId want = f.outcome_by_theta[fl];
      for (const auto& [z, p] : outcome_distribution(g, profile, theta, pair.profile, pair.order)) {
        if (g.node(z).outcome != want) {
          if (fail_note) {
            *fail_note = "pair " + std::to_string(pi) + " yields " +
                         g.outcomes().label(g.node(z).outcome) + " instead of " +
                         g.outcomes().label(want);
          }
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

PropertyReport implements(std::shared_ptr<const GameTree> g, const SocialChoiceFunction& f,
                          const Family& family, const Rational& eps,
                          std::shared_ptr<const DefaultProfile> s0,
                          const std::vector<StrategyProfileView>& provided) {
  PropertyReport rep;
  rep.property = "implements";
  rep.notes.push_back("searched candidates: default extension plus " +
                      std::to_string(provided.size()) + " provided profile(s)");
  for (const auto& space : family) {
    std::vector<StrategyProfileView> candidates;
    if (s0) candidates.push_back(extend_with_best_responses(g, s0, space));
    for (const auto& p : provided) candidates.push_back(p);
    bool found = false;
    std::string note;
    for (const auto& cand : candidates) {
      VerifyReport vrep = verify_equilibrium(*g, cand, *space, {eps});
      if (!vrep.pass) continue;
      std::string why;
      if (outcomes_match_scf(*g, cand, f, *space, &why)) {
        found = true;
        note = cand.label();
        break;
      }
      note = cand.label() + ": " + why;
    }
    rep.sub(space->name(), found, note);
    if (!found && !rep.witness) {
      Witness w;
      w.space = space->name();
      w.note = note.empty() ? "no candidate is an eps-PBE" : note;
      rep.witness = w;
    }
  }
  return rep;
}

PropertyReport theorem1_crosscheck(std::shared_ptr<const GameTree> g,
                                   const SocialChoiceFunction& f, const Family& family,
                                   std::shared_ptr<const DefaultProfile> s0,
                                   const std::vector<StrategyProfileView>& provided) {
  PropertyReport rep;
  rep.property = "theorem1_crosscheck";
  PropertyReport lhs = implements(g, f, family, Rational(0), s0, provided);
  PropertyReport lp = is_leakage_proof(g, s0, family, {});
  // A leakage-proof equilibrium implements f iff the default play yields f.
  std::string why;
  bool default_yields_f = true;
  {
    LeakageTypeSpace zero = common_knowledge_space(LeakageOrder::all_equal(g->players().n));
    default_yields_f = outcomes_match_scf(*g, StrategyProfileView::from_default(s0), f, zero, &why);
  }
  bool rhs = lp.pass && default_yields_f;
  rep.sub("implements", lhs.pass);
  rep.sub("leakage_proof_equilibrium_implementing_f", rhs,
          default_yields_f ? "" : ("default play: " + why));
  rep.pass = (lhs.pass == rhs);
  bool pruned = true, minimal = false;
  for (const auto& n : lp.notes) {
    if (n.find("pruning assumption violated") != std::string::npos) pruned = false;
  }
  for (const auto& space : family) minimal |= space->minimally_rich();
  if (lhs.pass != rhs) {
    std::string ctx;
    if (!pruned) ctx += " pruning violated;";
    if (!minimal) ctx += " family not minimally rich;";
    if (ctx.empty()) {
      rep.notes.push_back("counterexample candidate: directions disagree under the assumptions");
    } else {
      rep.notes.push_back("directions disagree; assumption-violation demo:" + ctx);
    }
    if (lhs.witness) rep.witness = lhs.witness;
    if (!rep.witness && lp.witness) rep.witness = lp.witness;
  }
  return rep;
}

PropertyReport is_efficient_under_leakage(std::shared_ptr<const GameTree> g,
                                          std::shared_ptr<const DefaultProfile> s0,
                                          const Family& family, const Rational& eps) {
  PropertyReport rep;
  rep.property = "efficient_under_leakage";
  const auto& values = g->values();
  for (const auto& space : family) {
    StrategyProfileView ext = extend_with_best_responses(g, s0, space);
    VerifyReport vrep = verify_equilibrium(*g, ext, *space, {eps});
    bool efficient = true;
    std::string note;
    for (size_t pi = 0; pi < space->admissible().size() && efficient; ++pi) {
      const auto& pair = space->admissible()[pi];
      for (long long fl = 0; fl < values.profile_count() && efficient; ++fl) {
        ThetaProfile theta = values.profile_at(fl);
        if (values.prior_mass(theta).is_zero()) continue;
        std::vector<Rational> q = expected_allocation(*g, ext, theta, pair);
        Rational best = values.value(0, theta[0]);
        for (PlayerId i = 1; i < g->players().n; ++i) best = max(best, values.value(i, theta[i]));
        Rational sold(0);
        for (PlayerId i = 0; i < g->players().n; ++i) {
          sold += q[i];
          if (!q[i].is_zero() && values.value(i, theta[i]) != best) efficient = false;
        }
        if (sold != Rational(1)) efficient = false;
        if (!efficient) {
          note = "misallocation at theta profile index " + std::to_string(fl) + ", pair " +
                 std::to_string(pi);
          if (!rep.witness) {
            Witness w;
            w.space = space->name();
            w.pair_index = static_cast<int>(pi);
            w.note = note;
            rep.witness = w;
          }
        }
      }
    }
    if (!vrep.pass && !rep.witness && !vrep.violations.empty()) {
      const auto& v = vrep.violations.front();
      Witness w;
      w.space = space->name();
      w.pair_index = v.pair_index;
      w.player = v.player;
      w.theta = v.theta;
      w.ltype = v.ltype;
      w.history = v.history;
      w.gain = v.gain();
      w.plan = v.witness;
      rep.witness = w;
    }
    rep.sub(space->name(), vrep.pass && efficient, note);
  }
  // Companion certificate: leakage-proof at 2*delta.
  Rational two_delta = game_delta(*g) * Rational(2);
  LeakageProofOptions lp_opts;
  lp_opts.eps = two_delta;
  PropertyReport lp = is_leakage_proof(g, s0, family, lp_opts);
  rep.sub("leakage_proof_eps_2delta", lp.pass);
  for (const auto& [k, v] : lp.metrics) rep.metrics["certificate_" + k] = v;
  rep.metric("two_delta", two_delta);
  if (!lp.pass && !rep.witness) rep.witness = lp.witness;
  return rep;
}

PropertyReport allocation_invariance(std::shared_ptr<const GameTree> g,
                                     const StrategyProfileView& profile, const Family& family) {
  PropertyReport rep;
  rep.property = "allocation_invariance";
  const auto& values = g->values();
  for (const auto& space : family) {
    bool ok = true;
    std::string note;
    for (long long fl = 0; fl < values.profile_count() && ok; ++fl) {
      ThetaProfile theta = values.profile_at(fl);
      if (values.prior_mass(theta).is_zero()) continue;
      std::vector<Rational> ref;
      for (size_t pi = 0; pi < space->admissible().size(); ++pi) {
        std::vector<Rational> q = expected_allocation(*g, profile, theta, space->admissible()[pi]);
        if (pi == 0) {
          ref = q;
        } else if (q != ref) {
          ok = false;
          note = "allocation differs across pairs at theta index " + std::to_string(fl);
          if (!rep.witness) {
            Witness w;
            w.space = space->name();
            w.pair_index = static_cast<int>(pi);
            w.note = note;
            rep.witness = w;
          }
          break;
        }
      }
    }
    rep.sub(space->name(), ok, note);
  }
  return rep;
}

namespace {

// Interim mimic utility: play type (theta_m, t_hat) from h while believing as
// (t_true), normalized.
Rational mimic_utility(const GameTree& g, const StrategyProfileView& profile,
                       const LeakageTypeSpace& space, PlayerId i, ValueIndex theta_m, int t_hat,
                       int t_true, const PrivateHistory& h) {
  const auto& hat_sig = space.type(i, t_hat).signature;
  Atoms atoms = bayes_update(g, profile, space, i, t_true, h);
  Rational mass = total_weight(atoms);
  for (auto& a : atoms) a.theta[i] = theta_m;
  Evaluator ev(g, profile, i, space.type(i, t_true).signature);
  auto plan = [&](const PrivateHistory& ph) {
    PrivateHistory seen{ph.public_h, {}};
    for (const auto& [j, a] : ph.leaked) {
      if (hat_sig.count(j)) seen.leaked.push_back({j, a});
    }
    return profile.act(i, theta_m, t_hat, seen);
  };
  return ev.follow_at(h, atoms, plan, Evaluator::utility_payoff(g, i)) / mass;
}

}  // namespace

PropertyReport lemma1_bounds(std::shared_ptr<const GameTree> g,
                             const StrategyProfileView& profile,
                             std::shared_ptr<const LeakageTypeSpace> space,
                             const Lemma1Cell& cell, bool invariance_checked) {
  if (!invariance_checked) {
    throw PrereqFailed("allocation invariance must be established before the payoff bounds");
  }
  PropertyReport rep;
  rep.property = "lemma1_bounds";
  const auto& pair = space->admissible().at(cell.pair_index);
  PlayerId i = cell.player;
  int t_i = cell.ltype;
  const int m = g->values().count(i);
  Rational delta = game_delta(*g);

  std::vector<Rational> Q(m);
  for (ValueIndex s = 0; s < m; ++s) {
    Q[s] = interim_qm(*g, profile, *space, pair, i, s, t_i, t_i, cell.history, false).q;
  }
  int lowest = -1;
  bool monotone = true;
  for (ValueIndex s = 0; s < m; ++s) {
    if (Q[s].is_zero()) continue;
    if (lowest < 0) lowest = s;
  }
  Rational prev(-1);
  for (ValueIndex s = 0; s < m; ++s) {
    if (Q[s].is_zero()) continue;
    if (prev >= Rational(0) && Q[s] < prev) monotone = false;
    prev = Q[s];
  }
  rep.sub("monotone_interim_allocation", monotone);
  if (lowest < 0) {
    rep.notes.push_back("no feasible value type at this history; bounds vacuous");
    return rep;
  }

  // Weakly slower leakage types: observation set contained in t_i's.
  std::vector<int> slower;
  for (int t = 0; t < space->count(i); ++t) {
    bool contained = true;
    for (PlayerId j : space->type(i, t).signature) {
      if (!space->type(i, t_i).signature.count(j)) contained = false;
    }
    if (contained) slower.push_back(t);
  }

  bool bounds_ok = true;
  for (ValueIndex mm = lowest; mm < m; ++mm) {
    if (Q[mm].is_zero()) continue;
    Rational lower(0), upper(0);
    for (ValueIndex s = lowest + 1; s <= mm; ++s) {
      lower += delta * Q[s - 1];
      upper += delta * Q[s];
    }
    for (int t_hat : slower) {
      Rational u = mimic_utility(*g, profile, *space, i, mm, t_hat, t_i, cell.history);
      if (u < lower || upper < u) {
        bounds_ok = false;
        if (!rep.witness) {
          Witness w;
          w.space = space->name();
          w.pair_index = cell.pair_index;
          w.player = i;
          w.theta = mm;
          w.ltype = t_hat;
          w.history = cell.history.key(*g);
          w.note = "payoff bound violated: " + lower.str() + " <= " + u.str() + " <= " +
                   upper.str() + " fails";
          rep.witness = w;
        }
      }
    }
  }
  rep.sub("payoff_bounds", bounds_ok);
  return rep;
}

PropertyReport lemma1_bounds_sweep(std::shared_ptr<const GameTree> g,
                                   const StrategyProfileView& profile,
                                   std::shared_ptr<const LeakageTypeSpace> space) {
  PropertyReport inv = allocation_invariance(g, profile, {space});
  PropertyReport rep;
  rep.property = "lemma1_bounds_sweep";
  rep.sub("allocation_invariance", inv.pass);
  if (!inv.pass) {
    rep.witness = inv.witness;
    return rep;
  }
  long long cells = 0;
  for (size_t pi = 0; pi < space->admissible().size(); ++pi) {
    const auto& pair = space->admissible()[pi];
    for (PlayerId i = 0; i < g->players().n; ++i) {
      for (const auto& aph :
           private_histories(*g, pair.order, i, &profile, &pair.profile)) {
        if (!aph.on_path.value_or(false)) continue;
        ++cells;
        Lemma1Cell cell{static_cast<int>(pi), i, pair.profile[i], aph.h};
        PropertyReport one = lemma1_bounds(g, profile, space, cell, true);
        if (!one.pass) {
          rep.sub("cell_pair" + std::to_string(pi) + "_p" + std::to_string(i) + "_" +
                      aph.h.key(*g),
                  false, one.witness ? one.witness->note : "");
          if (!rep.witness) rep.witness = one.witness;
        }
      }
    }
  }
  rep.metric("on_path_cells_checked", Rational(cells));
  if (rep.subs.size() == 1) rep.sub("all_on_path_cells", true);
  return rep;
}

namespace {

// On-path nonterminal stage histories under s0 for a fixed value profile.
std::vector<HistoryId> on_path_histories(const GameTree& g, const DefaultProfile& s0,
                                         const ThetaProfile& theta) {
  std::vector<HistoryId> out;
  std::function<void(HistoryId)> walk = [&](HistoryId h) {
    if (g.is_terminal(h)) return;
    out.push_back(h);
    auto movers = g.movers(h);
    std::vector<ActionIndex> avec(g.players().n, -1);
    std::function<void(size_t)> rec = [&](size_t k) {
      if (k == movers.size()) {
        walk(g.child_at(h, avec));
        return;
      }
      PlayerId j = movers[k];
      const Dist& d = s0.at(j, theta[j], h);
      for (ActionIndex a = 0; a < static_cast<int>(d.size()); ++a) {
        if (d[a].is_zero()) continue;
        avec[j] = a;
        rec(k + 1);
      }
      avec[j] = -1;
    };
    rec(0);
  };
  walk(g.root());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PropertyReport epic_check(std::shared_ptr<const GameTree> g,
                          std::shared_ptr<const DefaultProfile> s0, bool sequential) {
  PropertyReport rep;
  rep.property = sequential ? "sequential_epic_on_path" : "epic";
  StrategyProfileView view = StrategyProfileView::from_default(s0);
  bool pure = true;
  const auto& values = g->values();
  bool ok = true;
  for (long long fl = 0; fl < values.profile_count(); ++fl) {
    ThetaProfile theta = values.profile_at(fl);
    if (values.prior_mass(theta).is_zero()) continue;
    std::vector<HistoryId> anchors =
        sequential ? on_path_histories(*g, *s0, theta) : std::vector<HistoryId>{g->root()};
    for (PlayerId i = 0; i < g->players().n; ++i) {
      Evaluator ev(*g, view, i, {});
      auto payoff = Evaluator::utility_payoff(*g, i);
      for (HistoryId h : anchors) {
        auto movers = g->movers(h);
        if (std::find(movers.begin(), movers.end(), i) == movers.end() && h != g->root()) {
          continue;
        }
        Atoms atoms{{theta, std::vector<int>(g->players().n, 0), LeakageOrder::all_equal(
                                                                     g->players().n),
                     Rational(1)}};
        PrivateHistory ph{h, {}};
        auto plan = [&](const PrivateHistory& p2) { return s0->at(i, theta[i], p2.public_h); };
        Rational follow = ev.follow_at(ph, atoms, plan, payoff);
        std::map<std::string, int> dev;
        Rational best = ev.best_at(ph, atoms, payoff, &dev);
        if (best > follow) {
          ok = false;
          if (!rep.witness) {
            Witness w;
            w.player = i;
            w.theta = theta[i];
            w.history = g->history_key(h);
            w.gain = best - follow;
            w.plan.player = i;
            w.plan.theta = theta[i];
            w.plan.ltype = 0;
            w.plan.action_at = dev;
            w.note = "ex-post profitable deviation knowing the full value profile";
            rep.witness = w;
          }
        }
      }
    }
    // Purity over on-path prescriptions.
    for (HistoryId h : on_path_histories(*g, *s0, theta)) {
      for (PlayerId i : g->movers(h)) {
        if (dist_support_size(s0->at(i, theta[i], h)) > 1) pure = false;
      }
    }
  }
  rep.sub(sequential ? "sequential_ex_post_best_response" : "ex_post_best_response", ok);
  rep.notes.push_back(pure ? "pure-strategy profile" : "mixed-strategy profile");
  rep.metrics["pure"] = pure ? "1" : "0";
  return rep;
}

}  // namespace

PropertyReport is_epic(std::shared_ptr<const GameTree> g,
                       std::shared_ptr<const DefaultProfile> s0) {
  return epic_check(g, s0, false);
}

PropertyReport sequential_epic_on_path(std::shared_ptr<const GameTree> g,
                                       std::shared_ptr<const DefaultProfile> s0) {
  return epic_check(g, s0, true);
}

PropertyReport proposition_crosschecks(const std::vector<MechanismVerdicts>& catalog) {
  PropertyReport rep;
  rep.property = "proposition_crosschecks";
  bool mixed_exception = false, dynamic_exception = false;
  for (const auto& m : catalog) {
    if (m.pure && m.epic) {
      rep.sub("pure_epic_implies_leakage_proof[" + m.name + "]", m.leakage_proof);
    }
    if (m.is_static && m.leakage_proof) {
      rep.sub("static_leakage_proof_implies_epic[" + m.name + "]", m.epic);
    }
    if (!m.pure && m.epic && !m.leakage_proof) mixed_exception = true;
    if (!m.is_static && m.leakage_proof && !m.epic) dynamic_exception = true;
  }
  rep.sub("mixed_epic_not_leakage_proof_witnessed", mixed_exception);
  rep.sub("dynamic_leakage_proof_not_epic_witnessed", dynamic_exception);
  return rep;
}

PropertyReport assumption_audit(std::shared_ptr<const GameTree> g, const AuctionSpec& spec,
                                const StrategyProfileView& profile,
                                std::shared_ptr<const LeakageTypeSpace> space) {
  PropertyReport rep;
  rep.property = "assumption_audit";
  const auto& values = g->values();
  const int n = g->players().n;

  // Anonymity: (q, m) invariant under every player permutation of (theta, t).
  if (spec.non_anonymous) {
    rep.sub("anonymity", false, "documented non-anonymous fixture (fast_wins tie rule)");
  } else {
    bool symmetric = true;
    for (PlayerId i = 1; i < n; ++i) {
      if (values.grid(i) != values.grid(0) || values.prior(i) != values.prior(0)) {
        symmetric = false;
      }
    }
    if (!symmetric) {
      rep.sub("anonymity", false, "value grids are not symmetric; check skipped");
    } else {
      bool ok = true;
      std::string note;
      // Cache expected (q, m) per (theta, pair).
      std::map<std::pair<long long, int>, std::pair<std::vector<Rational>, std::vector<Rational>>>
          table;
      auto qm_at = [&](long long fl, int pi) {
        auto key = std::make_pair(fl, pi);
        auto it = table.find(key);
        if (it != table.end()) return it->second;
        ThetaProfile theta = values.profile_at(fl);
        const auto& pair = space->admissible()[pi];
        std::vector<Rational> q(n, Rational(0)), mm(n, Rational(0));
        for (const auto& [z, p] :
             outcome_distribution(*g, profile, theta, pair.profile, pair.order)) {
          const AuctionOutcome& o = g->outcomes().auction(g->node(z).outcome);
          for (PlayerId i = 0; i < n; ++i) {
            q[i] += p * o.q[i];
            mm[i] += p * o.m[i];
          }
        }
        return table[key] = {q, mm};
      };
      std::vector<PlayerId> perm(n);
      for (PlayerId i = 0; i < n; ++i) perm[i] = i;
      while (ok && std::next_permutation(perm.begin(), perm.end())) {
        for (size_t pi = 0; pi < space->admissible().size() && ok; ++pi) {
          const auto& pair = space->admissible()[pi];
          // Find the permuted admissible pair.
          std::vector<int> pprofile(n);
          LeakageOrder porder{std::vector<int>(n)};
          for (PlayerId j = 0; j < n; ++j) {
            pprofile[j] = pair.profile[perm[j]];
            porder.rank[j] = pair.order.rank[perm[j]];
          }
          int ppi = -1;
          for (size_t k = 0; k < space->admissible().size(); ++k) {
            if (space->admissible()[k].profile == pprofile &&
                space->admissible()[k].order == porder) {
              ppi = static_cast<int>(k);
            }
          }
          if (ppi < 0) continue;  // permuted pair outside the space
          for (long long fl = 0; fl < values.profile_count() && ok; ++fl) {
            ThetaProfile theta = values.profile_at(fl);
            if (values.prior_mass(theta).is_zero()) continue;
            ThetaProfile ptheta(n);
            for (PlayerId j = 0; j < n; ++j) ptheta[j] = theta[perm[j]];
            auto [q1, m1] = qm_at(fl, static_cast<int>(pi));
            auto [q2, m2] = qm_at(values.flat_index(ptheta), ppi);
            for (PlayerId j = 0; j < n && ok; ++j) {
              if (q1[perm[j]] != q2[j] || m1[perm[j]] != m2[j]) {
                ok = false;
                note = "permutation changes the outcome at theta index " + std::to_string(fl);
              }
            }
          }
        }
        std::vector<PlayerId> identity(n);
        for (PlayerId i = 0; i < n; ++i) identity[i] = i;
        if (perm == identity) break;
      }
      rep.sub("anonymity", ok, note);
    }
  }

  // No rent to the lowest feasible type, at every on-path cell, for every
  // actual and pretended (weakly slower) leakage type.
  bool rent_ok = true;
  bool any_feasible = false;
  std::string rent_note;
  for (size_t pi = 0; pi < space->admissible().size(); ++pi) {
    const auto& pair = space->admissible()[pi];
    for (PlayerId i = 0; i < n; ++i) {
      int t_i = pair.profile[i];
      for (const auto& aph : private_histories(*g, pair.order, i, &profile, &pair.profile)) {
        if (!aph.on_path.value_or(false)) continue;
        int lowest = -1;
        for (ValueIndex s = 0; s < values.count(i); ++s) {
          if (!interim_qm(*g, profile, *space, pair, i, s, t_i, t_i, aph.h, false).q.is_zero()) {
            lowest = s;
            break;
          }
        }
        if (lowest < 0) continue;
        any_feasible = true;
        for (int t_hat = 0; t_hat < space->count(i); ++t_hat) {
          bool contained = true;
          for (PlayerId j : space->type(i, t_hat).signature) {
            if (!space->type(i, t_i).signature.count(j)) contained = false;
          }
          if (!contained) continue;
          Rational u = mimic_utility(*g, profile, *space, i, lowest, t_hat, t_i, aph.h);
          if (!u.is_zero()) {
            rent_ok = false;
            if (rent_note.empty()) {
              rent_note = "lowest feasible type earns " + u.str() + " at " + aph.h.key(*g);
            }
          }
        }
      }
    }
  }
  if (!any_feasible) {
    rep.sub("no_rent_to_lowest_type", true, "vacuous: no feasible types");
  } else {
    rep.sub("no_rent_to_lowest_type", rent_ok, rent_note);
  }
  return rep;
}

}  // namespace leakproof
