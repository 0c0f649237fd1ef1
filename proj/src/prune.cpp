#include "leakproof/prune.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "leakproof/errors.hpp"

namespace leakproof {

namespace {

// Value types of player i whose play under s0 is consistent with i's actions
// along the path to h.
using ConsistentSets = std::vector<std::set<ValueIndex>>;

ConsistentSets root_sets(const GameTree& g) {
  ConsistentSets t(g.players().n);
  for (PlayerId i = 0; i < g.players().n; ++i) {
    for (ValueIndex m = 0; m < g.values().count(i); ++m) {
      if (!g.values().mass(i, m).is_zero()) t[i].insert(m);
    }
  }
  return t;
}

// Kept actions of mover i at h: those some consistent value type plays.
std::vector<ActionIndex> kept_actions(const GameTree& g, const DefaultProfile& s0, HistoryId h,
                                      PlayerId i, const std::set<ValueIndex>& consistent) {
  std::vector<ActionIndex> kept;
  for (ActionIndex a = 0; a < g.action_count(h, i); ++a) {
    for (ValueIndex m : consistent) {
      if (!s0.at(i, m, h)[a].is_zero()) {
        kept.push_back(a);
        break;
      }
    }
  }
  return kept;
}

}  // namespace

PruneResult prune(const GameTree& g, const DefaultProfile& s0) {
  s0.validate_complete(g);

  GameTreeBuilder b(g.players(), g.values(), g.outcomes());
  if (g.scf()) b.set_scf(*g.scf());
  PruneResult out;
  out.restricted = DefaultProfile(g.players().n);
  std::vector<HistoryId> original_of{-1};

  // Descend, skipping stages in which every mover has a single kept action.
  std::function<void(HistoryId, HistoryId, ConsistentSets)> build = [&](HistoryId src,
                                                                        HistoryId dst,
                                                                        ConsistentSets consistent) {
    // Fast-forward through degenerate stages.
    HistoryId cur = src;
    while (!g.is_terminal(cur)) {
      auto movers = g.movers(cur);
      bool all_single = true;
      std::vector<ActionIndex> forced(g.players().n, -1);
      for (PlayerId i : movers) {
        auto kept = kept_actions(g, s0, cur, i, consistent[i]);
        if (kept.empty()) throw EmptyPrune("no surviving action at " + g.history_key(cur));
        if (kept.size() > 1) {
          all_single = false;
          break;
        }
        forced[i] = kept[0];
      }
      if (!all_single) break;
      // Every mover forced: collapse the stage.
      for (PlayerId i : movers) {
        std::set<ValueIndex> next;
        for (ValueIndex m : consistent[i]) {
          if (!s0.at(i, m, cur)[forced[i]].is_zero()) next.insert(m);
        }
        consistent[i] = std::move(next);
      }
      cur = g.child_at(cur, forced);
    }

    original_of[dst] = cur;
    if (g.is_terminal(cur)) {
      b.set_outcome(dst, g.node(cur).outcome);
      return;
    }

    auto movers = g.movers(cur);
    std::vector<std::vector<ActionIndex>> kept_by_player(g.players().n);
    std::vector<std::vector<std::string>> labels(g.players().n);
    for (PlayerId i : movers) {
      auto kept = kept_actions(g, s0, cur, i, consistent[i]);
      if (kept.empty()) throw EmptyPrune("no surviving action at " + g.history_key(cur));
      if (kept.size() == 1) continue;  // degenerate mover drops out of the stage
      kept_by_player[i] = kept;
      for (ActionIndex a : kept) labels[i].push_back(g.action_label(cur, i, a));
    }
    // At least one mover has >= 2 kept actions here (degenerate stages were
    // collapsed above), but single-action movers may coexist with them.
    std::vector<PlayerId> live;
    for (PlayerId i : movers) {
      if (!kept_by_player[i].empty()) live.push_back(i);
    }
    std::vector<HistoryId> kids = b.expand(dst, labels);
    original_of.resize(original_of.size() + kids.size(), -1);

    // Restricted profile at this node: original distributions renormalized to
    // the kept actions. A value type whose whole support was dropped falls
    // back to the lowest kept action.
    for (PlayerId i : live) {
      for (ValueIndex m = 0; m < g.values().count(i); ++m) {
        const Dist& d = s0.at(i, m, cur);
        Dist nd(kept_by_player[i].size(), Rational(0));
        Rational mass(0);
        for (size_t k = 0; k < kept_by_player[i].size(); ++k) {
          nd[k] = d[kept_by_player[i][k]];
          mass += nd[k];
        }
        if (mass.is_zero()) {
          nd.assign(nd.size(), Rational(0));
          nd[0] = Rational(1);
        } else if (mass != Rational(1)) {
          for (auto& p : nd) p /= mass;
        }
        out.restricted.set(i, m, dst, std::move(nd));
      }
    }

    // Recurse into each kept child combination.
    long long idx = 0;
    std::function<void(size_t, std::vector<ActionIndex>&)> rec = [&](size_t k,
                                                                     std::vector<ActionIndex>&
                                                                         avec) {
      if (k == live.size()) {
        ConsistentSets next = consistent;
        for (PlayerId i : movers) {
          ActionIndex a = avec[i] >= 0 ? avec[i] : kept_actions(g, s0, cur, i, consistent[i])[0];
          avec[i] = a;
          std::set<ValueIndex> ni;
          for (ValueIndex m : consistent[i]) {
            if (!s0.at(i, m, cur)[a].is_zero()) ni.insert(m);
          }
          next[i] = std::move(ni);
        }
        build(g.child_at(cur, avec), kids[idx++], next);
        for (PlayerId i : movers) {
          if (std::find(live.begin(), live.end(), i) == live.end()) avec[i] = -1;
        }
        return;
      }
      PlayerId i = live[k];
      for (ActionIndex a : kept_by_player[i]) {
        avec[i] = a;
        rec(k + 1, avec);
        avec[i] = -1;
      }
    };
    std::vector<ActionIndex> avec(g.players().n, -1);
    rec(0, avec);
  };

  build(g.root(), b.root(), root_sets(g));
  out.tree = b.finish();
  out.original_of = std::move(original_of);
  return out;
}

bool is_pruned(const GameTree& g, const DefaultProfile& s0) {
  // Every history reachable: descend along kept actions and count.
  std::set<HistoryId> seen;
  std::function<void(HistoryId, const ConsistentSets&)> walk = [&](HistoryId h,
                                                                   const ConsistentSets& cons) {
    seen.insert(h);
    if (g.is_terminal(h)) return;
    auto movers = g.movers(h);
    std::vector<std::vector<ActionIndex>> kept(g.players().n);
    for (PlayerId i : movers) {
      kept[i] = kept_actions(g, s0, h, i, cons[i]);
      if (static_cast<int>(kept[i].size()) != g.action_count(h, i)) return;  // unused action
    }
    std::function<void(size_t, std::vector<ActionIndex>&)> rec =
        [&](size_t k, std::vector<ActionIndex>& avec) {
          if (k == movers.size()) {
            ConsistentSets next = cons;
            for (PlayerId i : movers) {
              std::set<ValueIndex> ni;
              for (ValueIndex m : cons[i]) {
                if (!s0.at(i, m, h)[avec[i]].is_zero()) ni.insert(m);
              }
              next[i] = std::move(ni);
            }
            walk(g.child_at(h, avec), next);
            return;
          }
          PlayerId i = movers[k];
          for (ActionIndex a : kept[i]) {
            avec[i] = a;
            rec(k + 1, avec);
          }
        };
    std::vector<ActionIndex> avec(g.players().n, -1);
    rec(0, avec);
  };
  walk(g.root(), root_sets(g));
  return static_cast<int>(seen.size()) == g.size();
}

}  // namespace leakproof
