#include "leakproof/game.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "leakproof/errors.hpp"

namespace leakproof {

void PlayerSet::validate() const {
  if (n < 1) throw StructureError("player set needs n >= 1");
}

ValueTypeSpace::ValueTypeSpace(std::vector<std::vector<Rational>> grids,
                               std::vector<std::vector<Rational>> priors)
    : grids_(std::move(grids)), priors_(std::move(priors)) {
  if (grids_.size() != priors_.size()) throw StructureError("value grid/prior player mismatch");
  for (size_t i = 0; i < grids_.size(); ++i) {
    const auto& g = grids_[i];
    const auto& p = priors_[i];
    if (g.empty()) throw StructureError("empty value grid");
    if (g.size() != p.size()) throw StructureError("grid/prior length mismatch");
    Rational sum(0);
    for (const auto& m : p) {
      if (m < Rational(0)) throw StructureError("negative prior mass");
      sum += m;
    }
    if (sum != Rational(1)) throw StructureError("prior does not sum to 1");
    for (size_t s = 1; s < g.size(); ++s) {
      if (!(g[s - 1] < g[s])) throw StructureError("value grid not strictly increasing");
    }
    if (g.size() >= 3) {
      Rational d = g[1] - g[0];
      for (size_t s = 2; s < g.size(); ++s) {
        if (g[s] - g[s - 1] != d) throw StructureError("value grid not equally spaced");
      }
    }
  }
}

Rational ValueTypeSpace::spacing(PlayerId i) const {
  if (count(i) < 2) throw StructureError("spacing undefined for singleton grid");
  return grids_[i][1] - grids_[i][0];
}

Rational ValueTypeSpace::delta() const {
  std::optional<Rational> d;
  for (int i = 0; i < players(); ++i) {
    if (count(i) < 2) continue;
    Rational di = spacing(i);
    if (d && *d != di) throw StructureError("players have different grid spacing");
    d = di;
  }
  if (!d) throw StructureError("no player has a spaced grid");
  return *d;
}

long long ValueTypeSpace::profile_count() const {
  long long c = 1;
  for (const auto& g : grids_) c *= static_cast<long long>(g.size());
  return c;
}

long long ValueTypeSpace::flat_index(const ThetaProfile& t) const {
  long long idx = 0;
  for (size_t i = 0; i < grids_.size(); ++i) idx = idx * grids_[i].size() + t[i];
  return idx;
}

ThetaProfile ValueTypeSpace::profile_at(long long flat) const {
  ThetaProfile t(grids_.size(), 0);
  for (int i = static_cast<int>(grids_.size()) - 1; i >= 0; --i) {
    t[i] = static_cast<ValueIndex>(flat % grids_[i].size());
    flat /= static_cast<long long>(grids_[i].size());
  }
  return t;
}

Rational ValueTypeSpace::prior_mass(const ThetaProfile& t) const {
  Rational p(1);
  for (size_t i = 0; i < grids_.size(); ++i) p *= priors_[i][t[i]];
  return p;
}

OutcomeSpace OutcomeSpace::table(std::vector<std::string> labels,
                                 std::vector<std::vector<std::vector<Rational>>> util) {
  OutcomeSpace o;
  o.labels_ = std::move(labels);
  o.util_ = std::move(util);
  o.quasilinear_ = false;
  return o;
}

OutcomeSpace OutcomeSpace::quasilinear(std::vector<std::string> labels,
                                       std::vector<AuctionOutcome> payloads) {
  OutcomeSpace o;
  o.labels_ = std::move(labels);
  o.payloads_ = std::move(payloads);
  o.quasilinear_ = true;
  return o;
}

OutcomeId OutcomeSpace::find(const std::string& label) const {
  for (size_t x = 0; x < labels_.size(); ++x) {
    if (labels_[x] == label) return static_cast<OutcomeId>(x);
  }
  return -1;
}

const AuctionOutcome& OutcomeSpace::auction(OutcomeId x) const {
  if (!quasilinear_) throw StructureError("outcome has no auction payload");
  return payloads_[x];
}

Rational OutcomeSpace::utility(PlayerId i, OutcomeId x, const ThetaProfile& theta,
                               const ValueTypeSpace& values) const {
  if (quasilinear_) {
    const AuctionOutcome& a = payloads_[x];
    return a.q[i] * values.value(i, theta[i]) - a.m[i];
  }
  return util_[i][x][values.flat_index(theta)];
}

void OutcomeSpace::validate(int players, long long theta_profiles) const {
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw StructureError("duplicate outcome labels");
  if (quasilinear_) {
    if (payloads_.size() != labels_.size()) throw MissingOutcome("auction payload missing");
    for (const auto& a : payloads_) {
      if (static_cast<int>(a.q.size()) != players || static_cast<int>(a.m.size()) != players) {
        throw MissingOutcome("auction payload has wrong player count");
      }
      Rational total(0);
      for (const auto& qi : a.q) {
        if (qi < Rational(0) || qi > Rational(1)) throw StructureError("allocation outside [0,1]");
        total += qi;
      }
      if (total > Rational(1)) throw StructureError("allocations sum above 1");
    }
    return;
  }
  if (static_cast<int>(util_.size()) != players) throw MissingOutcome("utility table: player rows");
  for (const auto& per_player : util_) {
    if (per_player.size() != labels_.size()) throw MissingOutcome("utility table: outcome rows");
    for (const auto& row : per_player) {
      if (static_cast<long long>(row.size()) != theta_profiles) {
        throw MissingOutcome("utility table: theta cells");
      }
    }
  }
}

const GameTree::Node& GameTree::node(HistoryId h) const {
  if (h < 0 || h >= size()) throw UnknownHistory("history id " + std::to_string(h));
  return nodes_[h];
}

std::vector<PlayerId> GameTree::movers(HistoryId h) const {
  std::vector<PlayerId> m;
  const Node& nd = node(h);
  for (PlayerId i = 0; i < players_.n; ++i) {
    if (!nd.actions[i].empty()) m.push_back(i);
  }
  return m;
}

HistoryId GameTree::child_at(HistoryId h, const std::vector<ActionIndex>& avec) const {
  const Node& nd = node(h);
  if (nd.children.empty()) throw UnknownHistory("terminal has no children");
  long long idx = 0;
  for (PlayerId i = 0; i < players_.n; ++i) {
    if (nd.actions[i].empty()) continue;
    idx = idx * nd.actions[i].size() + avec[i];
  }
  return nd.children[idx];
}

std::vector<HistoryId> GameTree::terminals() const {
  std::vector<HistoryId> z;
  for (HistoryId h = 0; h < size(); ++h) {
    if (nodes_[h].children.empty()) z.push_back(h);
  }
  return z;
}

std::vector<HistoryId> GameTree::nonterminals() const {
  std::vector<HistoryId> r;
  for (HistoryId h = 0; h < size(); ++h) {
    if (!nodes_[h].children.empty()) r.push_back(h);
  }
  return r;
}

int GameTree::max_stage() const {
  int s = 0;
  for (const auto& nd : nodes_) s = std::max(s, nd.stage);
  return s;
}

std::string GameTree::history_key(HistoryId h) const {
  node(h);  // bounds check
  std::vector<std::string> stages;
  HistoryId cur = h;
  while (cur != 0) {
    const Node& nd = nodes_[cur];
    const Node& par = nodes_[nd.parent];
    std::string part;
    for (PlayerId i = 0; i < players_.n; ++i) {
      if (par.actions[i].empty()) continue;
      if (!part.empty()) part += ",";
      part += par.actions[i][nd.incoming[i]];
    }
    stages.push_back(part);
    cur = nd.parent;
  }
  std::string key;
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    if (!key.empty()) key += "|";
    key += *it;
  }
  return key;
}

HistoryId GameTree::find_history(const std::string& key) const {
  for (HistoryId h = 0; h < size(); ++h) {
    if (history_key(h) == key) return h;
  }
  return -1;
}

GameTreeBuilder::GameTreeBuilder(PlayerSet players, ValueTypeSpace values, OutcomeSpace outcomes) {
  players.validate();
  if (values.players() != players.n) throw StructureError("value space player count mismatch");
  g_.players_ = players;
  g_.values_ = std::move(values);
  g_.outcomes_ = std::move(outcomes);
  GameTree::Node r;
  r.incoming.assign(players.n, -1);
  r.actions.assign(players.n, {});
  g_.nodes_.push_back(std::move(r));
}

std::vector<HistoryId> GameTreeBuilder::expand(HistoryId h,
                                                 std::vector<std::vector<std::string>> actions) {
  GameTree::Node& nd = g_.nodes_.at(h);
  if (!nd.children.empty()) throw StructureError("history already expanded");
  if (static_cast<int>(actions.size()) != g_.players_.n) {
    throw StructureError("actions vector must cover all players");
  }
  long long prod = 1;
  bool any = false;
  for (PlayerId i = 0; i < g_.players_.n; ++i) {
    if (actions[i].empty()) continue;
    any = true;
    if (actions[i].size() < 2) {
      throw StructureError("mover with fewer than two actions at " + g_.history_key(h));
    }
    std::set<std::string> uniq(actions[i].begin(), actions[i].end());
    if (uniq.size() != actions[i].size()) throw StructureError("duplicate action labels");
    prod *= static_cast<long long>(actions[i].size());
  }
  if (!any) throw StructureError("expand with no movers");
  nd.actions = actions;

  std::vector<HistoryId> ids;
  ids.reserve(prod);
  std::vector<ActionIndex> avec(g_.players_.n, -1);
  // Mixed-radix enumeration, later players vary fastest.
  std::vector<PlayerId> ms;
  for (PlayerId i = 0; i < g_.players_.n; ++i) {
    if (!actions[i].empty()) ms.push_back(i);
  }
  long long total = prod;
  for (long long k = 0; k < total; ++k) {
    long long rem = k;
    for (int j = static_cast<int>(ms.size()) - 1; j >= 0; --j) {
      PlayerId i = ms[j];
      avec[i] = static_cast<ActionIndex>(rem % actions[i].size());
      rem /= static_cast<long long>(actions[i].size());
    }
    GameTree::Node child;
    child.parent = h;
    child.stage = g_.nodes_[h].stage + 1;
    child.incoming.assign(g_.players_.n, -1);
    for (PlayerId i : ms) child.incoming[i] = avec[i];
    child.actions.assign(g_.players_.n, {});
    HistoryId id = static_cast<HistoryId>(g_.nodes_.size());
    g_.nodes_.push_back(std::move(child));
    g_.nodes_[h].children.push_back(id);
    ids.push_back(id);
  }
  return ids;
}

void GameTreeBuilder::set_outcome(HistoryId h, OutcomeId x) {
  if (x < 0 || x >= g_.outcomes_.size()) throw MissingOutcome("unknown outcome id");
  g_.nodes_.at(h).outcome = x;
}

void GameTreeBuilder::set_scf(SocialChoiceFunction f) { g_.scf_ = std::move(f); }

GameTree GameTreeBuilder::finish() {
  g_.validate();
  return std::move(g_);
}

void GameTree::validate() const {
  players_.validate();
  outcomes_.validate(players_.n, values_.profile_count());
  if (nodes_.empty()) throw StructureError("empty game");
  for (HistoryId h = 0; h < size(); ++h) {
    const Node& nd = nodes_[h];
    if (nd.children.empty()) {
      if (nd.outcome < 0 || nd.outcome >= outcomes_.size()) {
        throw MissingOutcome("terminal " + history_key(h) + " has no outcome");
      }
      continue;
    }
    long long prod = 1;
    for (PlayerId i = 0; i < players_.n; ++i) {
      if (nd.actions[i].empty()) continue;
      if (nd.actions[i].size() < 2) throw StructureError("mover with a single action");
      prod *= static_cast<long long>(nd.actions[i].size());
    }
    if (static_cast<long long>(nd.children.size()) != prod) {
      throw StructureError("children not the product of action sets at " + history_key(h));
    }
    for (HistoryId c : nd.children) {
      if (c <= h || c >= size()) throw DanglingHistory("bad child id");
      if (nodes_[c].parent != h) throw DanglingHistory("child parent mismatch");
    }
  }
}

GameTree build_game(const PlayerSet& players, const ValueTypeSpace& values,
                    const OutcomeSpace& outcomes, const StageSpec& tree_spec,
                    std::optional<SocialChoiceFunction> scf) {
  GameTreeBuilder b(players, values, outcomes);
  if (scf) b.set_scf(*scf);

  // Recursive descent over the stage spec.
  struct Frame {
    const StageSpec* spec;
    HistoryId h;
  };
  std::vector<Frame> stack{{&tree_spec, b.root()}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    const StageSpec& sp = *f.spec;
    if (sp.actions.empty()) {
      OutcomeId x = outcomes.find(sp.outcome);
      if (x < 0) throw MissingOutcome("terminal outcome '" + sp.outcome + "' not declared");
      b.set_outcome(f.h, x);
      continue;
    }
    std::vector<std::vector<std::string>> acts(players.n);
    for (const auto& [i, labels] : sp.actions) {
      if (i < 0 || i >= players.n) throw StructureError("mover id out of range");
      acts[i] = labels;
    }
    std::vector<HistoryId> kids = b.expand(f.h, acts);

    // Children listed in the spec must be exactly the product.
    std::vector<PlayerId> ms;
    for (PlayerId i = 0; i < players.n; ++i) {
      if (!acts[i].empty()) ms.push_back(i);
    }
    long long prod = static_cast<long long>(kids.size());
    if (static_cast<long long>(sp.children.size()) != prod) {
      throw StructureError("stage children do not form the action product");
    }
    long long k = 0;
    std::vector<ActionIndex> avec(players.n, 0);
    for (long long idx = 0; idx < prod; ++idx) {
      long long rem = idx;
      std::vector<std::string> key(ms.size());
      for (int j = static_cast<int>(ms.size()) - 1; j >= 0; --j) {
        PlayerId i = ms[j];
        ActionIndex a = static_cast<ActionIndex>(rem % acts[i].size());
        rem /= static_cast<long long>(acts[i].size());
        key[j] = acts[i][a];
      }
      auto it = sp.children.find(key);
      if (it == sp.children.end()) {
        std::string kk;
        for (const auto& s : key) kk += (kk.empty() ? "" : ",") + s;
        throw DanglingHistory("missing child for action vector " + kk);
      }
      stack.push_back({&it->second, kids[k++]});
    }
  }
  return b.finish();
}

std::vector<HistoryId> successors(const GameTree& g, HistoryId h) {
  return g.node(h).children;
}

std::vector<Rational> uniform_grid(const Rational& lo, const Rational& hi, const Rational& step) {
  if (!(step > Rational(0)) || hi < lo) throw GridError("bad grid bounds");
  std::vector<Rational> g;
  Rational v = lo;
  while (v <= hi) {
    g.push_back(v);
    v += step;
  }
  if (g.empty() || g.back() != hi) throw GridError("grid step does not land on upper bound");
  return g;
}

}  // namespace leakproof
