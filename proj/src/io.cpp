#include "leakproof/io.hpp"

#include <fstream>
#include <sstream>

namespace leakproof {

namespace {

std::string num(const Rational& r) { return r.str(); }
Rational rat(const json& j) { return Rational::parse(j.get<std::string>()); }

json rvec(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(num(x));
  return a;
}

std::vector<Rational> rvec_from(const json& a) {
  std::vector<Rational> v;
  for (const auto& x : a) v.push_back(rat(x));
  return v;
}

json tree_to_json(const GameTree& g, HistoryId h) {
  json node;
  if (g.is_terminal(h)) {
    node["outcome"] = g.outcomes().label(g.node(h).outcome);
    return node;
  }
  json movers = json::object();
  for (PlayerId i : g.movers(h)) {
    json acts = json::array();
    for (int a = 0; a < g.action_count(h, i); ++a) acts.push_back(g.action_label(h, i, a));
    movers[std::to_string(i)] = acts;
  }
  node["movers"] = movers;
  json children = json::object();
  for (HistoryId c : g.node(h).children) {
    std::string key;
    for (PlayerId i : g.movers(h)) {
      if (!key.empty()) key += ",";
      key += g.action_label(h, i, g.node(c).incoming[i]);
    }
    children[key] = tree_to_json(g, c);
  }
  node["children"] = children;
  return node;
}

StageSpec stage_from_json(const json& node) {
  StageSpec sp;
  if (node.contains("outcome")) {
    sp.outcome = node["outcome"].get<std::string>();
    return sp;
  }
  for (const auto& [who, acts] : node.at("movers").items()) {
    std::vector<std::string> labels;
    for (const auto& a : acts) labels.push_back(a.get<std::string>());
    sp.actions[std::stoi(who)] = labels;
  }
  for (const auto& [key, child] : node.at("children").items()) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : key) {
      if (c == ',') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);
    sp.children[parts] = stage_from_json(child);
  }
  return sp;
}

}  // namespace

json value_space_to_json(const ValueTypeSpace& v) {
  json a = json::array();
  for (int i = 0; i < v.players(); ++i) {
    a.push_back(json{{"grid", rvec(v.grid(i))}, {"prior", rvec(v.prior(i))}});
  }
  return a;
}

ValueTypeSpace value_space_from_json(const json& doc) {
  std::vector<std::vector<Rational>> grids, priors;
  for (const auto& p : doc) {
    grids.push_back(rvec_from(p.at("grid")));
    priors.push_back(rvec_from(p.at("prior")));
  }
  return ValueTypeSpace(grids, priors);
}

json auction_spec_to_json(const AuctionSpec& spec) {
  json doc;
  doc["format"] = format_name(spec.format);
  doc["bidders"] = spec.bidders;
  doc["grid"] = rvec(spec.bid_grid);
  doc["reserve"] = num(spec.reserve);
  doc["tie_break"] = tie_break_name(spec.tie);
  doc["non_anonymous"] = spec.non_anonymous;
  doc["favored"] = spec.favored;
  doc["values"] = value_space_to_json(spec.values);
  return doc;
}

AuctionSpec auction_spec_from_json(const json& doc) {
  AuctionSpec spec;
  std::string f = doc.at("format").get<std::string>();
  if (f == "first_price") spec.format = AuctionFormat::first_price;
  else if (f == "second_price") spec.format = AuctionFormat::second_price;
  else if (f == "dutch") spec.format = AuctionFormat::dutch;
  else if (f == "english") spec.format = AuctionFormat::english;
  else throw ParseError("unknown auction format: " + f);
  spec.bidders = doc.at("bidders").get<int>();
  if (doc.contains("grid") && doc["grid"].is_array()) {
    spec.bid_grid = rvec_from(doc["grid"]);
  } else {
    const json& gr = doc.at("grid");
    spec.bid_grid = uniform_grid(rat(gr.at("min")), rat(gr.at("max")), rat(gr.at("step")));
  }
  spec.reserve = rat(doc.at("reserve"));
  std::string t = doc.at("tie_break").get<std::string>();
  if (t == "uniform_random") spec.tie = TieBreak::uniform_random;
  else if (t == "no_allocation") spec.tie = TieBreak::no_allocation;
  else if (t == "fast_wins") spec.tie = TieBreak::fast_wins;
  else throw ParseError("unknown tie break: " + t);
  spec.non_anonymous = doc.value("non_anonymous", false);
  spec.favored = doc.value("favored", -1);
  spec.values = value_space_from_json(doc.at("values"));
  return spec;
}

json game_to_json(const GameTree& g, const std::optional<AuctionSpec>& spec) {
  json doc;
  doc["players"] = json{{"n", g.players().n}, {"seller", g.players().seller}};
  doc["values"] = value_space_to_json(g.values());
  if (spec) {
    doc["auction"] = auction_spec_to_json(*spec);
    return doc;
  }
  json labels = json::array();
  for (int x = 0; x < g.outcomes().size(); ++x) labels.push_back(g.outcomes().label(x));
  json outcomes;
  outcomes["labels"] = labels;
  if (g.outcomes().is_quasilinear()) {
    json payloads = json::object();
    for (int x = 0; x < g.outcomes().size(); ++x) {
      const auto& a = g.outcomes().auction(x);
      payloads[g.outcomes().label(x)] = json{{"q", rvec(a.q)}, {"m", rvec(a.m)}};
    }
    outcomes["auction_payloads"] = payloads;
  } else {
    json util = json::object();
    for (int x = 0; x < g.outcomes().size(); ++x) {
      json per_player = json::array();
      for (PlayerId i = 0; i < g.players().n; ++i) {
        json row = json::array();
        for (long long fl = 0; fl < g.values().profile_count(); ++fl) {
          row.push_back(num(g.utility(i, x, g.values().profile_at(fl))));
        }
        per_player.push_back(row);
      }
      util[g.outcomes().label(x)] = per_player;
    }
    outcomes["utilities"] = util;
  }
  doc["outcomes"] = outcomes;
  doc["tree"] = tree_to_json(g, g.root());
  if (g.scf()) {
    json f = json::array();
    for (OutcomeId x : g.scf()->outcome_by_theta) f.push_back(g.outcomes().label(x));
    doc["scf"] = f;
  }
  return doc;
}

GameTree game_from_json(const json& doc, std::optional<AuctionSpec>* spec_out) {
  if (doc.contains("auction")) {
    AuctionSpec spec = auction_spec_from_json(doc["auction"]);
    if (spec_out) *spec_out = spec;
    return build_auction(spec);
  }
  PlayerSet players{doc.at("players").at("n").get<int>(),
                    doc.at("players").value("seller", false)};
  ValueTypeSpace values = value_space_from_json(doc.at("values"));
  const json& oc = doc.at("outcomes");
  std::vector<std::string> labels;
  for (const auto& l : oc.at("labels")) labels.push_back(l.get<std::string>());
  OutcomeSpace outcomes = OutcomeSpace::table({}, {});
  if (oc.contains("auction_payloads")) {
    std::vector<AuctionOutcome> payloads;
    for (const auto& l : labels) {
      const json& p = oc["auction_payloads"].at(l);
      payloads.push_back(AuctionOutcome{rvec_from(p.at("q")), rvec_from(p.at("m"))});
    }
    outcomes = OutcomeSpace::quasilinear(labels, payloads);
  } else {
    std::vector<std::vector<std::vector<Rational>>> util(
        players.n, std::vector<std::vector<Rational>>(labels.size()));
    for (size_t x = 0; x < labels.size(); ++x) {
      const json& per_player = oc.at("utilities").at(labels[x]);
      for (PlayerId i = 0; i < players.n; ++i) util[i][x] = rvec_from(per_player.at(i));
    }
    outcomes = OutcomeSpace::table(labels, util);
  }
  StageSpec root = stage_from_json(doc.at("tree"));
  std::optional<SocialChoiceFunction> f;
  if (doc.contains("scf")) {
    SocialChoiceFunction scf;
    for (const auto& l : doc["scf"]) {
      OutcomeId x = outcomes.find(l.get<std::string>());
      if (x < 0) throw ParseError("scf references unknown outcome " + l.get<std::string>());
      scf.outcome_by_theta.push_back(x);
    }
    f = scf;
  }
  if (spec_out) spec_out->reset();
  return build_game(players, values, outcomes, root, f);
}

json space_to_json(const LeakageTypeSpace& space) {
  json doc;
  doc["name"] = space.name();
  json per_player = json::array();
  for (PlayerId i = 0; i < space.players(); ++i) {
    json types = json::array();
    for (int t = 0; t < space.count(i); ++t) {
      const LeakageType& lt = space.type(i, t);
      json obs = json::array();
      for (PlayerId j : lt.signature) obs.push_back(j);
      json belief = json::array();
      for (const auto& b : lt.belief) {
        json atom;
        atom["w"] = num(b.weight);
        atom["ranks"] = b.order.rank;
        json opp = json::array();
        for (PlayerId j = 0; j < space.players(); ++j) {
          opp.push_back(j == i ? "" : space.type(j, b.opp_types[j]).name);
        }
        atom["opp"] = opp;
        belief.push_back(atom);
      }
      types.push_back(json{{"name", lt.name}, {"observes", obs}, {"belief", belief}});
    }
    per_player.push_back(types);
  }
  doc["types"] = per_player;
  return doc;
}

LeakageTypeSpace space_from_json(const json& doc, int players) {
  if (doc.contains("builtin")) {
    std::string b = doc["builtin"].get<std::string>();
    if (b == "minimal") return minimal_type_space(players);
    if (b == "zero") return common_knowledge_space(LeakageOrder::all_equal(players), "zero");
    if (b == "ck") {
      LeakageOrder order{doc.at("ranks").get<std::vector<int>>()};
      return common_knowledge_space(order, doc.value("name", ""));
    }
    if (b == "nested") {
      LeakageOrder order{doc.at("ranks").get<std::vector<int>>()};
      std::vector<LeakageOrder> cls;
      for (const auto& r : doc.at("class_orders")) cls.push_back({r.get<std::vector<int>>()});
      return nested_type_space(order, cls);
    }
    throw ParseError("unknown builtin space: " + b);
  }
  // Explicit types: two passes so beliefs can reference names.
  const json& per_player = doc.at("types");
  std::vector<std::vector<std::string>> names(players);
  for (PlayerId i = 0; i < players; ++i) {
    for (const auto& t : per_player.at(i)) names[i].push_back(t.at("name").get<std::string>());
  }
  auto find_name = [&](PlayerId i, const std::string& n) {
    for (size_t k = 0; k < names[i].size(); ++k) {
      if (names[i][k] == n) return static_cast<int>(k);
    }
    return -1;
  };
  std::vector<std::vector<LeakageType>> types(players);
  for (PlayerId i = 0; i < players; ++i) {
    for (const auto& t : per_player.at(i)) {
      LeakageType lt;
      lt.name = t.at("name").get<std::string>();
      for (const auto& j : t.at("observes")) lt.signature.insert(j.get<int>());
      for (const auto& b : t.at("belief")) {
        BeliefAtom atom;
        atom.weight = rat(b.at("w"));
        atom.order = LeakageOrder{b.at("ranks").get<std::vector<int>>()};
        atom.opp_types.assign(players, -1);
        for (PlayerId j = 0; j < players; ++j) {
          if (j == i) continue;
          std::string n = b.at("opp").at(j).get<std::string>();
          atom.opp_types[j] = find_name(j, n);
        }
        lt.belief.push_back(atom);
      }
      types[i].push_back(lt);
    }
  }
  return LeakageTypeSpace(doc.value("name", "custom"), types);
}

json default_profile_to_json(const GameTree& g, const DefaultProfile& s0) {
  json cells = json::array();
  for (PlayerId i = 0; i < g.players().n; ++i) {
    for (HistoryId h : s0.histories(i)) {
      for (ValueIndex t = 0; t < g.values().count(i); ++t) {
        if (!s0.defined(i, t, h)) continue;
        const Dist& d = s0.at(i, t, h);
        json dist = json::object();
        for (size_t a = 0; a < d.size(); ++a) {
          if (!d[a].is_zero()) dist[g.action_label(h, i, static_cast<int>(a))] = num(d[a]);
        }
        cells.push_back(json{{"player", i},
                             {"value", num(g.values().value(i, t))},
                             {"type", "*"},
                             {"history", g.history_key(h)},
                             {"dist", dist}});
      }
    }
  }
  return json{{"profile", cells}};
}

namespace {

ValueIndex value_index_of(const GameTree& g, PlayerId i, const std::string& s) {
  Rational v = Rational::parse(s);
  for (ValueIndex t = 0; t < g.values().count(i); ++t) {
    if (g.values().value(i, t) == v) return t;
  }
  throw ParseError("value " + s + " not on player " + std::to_string(i) + "'s grid");
}

Dist dist_from_json(const GameTree& g, HistoryId h, PlayerId i, const json& dist) {
  Dist d(g.action_count(h, i), Rational(0));
  for (const auto& [label, w] : dist.items()) {
    bool found = false;
    for (int a = 0; a < g.action_count(h, i); ++a) {
      if (g.action_label(h, i, a) == label) {
        d[a] = Rational::parse(w.get<std::string>());
        found = true;
      }
    }
    if (!found) throw ParseError("unknown action label " + label);
  }
  return d;
}

}  // namespace

DefaultProfile default_profile_from_json(const GameTree& g, const json& doc) {
  DefaultProfile s0(g.players().n);
  for (const auto& cell : doc.at("profile")) {
    PlayerId i = cell.at("player").get<int>();
    HistoryId h = g.find_history(cell.at("history").get<std::string>());
    if (h < 0) throw UnknownHistory(cell.at("history").get<std::string>());
    ValueIndex t = value_index_of(g, i, cell.at("value").get<std::string>());
    s0.set(i, t, h, dist_from_json(g, h, i, cell.at("dist")));
  }
  return s0;
}

StrategyProfileView profile_view_from_json(std::shared_ptr<const GameTree> g,
                                           const LeakageTypeSpace& space, const json& doc) {
  StrategyTable table(g->players().n);
  for (const auto& cell : doc.at("profile")) {
    PlayerId i = cell.at("player").get<int>();
    HistoryId h = g->find_history(cell.at("history").get<std::string>());
    if (h < 0) throw UnknownHistory(cell.at("history").get<std::string>());
    ValueIndex t = value_index_of(*g, i, cell.at("value").get<std::string>());
    Dist d = dist_from_json(*g, h, i, cell.at("dist"));
    std::string type = cell.value("type", "*");
    std::vector<int> ltypes;
    if (type == "*") {
      for (int k = 0; k < space.count(i); ++k) ltypes.push_back(k);
    } else {
      int k = space.find_type(i, type);
      if (k < 0) throw ParseError("unknown leakage type " + type);
      ltypes.push_back(k);
    }
    for (int lt : ltypes) {
      if (cell.contains("leaks")) {
        PrivateHistory ph{h, {}};
        for (const auto& [who, label] : cell["leaks"].items()) {
          PlayerId j = std::stoi(who);
          bool found = false;
          for (int a = 0; a < g->action_count(h, j); ++a) {
            if (g->action_label(h, j, a) == label.get<std::string>()) {
              ph.leaked.push_back({j, a});
              found = true;
            }
          }
          if (!found) throw ParseError("unknown leaked action");
        }
        std::sort(ph.leaked.begin(), ph.leaked.end());
        table.set(i, t, lt, ph.key(*g), d);
      } else {
        table.set_public(i, t, lt, h, d);
      }
    }
  }
  return table.view(g, "file-profile");
}

json report_to_json(const PropertyReport& rep) {
  json doc;
  doc["property"] = rep.property;
  doc["subject"] = rep.subject;
  doc["pass"] = rep.pass;
  json subs = json::array();
  for (const auto& s : rep.subs) {
    subs.push_back(json{{"key", s.key}, {"pass", s.pass}, {"note", s.note}});
  }
  doc["subs"] = subs;
  doc["metrics"] = rep.metrics;
  doc["notes"] = rep.notes;
  if (rep.witness) {
    const Witness& w = *rep.witness;
    json jw;
    jw["space"] = w.space;
    jw["pair"] = w.pair_index;
    jw["player"] = w.player;
    jw["theta"] = w.theta;
    jw["ltype"] = w.ltype;
    jw["history"] = w.history;
    jw["gain"] = w.gain.str();
    jw["note"] = w.note;
    json plan = json::object();
    for (const auto& [k, a] : w.plan.action_at) plan[k] = a;
    jw["deviation"] = plan;
    doc["witness"] = jw;
  }
  return doc;
}

json verify_report_to_json(const VerifyReport& rep) {
  json doc;
  doc["pass"] = rep.pass;
  doc["on_path_pass"] = rep.on_path_pass;
  doc["eps"] = rep.eps.str();
  doc["cells"] = rep.cells;
  doc["max_gain"] = rep.max_gain.str();
  doc["max_on_path_gain"] = rep.max_on_path_gain.str();
  json v = json::array();
  for (const auto& c : rep.violations) {
    json e;
    e["pair"] = c.pair_index;
    e["player"] = c.player;
    e["theta"] = c.theta;
    e["ltype"] = c.ltype;
    e["history"] = c.history;
    e["on_path"] = c.on_path;
    e["prescribed"] = c.prescribed.str();
    e["best"] = c.best.str();
    e["gain"] = c.gain().str();
    json plan = json::object();
    for (const auto& [k, a] : c.witness.action_at) plan[k] = a;
    e["deviation"] = plan;
    v.push_back(e);
  }
  doc["violations"] = v;
  return doc;
}

std::string render_table(const PropertyReport& rep) {
  std::ostringstream os;
  os << (rep.pass ? "[PASS] " : "[FAIL] ") << rep.property;
  if (!rep.subject.empty()) os << " (" << rep.subject << ")";
  os << "\n";
  for (const auto& s : rep.subs) {
    os << "  " << (s.pass ? "pass  " : "FAIL  ") << s.key;
    if (!s.note.empty()) os << "  -- " << s.note;
    os << "\n";
  }
  for (const auto& [k, v] : rep.metrics) os << "  metric " << k << " = " << v << "\n";
  for (const auto& n : rep.notes) os << "  note: " << n << "\n";
  if (rep.witness) {
    const Witness& w = *rep.witness;
    os << "  witness: space=" << w.space << " pair=" << w.pair_index << " player=" << w.player
       << " theta=" << w.theta << " ltype=" << w.ltype << " history='" << w.history
       << "' gain=" << w.gain.str();
    if (!w.note.empty()) os << " (" << w.note << ")";
    os << "\n";
  }
  return os.str();
}

namespace {

std::string csv_escape(const std::string& cell) {
  bool needs = cell.find_first_of(",\"\n") != std::string::npos;
  if (!needs) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  return out + "\"";
}

}  // namespace

std::string csv_emit(const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) os << ",";
      os << csv_escape(row[i]);
    }
    os << "\n";
  }
  return os.str();
}

std::vector<std::vector<std::string>> csv_parse(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  for (size_t k = 0; k < text.size(); ++k) {
    char c = text[k];
    if (quoted) {
      if (c == '"' && k + 1 < text.size() && text[k + 1] == '"') {
        cell += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(cell);
      cell.clear();
    } else if (c == '\n') {
      row.push_back(cell);
      cell.clear();
      rows.push_back(row);
      row.clear();
    } else {
      cell += c;
    }
  }
  if (!cell.empty() || !row.empty()) {
    row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.is_open()) throw ParseError("cannot open " + path);
  json doc;
  in >> doc;
  return doc;
}

void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out.is_open()) throw ParseError("cannot write " + path);
  out << text;
}

}  // namespace leakproof
