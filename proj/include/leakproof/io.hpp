#pragma once

#include <memory>
#include <optional>
#include <string>

#include "json.hpp"
#include "leakproof/auction.hpp"
#include "leakproof/checks.hpp"
#include "leakproof/game.hpp"
#include "leakproof/leakage.hpp"
#include "leakproof/solver.hpp"
#include "leakproof/strategy.hpp"

namespace leakproof {

using nlohmann::json;

// Game files: sections players/values/outcomes/tree (+ optional scf), or an
// `auction` section that rebuilds the tree from an AuctionSpec. All numbers
// are "num/den" or decimal strings.
json game_to_json(const GameTree& g, const std::optional<AuctionSpec>& spec = std::nullopt);
GameTree game_from_json(const json& doc, std::optional<AuctionSpec>* spec_out = nullptr);

json value_space_to_json(const ValueTypeSpace& v);
ValueTypeSpace value_space_from_json(const json& doc);

json auction_spec_to_json(const AuctionSpec& spec);
AuctionSpec auction_spec_from_json(const json& doc);

// Type spaces: either {"builtin": "minimal"|"zero"|"ck"|"nested", ...} or an
// explicit list of named types with observation sets and beliefs.
json space_to_json(const LeakageTypeSpace& space);
LeakageTypeSpace space_from_json(const json& doc, int players);

// No-leakage strategy profiles keyed by history path; leak-reactive entries
// carry a `leaks` object and a type name.
json default_profile_to_json(const GameTree& g, const DefaultProfile& s0);
DefaultProfile default_profile_from_json(const GameTree& g, const json& doc);

// Leak-aware profile: falls back to type "*" public entries where no
// specific cell matches.
StrategyProfileView profile_view_from_json(std::shared_ptr<const GameTree> g,
                                           const LeakageTypeSpace& space, const json& doc);

json report_to_json(const PropertyReport& rep);
json verify_report_to_json(const VerifyReport& rep);

// Deterministic single-line-per-check table for terminals.
std::string render_table(const PropertyReport& rep);

// Minimal CSV with standard quoting; parse/emit round-trip byte-exactly.
std::string csv_emit(const std::vector<std::vector<std::string>>& rows);
std::vector<std::vector<std::string>> csv_parse(const std::string& text);

json load_json_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& text);

}  // namespace leakproof
