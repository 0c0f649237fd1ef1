#pragma once

#include "leakproof/game.hpp"
#include "leakproof/strategy.hpp"

namespace leakproof {

struct PruneResult {
  GameTree tree;
  std::vector<HistoryId> original_of;  // pruned node id -> id in the source tree
  DefaultProfile restricted;           // s0 re-keyed onto the pruned tree
};

// Subtree of histories reachable under s0 for some value profile, with
// degenerate stages (every mover down to one surviving action) collapsed.
PruneResult prune(const GameTree& g, const DefaultProfile& s0);

// True iff every history of g is reachable under s0, i.e. prune would return
// the tree unchanged.
bool is_pruned(const GameTree& g, const DefaultProfile& s0);

}  // namespace leakproof
