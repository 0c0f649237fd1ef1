#pragma once

#include <functional>
#include <memory>

#include "leakproof/game.hpp"
#include "leakproof/leakage.hpp"
#include "leakproof/solver.hpp"
#include "leakproof/strategy.hpp"

namespace leakproof {

enum class AuctionFormat { first_price, second_price, dutch, english };
enum class TieBreak { uniform_random, no_allocation, fast_wins };

std::string format_name(AuctionFormat f);
std::string tie_break_name(TieBreak t);

// Single-object auction on a finite bid/clock grid. Static formats offer
// "pass" plus every grid level at or above the reserve; clock formats tick
// across those levels (descending for dutch, ascending for english).
struct AuctionSpec {
  AuctionFormat format = AuctionFormat::second_price;
  int bidders = 2;
  std::vector<Rational> bid_grid;  // strictly increasing
  Rational reserve = Rational(0);
  TieBreak tie = TieBreak::uniform_random;
  bool non_anonymous = false;  // must be set for fast_wins fixtures
  PlayerId favored = -1;       // fast_wins tie winner
  ValueTypeSpace values;

  std::vector<Rational> levels() const;  // grid points >= reserve
};

GameTree build_auction(const AuctionSpec& spec);

// Myerson machinery -----------------------------------------------------

struct VirtualValueTable {
  std::vector<std::vector<Rational>> v;  // [bidder][grid index]
  bool increasing() const;
};

VirtualValueTable virtual_values(const ValueTypeSpace& values);

// Allocation that maximizes expected virtual surplus: the good goes to a
// highest-virtual-value bidder when that value is nonnegative, split
// uniformly on ties, and stays with the seller otherwise. Independent of any
// leakage-type argument by construction.
std::vector<Rational> myerson_allocation(const VirtualValueTable& table,
                                         const ThetaProfile& theta);

Rational optimal_reserve(const ValueTypeSpace& values);  // AllNegative if none

// E[sum_i q^M_i(theta) v_i(theta_i)] under the value prior, exact.
Rational myerson_virtual_surplus(const ValueTypeSpace& values, const VirtualValueTable& table);

// Interim expectations and revenue --------------------------------------

struct InterimQuantities {
  Rational q;  // expected allocation
  Rational m;  // expected payment
};

// Expected allocation and payment of player i at private history h, holding
// i to the continuation plan of pretended type (theta_hat, ltype_hat) while
// believing as true type ltype_true. The pretended leakage type must be
// weakly slower (its observation set contained in the true type's).
InterimQuantities interim_qm(const GameTree& g, const StrategyProfileView& profile,
                             const LeakageTypeSpace& space,
                             const LeakageTypeSpace::AdmissiblePair& pair, PlayerId i,
                             ValueIndex theta_hat, int ltype_hat, int ltype_true,
                             const PrivateHistory& h, bool require_on_path = true);

// Seller revenue under one leakage-type profile: expectation over values of
// the total payments, exact summation.
Rational revenue(const GameTree& g, const StrategyProfileView& profile,
                 const LeakageTypeSpace::AdmissiblePair& pair);

// Averages revenue over the space's common prior on admissible pairs.
Rational expected_revenue(const GameTree& g, const StrategyProfileView& profile,
                          const LeakageTypeSpace& space);

// Default equilibria -----------------------------------------------------

// Dominant truthful profiles for second-price and english; best-response
// sweeps to a fixed point for first-price and dutch. The result is not yet
// verified; callers run verify_equilibrium at their tolerance.
DefaultProfile auction_default_equilibrium(const GameTree& g, const AuctionSpec& spec,
                                           int max_sweeps = 60);

// Backward-induction equilibrium of a one-stage auction in which `fast`
// observes the other bidder's concurrent bid (two bidders only). Returns the
// full leakage-reactive profile plus the pieces for reporting.
struct LeaderFollowerEquilibrium {
  StrategyProfileView profile;
  std::vector<ActionIndex> leader_action;                 // per leader value index
  std::map<std::pair<ActionIndex, ValueIndex>, ActionIndex> follower_reaction;
};
LeaderFollowerEquilibrium leader_follower_equilibrium(std::shared_ptr<const GameTree> g,
                                                      const AuctionSpec& spec, PlayerId fast);

// Paranoid bidder: believes the opponent is faster and wins only when the
// opponent's value lies below the bid, so maximizes (theta - b) * F(b) over
// the bid grid subject to b >= reserve. Ties go to the lowest bid.
Rational paranoid_best_bid(const Rational& theta,
                           const std::function<Rational(const Rational&)>& cdf,
                           const std::vector<Rational>& bid_grid, const Rational& reserve);

}  // namespace leakproof
