#ifndef COLLAPSE_GAME_HPP
#define COLLAPSE_GAME_HPP

#include <cstddef>
#include <map>
#include <utility>

#include "collapse/bisim.hpp"
#include "collapse/tree.hpp"

namespace collapse {

enum class Player { I, II };

const char* player_name(Player p);

// A clopen game: moves trace a finite tree of positions. Positions of
// even length are Player I's to move, odd length Player II's. A match is
// a terminal position; Player I wins it when its length is odd,
// otherwise Player II wins.
struct GameTree {
  FiniteTree tree;
};

// One player's moves: position index to the chosen child index. Valid
// when every mapped value is an immediate successor and every reachable
// non-terminal position of the owner's parity is mapped.
struct Strategy {
  std::map<std::size_t, std::size_t> moves;
};

struct SolveResult {
  Player winner;
  Strategy strategy;
};

// Backward induction. Returns the root winner and a witnessing strategy
// for that player, total on all of the winner's non-terminal positions;
// among winning moves the structurally least child is chosen.
SolveResult solve(const GameTree& g);

// The terminal position reached from the root when Player I follows sI
// and Player II follows sII. Throws UsageError on a missing or invalid
// move at a reached position.
std::size_t play(const GameTree& g, const Strategy& sI, const Strategy& sII);

// The move-history tree of the pairwise bisimulation game on t for the
// given pair: Player I extends either component by a child, Player II
// answers on the other component; a player who cannot move loses, which
// the length parity convention reproduces. Edge labels are "L<k>" and
// "R<k>" with k the underlying tree node reached. Guarded by a node
// budget (SizeLimitError).
GameTree bisimulation_game(const FiniteTree& t,
                           std::pair<std::size_t, std::size_t> pair);

// The full game: Player I opens with "p:<i>:<j>" naming a pair, Player
// II answers "first" or "second" choosing a side, and the pairwise game
// for the pair follows. Under "first" the roles inside the pairwise game
// are swapped, realized by one forced bookkeeping move "swap" so that
// position length parity keeps assigning moves and wins correctly.
GameTree full_bisimulation_game(const FiniteTree& t);

// Checks that s wins the full bisimulation game on t for Player II, then
// extracts the pairs at which s elects to play second. The result is a
// bisimulation on t containing the root pair.
NodeRelation bisim_from_strategy(const FiniteTree& t, const Strategy& s);

}  // namespace collapse

#endif
