#include "collapse/game.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace collapse {

namespace {

constexpr std::size_t kGameNodeBudget = 400000;

Player owner_of(std::size_t depth) {
  return depth % 2 == 0 ? Player::I : Player::II;
}

Player other(Player p) { return p == Player::I ? Player::II : Player::I; }

// Emits the move histories of the pairwise game for (i, j) below prefix.
// On Player I's turn either component may advance to a child; the reply
// advances the other component. A side without children contributes no
// moves, so "cannot move" states are exactly the terminal histories.
void grow_pair_game(const FiniteTree& t, std::size_t i, std::size_t j,
                    FiniteTree::Seq& prefix,
                    std::vector<FiniteTree::Seq>& out) {
  if (out.size() > kGameNodeBudget)
    throw SizeLimitError("bisimulation game exceeds the node budget");
  out.push_back(prefix);
  auto advance = [&](std::size_t lead, std::size_t trail, bool lead_left) {
    for (std::size_t c : t.children(lead)) {
      prefix.push_back((lead_left ? "L" : "R") + std::to_string(c));
      out.push_back(prefix);
      for (std::size_t d : t.children(trail)) {
        prefix.push_back((lead_left ? "R" : "L") + std::to_string(d));
        if (lead_left)
          grow_pair_game(t, c, d, prefix, out);
        else
          grow_pair_game(t, d, c, prefix, out);
        prefix.pop_back();
      }
      prefix.pop_back();
    }
  };
  advance(i, j, true);
  advance(j, i, false);
}

}  // namespace

const char* player_name(Player p) { return p == Player::I ? "I" : "II"; }

SolveResult solve(const GameTree& g) {
  std::size_t n = g.tree.size();
  std::vector<Player> win(n, Player::II);
  // Children sort after their parent, so a reverse sweep is bottom-up.
  for (std::size_t k = n; k-- > 0;) {
    std::size_t depth = g.tree.node(k).size();
    if (g.tree.terminal(k)) {
      win[k] = depth % 2 == 1 ? Player::I : Player::II;
      continue;
    }
    Player mover = owner_of(depth);
    win[k] = other(mover);
    for (std::size_t c : g.tree.children(k))
      if (win[c] == mover) {
        win[k] = mover;
        break;
      }
  }
  SolveResult res;
  res.winner = win[g.tree.root()];
  for (std::size_t k = 0; k < n; ++k) {
    if (g.tree.terminal(k) || owner_of(g.tree.node(k).size()) != res.winner)
      continue;
    std::size_t choice = g.tree.children(k).front();
    for (std::size_t c : g.tree.children(k))
      if (win[c] == res.winner) {
        choice = c;
        break;
      }
    res.strategy.moves[k] = choice;
  }
  return res;
}

std::size_t play(const GameTree& g, const Strategy& sI, const Strategy& sII) {
  std::size_t pos = g.tree.root();
  while (!g.tree.terminal(pos)) {
    const Strategy& s = owner_of(g.tree.node(pos).size()) == Player::I ? sI : sII;
    auto it = s.moves.find(pos);
    if (it == s.moves.end())
      throw UsageError("strategy has no move at a reached position");
    const auto& kids = g.tree.children(pos);
    if (std::find(kids.begin(), kids.end(), it->second) == kids.end())
      throw UsageError("strategy move is not an immediate successor");
    pos = it->second;
  }
  return pos;
}

GameTree bisimulation_game(const FiniteTree& t,
                           std::pair<std::size_t, std::size_t> pair) {
  if (pair.first >= t.size() || pair.second >= t.size())
    throw UsageError("pair node out of range");
  std::vector<FiniteTree::Seq> out;
  FiniteTree::Seq prefix;
  grow_pair_game(t, pair.first, pair.second, prefix, out);
  return GameTree{FiniteTree::from_nodes(std::move(out))};
}

GameTree full_bisimulation_game(const FiniteTree& t) {
  std::vector<FiniteTree::Seq> out;
  out.push_back({});
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j) {
      FiniteTree::Seq prefix{"p:" + std::to_string(i) + ":" +
                             std::to_string(j)};
      out.push_back(prefix);
      // Playing first makes Player II move on the inner even turns; the
      // forced "swap" move shifts the inner game by one length unit so
      // the global parity convention still hands those turns to II and
      // scores inner matches for the right side.
      prefix.push_back("first");
      out.push_back(prefix);
      prefix.push_back("swap");
      grow_pair_game(t, i, j, prefix, out);
      prefix.pop_back();
      prefix.pop_back();
      prefix.push_back("second");
      grow_pair_game(t, i, j, prefix, out);
      prefix.pop_back();
    }
  return GameTree{FiniteTree::from_nodes(std::move(out))};
}

NodeRelation bisim_from_strategy(const FiniteTree& t, const Strategy& s) {
  GameTree g = full_bisimulation_game(t);
  // s must beat every Player I behaviour: follow s at odd positions,
  // branch over all moves at even ones, and demand even terminal length.
  std::vector<std::size_t> stack{g.tree.root()};
  while (!stack.empty()) {
    std::size_t pos = stack.back();
    stack.pop_back();
    if (g.tree.terminal(pos)) {
      if (g.tree.node(pos).size() % 2 == 1)
        throw UsageError("strategy is not winning for the second player");
      continue;
    }
    if (owner_of(g.tree.node(pos).size()) == Player::I) {
      for (std::size_t c : g.tree.children(pos)) stack.push_back(c);
      continue;
    }
    auto it = s.moves.find(pos);
    if (it == s.moves.end())
      throw UsageError("strategy has no move at a reached position");
    const auto& kids = g.tree.children(pos);
    if (std::find(kids.begin(), kids.end(), it->second) == kids.end())
      throw UsageError("strategy move is not an immediate successor");
    stack.push_back(it->second);
  }
  NodeRelation out;
  for (std::size_t p : g.tree.children(g.tree.root())) {
    const std::string& label = g.tree.node(p).back();
    std::size_t c1 = label.find(':');
    std::size_t c2 = label.find(':', c1 + 1);
    std::size_t i = std::stoul(label.substr(c1 + 1, c2 - c1 - 1));
    std::size_t j = std::stoul(label.substr(c2 + 1));
    if (g.tree.node(s.moves.at(p)).back() == "second") out.insert({i, j});
  }
  return out;
}

}  // namespace collapse
