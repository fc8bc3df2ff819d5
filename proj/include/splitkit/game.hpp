#pragma once

// The splitting game: Split and Skew alternately claim elements of [k]; Split
// wins iff her claimed set splits every member of the board.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "splitkit/setcore.hpp"

namespace splitkit {

using GameBoard = Family;

enum class Player { Split, Skew };

constexpr Player other(Player p) { return p == Player::Split ? Player::Skew : Player::Split; }
std::string_view to_string(Player p);
/// Accepts "split"/"skew" in any letter case.
std::optional<Player> parse_player(std::string_view text);

class GameState {
 public:
  GameState() = default;
  /// Fresh game. Throws ContractViolation for k > 64.
  GameState(GameBoard board, Player first);
  /// Validates disjointness and alternation.
  static GameState from_claims(GameBoard board, Player first, SubsetMask split_claimed, SubsetMask skew_claimed);

  const GameBoard& board() const { return board_; }
  unsigned k() const { return board_.k(); }
  Player first() const { return first_; }
  SubsetMask split_claimed() const { return {board_.k(), split_}; }
  SubsetMask skew_claimed() const { return {board_.k(), skew_}; }
  std::uint64_t split_bits() const { return split_; }
  std::uint64_t skew_bits() const { return skew_; }
  std::uint64_t free_bits() const { return low_bits(board_.k()) & ~(split_ | skew_); }

  Player to_move() const;
  bool over() const { return free_bits() == 0; }
  /// Unclaimed elements, ascending.
  std::vector<unsigned> legal_moves() const;
  /// Throws IllegalMove for a claimed or out-of-range element, or a finished game.
  GameState apply_move(unsigned element) const;
  /// Winner once every element is claimed.
  std::optional<Player> outcome() const;
  /// After a Skew win, the first member Split's set fails to split.
  std::optional<std::size_t> unsplit_member() const;

  friend bool operator==(const GameState&, const GameState&) = default;

 private:
  GameBoard board_;
  Player first_ = Player::Split;
  std::uint64_t split_ = 0;
  std::uint64_t skew_ = 0;
};

/// Replaces every Venn region by its parity, laid out as family_from_regions. n <= 8.
GameBoard reduce_board(const GameBoard& board);

struct Solution {
  Player winner = Player::Split;
  /// Least winning move for the player to move, else the least unclaimed
  /// element; empty when nothing is left to claim.
  std::optional<unsigned> principal;
};

struct SolveOptions {
  /// Raises the solver limit from 14 to 16 elements.
  bool extended = false;
};

/// Solver for one board and first mover. Positions share a memo table, so a
/// session can query many positions cheaply. Not thread-safe.
class GameSolver {
 public:
  /// Throws CapacityError above the solver limit.
  GameSolver(const GameBoard& board, Player first, const SolveOptions& options = {});
  ~GameSolver();
  GameSolver(GameSolver&&) noexcept;
  GameSolver& operator=(GameSolver&&) noexcept;

  /// The state must be on this solver's board with the same first mover.
  Solution solve(const GameState& state);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Perfect-play winner from the opening position. Boards above the solver
/// limit are first reduced; the principal move is then carried back to the
/// original labels.
Solution solve_game(const GameBoard& board, Player first, const SolveOptions& options = {});

/// Perfect-play winner and principal move from an arbitrary position.
Solution solve_state(const GameState& state, const SolveOptions& options = {});

/// Throws ContractViolation on a finished game.
unsigned best_move(const GameState& state, const SolveOptions& options = {});

struct Pairing {
  Player player = Player::Split;
  /// 1-indexed, each pair ascending, pairs ordered by first element.
  std::vector<std::pair<unsigned, unsigned>> pairs;
  std::string to_string() const;
};

/// Brute-force check that every transversal splits (Split) or fails to split
/// (Skew) the board. Throws ContractViolation for overlapping or out-of-range pairs. k <= 24.
bool is_valid_pairing(const GameBoard& board, const Pairing& pairing);

/// First valid pairing in search order, if any. k <= 13.
std::optional<Pairing> find_pairing_strategy(const GameBoard& board, Player player);

struct CensusEntry {
  RegionVector regions;
  GameBoard board;
  Player winner;
};

struct CensusResult {
  unsigned n = 0;
  std::uint64_t total = 0;
  std::uint64_t split_wins = 0;
  std::vector<CensusEntry> entries;
  /// "split_wins/total" in lowest terms.
  std::string fraction() const;
};

/// All boards with 0 or 1 point in each nonzero Venn region of n sets, solved
/// for both first movers. Throws std::logic_error if some winner depends on who
/// moves first. 1 <= n <= 3.
CensusResult census(unsigned n);

/// Maximal axis-parallel lines of a grid, cells numbered row-major from 1
/// (last coordinate fastest). Lines along the last axis come first. Diagonals
/// only for square two-dimensional grids.
GameBoard grid_board(const std::vector<unsigned>& dims, bool diagonals = false);

/// B_i = {i, i+1, ..., i+width-1} mod k, i = 1..k.
GameBoard cyclic_board(unsigned k, unsigned width);

}  // namespace splitkit
