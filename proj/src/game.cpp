#include "splitkit/game.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <numeric>
#include <stdexcept>

#include "splitkit/error.hpp"

namespace splitkit {

namespace {

constexpr unsigned kMaxSolveGround = 14;
constexpr unsigned kMaxExtendedSolveGround = 16;
constexpr unsigned kMaxPairingGround = 13;
constexpr unsigned kMaxReduceSets = 8;

unsigned popcount(std::uint64_t x) { return static_cast<unsigned>(std::popcount(x)); }

bool splits_all(std::span<const std::uint64_t> members, std::uint64_t a) {
  return std::all_of(members.begin(), members.end(), [&](std::uint64_t m) { return splits_bits(a, m); });
}

// Membership pattern of each element, one bit per member (n <= 64 members
// handled by comparing mask vectors).
std::vector<std::vector<bool>> membership(const GameBoard& board) {
  std::vector<std::vector<bool>> out(board.k(), std::vector<bool>(board.size()));
  for (std::size_t i = 0; i < board.size(); ++i) {
    for (unsigned e = 0; e < board.k(); ++e) out[e][i] = ((board.masks()[i] >> e) & 1U) != 0;
  }
  return out;
}

// Masks of elements sharing a membership pattern (the nonempty Venn regions,
// outside region included).
std::vector<std::uint64_t> interchangeable_classes(const GameBoard& board) {
  std::map<std::vector<bool>, std::uint64_t> classes;
  const auto rows = membership(board);
  for (unsigned e = 0; e < board.k(); ++e) classes[rows[e]] |= std::uint64_t{1} << e;
  std::vector<std::uint64_t> out;
  out.reserve(classes.size());
  for (const auto& [pattern, mask] : classes) out.push_back(mask);
  return out;
}

class Solver {
 public:
  Solver(const GameBoard& board, Player first)
      : members_(board.masks().begin(), board.masks().end()),
        first_(first),
        classes_(interchangeable_classes(board)),
        pow3_(board.k() + 1, 1) {
    for (unsigned e = 1; e <= board.k(); ++e) pow3_[e] = pow3_[e - 1] * 3;
    memo_.assign(pow3_[board.k()], kUnknown);
    full_ = low_bits(board.k());
  }

  Player mover(std::uint64_t split, std::uint64_t skew) const {
    const bool level = popcount(split) == popcount(skew);
    return level ? first_ : other(first_);
  }

  // Element choices worth trying: the least free element of each class, ascending.
  std::vector<unsigned> candidate_moves(std::uint64_t split, std::uint64_t skew) const {
    const std::uint64_t free = full_ & ~(split | skew);
    std::vector<unsigned> out;
    for (std::uint64_t c : classes_) {
      const std::uint64_t avail = c & free;
      if (avail != 0) out.push_back(static_cast<unsigned>(std::countr_zero(avail)));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::uint64_t index_of(std::uint64_t split, std::uint64_t skew) const {
    std::uint64_t idx = 0;
    for (unsigned e = 0; e + 1 < pow3_.size(); ++e) {
      if ((split >> e) & 1U) idx += pow3_[e];
      if ((skew >> e) & 1U) idx += 2 * pow3_[e];
    }
    return idx;
  }

  bool split_wins(std::uint64_t split, std::uint64_t skew, std::uint64_t idx) {
    std::uint8_t& slot = memo_[idx];
    if (slot != kUnknown) return slot == kSplitWin;
    bool result;
    if (auto settled = decided(split, skew)) {
      result = *settled == Player::Split;
    } else {
      const Player p = mover(split, skew);
      result = p == Player::Skew;
      const std::uint64_t free = full_ & ~(split | skew);
      for (std::uint64_t c : classes_) {
        const std::uint64_t avail = c & free;
        if (avail == 0) continue;
        const unsigned e = static_cast<unsigned>(std::countr_zero(avail));
        const std::uint64_t bit = std::uint64_t{1} << e;
        const bool child = p == Player::Split ? split_wins(split | bit, skew, idx + pow3_[e])
                                              : split_wins(split, skew | bit, idx + 2 * pow3_[e]);
        if (child == (p == Player::Split)) {
          result = child;
          break;
        }
      }
    }
    slot = result ? kSplitWin : kSkewWin;
    return result;
  }

 private:
  static constexpr std::uint8_t kUnknown = 0;
  static constexpr std::uint8_t kSplitWin = 1;
  static constexpr std::uint8_t kSkewWin = 2;

  // Winner once the remaining play can no longer change it.
  std::optional<Player> decided(std::uint64_t split, std::uint64_t skew) const {
    bool certain = true;
    for (std::uint64_t m : members_) {
      const SplitWindow w = split_window(popcount(m));
      const unsigned s = popcount(m & split);
      const unsigned x = popcount(m & skew);
      if (s > w.hi || x > w.hi) return Player::Skew;
      certain = certain && s >= w.lo && x >= w.lo;
    }
    if (certain) return Player::Split;
    return std::nullopt;
  }

  std::vector<std::uint64_t> members_;
  Player first_;
  std::vector<std::uint64_t> classes_;
  std::vector<std::uint64_t> pow3_;
  std::vector<std::uint8_t> memo_;
  std::uint64_t full_ = 0;
};

unsigned solve_limit(const SolveOptions& options) {
  return options.extended ? kMaxExtendedSolveGround : kMaxSolveGround;
}

}  // namespace

std::string_view to_string(Player p) { return p == Player::Split ? "Split" : "Skew"; }

std::optional<Player> parse_player(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "split") return Player::Split;
  if (lower == "skew") return Player::Skew;
  return std::nullopt;
}

GameState::GameState(GameBoard board, Player first) : board_(std::move(board)), first_(first) {}

GameState GameState::from_claims(GameBoard board, Player first, SubsetMask split_claimed, SubsetMask skew_claimed) {
  if (split_claimed.k() != board.k() || skew_claimed.k() != board.k()) {
    throw ContractViolation("claimed sets must live on the board's ground set");
  }
  if ((split_claimed.bits() & skew_claimed.bits()) != 0) throw ContractViolation("claimed sets overlap");
  const long diff = static_cast<long>(split_claimed.size()) - static_cast<long>(skew_claimed.size());
  const bool ok = first == Player::Split ? (diff == 0 || diff == 1) : (diff == 0 || diff == -1);
  if (!ok) throw ContractViolation("claim counts do not alternate from the first mover");
  GameState s(std::move(board), first);
  s.split_ = split_claimed.bits();
  s.skew_ = skew_claimed.bits();
  return s;
}

Player GameState::to_move() const { return popcount(split_) == popcount(skew_) ? first_ : other(first_); }

std::vector<unsigned> GameState::legal_moves() const { return SubsetMask(board_.k(), free_bits()).elements(); }

GameState GameState::apply_move(unsigned element) const {
  if (over()) throw IllegalMove("the game is over");
  if (element == 0 || element > board_.k()) {
    throw IllegalMove("element " + std::to_string(element) + " is not in [1, " + std::to_string(board_.k()) + "]");
  }
  const std::uint64_t bit = std::uint64_t{1} << (element - 1);
  if ((free_bits() & bit) == 0) throw IllegalMove("element " + std::to_string(element) + " is already claimed");
  GameState next = *this;
  if (to_move() == Player::Split) {
    next.split_ |= bit;
  } else {
    next.skew_ |= bit;
  }
  return next;
}

std::optional<Player> GameState::outcome() const {
  if (!over()) return std::nullopt;
  return splits_all(board_.masks(), split_) ? Player::Split : Player::Skew;
}

std::optional<std::size_t> GameState::unsplit_member() const {
  if (outcome() != Player::Skew) return std::nullopt;
  for (std::size_t i = 0; i < board_.size(); ++i) {
    if (!splits_bits(split_, board_.masks()[i])) return i;
  }
  return std::nullopt;
}

GameBoard reduce_board(const GameBoard& board) {
  if (board.size() > kMaxReduceSets) throw CapacityError("reduce_board supports at most 8 sets");
  RegionVector regions = venn_decompose(board).regions;
  for (std::size_t r = 0; r < regions.region_count(); ++r) regions[r] %= 2;
  return family_from_regions(regions);
}

struct GameSolver::Impl {
  GameBoard board;
  Player first;
  Solver solver;
};

GameSolver::GameSolver(const GameBoard& board, Player first, const SolveOptions& options) {
  const unsigned limit = solve_limit(options);
  if (board.k() > limit) {
    throw CapacityError("the game solver supports k <= " + std::to_string(limit) + ", got " +
                        std::to_string(board.k()));
  }
  impl_ = std::make_unique<Impl>(Impl{board, first, Solver(board, first)});
}

GameSolver::~GameSolver() = default;
GameSolver::GameSolver(GameSolver&&) noexcept = default;
GameSolver& GameSolver::operator=(GameSolver&&) noexcept = default;

Solution GameSolver::solve(const GameState& state) {
  if (!(state.board() == impl_->board) || state.first() != impl_->first) {
    throw ContractViolation("state does not belong to this solver's game");
  }
  Solver& solver = impl_->solver;
  const std::uint64_t split = state.split_bits();
  const std::uint64_t skew = state.skew_bits();
  Solution out;
  out.winner = solver.split_wins(split, skew, solver.index_of(split, skew)) ? Player::Split : Player::Skew;
  if (state.over()) return out;

  const Player p = state.to_move();
  for (unsigned e : solver.candidate_moves(split, skew)) {
    const GameState next = state.apply_move(e + 1);
    const bool child = solver.split_wins(next.split_bits(), next.skew_bits(),
                                         solver.index_of(next.split_bits(), next.skew_bits()));
    if (child == (p == Player::Split)) {
      out.principal = e + 1;
      break;
    }
  }
  if (!out.principal) out.principal = static_cast<unsigned>(std::countr_zero(state.free_bits())) + 1;
  return out;
}

Solution solve_state(const GameState& state, const SolveOptions& options) {
  return GameSolver(state.board(), state.first(), options).solve(state);
}

Solution solve_game(const GameBoard& board, Player first, const SolveOptions& options) {
  if (board.k() <= solve_limit(options)) return solve_state(GameState(board, first), options);

  const GameBoard reduced = reduce_board(board);
  if (reduced.k() > solve_limit(options)) {
    throw CapacityError("board has " + std::to_string(reduced.k()) + " elements after reduction; the solver supports " +
                        std::to_string(solve_limit(options)));
  }
  Solution out = solve_state(GameState(reduced, first), options);
  if (out.principal) {
    // Carry the move back to the least original element in the same Venn region.
    const auto reduced_rows = membership(reduced);
    const auto rows = membership(board);
    const auto& target = reduced_rows[*out.principal - 1];
    for (unsigned e = 0; e < board.k(); ++e) {
      if (rows[e] == target) {
        out.principal = e + 1;
        break;
      }
    }
  }
  return out;
}

unsigned best_move(const GameState& state, const SolveOptions& options) {
  if (state.over()) throw ContractViolation("best_move on a finished game");
  return *solve_state(state, options).principal;
}

std::string Pairing::to_string() const {
  std::string out = std::string(splitkit::to_string(player)) + " {";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i > 0) out += ", ";
    out += "{" + std::to_string(pairs[i].first) + "," + std::to_string(pairs[i].second) + "}";
  }
  return out + "}";
}

bool is_valid_pairing(const GameBoard& board, const Pairing& pairing) {
  const unsigned k = board.k();
  if (k > 24) throw CapacityError("is_valid_pairing enumerates 2^k subsets and supports k <= 24");
  std::uint64_t used = 0;
  for (const auto& [x, y] : pairing.pairs) {
    if (x == 0 || y == 0 || x > k || y > k || x == y) throw ContractViolation("pair out of range");
    const std::uint64_t bits = (std::uint64_t{1} << (x - 1)) | (std::uint64_t{1} << (y - 1));
    if ((used & bits) != 0) throw ContractViolation("pairs overlap");
    used |= bits;
  }
  const bool want_split = pairing.player == Player::Split;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << k); ++a) {
    bool transversal = true;
    for (const auto& [x, y] : pairing.pairs) {
      if (((a >> (x - 1)) & 1U) == ((a >> (y - 1)) & 1U)) {
        transversal = false;
        break;
      }
    }
    if (transversal && splits_all(board.masks(), a) != want_split) return false;
  }
  return true;
}

std::optional<Pairing> find_pairing_strategy(const GameBoard& board, Player player) {
  const unsigned k = board.k();
  if (k > kMaxPairingGround) throw CapacityError("find_pairing_strategy supports k <= 13");

  // Sets the pairing must rule out: non-splitters for Split, splitters for Skew.
  std::vector<std::uint64_t> targets;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << k); ++a) {
    if (splits_all(board.masks(), a) != (player == Player::Split)) targets.push_back(a);
  }
  const std::size_t words = (targets.size() + 63) / 64;
  // A pair {x, y} rules out a target that holds both or neither.
  std::vector<std::vector<std::uint64_t>> kill(k * k);
  for (unsigned x = 0; x < k; ++x) {
    for (unsigned y = x + 1; y < k; ++y) {
      auto& bits = kill[x * k + y];
      bits.assign(words, 0);
      for (std::size_t t = 0; t < targets.size(); ++t) {
        if (((targets[t] >> x) & 1U) == ((targets[t] >> y) & 1U)) bits[t / 64] |= std::uint64_t{1} << (t % 64);
      }
    }
  }

  std::vector<std::uint64_t> alive(words, ~std::uint64_t{0});
  if (targets.size() % 64 != 0) alive.back() = (std::uint64_t{1} << (targets.size() % 64)) - 1;
  Pairing out{player, {}};

  auto search = [&](auto&& self, std::uint64_t decided, const std::vector<std::uint64_t>& live) -> bool {
    if (std::all_of(live.begin(), live.end(), [](std::uint64_t w) { return w == 0; })) return true;
    const std::uint64_t open = low_bits(k) & ~decided;
    if (open == 0) return false;
    const unsigned x = static_cast<unsigned>(std::countr_zero(open));
    const std::uint64_t xbit = std::uint64_t{1} << x;
    if (self(self, decided | xbit, live)) return true;
    std::vector<std::uint64_t> next(words);
    for (std::uint64_t rest = open & ~xbit; rest != 0; rest &= rest - 1) {
      const unsigned y = static_cast<unsigned>(std::countr_zero(rest));
      const auto& bits = kill[x * k + y];
      for (std::size_t w = 0; w < words; ++w) next[w] = live[w] & ~bits[w];
      out.pairs.emplace_back(x + 1, y + 1);
      if (self(self, decided | xbit | (std::uint64_t{1} << y), next)) return true;
      out.pairs.pop_back();
    }
    return false;
  };
  if (!search(search, 0, alive)) return std::nullopt;
  return out;
}

std::string CensusResult::fraction() const {
  const std::uint64_t g = std::gcd(split_wins, total);
  if (g == 0) return "0/0";
  return std::to_string(split_wins / g) + "/" + std::to_string(total / g);
}

CensusResult census(unsigned n) {
  if (n < 1 || n > 3) throw ContractViolation("census supports 1 <= n <= 3");
  const unsigned inner = (1U << n) - 1;
  CensusResult out;
  out.n = n;
  for (std::uint32_t mask = 0; mask < (1U << inner); ++mask) {
    RegionVector regions = RegionVector::zeros(n);
    for (unsigned r = 1; r <= inner; ++r) regions[r] = (mask >> (r - 1)) & 1U;
    GameBoard board = family_from_regions(regions);
    const Player a = solve_game(board, Player::Split).winner;
    const Player b = solve_game(board, Player::Skew).winner;
    if (a != b) throw std::logic_error("winner depends on the first mover for " + regions.to_string());
    ++out.total;
    if (a == Player::Split) ++out.split_wins;
    out.entries.push_back({std::move(regions), std::move(board), a});
  }
  return out;
}

GameBoard grid_board(const std::vector<unsigned>& dims, bool diagonals) {
  if (dims.empty()) throw ContractViolation("grid needs at least one dimension");
  std::uint64_t cells = 1;
  for (unsigned d : dims) {
    if (d == 0) throw ContractViolation("grid dimensions must be positive");
    cells *= d;
    if (cells > kMaxGround) throw ContractViolation("grid has more than 64 cells");
  }
  if (diagonals && (dims.size() != 2 || dims[0] != dims[1])) {
    throw ContractViolation("diagonals are only defined for square two-dimensional grids");
  }
  const unsigned D = static_cast<unsigned>(dims.size());
  std::vector<std::uint64_t> stride(D, 1);
  for (unsigned a = D - 1; a-- > 0;) stride[a] = stride[a + 1] * dims[a + 1];

  const unsigned k = static_cast<unsigned>(cells);
  std::vector<std::uint64_t> masks;
  for (unsigned axis = D; axis-- > 0;) {
    // One line through every cell whose coordinate along `axis` is zero.
    for (std::uint64_t c = 0; c < cells; ++c) {
      if ((c / stride[axis]) % dims[axis] != 0) continue;
      std::uint64_t line = 0;
      for (unsigned i = 0; i < dims[axis]; ++i) line |= std::uint64_t{1} << (c + i * stride[axis]);
      masks.push_back(line);
    }
  }
  if (diagonals) {
    const unsigned n = dims[0];
    std::uint64_t main = 0;
    std::uint64_t anti = 0;
    for (unsigned i = 0; i < n; ++i) {
      main |= std::uint64_t{1} << (i * n + i);
      anti |= std::uint64_t{1} << (i * n + (n - 1 - i));
    }
    masks.push_back(main);
    masks.push_back(anti);
  }
  return Family(k, std::move(masks));
}

GameBoard cyclic_board(unsigned k, unsigned width) {
  if (k == 0 || k > kMaxGround || width > k) throw ContractViolation("cyclic board needs 1 <= width <= k <= 64");
  std::vector<std::uint64_t> masks;
  for (unsigned i = 0; i < k; ++i) {
    std::uint64_t m = 0;
    for (unsigned j = 0; j < width; ++j) m |= std::uint64_t{1} << ((i + j) % k);
    masks.push_back(m);
  }
  return Family(k, std::move(masks));
}

}  // namespace splitkit
