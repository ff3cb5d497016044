#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ttt/board.hpp"
#include "ttt/session.hpp"

namespace ttt::oracle {

// Every (player, line) pair whose three cells carry that player's mark,
// in line priority order.
struct LineScanResult {
    std::vector<LineWin> winning_lines;

    bool empty() const noexcept { return winning_lines.empty(); }
    bool contains(const LineWin& w) const noexcept;
};

// Direct scan of the eight hardcoded triples. Shares nothing with the
// board-core checker beyond the Board type.
LineScanResult brute_force_lines(const Board& b);

constexpr int kTernaryBoardCount = 19683;  // 3^9

// Board number i in base 3, cell 0 as the least significant digit
// (0 = Empty, 1 = X, 2 = O).
Board board_from_index(int index);
int index_of(const Board& b) noexcept;

using WinnerFn = std::function<std::optional<LineWin>(const Board&)>;

struct EquivalenceReport {
    int boards_checked = 0;
    int mismatches = 0;
    std::optional<Board> first_mismatch;
};

// Compares `checker` (board-core winner by default) with brute_force_lines
// over all 3^9 boards.
EquivalenceReport verify_equivalence(const WinnerFn& checker = winner);

// True when `claimed` agrees with a direct scan of `b`.
bool agrees_with_scan(const Board& b, const std::optional<LineWin>& claimed);

struct EnumerationReport {
    std::uint64_t total_games = 0;
    std::uint64_t x_wins = 0;
    std::uint64_t o_wins = 0;
    std::uint64_t draws = 0;
    std::uint64_t legal_positions = 0;
    int earliest_win_ply = 0;

    friend bool operator==(const EnumerationReport&, const EnumerationReport&) = default;
};

// Called once per complete game (a move sequence ending in a win or a
// full board) with its terminal session.
using GameVisitor = std::function<void(const GameSession&)>;

// Depth-first walk over every legal move sequence from the empty board.
void for_each_game(const GameVisitor& visit);

EnumerationReport enumerate_games();

// Regression values for enumerate_games, fixed after two independent
// traversals agreed.
const EnumerationReport& golden_census() noexcept;

// "name: value" per line, keys in a fixed order.
std::string format_report(const EnumerationReport* census, const EquivalenceReport& equivalence);

}  // namespace ttt::oracle
