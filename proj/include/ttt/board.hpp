#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace ttt {

enum class CellMark : std::uint8_t { Empty, X, O };

enum class Player : std::uint8_t { X, O };

constexpr CellMark mark_of(Player p) noexcept {
    return p == Player::X ? CellMark::X : CellMark::O;
}

constexpr Player opponent(Player p) noexcept {
    return p == Player::X ? Player::O : Player::X;
}

char to_char(Player p) noexcept;
char to_char(CellMark m) noexcept;

// X = 1, O = 0, Empty = -1. Empty sits outside {0, 1} so that a row of
// empty cells can never look like a row of noughts.
int encode_mark(CellMark m) noexcept;

constexpr int kBoardSize = 3;
constexpr int kCellCount = kBoardSize * kBoardSize;

// Fixed 3x3 grid, row-major, row 0 at the top.
class Board {
public:
    constexpr Board() noexcept { cells_.fill(CellMark::Empty); }

    constexpr CellMark at(int row, int col) const { return cells_[index(row, col)]; }
    constexpr void set(int row, int col, CellMark m) { cells_[index(row, col)] = m; }

    // Number of cells holding `m`.
    int count(CellMark m) const noexcept;

    const std::array<CellMark, kCellCount>& cells() const noexcept { return cells_; }

    friend bool operator==(const Board&, const Board&) = default;

private:
    static constexpr std::size_t index(int row, int col) {
        if (row < 0 || row >= kBoardSize || col < 0 || col >= kBoardSize) {
            throw std::out_of_range("board coordinate out of range");
        }
        return static_cast<std::size_t>(row * kBoardSize + col);
    }

    std::array<CellMark, kCellCount> cells_{};
};

struct Coord {
    int row;
    int col;
    friend bool operator==(const Coord&, const Coord&) = default;
};

enum class LineKind : std::uint8_t { Row, Column, MainDiagonal, AntiDiagonal };

// One of the eight three-in-a-row lines. The cell coordinates are always
// derived from (kind, index), never stored.
class WinLine {
public:
    static WinLine row(int index);
    static WinLine column(int index);
    static constexpr WinLine main_diagonal() noexcept { return WinLine{LineKind::MainDiagonal, 0}; }
    static constexpr WinLine anti_diagonal() noexcept { return WinLine{LineKind::AntiDiagonal, 0}; }

    LineKind kind() const noexcept { return kind_; }
    int index() const noexcept { return index_; }
    std::array<Coord, 3> coords() const noexcept;

    // Position in the tie-break order: rows 0-2, columns 0-2, main, anti.
    int priority() const noexcept;

    // All eight lines in priority order.
    static const std::array<WinLine, 8>& all() noexcept;

    friend bool operator==(const WinLine&, const WinLine&) = default;

private:
    constexpr WinLine(LineKind kind, int index) noexcept : kind_(kind), index_(index) {}

    LineKind kind_;
    int index_;
};

std::string to_string(const WinLine& line);

struct RowWin {
    Player player;
    int row;
    friend bool operator==(const RowWin&, const RowWin&) = default;
};

struct LineWin {
    Player player;
    WinLine line;
    friend bool operator==(const LineWin&, const LineWin&) = default;
};

struct InProgress {
    Player turn;
    friend bool operator==(const InProgress&, const InProgress&) = default;
};

struct Won {
    Player winner;
    WinLine line;
    friend bool operator==(const Won&, const Won&) = default;
};

struct Draw {
    friend bool operator==(const Draw&, const Draw&) = default;
};

using GameStatus = std::variant<InProgress, Won, Draw>;

inline bool is_terminal(const GameStatus& s) noexcept { return !std::holds_alternative<InProgress>(s); }

std::string to_string(const GameStatus& s);

Board empty_board() noexcept;
Board transpose(const Board& b) noexcept;

// Lowest row whose three cells hold the same non-empty mark.
std::optional<RowWin> check_rows(const Board& b) noexcept;
std::optional<LineWin> check_diagonals(const Board& b) noexcept;

// Rows, then columns via the row checker on the transposed board, then
// diagonals. The first hit in that order is reported.
std::optional<LineWin> winner(const Board& b) noexcept;

bool is_full(const Board& b) noexcept;
GameStatus status_of(const Board& b, Player next_turn) noexcept;
bool is_legal_position(const Board& b) noexcept;

class BoardParseError : public std::invalid_argument {
public:
    enum class Reason { BadLength, BadChar };

    BoardParseError(Reason reason, const std::string& what)
        : std::invalid_argument(what), reason_(reason) {}

    Reason reason() const noexcept { return reason_; }

private:
    Reason reason_;
};

// Nine characters from {'X', 'O', '.'}, row-major.
Board parse_board(std::string_view s);
std::string format_board(const Board& b);

}  // namespace ttt
