#include "ttt/board.hpp"

#include <algorithm>

namespace ttt {

char to_char(Player p) noexcept { return p == Player::X ? 'X' : 'O'; }

char to_char(CellMark m) noexcept {
    switch (m) {
        case CellMark::X: return 'X';
        case CellMark::O: return 'O';
        case CellMark::Empty: break;
    }
    return '.';
}

int encode_mark(CellMark m) noexcept {
    switch (m) {
        case CellMark::X: return 1;
        case CellMark::O: return 0;
        case CellMark::Empty: break;
    }
    return -1;
}

int Board::count(CellMark m) const noexcept {
    return static_cast<int>(std::count(cells_.begin(), cells_.end(), m));
}

WinLine WinLine::row(int index) {
    if (index < 0 || index >= kBoardSize) throw std::out_of_range("row index out of range");
    return WinLine{LineKind::Row, index};
}

WinLine WinLine::column(int index) {
    if (index < 0 || index >= kBoardSize) throw std::out_of_range("column index out of range");
    return WinLine{LineKind::Column, index};
}

std::array<Coord, 3> WinLine::coords() const noexcept {
    switch (kind_) {
        case LineKind::Row: return {{{index_, 0}, {index_, 1}, {index_, 2}}};
        case LineKind::Column: return {{{0, index_}, {1, index_}, {2, index_}}};
        case LineKind::MainDiagonal: return {{{0, 0}, {1, 1}, {2, 2}}};
        case LineKind::AntiDiagonal: break;
    }
    return {{{0, 2}, {1, 1}, {2, 0}}};
}

int WinLine::priority() const noexcept {
    switch (kind_) {
        case LineKind::Row: return index_;
        case LineKind::Column: return 3 + index_;
        case LineKind::MainDiagonal: return 6;
        case LineKind::AntiDiagonal: break;
    }
    return 7;
}

const std::array<WinLine, 8>& WinLine::all() noexcept {
    static const std::array<WinLine, 8> lines{
        WinLine{LineKind::Row, 0},    WinLine{LineKind::Row, 1},    WinLine{LineKind::Row, 2},
        WinLine{LineKind::Column, 0}, WinLine{LineKind::Column, 1}, WinLine{LineKind::Column, 2},
        main_diagonal(),              anti_diagonal(),
    };
    return lines;
}

std::string to_string(const WinLine& line) {
    switch (line.kind()) {
        case LineKind::Row: return "row " + std::to_string(line.index());
        case LineKind::Column: return "column " + std::to_string(line.index());
        case LineKind::MainDiagonal: return "main diagonal";
        case LineKind::AntiDiagonal: break;
    }
    return "anti diagonal";
}

std::string to_string(const GameStatus& s) {
    if (const auto* p = std::get_if<InProgress>(&s)) return std::string("Turn ") + to_char(p->turn);
    if (const auto* w = std::get_if<Won>(&s)) return std::string("Winner ") + to_char(w->winner);
    return "Draw";
}

Board empty_board() noexcept { return Board{}; }

Board transpose(const Board& b) noexcept {
    Board t;
    for (int r = 0; r < kBoardSize; ++r) {
        for (int c = 0; c < kBoardSize; ++c) t.set(r, c, b.at(c, r));
    }
    return t;
}

namespace {

std::optional<Player> uniform_owner(CellMark a, CellMark b, CellMark c) noexcept {
    if (a == CellMark::Empty || a != b || b != c) return std::nullopt;
    return a == CellMark::X ? Player::X : Player::O;
}

}  // namespace

std::optional<RowWin> check_rows(const Board& b) noexcept {
    for (int r = 0; r < kBoardSize; ++r) {
        if (auto p = uniform_owner(b.at(r, 0), b.at(r, 1), b.at(r, 2))) return RowWin{*p, r};
    }
    return std::nullopt;
}

std::optional<LineWin> check_diagonals(const Board& b) noexcept {
    if (auto p = uniform_owner(b.at(0, 0), b.at(1, 1), b.at(2, 2))) {
        return LineWin{*p, WinLine::main_diagonal()};
    }
    if (auto p = uniform_owner(b.at(0, 2), b.at(1, 1), b.at(2, 0))) {
        return LineWin{*p, WinLine::anti_diagonal()};
    }
    return std::nullopt;
}

std::optional<LineWin> winner(const Board& b) noexcept {
    if (auto horizontal = check_rows(b)) {
        return LineWin{horizontal->player, WinLine::row(horizontal->row)};
    }
    if (auto vertical = check_rows(transpose(b))) {
        return LineWin{vertical->player, WinLine::column(vertical->row)};
    }
    return check_diagonals(b);
}

bool is_full(const Board& b) noexcept { return b.count(CellMark::Empty) == 0; }

GameStatus status_of(const Board& b, Player next_turn) noexcept {
    if (auto w = winner(b)) return Won{w->player, w->line};
    if (is_full(b)) return Draw{};
    return InProgress{next_turn};
}

namespace {

bool has_line(const Board& b, CellMark m) noexcept {
    return std::any_of(WinLine::all().begin(), WinLine::all().end(), [&](const WinLine& line) {
        const auto cells = line.coords();
        return std::all_of(cells.begin(), cells.end(),
                           [&](Coord rc) { return b.at(rc.row, rc.col) == m; });
    });
}

}  // namespace

bool is_legal_position(const Board& b) noexcept {
    const int xs = b.count(CellMark::X);
    const int os = b.count(CellMark::O);
    const int diff = xs - os;
    if (diff != 0 && diff != 1) return false;
    const bool x_line = has_line(b, CellMark::X);
    const bool o_line = has_line(b, CellMark::O);
    if (x_line && o_line) return false;
    if (x_line && diff == 0) return false;
    if (o_line && diff == 1) return false;
    return true;
}

Board parse_board(std::string_view s) {
    if (s.size() != static_cast<std::size_t>(kCellCount)) {
        throw BoardParseError(BoardParseError::Reason::BadLength,
                              "board string must have 9 characters, got " + std::to_string(s.size()));
    }
    Board b;
    for (int i = 0; i < kCellCount; ++i) {
        CellMark m{};
        switch (s[i]) {
            case 'X': m = CellMark::X; break;
            case 'O': m = CellMark::O; break;
            case '.': m = CellMark::Empty; break;
            default:
                throw BoardParseError(BoardParseError::Reason::BadChar,
                                      "bad board character at position " + std::to_string(i));
        }
        b.set(i / kBoardSize, i % kBoardSize, m);
    }
    return b;
}

std::string format_board(const Board& b) {
    std::string s;
    s.reserve(kCellCount);
    for (CellMark m : b.cells()) s.push_back(to_char(m));
    return s;
}

}  // namespace ttt
