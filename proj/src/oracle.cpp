#include "ttt/oracle.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace ttt::oracle {

namespace {

struct Triple {
    int a, b, c;  // flat cell indices
    WinLine line;
};

// The eight lines as flat cell indices, in tie-break order.
const Triple kTriples[8] = {
    {0, 1, 2, WinLine::row(0)},    {3, 4, 5, WinLine::row(1)},    {6, 7, 8, WinLine::row(2)},
    {0, 3, 6, WinLine::column(0)}, {1, 4, 7, WinLine::column(1)}, {2, 5, 8, WinLine::column(2)},
    {0, 4, 8, WinLine::main_diagonal()}, {2, 4, 6, WinLine::anti_diagonal()},
};

}  // namespace

bool LineScanResult::contains(const LineWin& w) const noexcept {
    return std::find(winning_lines.begin(), winning_lines.end(), w) != winning_lines.end();
}

LineScanResult brute_force_lines(const Board& b) {
    const auto& cells = b.cells();
    LineScanResult result;
    for (const Triple& t : kTriples) {
        const CellMark m = cells[t.a];
        if (m != CellMark::Empty && cells[t.b] == m && cells[t.c] == m) {
            result.winning_lines.push_back(LineWin{m == CellMark::X ? Player::X : Player::O, t.line});
        }
    }
    return result;
}

Board board_from_index(int index) {
    Board b;
    for (int cell = 0; cell < kCellCount; ++cell) {
        const int digit = index % 3;
        index /= 3;
        b.set(cell / kBoardSize, cell % kBoardSize,
              digit == 0 ? CellMark::Empty : digit == 1 ? CellMark::X : CellMark::O);
    }
    return b;
}

int index_of(const Board& b) noexcept {
    int index = 0;
    for (int cell = kCellCount - 1; cell >= 0; --cell) {
        const CellMark m = b.cells()[cell];
        index = index * 3 + (m == CellMark::Empty ? 0 : m == CellMark::X ? 1 : 2);
    }
    return index;
}

bool agrees_with_scan(const Board& b, const std::optional<LineWin>& claimed) {
    const LineScanResult scan = brute_force_lines(b);
    if (!claimed) return scan.empty();
    // The scan lists lines in priority order, so the front is the one a
    // correct checker must report.
    return !scan.empty() && scan.winning_lines.front() == *claimed;
}

EquivalenceReport verify_equivalence(const WinnerFn& checker) {
    EquivalenceReport report;
    for (int i = 0; i < kTernaryBoardCount; ++i) {
        const Board b = board_from_index(i);
        ++report.boards_checked;
        if (!agrees_with_scan(b, checker(b))) {
            ++report.mismatches;
            if (!report.first_mismatch) report.first_mismatch = b;
        }
    }
    return report;
}

namespace {

void walk(const GameSession& s, const GameVisitor& visit) {
    if (is_terminal(s.status())) {
        visit(s);
        return;
    }
    const Player turn = std::get<InProgress>(s.status()).turn;
    for (int r = 0; r < kBoardSize; ++r) {
        for (int c = 0; c < kBoardSize; ++c) {
            if (s.board().at(r, c) == CellMark::Empty) walk(apply_move(s, turn, r, c), visit);
        }
    }
}

void mark_prefixes(const GameSession& terminal, std::vector<bool>& seen) {
    Board b;
    seen[index_of(b)] = true;
    for (const MoveRecord& m : terminal.history()) {
        b.set(m.row, m.col, mark_of(m.player));
        seen[index_of(b)] = true;
    }
}

}  // namespace

void for_each_game(const GameVisitor& visit) { walk(new_session("enumeration"), visit); }

EnumerationReport enumerate_games() {
    EnumerationReport report;
    std::vector<bool> seen(kTernaryBoardCount, false);
    int earliest = std::numeric_limits<int>::max();

    for_each_game([&](const GameSession& s) {
        ++report.total_games;
        if (const auto* w = std::get_if<Won>(&s.status())) {
            (w->winner == Player::X ? report.x_wins : report.o_wins) += 1;
            earliest = std::min(earliest, s.ply());
        } else {
            ++report.draws;
        }
        mark_prefixes(s, seen);
    });

    report.legal_positions = static_cast<std::uint64_t>(std::count(seen.begin(), seen.end(), true));
    report.earliest_win_ply = earliest == std::numeric_limits<int>::max() ? 0 : earliest;
    return report;
}

const EnumerationReport& golden_census() noexcept {
    static const EnumerationReport census{
        .total_games = 255168,
        .x_wins = 131184,
        .o_wins = 77904,
        .draws = 46080,
        .legal_positions = 5478,
        .earliest_win_ply = 5,
    };
    return census;
}

std::string format_report(const EnumerationReport* census, const EquivalenceReport& equivalence) {
    std::ostringstream out;
    if (census) {
        out << "total_games: " << census->total_games << '\n'
            << "x_wins: " << census->x_wins << '\n'
            << "o_wins: " << census->o_wins << '\n'
            << "draws: " << census->draws << '\n'
            << "legal_positions: " << census->legal_positions << '\n'
            << "earliest_win_ply: " << census->earliest_win_ply << '\n';
    }
    out << "mismatches: " << equivalence.mismatches << '\n';
    return out.str();
}

}  // namespace ttt::oracle
