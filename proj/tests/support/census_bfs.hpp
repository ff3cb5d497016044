#pragma once

// Second, independent census traversal used to cross-check the oracle's
// depth-first enumeration. Works layer by layer over distinct positions,
// carrying the number of move sequences that reach each one. Uses its own
// char-array board and line test; nothing from the library.

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <utility>

namespace ttt::testsupport {

struct BfsCensus {
    std::uint64_t total_games = 0;
    std::uint64_t x_wins = 0;
    std::uint64_t o_wins = 0;
    std::uint64_t draws = 0;
    std::uint64_t legal_positions = 0;
    int earliest_win_ply = 0;
};

using Grid = std::array<char, 9>;

inline char line_owner(const Grid& g) {
    static constexpr int lines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                                        {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};
    for (const auto& l : lines) {
        if (g[l[0]] != '.' && g[l[0]] == g[l[1]] && g[l[1]] == g[l[2]]) return g[l[0]];
    }
    return 0;
}

inline BfsCensus bfs_census() {
    BfsCensus census;
    std::set<Grid> positions;
    Grid start;
    start.fill('.');
    std::map<Grid, std::uint64_t> layer{{start, 1}};

    for (int ply = 0; !layer.empty(); ++ply) {
        std::map<Grid, std::uint64_t> next;
        const char mover = ply % 2 == 0 ? 'X' : 'O';
        for (const auto& [grid, ways] : layer) {
            positions.insert(grid);
            const char owner = line_owner(grid);
            if (owner != 0) {
                census.total_games += ways;
                (owner == 'X' ? census.x_wins : census.o_wins) += ways;
                if (census.earliest_win_ply == 0 || ply < census.earliest_win_ply) census.earliest_win_ply = ply;
                continue;
            }
            if (ply == 9) {
                census.total_games += ways;
                census.draws += ways;
                continue;
            }
            for (int cell = 0; cell < 9; ++cell) {
                if (grid[cell] != '.') continue;
                Grid child = grid;
                child[cell] = mover;
                next[child] += ways;
            }
        }
        layer = std::move(next);
    }
    census.legal_positions = positions.size();
    return census;
}

}  // namespace ttt::testsupport
