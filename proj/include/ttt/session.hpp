#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ttt/board.hpp"

namespace ttt {

struct MoveRecord {
    Player player;
    int row;
    int col;
    int ply;
    friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

struct Move {
    Player player;
    int row;
    int col;
};

enum class MoveErrorCode { GameOver, OutOfTurn, CellOccupied, OutOfBounds };

// Wire spelling: "game_over", "out_of_turn", ...
std::string_view to_string(MoveErrorCode code) noexcept;

class MoveError : public std::runtime_error {
public:
    MoveError(MoveErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    MoveErrorCode code() const noexcept { return code_; }

private:
    MoveErrorCode code_;
};

// A replayed move failed; ply() is the 1-based position of the failing move.
class ReplayError : public MoveError {
public:
    ReplayError(const MoveError& cause, int ply);
    int ply() const noexcept { return ply_; }

private:
    int ply_;
};

class GameSession {
public:
    explicit GameSession(std::string id);

    const std::string& id() const noexcept { return id_; }
    const Board& board() const noexcept { return board_; }
    const GameStatus& status() const noexcept { return status_; }
    const std::vector<MoveRecord>& history() const noexcept { return history_; }
    int ply() const noexcept { return static_cast<int>(history_.size()); }

    friend bool operator==(const GameSession&, const GameSession&) = default;

private:
    friend GameSession apply_move(const GameSession&, Player, int, int);

    std::string id_;
    Board board_;
    GameStatus status_;
    std::vector<MoveRecord> history_;
};

GameSession new_session(std::string id);

// Returns the session after `p` marks (row, col). Throws MoveError; the
// input is never modified.
GameSession apply_move(const GameSession& s, Player p, int row, int col);

// Fresh session with the same id. Allowed in any state.
GameSession reset(const GameSession& s);

// Folds apply_move over a fresh session. Throws ReplayError.
GameSession replay(std::string id, const std::vector<Move>& moves);

std::vector<Move> moves_of(const GameSession& s);

}  // namespace ttt
