#include "ttt/session.hpp"

#include <utility>

namespace ttt {

std::string_view to_string(MoveErrorCode code) noexcept {
    switch (code) {
        case MoveErrorCode::GameOver: return "game_over";
        case MoveErrorCode::OutOfTurn: return "out_of_turn";
        case MoveErrorCode::CellOccupied: return "cell_occupied";
        case MoveErrorCode::OutOfBounds: break;
    }
    return "out_of_bounds";
}

ReplayError::ReplayError(const MoveError& cause, int ply)
    : MoveError(cause.code(), "ply " + std::to_string(ply) + ": " + cause.what()), ply_(ply) {}

GameSession::GameSession(std::string id)
    : id_(std::move(id)), board_(empty_board()), status_(InProgress{Player::X}) {}

GameSession new_session(std::string id) { return GameSession(std::move(id)); }

GameSession apply_move(const GameSession& s, Player p, int row, int col) {
    // Checked in this order: a finished game reports game_over no matter
    // who moves or where.
    if (is_terminal(s.status())) {
        throw MoveError(MoveErrorCode::GameOver, "game is over, start a new game");
    }
    if (std::get<InProgress>(s.status()).turn != p) {
        throw MoveError(MoveErrorCode::OutOfTurn, std::string("it is not ") + to_char(p) + "'s turn");
    }
    if (row < 0 || row >= kBoardSize || col < 0 || col >= kBoardSize) {
        throw MoveError(MoveErrorCode::OutOfBounds, "row and col must be in 0..2");
    }
    if (s.board().at(row, col) != CellMark::Empty) {
        throw MoveError(MoveErrorCode::CellOccupied, "cell is already marked");
    }

    GameSession next = s;
    next.board_.set(row, col, mark_of(p));
    next.history_.push_back(MoveRecord{p, row, col, s.ply() + 1});
    next.status_ = status_of(next.board_, opponent(p));
    return next;
}

GameSession reset(const GameSession& s) { return new_session(s.id()); }

GameSession replay(std::string id, const std::vector<Move>& moves) {
    GameSession s = new_session(std::move(id));
    int ply = 0;
    for (const Move& m : moves) {
        ++ply;
        try {
            s = apply_move(s, m.player, m.row, m.col);
        } catch (const MoveError& e) {
            throw ReplayError(e, ply);
        }
    }
    return s;
}

std::vector<Move> moves_of(const GameSession& s) {
    std::vector<Move> moves;
    moves.reserve(s.history().size());
    for (const MoveRecord& r : s.history()) moves.push_back(Move{r.player, r.row, r.col});
    return moves;
}

}  // namespace ttt
