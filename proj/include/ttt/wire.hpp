#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "ttt/session.hpp"

namespace ttt::wire {

enum class ErrorCode {
    MatchNotFound,
    MatchFull,
    AlreadySeated,
    NotSeated,
    GameOver,
    OutOfTurn,
    CellOccupied,
    OutOfBounds,
    BadRequest,
};

std::string_view to_string(ErrorCode code) noexcept;
ErrorCode from_move_error(MoveErrorCode code) noexcept;

struct JoinRequest {};
struct PlaceMark {
    int row;
    int col;
};
struct NewGameRequest {};

using ClientMessage = std::variant<JoinRequest, PlaceMark, NewGameRequest>;

class MalformedMessage : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Throws MalformedMessage for anything that is not one of the three client
// messages.
ClientMessage parse_client_message(std::string_view text);

std::string encode(const ClientMessage& m);

// Server-to-client frames. Keys are written in a fixed order, so equal
// inputs always give byte-identical frames.
std::string joined_message(Player seat, std::string_view match_id);
std::string state_message(const GameSession& s);
std::string error_message(ErrorCode code, std::string_view message);
std::string opponent_left_message();

std::string_view line_kind_name(LineKind kind) noexcept;

}  // namespace ttt::wire
