#include "ttt/wire.hpp"

#include <limits>

#include <json.hpp>

namespace ttt::wire {

using json = nlohmann::ordered_json;

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::MatchNotFound: return "match_not_found";
        case ErrorCode::MatchFull: return "match_full";
        case ErrorCode::AlreadySeated: return "already_seated";
        case ErrorCode::NotSeated: return "not_seated";
        case ErrorCode::GameOver: return "game_over";
        case ErrorCode::OutOfTurn: return "out_of_turn";
        case ErrorCode::CellOccupied: return "cell_occupied";
        case ErrorCode::OutOfBounds: return "out_of_bounds";
        case ErrorCode::BadRequest: break;
    }
    return "bad_request";
}

ErrorCode from_move_error(MoveErrorCode code) noexcept {
    switch (code) {
        case MoveErrorCode::GameOver: return ErrorCode::GameOver;
        case MoveErrorCode::OutOfTurn: return ErrorCode::OutOfTurn;
        case MoveErrorCode::CellOccupied: return ErrorCode::CellOccupied;
        case MoveErrorCode::OutOfBounds: break;
    }
    return ErrorCode::OutOfBounds;
}

std::string_view line_kind_name(LineKind kind) noexcept {
    switch (kind) {
        case LineKind::Row: return "row";
        case LineKind::Column: return "col";
        case LineKind::MainDiagonal: return "main_diag";
        case LineKind::AntiDiagonal: break;
    }
    return "anti_diag";
}

namespace {

int coordinate(const json& doc, const char* key) {
    const auto it = doc.find(key);
    if (it == doc.end() || !it->is_number_integer()) {
        throw MalformedMessage(std::string("place_mark needs an integer \"") + key + "\"");
    }
    // Range is checked by the rules (out_of_bounds), not here.
    const auto v = it->get<long long>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) return -1;
    return static_cast<int>(v);
}

std::string seat_name(Player p) { return std::string(1, to_char(p)); }

}  // namespace

ClientMessage parse_client_message(std::string_view text) {
    json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object()) throw MalformedMessage("message is not a JSON object");
    const auto type = doc.find("type");
    if (type == doc.end() || !type->is_string()) throw MalformedMessage("message has no string \"type\"");

    const auto& name = type->get_ref<const std::string&>();
    if (name == "join") return JoinRequest{};
    if (name == "new_game") return NewGameRequest{};
    if (name == "place_mark") return PlaceMark{coordinate(doc, "row"), coordinate(doc, "col")};
    throw MalformedMessage("unknown message type \"" + name + "\"");
}

std::string encode(const ClientMessage& m) {
    json doc;
    if (std::holds_alternative<JoinRequest>(m)) {
        doc["type"] = "join";
    } else if (const auto* p = std::get_if<PlaceMark>(&m)) {
        doc["type"] = "place_mark";
        doc["row"] = p->row;
        doc["col"] = p->col;
    } else {
        doc["type"] = "new_game";
    }
    return doc.dump();
}

std::string joined_message(Player seat, std::string_view match_id) {
    json doc;
    doc["type"] = "joined";
    doc["seat"] = seat_name(seat);
    doc["match_id"] = std::string(match_id);
    return doc.dump();
}

std::string state_message(const GameSession& s) {
    json doc;
    doc["type"] = "state";
    doc["board"] = format_board(s.board());
    if (const auto* p = std::get_if<InProgress>(&s.status())) {
        doc["status"] = "in_progress";
        doc["turn"] = seat_name(p->turn);
    } else if (const auto* w = std::get_if<Won>(&s.status())) {
        doc["status"] = "won";
        doc["winner"] = seat_name(w->winner);
        doc["line"] = {{"kind", line_kind_name(w->line.kind())}, {"index", w->line.index()}};
    } else {
        doc["status"] = "draw";
    }
    doc["ply"] = s.ply();
    return doc.dump();
}

std::string error_message(ErrorCode code, std::string_view message) {
    json doc;
    doc["type"] = "error";
    doc["code"] = to_string(code);
    doc["message"] = std::string(message);
    return doc.dump();
}

std::string opponent_left_message() { return R"({"type":"opponent_left"})"; }

}  // namespace ttt::wire
