#include "ttt/cli.hpp"

#include <spdlog/spdlog.h>

#include <istream>
#include <ostream>
#include <sstream>

namespace ttt::cli {

std::string render_board(const Board& b) {
    std::string out;
    for (int r = 0; r < kBoardSize; ++r) {
        for (int c = 0; c < kBoardSize; ++c) {
            if (c > 0) out.push_back(' ');
            out.push_back(to_char(b.at(r, c)));
        }
        out.push_back('\n');
    }
    return out;
}

Board parse_rendered_board(std::string_view text) {
    std::string compact;
    for (char ch : text) {
        if (ch != ' ' && ch != '\n') compact.push_back(ch);
    }
    return parse_board(compact);
}

namespace {

// Exactly two integers on the line, nothing else.
bool read_move(const std::string& line, int& row, int& col) {
    std::istringstream in(line);
    std::string extra;
    return static_cast<bool>(in >> row >> col) && !(in >> extra);
}

enum class Answer { Yes, No, Eof };

Answer ask_new_game(std::istream& in, std::ostream& out) {
    std::string line;
    while (true) {
        out << "New game? [y/n]\n";
        if (!std::getline(in, line)) return Answer::Eof;
        std::istringstream words(line);
        std::string word;
        words >> word;
        if (word == "y" || word == "Y") return Answer::Yes;
        if (word == "n" || word == "N") return Answer::No;
    }
}

}  // namespace

int run_play(std::istream& in, std::ostream& out) {
    GameSession session = new_session("local");
    std::string line;
    while (true) {
        out << render_board(session.board()) << to_string(session.status()) << '\n';

        if (is_terminal(session.status())) {
            if (ask_new_game(in, out) != Answer::Yes) return kSuccess;
            session = reset(session);
            continue;
        }

        const Player turn = std::get<InProgress>(session.status()).turn;
        int row = 0;
        int col = 0;
        while (true) {
            if (!std::getline(in, line)) return kSuccess;
            if (read_move(line, row, col)) break;
            out << "Enter a move as: row col (each 0-2)\n";
        }
        try {
            session = apply_move(session, turn, row, col);
        } catch (const MoveError& e) {
            out << "error: " << to_string(e.code()) << " (" << e.what() << ")\n";
        }
    }
}

int run_verify(bool full, std::ostream& out, std::ostream& err, const oracle::WinnerFn& checker) {
    const oracle::EquivalenceReport equivalence = oracle::verify_equivalence(checker);
    std::optional<oracle::EnumerationReport> census;
    if (full) census = oracle::enumerate_games();

    out << oracle::format_report(census ? &*census : nullptr, equivalence);

    bool ok = true;
    if (equivalence.mismatches != 0) {
        ok = false;
        err << "winner checker disagrees with the line scan on " << equivalence.mismatches
            << " board(s); first: " << format_board(*equivalence.first_mismatch) << '\n';
    }
    if (census && !(*census == oracle::golden_census())) {
        ok = false;
        err << "census differs from the recorded constants\n";
    }
    return ok ? kSuccess : kVerificationFailed;
}

int run_serve(const ServerConfig& config, std::ostream& err) {
    try {
        Server server(config);
        server.start();
        server.wait();
    } catch (const BindError& e) {
        err << "ttt serve: " << e.what() << '\n';
        return kStartupFailed;
    }
    return kSuccess;
}

void configure_logging(const char* level) {
    if (level == nullptr || *level == '\0') {
        spdlog::set_level(spdlog::level::info);
        return;
    }
    const auto parsed = spdlog::level::from_str(level);
    // from_str maps unknown names to "off"; only honour "off" when asked for.
    if (parsed == spdlog::level::off && std::string_view(level) != "off") {
        spdlog::set_level(spdlog::level::info);
        spdlog::warn("unknown TTT_LOG level '{}', using info", level);
        return;
    }
    spdlog::set_level(parsed);
}

}  // namespace ttt::cli
