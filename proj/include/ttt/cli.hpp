#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "ttt/oracle.hpp"
#include "ttt/server.hpp"

namespace ttt::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailed = 1,
    kStartupFailed = 2,
};

// Three lines of three cells, cells separated by single spaces:
//   X . O
//   . X .
//   . . O
std::string render_board(const Board& b);

// Inverse of render_board. Throws BoardParseError.
Board parse_rendered_board(std::string_view text);

// Hot-seat game on a text stream. Moves are read as "row col" (zero-based);
// EOF ends the program with kSuccess.
int run_play(std::istream& in, std::ostream& out);

// Prints the oracle report. `checker` is only swapped out by tests.
int run_verify(bool full, std::ostream& out, std::ostream& err, const oracle::WinnerFn& checker = winner);

int run_serve(const ServerConfig& config, std::ostream& err);

// Applies TTT_LOG (trace|debug|info|warn|error|critical|off) to the default logger.
void configure_logging(const char* level);

}  // namespace ttt::cli
