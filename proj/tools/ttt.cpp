#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "ttt/cli.hpp"

int main(int argc, char** argv) {
    ttt::cli::configure_logging(std::getenv("TTT_LOG"));

    CLI::App app{"Two-player tic-tac-toe: local play, rules verification, and a match server", "ttt"};
    app.require_subcommand(1);

    auto* play = app.add_subcommand("play", "Hot-seat game in the terminal; enter moves as 'row col'");

    bool full = false;
    auto* verify = app.add_subcommand("verify", "Check the winner logic against an exhaustive line scan");
    verify->add_flag("--full", full, "Also enumerate every game and compare the census");

    ttt::ServerConfig serve_config;
    std::size_t max_matches = serve_config.service.max_matches;
    long long ttl_seconds = serve_config.service.match_ttl.count();
    auto* serve = app.add_subcommand("serve", "Run the networked match service");
    serve->add_option("--host", serve_config.host, "Listen address")->capture_default_str();
    serve->add_option("--port", serve_config.port, "Listen port")->capture_default_str()->check(CLI::Range(1, 65535));
    serve->add_option("--max-matches", max_matches, "Live match limit")->capture_default_str()->check(CLI::PositiveNumber);
    serve->add_option("--match-ttl-seconds", ttl_seconds, "Evict matches idle longer than this")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ttt::cli::kSuccess : ttt::cli::kStartupFailed;
    }

    if (*play) return ttt::cli::run_play(std::cin, std::cout);
    if (*verify) return ttt::cli::run_verify(full, std::cout, std::cerr);

    serve_config.service.max_matches = max_matches;
    serve_config.service.match_ttl = std::chrono::seconds(ttl_seconds);
    return ttt::cli::run_serve(serve_config, std::cerr);
}
