#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

#include "ttt/match_service.hpp"

namespace ttt {

struct ServerConfig {
    std::string host = "127.0.0.1";
    std::uint16_t port = 8080;  // 0 picks a free port
    unsigned threads = 2;
    MatchServiceConfig service;
};

class BindError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// HTTP + WebSocket front end for MatchService.
//
//   POST /matches       -> 201 {"match_id": "..."}
//   GET  /healthz       -> 200 {"status": "ok"}
//   GET  /ws/{match_id} -> WebSocket upgrade, one text frame per message
//
// The constructor binds and listens (throws BindError); start() spins up
// the I/O threads and returns.
class Server {
public:
    explicit Server(ServerConfig config);
    ~Server();

    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    void start();
    // Blocks until stop() is called from another thread or a signal handler.
    void wait();
    void stop();

    std::uint16_t port() const noexcept;
    MatchService& service() noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace ttt
