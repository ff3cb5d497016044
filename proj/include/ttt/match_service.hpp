#pragma once

#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "ttt/session.hpp"
#include "ttt/wire.hpp"

namespace ttt {

using ConnectionId = std::uint64_t;

// The transport's view of one client. `send` queues a frame for delivery
// and must not block; frames handed to it for one connection must reach
// the client in call order.
struct ClientHandle {
    ConnectionId id;
    std::function<void(std::string)> send;
};

struct MatchServiceConfig {
    std::size_t max_matches = 1024;
    std::chrono::seconds match_ttl{3600};
};

class CapacityExceeded : public std::runtime_error {
public:
    CapacityExceeded() : std::runtime_error("live match limit reached") {}
};

// In-memory match store plus the per-match protocol. All replies and
// broadcasts leave through ClientHandle::send.
//
// Messages for one match are handled one at a time under that match's
// lock; different matches proceed in parallel.
class MatchService {
public:
    using Clock = std::chrono::steady_clock;
    using NowFn = std::function<Clock::time_point()>;

    explicit MatchService(MatchServiceConfig config = {}, NowFn now = Clock::now);

    MatchService(const MatchService&) = delete;
    MatchService& operator=(const MatchService&) = delete;

    // Evicts idle matches first when the store is full. Throws CapacityExceeded.
    std::string create_match();

    void join(std::string_view match_id, const ClientHandle& client);
    void submit_move(std::string_view match_id, const ClientHandle& client, int row, int col);
    void new_game(std::string_view match_id, const ClientHandle& client);
    void handle_disconnect(ConnectionId connection);

    // Parses one text frame and dispatches it; malformed frames get a
    // bad_request error.
    void handle_message(std::string_view match_id, const ClientHandle& client, std::string_view text);

    // Drops matches with no activity for longer than the TTL. Returns how many.
    std::size_t evict_idle();

    std::size_t live_matches() const;
    std::optional<GameSession> snapshot(std::string_view match_id) const;
    std::optional<Player> seat_of(std::string_view match_id, ConnectionId connection) const;

    const MatchServiceConfig& config() const noexcept { return config_; }

private:
    struct Seat {
        ConnectionId id = 0;
        std::function<void(std::string)> send;
    };

    struct Match {
        explicit Match(std::string id, Clock::time_point now)
            : match_id(id), session(new_session(std::move(id))), created_at(now) {
            touch(now);
        }

        void touch(Clock::time_point now) { last_activity.store(now.time_since_epoch().count()); }
        Clock::time_point last_active() const {
            return Clock::time_point(Clock::duration(last_activity.load()));
        }

        std::string match_id;
        GameSession session;
        std::array<std::optional<Seat>, 2> seats;  // indexed by Player
        Clock::time_point created_at;
        std::atomic<Clock::rep> last_activity{0};  // read by eviction without the match lock
        std::mutex mutex;

        std::optional<Player> seat_of(ConnectionId c) const;
        void broadcast(const std::string& frame) const;
    };

    std::shared_ptr<Match> find(std::string_view match_id) const;
    std::shared_ptr<Match> find_or_report(std::string_view match_id, const ClientHandle& client) const;
    std::size_t evict_idle_locked(Clock::time_point now);
    std::string fresh_id();

    MatchServiceConfig config_;
    NowFn now_;

    // Lock order: match mutex or store mutex first, seat index mutex last.
    mutable std::shared_mutex store_mutex_;
    std::unordered_map<std::string, std::shared_ptr<Match>> matches_;
    std::mt19937_64 id_rng_;

    std::mutex seat_index_mutex_;
    std::unordered_map<ConnectionId, std::unordered_set<std::string>> seated_in_;
};

}  // namespace ttt
