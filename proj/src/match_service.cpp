#include "ttt/match_service.hpp"

#include <spdlog/spdlog.h>

#include <cstdio>
#include <vector>

namespace ttt {

namespace {

std::size_t slot(Player p) { return static_cast<std::size_t>(p); }

}  // namespace

std::optional<Player> MatchService::Match::seat_of(ConnectionId c) const {
    for (Player p : {Player::X, Player::O}) {
        if (seats[slot(p)] && seats[slot(p)]->id == c) return p;
    }
    return std::nullopt;
}

void MatchService::Match::broadcast(const std::string& frame) const {
    for (const auto& seat : seats) {
        if (seat) seat->send(frame);
    }
}

MatchService::MatchService(MatchServiceConfig config, NowFn now)
    : config_(config), now_(std::move(now)), id_rng_(std::random_device{}()) {}

std::string MatchService::fresh_id() {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(id_rng_()));
    return buf;
}

std::string MatchService::create_match() {
    const auto now = now_();
    std::unique_lock lock(store_mutex_);
    if (matches_.size() >= config_.max_matches) {
        evict_idle_locked(now);
        if (matches_.size() >= config_.max_matches) throw CapacityExceeded();
    }
    std::string id = fresh_id();
    while (matches_.contains(id)) id = fresh_id();
    matches_.emplace(id, std::make_shared<Match>(id, now));
    spdlog::debug("match {} created ({} live)", id, matches_.size());
    return id;
}

std::shared_ptr<MatchService::Match> MatchService::find(std::string_view match_id) const {
    std::shared_lock lock(store_mutex_);
    const auto it = matches_.find(std::string(match_id));
    return it == matches_.end() ? nullptr : it->second;
}

std::shared_ptr<MatchService::Match> MatchService::find_or_report(std::string_view match_id,
                                                                  const ClientHandle& client) const {
    auto match = find(match_id);
    if (!match) {
        client.send(wire::error_message(wire::ErrorCode::MatchNotFound,
                                        "no match with id " + std::string(match_id)));
    }
    return match;
}

void MatchService::join(std::string_view match_id, const ClientHandle& client) {
    const auto match = find_or_report(match_id, client);
    if (!match) return;

    std::lock_guard lock(match->mutex);
    match->touch(now_());
    if (match->seat_of(client.id)) {
        client.send(wire::error_message(wire::ErrorCode::AlreadySeated, "already seated in this match"));
        return;
    }
    std::optional<Player> seat;
    if (!match->seats[slot(Player::X)]) {
        seat = Player::X;
    } else if (!match->seats[slot(Player::O)]) {
        seat = Player::O;
    } else {
        client.send(wire::error_message(wire::ErrorCode::MatchFull, "both seats are taken"));
        return;
    }

    match->seats[slot(*seat)] = Seat{client.id, client.send};
    {
        std::lock_guard index_lock(seat_index_mutex_);
        seated_in_[client.id].insert(match->match_id);
    }
    spdlog::debug("match {}: connection {} seated as {}", match->match_id, client.id, to_char(*seat));

    client.send(wire::joined_message(*seat, match->match_id));
    const std::string state = wire::state_message(match->session);
    const bool both_seated = match->seats[0] && match->seats[1];
    if (both_seated) {
        match->broadcast(state);
    } else {
        client.send(state);
    }
}

void MatchService::submit_move(std::string_view match_id, const ClientHandle& client, int row, int col) {
    const auto match = find_or_report(match_id, client);
    if (!match) return;

    std::lock_guard lock(match->mutex);
    match->touch(now_());
    const auto seat = match->seat_of(client.id);
    if (!seat) {
        client.send(wire::error_message(wire::ErrorCode::NotSeated, "join the match before moving"));
        return;
    }
    try {
        match->session = apply_move(match->session, *seat, row, col);
    } catch (const MoveError& e) {
        client.send(wire::error_message(wire::from_move_error(e.code()), e.what()));
        return;
    }
    spdlog::debug("match {}: {} -> ({}, {})", match->match_id, to_char(*seat), row, col);
    match->broadcast(wire::state_message(match->session));
}

void MatchService::new_game(std::string_view match_id, const ClientHandle& client) {
    const auto match = find_or_report(match_id, client);
    if (!match) return;

    std::lock_guard lock(match->mutex);
    match->touch(now_());
    if (!match->seat_of(client.id)) {
        client.send(wire::error_message(wire::ErrorCode::NotSeated, "only seated players can start a new game"));
        return;
    }
    match->session = reset(match->session);
    match->broadcast(wire::state_message(match->session));
}

void MatchService::handle_disconnect(ConnectionId connection) {
    std::unordered_set<std::string> ids;
    {
        std::lock_guard index_lock(seat_index_mutex_);
        const auto it = seated_in_.find(connection);
        if (it == seated_in_.end()) return;
        ids = std::move(it->second);
        seated_in_.erase(it);
    }
    for (const std::string& id : ids) {
        const auto match = find(id);
        if (!match) continue;
        std::lock_guard lock(match->mutex);
        const auto seat = match->seat_of(connection);
        if (!seat) continue;
        match->seats[slot(*seat)].reset();
        match->touch(now_());
        match->broadcast(wire::opponent_left_message());
        spdlog::debug("match {}: seat {} freed", id, to_char(*seat));
    }
}

void MatchService::handle_message(std::string_view match_id, const ClientHandle& client, std::string_view text) {
    wire::ClientMessage message;
    try {
        message = wire::parse_client_message(text);
    } catch (const wire::MalformedMessage& e) {
        client.send(wire::error_message(wire::ErrorCode::BadRequest, e.what()));
        return;
    }
    if (std::holds_alternative<wire::JoinRequest>(message)) {
        join(match_id, client);
    } else if (const auto* p = std::get_if<wire::PlaceMark>(&message)) {
        submit_move(match_id, client, p->row, p->col);
    } else {
        new_game(match_id, client);
    }
}

std::size_t MatchService::evict_idle_locked(Clock::time_point now) {
    std::vector<std::string> evicted;
    for (auto it = matches_.begin(); it != matches_.end();) {
        if (now - it->second->last_active() > config_.match_ttl) {
            evicted.push_back(it->first);
            it = matches_.erase(it);
        } else {
            ++it;
        }
    }
    if (!evicted.empty()) {
        std::lock_guard index_lock(seat_index_mutex_);
        for (auto& [connection, ids] : seated_in_) {
            for (const std::string& id : evicted) ids.erase(id);
        }
        std::erase_if(seated_in_, [](const auto& entry) { return entry.second.empty(); });
        spdlog::info("evicted {} idle match(es)", evicted.size());
    }
    return evicted.size();
}

std::size_t MatchService::evict_idle() {
    const auto now = now_();
    std::unique_lock lock(store_mutex_);
    return evict_idle_locked(now);
}

std::size_t MatchService::live_matches() const {
    std::shared_lock lock(store_mutex_);
    return matches_.size();
}

std::optional<GameSession> MatchService::snapshot(std::string_view match_id) const {
    const auto match = find(match_id);
    if (!match) return std::nullopt;
    std::lock_guard lock(match->mutex);
    return match->session;
}

std::optional<Player> MatchService::seat_of(std::string_view match_id, ConnectionId connection) const {
    const auto match = find(match_id);
    if (!match) return std::nullopt;
    std::lock_guard lock(match->mutex);
    return match->seat_of(connection);
}

}  // namespace ttt
