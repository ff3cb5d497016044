#include <gtest/gtest.h>

#include <json.hpp>
#include <set>
#include <thread>

#include "ttt/match_service.hpp"

namespace ttt {
namespace {

using json = nlohmann::json;

// Collects every frame sent to one client.
struct Recorder {
    explicit Recorder(ConnectionId id)
        : frames(std::make_shared<std::vector<std::string>>()),
          handle{id, [f = frames](std::string s) { f->push_back(std::move(s)); }} {}

    std::shared_ptr<std::vector<std::string>> frames;
    ClientHandle handle;

    std::size_t size() const { return frames->size(); }
    json last() const { return json::parse(frames->back()); }
    const std::string& last_raw() const { return frames->back(); }
    std::string last_error() const {
        const auto doc = last();
        return doc["type"] == "error" ? doc["code"].get<std::string>() : "";
    }
};

struct FakeClock {
    MatchService::Clock::time_point now{};
    MatchService::NowFn fn() {
        return [this] { return now; };
    }
};

class MatchServiceTest : public ::testing::Test {
protected:
    FakeClock clock;
    MatchService service{MatchServiceConfig{4, std::chrono::seconds(60)}, clock.fn()};
    Recorder x{1};
    Recorder o{2};
    Recorder third{3};

    std::string seated_match() {
        const std::string id = service.create_match();
        service.join(id, x.handle);
        service.join(id, o.handle);
        return id;
    }
};

TEST_F(MatchServiceTest, CreateMatchStartsFresh) {
    const std::string a = service.create_match();
    const std::string b = service.create_match();
    EXPECT_NE(a, b);
    ASSERT_TRUE(service.snapshot(a).has_value());
    EXPECT_EQ(format_board(service.snapshot(a)->board()), ".........");
    EXPECT_EQ(service.snapshot(a)->status(), GameStatus{InProgress{Player::X}});
    EXPECT_EQ(service.live_matches(), 2u);
}

TEST_F(MatchServiceTest, CapacityLimit) {
    for (int i = 0; i < 4; ++i) service.create_match();
    EXPECT_THROW(service.create_match(), CapacityExceeded);
    // Once the others have idled past the TTL, there is room again.
    clock.now += std::chrono::seconds(61);
    EXPECT_NO_THROW(service.create_match());
    EXPECT_EQ(service.live_matches(), 1u);
}

TEST_F(MatchServiceTest, JoinAssignsSeatsInOrder) {
    const std::string id = service.create_match();

    service.join(id, x.handle);
    ASSERT_EQ(x.size(), 2u);
    EXPECT_EQ(json::parse((*x.frames)[0]), json::parse(R"({"type":"joined","seat":"X","match_id":")" + id + "\"}"));
    EXPECT_EQ(x.last()["type"], "state");
    EXPECT_EQ(x.last()["turn"], "X");

    service.join(id, o.handle);
    ASSERT_EQ(o.size(), 2u);
    EXPECT_EQ(json::parse((*o.frames)[0])["seat"], "O");
    // Both seats filled: X is told too.
    ASSERT_EQ(x.size(), 3u);
    EXPECT_EQ(x.last_raw(), o.last_raw());

    service.join(id, third.handle);
    EXPECT_EQ(third.last_error(), "match_full");
    EXPECT_EQ(service.seat_of(id, 1), Player::X);
    EXPECT_EQ(service.seat_of(id, 2), Player::O);
    EXPECT_EQ(service.seat_of(id, 3), std::nullopt);
}

TEST_F(MatchServiceTest, JoinErrors) {
    service.join("nope", x.handle);
    EXPECT_EQ(x.last_error(), "match_not_found");

    const std::string id = service.create_match();
    service.join(id, x.handle);
    service.join(id, x.handle);
    EXPECT_EQ(x.last_error(), "already_seated");
    EXPECT_EQ(service.seat_of(id, 1), Player::X);
    EXPECT_FALSE(service.snapshot(id)->history().size());
}

TEST_F(MatchServiceTest, MoveBroadcastsToBothSeats) {
    const std::string id = seated_match();
    const auto x_before = x.size();
    const auto o_before = o.size();

    service.submit_move(id, x.handle, 0, 0);
    ASSERT_EQ(x.size(), x_before + 1);
    ASSERT_EQ(o.size(), o_before + 1);
    EXPECT_EQ(x.last_raw(), o.last_raw());
    EXPECT_EQ(x.last_raw(), R"({"type":"state","board":"X........","status":"in_progress","turn":"O","ply":1})");
}

TEST_F(MatchServiceTest, ErrorsGoOnlyToTheOffender) {
    const std::string id = seated_match();
    service.submit_move(id, x.handle, 0, 0);
    const auto x_before = x.size();

    service.submit_move(id, o.handle, 0, 0);
    EXPECT_EQ(o.last_error(), "cell_occupied");
    EXPECT_EQ(x.size(), x_before);

    service.submit_move(id, x.handle, 1, 1);
    EXPECT_EQ(x.last_error(), "out_of_turn");
    service.submit_move(id, o.handle, 3, 0);
    EXPECT_EQ(o.last_error(), "out_of_bounds");
    service.submit_move(id, third.handle, 1, 1);
    EXPECT_EQ(third.last_error(), "not_seated");
    service.submit_move("gone", x.handle, 1, 1);
    EXPECT_EQ(x.last_error(), "match_not_found");

    EXPECT_EQ(format_board(service.snapshot(id)->board()), "X........");
}

TEST_F(MatchServiceTest, ScriptedWinThenNewGame) {
    const std::string id = seated_match();
    service.submit_move(id, x.handle, 0, 0);
    service.submit_move(id, o.handle, 1, 0);
    service.submit_move(id, x.handle, 0, 1);
    service.submit_move(id, o.handle, 1, 1);
    service.submit_move(id, x.handle, 0, 2);
    EXPECT_EQ(x.last_raw(), o.last_raw());
    EXPECT_EQ(x.last()["status"], "won");
    EXPECT_EQ(x.last()["winner"], "X");
    EXPECT_EQ(x.last()["line"], json::parse(R"({"kind":"row","index":0})"));

    service.submit_move(id, o.handle, 2, 2);
    EXPECT_EQ(o.last_error(), "game_over");

    service.new_game(id, o.handle);
    EXPECT_EQ(x.last_raw(), o.last_raw());
    EXPECT_EQ(x.last_raw(), R"({"type":"state","board":".........","status":"in_progress","turn":"X","ply":0})");

    service.new_game(id, third.handle);
    EXPECT_EQ(third.last_error(), "not_seated");
}

TEST_F(MatchServiceTest, NewGameMidGame) {
    const std::string id = seated_match();
    service.submit_move(id, x.handle, 1, 1);
    service.new_game(id, x.handle);
    EXPECT_EQ(o.last()["board"], ".........");
    EXPECT_EQ(service.snapshot(id)->ply(), 0);
}

TEST_F(MatchServiceTest, DisconnectFreesSeatAndKeepsState) {
    const std::string id = seated_match();
    service.submit_move(id, x.handle, 0, 0);
    const auto x_before = x.size();

    service.handle_disconnect(x.handle.id);
    EXPECT_EQ(o.last_raw(), R"({"type":"opponent_left"})");
    EXPECT_EQ(x.size(), x_before);
    EXPECT_EQ(format_board(service.snapshot(id)->board()), "X........");
    EXPECT_EQ(service.seat_of(id, 1), std::nullopt);

    service.join(id, third.handle);
    EXPECT_EQ(json::parse((*third.frames)[0])["seat"], "X");
    EXPECT_EQ(third.last()["board"], "X........");
    EXPECT_EQ(third.last_raw(), o.last_raw());

    // The new X can carry on where the old one left off.
    service.submit_move(id, o.handle, 1, 1);
    EXPECT_EQ(third.last()["board"], "X...O....");

    const auto before = o.size();
    service.handle_disconnect(99);
    EXPECT_EQ(o.size(), before);
}

TEST_F(MatchServiceTest, IdleMatchesAreEvicted) {
    const std::string stale = service.create_match();
    clock.now += std::chrono::seconds(40);
    const std::string fresh = service.create_match();
    clock.now += std::chrono::seconds(30);
    EXPECT_EQ(service.evict_idle(), 1u);
    EXPECT_FALSE(service.snapshot(stale).has_value());
    EXPECT_TRUE(service.snapshot(fresh).has_value());

    // Activity keeps a match alive.
    service.join(fresh, x.handle);
    clock.now += std::chrono::seconds(50);
    EXPECT_EQ(service.evict_idle(), 0u);
    service.submit_move(stale, x.handle, 0, 0);
    EXPECT_EQ(x.last_error(), "match_not_found");
}

TEST_F(MatchServiceTest, HandleMessageDispatches) {
    const std::string id = service.create_match();
    service.handle_message(id, x.handle, R"({"type":"join"})");
    service.handle_message(id, o.handle, R"({"type":"join"})");
    service.handle_message(id, x.handle, R"({"type":"place_mark","row":2,"col":2})");
    EXPECT_EQ(o.last()["board"], "........X");
    service.handle_message(id, o.handle, "{oops");
    EXPECT_EQ(o.last_error(), "bad_request");
    service.handle_message(id, o.handle, R"({"type":"new_game"})");
    EXPECT_EQ(x.last()["board"], ".........");
}

// Per-match serialization: concurrent submitters on many matches never
// produce a torn or out-of-order state stream.
TEST(MatchServiceConcurrency, ParallelMatchesStayConsistent) {
    MatchService service;
    constexpr int kMatches = 16;
    std::vector<std::string> ids;
    std::vector<std::unique_ptr<Recorder>> xs;
    std::vector<std::unique_ptr<Recorder>> os;
    for (int i = 0; i < kMatches; ++i) {
        ids.push_back(service.create_match());
        xs.push_back(std::make_unique<Recorder>(100 + i));
        os.push_back(std::make_unique<Recorder>(200 + i));
        service.join(ids.back(), xs.back()->handle);
        service.join(ids.back(), os.back()->handle);
    }

    std::vector<std::thread> threads;
    for (int i = 0; i < kMatches; ++i) {
        // Each seat hammers every cell; only legal moves land.
        for (Recorder* r : {xs[i].get(), os[i].get()}) {
            threads.emplace_back([&service, id = ids[i], r] {
                while (!is_terminal(service.snapshot(id)->status())) {
                    for (int cell = 0; cell < 9; ++cell) service.submit_move(id, r->handle, cell / 3, cell % 3);
                    std::this_thread::yield();
                }
            });
        }
    }
    for (auto& t : threads) t.join();

    for (int i = 0; i < kMatches; ++i) {
        std::vector<std::string> x_states;
        std::vector<std::string> o_states;
        for (const auto& f : *xs[i]->frames) {
            if (json::parse(f)["type"] == "state") x_states.push_back(f);
        }
        for (const auto& f : *os[i]->frames) {
            if (json::parse(f)["type"] == "state") o_states.push_back(f);
        }
        // X saw its own join state before O arrived.
        ASSERT_EQ(x_states.size(), o_states.size() + 1);
        int ply = 0;
        for (std::size_t k = 0; k < o_states.size(); ++k) {
            ASSERT_EQ(o_states[k], x_states[k + 1]);
            const auto doc = json::parse(o_states[k]);
            ASSERT_EQ(doc["ply"].get<int>(), ply++);
            parse_board(doc["board"].get<std::string>());
        }
        const GameSession final_state = *service.snapshot(ids[i]);
        ASSERT_TRUE(is_terminal(final_state.status()));
        ASSERT_EQ(replay(ids[i], moves_of(final_state)), final_state);
    }
}

}  // namespace
}  // namespace ttt
