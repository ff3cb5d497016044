#include "ttt/server.hpp"

#include <boost/asio/dispatch.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/signal_set.hpp>
#include <boost/asio/steady_timer.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <deque>
#include <json.hpp>
#include <thread>
#include <vector>

namespace ttt {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

constexpr std::size_t kMaxFrameBytes = 4096;
constexpr std::string_view kWsPrefix = "/ws/";

class WsSession : public std::enable_shared_from_this<WsSession> {
public:
    WsSession(tcp::socket&& socket, MatchService& service, std::string match_id, ConnectionId id)
        : ws_(std::move(socket)), service_(service), match_id_(std::move(match_id)), id_(id) {}

    void run(http::request<http::string_body> req) {
        beast::get_lowest_layer(ws_).expires_never();
        ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
        ws_.read_message_max(kMaxFrameBytes);
        ws_.async_accept(req, beast::bind_front_handler(&WsSession::on_accept, shared_from_this()));
    }

private:
    void on_accept(beast::error_code ec) {
        if (ec) {
            spdlog::debug("websocket accept failed: {}", ec.message());
            return;
        }
        std::weak_ptr<WsSession> weak = shared_from_this();
        handle_ = ClientHandle{id_, [weak](std::string frame) {
                                   if (auto self = weak.lock()) {
                                       net::post(self->ws_.get_executor(),
                                                 [self, f = std::move(frame)]() mutable { self->enqueue(std::move(f)); });
                                   }
                               }};
        spdlog::debug("connection {} opened for match {}", id_, match_id_);
        do_read();
    }

    void do_read() {
        ws_.async_read(buffer_, beast::bind_front_handler(&WsSession::on_read, shared_from_this()));
    }

    void on_read(beast::error_code ec, std::size_t) {
        if (ec) {
            spdlog::debug("connection {} closed: {}", id_, ec.message());
            service_.handle_disconnect(id_);
            return;
        }
        const std::string text = beast::buffers_to_string(buffer_.data());
        buffer_.consume(buffer_.size());
        service_.handle_message(match_id_, handle_, text);
        do_read();
    }

    void enqueue(std::string frame) {
        outbox_.push_back(std::move(frame));
        if (outbox_.size() == 1) do_write();
    }

    void do_write() {
        ws_.text(true);
        ws_.async_write(net::buffer(outbox_.front()),
                        beast::bind_front_handler(&WsSession::on_write, shared_from_this()));
    }

    void on_write(beast::error_code ec, std::size_t) {
        if (ec) {
            outbox_.clear();
            return;
        }
        outbox_.pop_front();
        if (!outbox_.empty()) do_write();
    }

    websocket::stream<beast::tcp_stream> ws_;
    beast::flat_buffer buffer_;
    std::deque<std::string> outbox_;
    MatchService& service_;
    std::string match_id_;
    ConnectionId id_;
    ClientHandle handle_;
};

using Response = http::response<http::string_body>;

Response json_response(const http::request<http::string_body>& req, http::status status, const nlohmann::json& body) {
    Response res{status, req.version()};
    res.set(http::field::content_type, "application/json");
    res.set(http::field::access_control_allow_origin, "*");
    res.keep_alive(req.keep_alive());
    res.body() = body.dump();
    res.prepare_payload();
    return res;
}

Response route(const http::request<http::string_body>& req, MatchService& service) {
    const std::string_view target(req.target().data(), req.target().size());
    const std::string_view path = target.substr(0, target.find('?'));

    if (req.method() == http::verb::options) {
        Response res{http::status::no_content, req.version()};
        res.set(http::field::access_control_allow_origin, "*");
        res.set(http::field::access_control_allow_methods, "GET, POST, OPTIONS");
        res.set(http::field::access_control_allow_headers, "Content-Type");
        res.keep_alive(req.keep_alive());
        res.prepare_payload();
        return res;
    }
    if (path == "/healthz" && req.method() == http::verb::get) {
        return json_response(req, http::status::ok, {{"status", "ok"}});
    }
    if (path == "/matches") {
        if (req.method() != http::verb::post) {
            return json_response(req, http::status::method_not_allowed, {{"error", "method_not_allowed"}});
        }
        try {
            return json_response(req, http::status::created, {{"match_id", service.create_match()}});
        } catch (const CapacityExceeded&) {
            return json_response(req, http::status::service_unavailable, {{"error", "capacity_exceeded"}});
        }
    }
    return json_response(req, http::status::not_found, {{"error", "not_found"}});
}

class HttpSession : public std::enable_shared_from_this<HttpSession> {
public:
    HttpSession(tcp::socket&& socket, MatchService& service, std::atomic<ConnectionId>& next_id)
        : stream_(std::move(socket)), service_(service), next_id_(next_id) {}

    void run() {
        net::dispatch(stream_.get_executor(), beast::bind_front_handler(&HttpSession::do_read, shared_from_this()));
    }

private:
    void do_read() {
        req_ = {};
        stream_.expires_after(std::chrono::seconds(30));
        http::async_read(stream_, buffer_, req_, beast::bind_front_handler(&HttpSession::on_read, shared_from_this()));
    }

    void on_read(beast::error_code ec, std::size_t) {
        if (ec == http::error::end_of_stream) {
            stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
            return;
        }
        if (ec) return;

        if (websocket::is_upgrade(req_)) {
            const std::string_view target(req_.target().data(), req_.target().size());
            const std::string_view path = target.substr(0, target.find('?'));
            if (path.starts_with(kWsPrefix) && path.size() > kWsPrefix.size()) {
                std::make_shared<WsSession>(stream_.release_socket(), service_,
                                            std::string(path.substr(kWsPrefix.size())), ++next_id_)
                    ->run(std::move(req_));
                return;
            }
        }
        send(route(req_, service_));
    }

    void send(Response res) {
        auto owned = std::make_shared<Response>(std::move(res));
        http::async_write(stream_, *owned, [self = shared_from_this(), owned](beast::error_code ec, std::size_t) {
            if (ec) return;
            if (owned->need_eof()) {
                self->stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
                return;
            }
            self->do_read();
        });
    }

    beast::tcp_stream stream_;
    beast::flat_buffer buffer_;
    http::request<http::string_body> req_;
    MatchService& service_;
    std::atomic<ConnectionId>& next_id_;
};

}  // namespace

struct Server::Impl {
    explicit Impl(ServerConfig cfg)
        : config(std::move(cfg)),
          service(config.service),
          ioc(static_cast<int>(std::max(1u, config.threads))),
          acceptor(ioc),
          evict_timer(ioc),
          signals(ioc) {}

    void do_accept() {
        acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
            if (ec) {
                if (ec != net::error::operation_aborted) spdlog::warn("accept failed: {}", ec.message());
            } else {
                std::make_shared<HttpSession>(std::move(socket), service, next_id)->run();
            }
            if (acceptor.is_open()) do_accept();
        });
    }

    void schedule_eviction() {
        const auto ttl = std::chrono::duration_cast<std::chrono::seconds>(config.service.match_ttl);
        const auto period = std::clamp(ttl / 2, std::chrono::seconds(1), std::chrono::seconds(60));
        evict_timer.expires_after(period);
        evict_timer.async_wait([this](beast::error_code ec) {
            if (ec) return;
            service.evict_idle();
            schedule_eviction();
        });
    }

    ServerConfig config;
    MatchService service;  // outlives every session held by ioc
    net::io_context ioc;
    tcp::acceptor acceptor;
    net::steady_timer evict_timer;
    net::signal_set signals;
    std::atomic<ConnectionId> next_id{0};
    std::vector<std::thread> threads;
};

Server::Server(ServerConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {
    beast::error_code ec;
    const auto address = net::ip::make_address(impl_->config.host, ec);
    if (ec) throw BindError("invalid host address '" + impl_->config.host + "': " + ec.message());
    const tcp::endpoint endpoint{address, impl_->config.port};

    auto& acceptor = impl_->acceptor;
    const auto fail = [&](const char* what) {
        throw BindError(std::string(what) + " " + impl_->config.host + ":" + std::to_string(impl_->config.port) +
                        ": " + ec.message());
    };
    acceptor.open(endpoint.protocol(), ec);
    if (ec) fail("cannot open socket for");
    acceptor.set_option(net::socket_base::reuse_address(true), ec);
    acceptor.bind(endpoint, ec);
    if (ec) fail("cannot bind");
    acceptor.listen(net::socket_base::max_listen_connections, ec);
    if (ec) fail("cannot listen on");
}

Server::~Server() {
    stop();
    for (auto& t : impl_->threads) {
        if (t.joinable()) t.join();
    }
}

void Server::start() {
    impl_->do_accept();
    impl_->schedule_eviction();
    impl_->signals.add(SIGINT);
    impl_->signals.add(SIGTERM);
    impl_->signals.async_wait([this](beast::error_code ec, int) {
        if (!ec) stop();
    });
    const unsigned n = std::max(1u, impl_->config.threads);
    for (unsigned i = 0; i < n; ++i) impl_->threads.emplace_back([this] { impl_->ioc.run(); });
    spdlog::info("listening on {}:{}", impl_->config.host, port());
}

void Server::wait() {
    for (auto& t : impl_->threads) {
        if (t.joinable()) t.join();
    }
}

void Server::stop() { impl_->ioc.stop(); }

std::uint16_t Server::port() const noexcept {
    beast::error_code ec;
    const auto ep = impl_->acceptor.local_endpoint(ec);
    return ec ? 0 : ep.port();
}

MatchService& Server::service() noexcept { return impl_->service; }

}  // namespace ttt
