#include "autocam/studio/server.hpp"

#include <boost/asio/dispatch.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <spdlog/spdlog.h>

#include <chrono>
#include <regex>
#include <thread>

#include "autocam/errors.hpp"

namespace autocam::studio {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

int http_status(ErrorCode code) {
    switch (code) {
    case ErrorCode::UnknownSession: return 404;
    case ErrorCode::InvalidTransition:
    case ErrorCode::StaleSeq: return 409;
    default: return 400;
    }
}

namespace {

HttpReply json_reply(int status, const Json& j) { return {status, "application/json", j.dump()}; }

HttpReply error_reply(const Error& e) {
    return json_reply(http_status(e.code()), {{"error", to_string(e.code())}, {"message", e.what()}});
}

Json parse_body(const std::string& body) {
    if (body.find_first_not_of(" \t\r\n") == std::string::npos) return Json::object();
    try {
        return Json::parse(body);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::MalformedPayload, std::string("body is not JSON: ") + e.what());
    }
}

Json session_info(const LiveSession& s) {
    return {{"session_id", s.id()},
            {"state", to_string(s.state())},
            {"clock", s.manual_clock() ? "manual" : "wall"},
            {"t", static_cast<double>(s.now_us()) / 1e6},
            {"protocol", kProtocolVersion}};
}

const std::regex kSessionPath(R"(^/sessions/([A-Za-z0-9_-]+)(/[a-z]+)?$)");

} // namespace

HttpReply handle_http(StudioService& svc, const std::string& method, const std::string& raw_target,
                      const std::string& body) {
    const std::string target = raw_target.substr(0, raw_target.find('?'));
    try {
        if (target == "/healthz" && method == "GET") return json_reply(200, {{"ok", true}, {"protocol", kProtocolVersion}});
        if (target == "/sessions") {
            if (method == "POST") {
                const std::string id = svc.create_session(parse_body(body));
                return json_reply(201, session_info(*svc.find(id)));
            }
            if (method == "GET") {
                Json list = Json::array();
                for (const auto& id : svc.list()) list.push_back(session_info(*svc.find(id)));
                return json_reply(200, list);
            }
            return json_reply(405, {{"error", "MethodNotAllowed"}, {"message", method + " " + target}});
        }
        std::smatch m;
        if (std::regex_match(target, m, kSessionPath)) {
            const auto session = svc.find(m[1].str());
            const std::string sub = m[2].str();
            if (sub.empty() && method == "GET") return json_reply(200, session_info(*session));
            if (sub == "/control" && method == "POST") {
                const Json j = parse_body(body);
                if (!j.is_object() || !j.contains("action") || !j["action"].is_string())
                    throw Error(ErrorCode::MalformedPayload, "control body needs an \"action\" string");
                const auto action = control_from_string(j["action"].get<std::string>());
                if (!action) throw Error(ErrorCode::MalformedPayload, "unknown action '" + j["action"].get<std::string>() + "'");
                int n = 0;
                if (j.contains("substeps")) {
                    if (!j["substeps"].is_number_integer() || j["substeps"].get<std::int64_t>() < 0 ||
                        j["substeps"].get<std::int64_t>() > 1'000'000)
                        throw Error(ErrorCode::MalformedPayload, "substeps must be 0..1000000");
                    n = j["substeps"].get<int>();
                }
                session->control(*action, n);
                return json_reply(200, session_info(*session));
            }
            if (sub == "/messages" && method == "POST") return json_reply(200, session->ingest(decode_inbound(parse_body(body))));
            if (sub == "/trace" && method == "GET") return {200, "application/x-ndjson", trace_to_string(session->trace())};
            if (sub == "/stream") return json_reply(426, {{"error", "UpgradeRequired"}, {"message", "websocket only"}});
            return json_reply(405, {{"error", "MethodNotAllowed"}, {"message", method + " " + target}});
        }
        return json_reply(404, {{"error", "NotFound"}, {"message", target}});
    } catch (const Error& e) {
        return error_reply(e);
    }
}

std::pair<std::string, unsigned short> parse_bind(const std::string& spec) {
    const auto colon = spec.rfind(':');
    std::string host = colon == std::string::npos ? "127.0.0.1" : spec.substr(0, colon);
    const std::string port = colon == std::string::npos ? spec : spec.substr(colon + 1);
    if (host.empty()) host = "0.0.0.0";
    try {
        std::size_t used = 0;
        const int p = std::stoi(port, &used);
        if (used != port.size() || p < 0 || p > 65535) throw std::out_of_range("port");
        return {host, static_cast<unsigned short>(p)};
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidConfig, "bind address '" + spec + "' is not host:port");
    }
}

namespace {

// One websocket client: a subscriber queue drained on the socket's strand.
class StreamConn : public std::enable_shared_from_this<StreamConn> {
public:
    StreamConn(tcp::socket&& socket, std::shared_ptr<LiveSession> session)
        : ws_(std::move(socket)), session_(std::move(session)) {}

    void start(http::request<http::string_body> req) {
        ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
        ws_.async_accept(req, beast::bind_front_handler(&StreamConn::on_accept, shared_from_this()));
    }

private:
    void on_accept(beast::error_code ec) {
        if (ec) return;
        sub_ = session_->subscribe();
        std::weak_ptr<StreamConn> weak = shared_from_this();
        sub_->set_notify([weak] {
            if (auto self = weak.lock()) net::post(self->ws_.get_executor(), [self] { self->pump(); });
        });
        spdlog::info("event=stream_open session={}", session_->id());
        pump();
        read();
    }

    void read() { ws_.async_read(in_, beast::bind_front_handler(&StreamConn::on_read, shared_from_this())); }

    void on_read(beast::error_code ec, std::size_t) {
        if (ec) return close(ec);
        const std::string text = beast::buffers_to_string(in_.data());
        in_.consume(in_.size());
        std::optional<std::uint64_t> seq;
        try {
            const Inbound msg = decode_inbound(text);
            seq = msg.seq;
            sub_->publish(session_->ingest(msg));
        } catch (const Error& e) {
            spdlog::warn("event=stream_reject session={} code={} message=\"{}\"", session_->id(), to_string(e.code()),
                         e.what());
            sub_->publish(encode_diagnostics(session_->id(), static_cast<double>(session_->now_us()) / 1e6, "error",
                                             to_string(e.code()), e.what(), seq));
        }
        read();
    }

    void pump() {
        if (writing_) return;
        auto next = sub_->pop();
        if (!next) return;
        writing_ = true;
        out_ = std::move(*next);
        ws_.text(true);
        ws_.async_write(net::buffer(out_), beast::bind_front_handler(&StreamConn::on_write, shared_from_this()));
    }

    void on_write(beast::error_code ec, std::size_t) {
        writing_ = false;
        if (ec) return close(ec);
        pump();
    }

    void close(beast::error_code ec) {
        if (!sub_) return;
        session_->unsubscribe(sub_);
        sub_->set_notify(nullptr);
        spdlog::info("event=stream_closed session={} reason=\"{}\" dropped={}", session_->id(), ec.message(),
                     sub_->dropped());
        sub_.reset();
    }

    websocket::stream<beast::tcp_stream> ws_;
    std::shared_ptr<LiveSession> session_;
    std::shared_ptr<Subscriber> sub_;
    beast::flat_buffer in_;
    std::string out_;
    bool writing_{false};
};

class HttpConn : public std::enable_shared_from_this<HttpConn> {
public:
    HttpConn(tcp::socket&& socket, StudioService& svc) : stream_(std::move(socket)), svc_(svc) {}

    void start() { net::dispatch(stream_.get_executor(), beast::bind_front_handler(&HttpConn::read, shared_from_this())); }

private:
    void read() {
        parser_.emplace();
        parser_->body_limit(16 * 1024 * 1024);
        stream_.expires_after(std::chrono::seconds(30));
        http::async_read(stream_, buf_, *parser_, beast::bind_front_handler(&HttpConn::on_read, shared_from_this()));
    }

    void on_read(beast::error_code ec, std::size_t) {
        if (ec) {
            stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
            return;
        }
        auto req = parser_->release();
        const std::string target(req.target());
        if (websocket::is_upgrade(req)) {
            std::smatch m;
            static const std::regex stream_path(R"(^/sessions/([A-Za-z0-9_-]+)/stream$)");
            std::shared_ptr<LiveSession> session;
            HttpReply fail;
            if (!std::regex_match(target, m, stream_path)) {
                fail = {404, "application/json", Json{{"error", "NotFound"}, {"message", target}}.dump()};
            } else {
                try {
                    session = svc_.find(m[1].str());
                } catch (const Error& e) {
                    fail = {http_status(e.code()), "application/json",
                            Json{{"error", to_string(e.code())}, {"message", e.what()}}.dump()};
                }
            }
            if (session) {
                stream_.expires_never();
                std::make_shared<StreamConn>(stream_.release_socket(), std::move(session))->start(std::move(req));
                return;
            }
            return write(req, std::move(fail), false);
        }
        const auto t0 = std::chrono::steady_clock::now();
        HttpReply reply = handle_http(svc_, std::string(req.method_string()), target, req.body());
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        spdlog::info("event=http method={} path={} status={} ms={:.2f}", std::string(req.method_string()), target,
                     reply.status, ms);
        write(req, std::move(reply), req.keep_alive());
    }

    void write(const http::request<http::string_body>& req, HttpReply reply, bool keep_alive) {
        auto res = std::make_shared<http::response<http::string_body>>(static_cast<http::status>(reply.status),
                                                                        req.version());
        res->set(http::field::server, "autocam-studio");
        res->set(http::field::content_type, reply.content_type);
        res->keep_alive(keep_alive);
        res->body() = std::move(reply.body);
        res->prepare_payload();
        http::async_write(stream_, *res, [self = shared_from_this(), res](beast::error_code ec, std::size_t) {
            if (ec || !res->keep_alive()) {
                self->stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
                return;
            }
            self->read();
        });
    }

    beast::tcp_stream stream_;
    StudioService& svc_;
    beast::flat_buffer buf_;
    std::optional<http::request_parser<http::string_body>> parser_;
};

} // namespace

struct Server::Impl {
    StudioService& svc;
    net::io_context ioc{1};
    tcp::acceptor acceptor{ioc};
    std::thread thread;

    explicit Impl(StudioService& s) : svc(s) {}

    void accept() {
        acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
            if (ec == net::error::operation_aborted) return;
            if (!ec) std::make_shared<HttpConn>(std::move(socket), svc)->start();
            accept();
        });
    }
};

Server::Server(StudioService& svc, const std::string& host, unsigned short port) : impl_(std::make_unique<Impl>(svc)) {
    beast::error_code ec;
    const auto address = net::ip::make_address(host, ec);
    if (ec) throw Error(ErrorCode::InvalidConfig, "bad bind host '" + host + "'");
    const tcp::endpoint ep{address, port};
    impl_->acceptor.open(ep.protocol());
    impl_->acceptor.set_option(net::socket_base::reuse_address(true));
    impl_->acceptor.bind(ep, ec);
    if (ec) throw Error(ErrorCode::InvalidConfig, "cannot bind " + host + ":" + std::to_string(port) + ": " + ec.message());
    impl_->acceptor.listen();
    impl_->accept();
}

Server::~Server() { stop(); }

unsigned short Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::run() { impl_->ioc.run(); }

void Server::start() {
    impl_->thread = std::thread([this] { impl_->ioc.run(); });
}

void Server::stop() {
    net::post(impl_->ioc, [this] {
        beast::error_code ec;
        impl_->acceptor.close(ec);
    });
    impl_->ioc.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
}

} // namespace autocam::studio
