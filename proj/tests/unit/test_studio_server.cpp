#include <doctest.h>

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include <chrono>

#include "autocam/session/generator.hpp"
#include "autocam/studio/server.hpp"

using namespace autocam;
using namespace autocam::studio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

struct Reply {
    int status;
    Json body;
};

Reply request(unsigned short port, http::verb verb, const std::string& target, const std::string& body = {}) {
    net::io_context ioc;
    beast::tcp_stream stream(ioc);
    stream.connect(tcp::endpoint(net::ip::make_address("127.0.0.1"), port));
    http::request<http::string_body> req{verb, target, 11};
    req.set(http::field::host, "127.0.0.1");
    req.body() = body;
    req.prepare_payload();
    http::write(stream, req);
    beast::flat_buffer buf;
    http::response<http::string_body> res;
    http::read(stream, buf, res);
    beast::error_code ec;
    stream.socket().shutdown(tcp::socket::shutdown_both, ec);
    return {static_cast<int>(res.result_int()), res.body().empty() ? Json() : Json::parse(res.body())};
}

} // namespace

TEST_CASE("routing maps errors onto status codes") {
    StudioService svc;
    CHECK(handle_http(svc, "GET", "/healthz", "").status == 200);
    CHECK(handle_http(svc, "POST", "/sessions", "{not json").status == 400);
    CHECK(handle_http(svc, "POST", "/sessions", R"({"clock":"manual"})").status == 201);
    CHECK(handle_http(svc, "POST", "/sessions/s1/control", R"({"action":"pause"})").status == 409);
    CHECK(handle_http(svc, "POST", "/sessions/s1/control", R"({"action":"jump"})").status == 400);
    CHECK(handle_http(svc, "POST", "/sessions/s1/control", R"({"action":"run"})").status == 200);
    CHECK(handle_http(svc, "POST", "/sessions/zz/control", R"({"action":"run"})").status == 404);
    CHECK(handle_http(svc, "POST", "/sessions/s1/control", R"({"action":"step","substeps":-3})").status == 400);
    CHECK(handle_http(svc, "GET", "/elsewhere", "").status == 404);
    CHECK(handle_http(svc, "DELETE", "/sessions", "").status == 405);

    const std::string msg =
        R"({"kind":"utterance","session_id":"s1","seq":4,"timestamp":0.0,"payload":{"text":"look closer"}})";
    CHECK(handle_http(svc, "POST", "/sessions/s1/messages", msg).status == 200);
    CHECK(handle_http(svc, "POST", "/sessions/s1/messages", msg).status == 409);  // same seq again
    const HttpReply trace = handle_http(svc, "GET", "/sessions/s1/trace", "");
    CHECK(trace.content_type == "application/x-ndjson");
    std::istringstream in(trace.body);
    CHECK(read_trace(in).records.size() == 1);

    CHECK(parse_bind("0.0.0.0:9000") == std::pair<std::string, unsigned short>{"0.0.0.0", 9000});
    CHECK(parse_bind("9001").first == "127.0.0.1");
    CHECK_THROWS_AS(parse_bind("localhost:http"), Error);
}

TEST_CASE("service over real sockets: create, stream, ingest, control") {
    StudioService svc;
    Server server(svc, "127.0.0.1", 0);
    server.start();
    const unsigned short port = server.port();

    const Reply created = request(port, http::verb::post, "/sessions", R"({"clock":"manual"})");
    REQUIRE(created.status == 201);
    const std::string id = created.body["session_id"];

    net::io_context ioc;
    websocket::stream<beast::tcp_stream> ws(ioc);
    beast::get_lowest_layer(ws).connect(tcp::endpoint(net::ip::make_address("127.0.0.1"), port));
    ws.handshake("127.0.0.1", "/sessions/" + id + "/stream");
    auto next = [&] {
        beast::flat_buffer b;
        ws.read(b);
        return Json::parse(beast::buffers_to_string(b.data()));
    };
    const Json first = next();
    CHECK(first["kind"] == "director_snapshot");
    CHECK(first["seq"] == 1);
    CHECK(first["payload"]["shot"] == "action");
    CHECK(next()["kind"] == "rig_state");

    // Controls and inputs over the socket.
    auto send = [&](const Inbound& m) { ws.write(net::buffer(encode_inbound(m).dump())); };
    send({id, 1, 0.0, SessionControl{ControlAction::Run, 0}});
    std::uint64_t expect = 3;
    auto until = [&](const std::string& kind) {
        for (int i = 0; i < 10000; ++i) {
            const Json m = next();
            REQUIRE(m["seq"] == expect++);
            if (m["kind"] == kind) return m;
        }
        FAIL("no " << kind);
        return Json();
    };
    CHECK(until("cue_ack")["payload"]["accepted"] == "session_control");
    send({id, 2, 0.0, seated_rest_frame(0.0)});
    CHECK(until("cue_ack")["payload"]["in_reply_to"] == 2);
    send({id, 3, 0.1, Utterance{0.1, "take a closer look"}});
    until("cue_ack");
    send({id, 4, 0.0, SessionControl{ControlAction::Step, 60}});
    const Json snap = until("director_snapshot");
    CHECK(snap["payload"]["framing"] == "tight");

    // Rejections come back as diagnostics on the same stream.
    ws.write(net::buffer(std::string(R"({"kind":"utterance","session_id":")") + id +
                         R"(","seq":2,"timestamp":0.7,"payload":{"text":"again"}})"));
    const Json diag = until("diagnostics");
    CHECK(diag["payload"]["code"] == "StaleSeq");
    CHECK(diag["payload"]["in_reply_to"] == 2);
    ws.write(net::buffer(std::string("{oops")));
    CHECK(until("diagnostics")["payload"]["code"] == "MalformedPayload");

    ws.close(websocket::close_code::normal);

    // No such session: the upgrade is refused with 404.
    websocket::stream<beast::tcp_stream> ws2(ioc);
    beast::get_lowest_layer(ws2).connect(tcp::endpoint(net::ip::make_address("127.0.0.1"), port));
    websocket::response_type res;
    beast::error_code ec;
    ws2.handshake(res, "127.0.0.1", "/sessions/nope/stream", ec);
    CHECK(ec == websocket::error::upgrade_declined);
    CHECK(request(port, http::verb::get, "/sessions/nope/stream").status == 404);
    CHECK(request(port, http::verb::get, "/sessions/" + id + "/stream").status == 426);

    CHECK(request(port, http::verb::get, "/sessions/" + id).body["t"].get<double>() == doctest::Approx(0.6));
    server.stop();
}

TEST_CASE("wall clock session streams telemetry at the servo rate") {
    StudioService svc;
    Server server(svc, "127.0.0.1", 0);
    server.start();
    const std::string id = request(server.port(), http::verb::post, "/sessions", "{}").body["session_id"];

    net::io_context ioc;
    websocket::stream<beast::tcp_stream> ws(ioc);
    beast::get_lowest_layer(ws).connect(tcp::endpoint(net::ip::make_address("127.0.0.1"), server.port()));
    ws.handshake("127.0.0.1", "/sessions/" + id + "/stream");
    REQUIRE(request(server.port(), http::verb::post, "/sessions/" + id + "/control", R"({"action":"run"})").status == 200);
    const auto t0 = std::chrono::steady_clock::now();
    int rig = 0;
    std::uint64_t seq = 0;
    while (std::chrono::steady_clock::now() - t0 < std::chrono::milliseconds(400)) {
        beast::flat_buffer b;
        ws.read(b);
        const Json m = Json::parse(beast::buffers_to_string(b.data()));
        CHECK(m["seq"].get<std::uint64_t>() == ++seq);
        if (m["kind"] == "rig_state") ++rig;
    }
    // 20 Hz nominal; allow for a slow shared machine.
    CHECK(rig >= 4);
    request(server.port(), http::verb::post, "/sessions/" + id + "/control", R"({"action":"pause"})");
    ws.close(websocket::close_code::normal);
    server.stop();
}
