#pragma once

#include <memory>
#include <string>
#include <utility>

#include "autocam/errors.hpp"
#include "autocam/studio/studio.hpp"

namespace autocam::studio {

struct HttpReply {
    int status{200};
    std::string content_type{"application/json"};
    std::string body;
};

// Routing for the plain HTTP endpoints, independent of the transport.
HttpReply handle_http(StudioService& svc, const std::string& method, const std::string& target,
                      const std::string& body);

// Status code for a library error on the wire.
int http_status(ErrorCode code);

// "host:port"; a bare port binds 127.0.0.1.  Throws InvalidConfig.
std::pair<std::string, unsigned short> parse_bind(const std::string& spec);

// HTTP + websocket front end.  Port 0 picks a free port.
class Server {
public:
    Server(StudioService& svc, const std::string& host, unsigned short port);
    ~Server();

    unsigned short port() const;
    void run();    // blocks until stop()
    void start();  // runs on a background thread
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace autocam::studio
