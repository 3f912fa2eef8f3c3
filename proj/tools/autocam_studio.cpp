// Live studio service: HTTP control plane plus a websocket stream per session.
//   AUTOCAM_BIND       host:port to listen on (default 127.0.0.1:8787)
//   AUTOCAM_TRACE_DIR  where live traces are written (unset: not written)
//   AUTOCAM_LOG_LEVEL  trace|debug|info|warn|error (default info)

#include <spdlog/spdlog.h>

#include <csignal>
#include <cstdlib>
#include <pthread.h>

#include "autocam/errors.hpp"
#include "autocam/studio/server.hpp"

namespace {

std::string env_or(const char* name, const char* fallback) {
    const char* v = std::getenv(name);
    return v && *v ? v : fallback;
}

} // namespace

int main() {
    using namespace autocam::studio;
    spdlog::set_pattern("ts=%Y-%m-%dT%H:%M:%S.%e%z level=%l %v");
    spdlog::set_level(spdlog::level::from_str(env_or("AUTOCAM_LOG_LEVEL", "info")));

    // Block the stop signals before any thread starts so only sigwait sees them.
    sigset_t stop_signals;
    sigemptyset(&stop_signals);
    sigaddset(&stop_signals, SIGINT);
    sigaddset(&stop_signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);

    try {
        const auto [host, port] = parse_bind(env_or("AUTOCAM_BIND", "127.0.0.1:8787"));
        StudioService service(env_or("AUTOCAM_TRACE_DIR", ""));
        Server server(service, host, port);
        server.start();
        spdlog::info("event=listening host={} port={} protocol={}", host, server.port(), kProtocolVersion);
        int sig = 0;
        sigwait(&stop_signals, &sig);
        spdlog::info("event=shutdown signal={}", sig);
        server.stop();
    } catch (const autocam::Error& e) {
        spdlog::critical("event=startup_failed code={} message=\"{}\"", autocam::to_string(e.code()), e.what());
        return 2;
    } catch (const std::exception& e) {
        spdlog::critical("event=startup_failed message=\"{}\"", e.what());
        return 1;
    }
    return 0;
}
