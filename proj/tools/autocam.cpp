// Command-line entry point: replay traces, generate synthetic traces, compute metrics.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "autocam/errors.hpp"
#include "autocam/session/config.hpp"
#include "autocam/session/generator.hpp"
#include "autocam/session/metrics.hpp"
#include "autocam/session/pipeline.hpp"

using namespace autocam;

namespace {

constexpr int kValidationFailure = 2;

void print_timeline(const SessionRecording& rec) {
    for (const auto& e : rec.timeline())
        std::printf("%9.3f  %-10s %-6s %-8s %s\n", e.t, to_string(e.shot), to_string(e.framing), to_string(e.angle),
                    to_string(e.movement));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"autocam: simulated camera direction pipeline"};
    app.require_subcommand(1);

    std::string trace_path, config_path, out_path;
    bool with_metrics = false;
    auto* replay_cmd = app.add_subcommand("replay", "Replay a trace through the pipeline");
    replay_cmd->add_option("trace", trace_path, "Trace file (JSON lines)")->required();
    replay_cmd->add_option("--config", config_path, "Config overrides (JSON)");
    replay_cmd->add_option("--out", out_path, "Write the recording here");
    replay_cmd->add_flag("--metrics", with_metrics, "Compute metrics, embed them and print them");

    std::string scenario, gen_out;
    std::uint64_t seed = 0;
    auto* gen_cmd = app.add_subcommand("gen-trace", "Generate a synthetic trace");
    gen_cmd->add_option("scenario", scenario, "Scenario name")->required()->check(CLI::IsMember(scenario_names()));
    gen_cmd->add_option("--seed", seed, "Noise seed")->required();
    gen_cmd->add_option("--out", gen_out, "Output file (default stdout)");

    std::string recording_path;
    auto* metrics_cmd = app.add_subcommand("metrics", "Compute metrics from a recording");
    metrics_cmd->add_option("recording", recording_path, "Recording file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kValidationFailure;
    }

    try {
        if (*replay_cmd) {
            const SessionTrace trace = load_trace(trace_path);
            const Json overrides = config_path.empty() ? Json::object() : read_config_document(config_path);
            SessionRecording rec = replay(trace, effective_config(trace, overrides));
            if (with_metrics) rec.metrics = compute_metrics(rec);
            if (!out_path.empty()) save_recording(rec, out_path);
            print_timeline(rec);
            if (with_metrics) std::cout << encode(*rec.metrics).dump(2) << '\n';
        } else if (*gen_cmd) {
            const SessionTrace trace = generate_scenario(scenario, seed);
            if (gen_out.empty()) {
                write_trace(trace, std::cout);
            } else {
                save_trace(trace, gen_out);
            }
        } else if (*metrics_cmd) {
            const SessionRecording rec = load_recording(recording_path);
            std::cout << encode(compute_metrics(rec)).dump(2) << '\n';
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidationFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
