// antibunch: simulate anti-bunched-light experiments and analyze time-tag
// streams. Subcommands: fock, simulate, analyze, reproduce.
//
// Exit codes: 0 success, 1 validation error (bad config/arguments/file
// format), 2 runtime error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "antibunch/config_io.hpp"
#include "antibunch/scenarios.hpp"

using namespace antibunch;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::optional<uint64_t> seed;
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON run configuration");
    cmd->add_option("--out", args.out_dir, "output directory (overrides config)");
    cmd->add_option("--seed", args.seed, "seed override");
    cmd->add_option("--threads", args.threads, "worker threads")
        ->check(CLI::Range(1, 256));
}

RunConfig load_config(const CommonArgs& args, Scenario fallback) {
    RunConfig config;
    if (!args.config_path.empty()) {
        std::ifstream in(args.config_path);
        if (!in) throw validation_error("cannot open config file " + args.config_path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        config = parse_run_config(buffer.str());
    } else {
        config = default_run_config(fallback);
    }
    if (!args.out_dir.empty()) config.output_dir = args.out_dir;
    if (args.seed) config.source.seed = *args.seed;
    return config;
}

void report(const ScenarioResult& result) {
    std::cout << "summary: " << result.summary_path.string() << "\n";
    for (const auto& check : result.summary.at("checks")) {
        std::cout << (check.at("pass").get<bool>() ? "  [ok]   " : "  [FAIL] ")
                  << check.at("name").get<std::string>() << " = "
                  << check.at("value").dump() << " (" << check.at("threshold").get<std::string>()
                  << ")\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"anti-bunched light simulator and time-tag analyzer"};
    app.require_subcommand(1);

    CommonArgs fock_args, sim_args, analyze_args, repro_args;
    std::string scenario_name;
    std::string tags_a, tags_b;

    CLI::App* fock = app.add_subcommand("fock", "squeezed-coherent g2 sweep table");
    add_common(fock, fock_args);

    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "generate tag streams for a configured source");
    add_common(simulate_cmd, sim_args);

    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "correlate two tag files and emit tables");
    analyze_cmd->add_option("tags_a", tags_a, "channel-a tag file")->required();
    analyze_cmd->add_option("tags_b", tags_b, "channel-b tag file")->required();
    add_common(analyze_cmd, analyze_args);

    CLI::App* repro = app.add_subcommand(
        "reproduce", "run a canned scenario: fock_sweep|fig2|fig3|fig4|scaling|path_ent");
    repro->add_option("scenario", scenario_name,
                      "scenario name (omit when --config carries one)");
    add_common(repro, repro_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // argument validation failure
    }

    try {
        if (fock->parsed()) {
            const RunConfig config = load_config(fock_args, Scenario::fock_sweep);
            report(run_fock_sweep(config, {fock_args.threads}));
        } else if (simulate_cmd->parsed()) {
            if (sim_args.config_path.empty())
                throw validation_error("simulate requires --config with a source block");
            const RunConfig config = load_config(sim_args, Scenario::simulate);
            report(run_simulate(config, {sim_args.threads}));
        } else if (analyze_cmd->parsed()) {
            const RunConfig config = load_config(analyze_args, Scenario::analyze);
            report(run_analyze(config, tags_a, tags_b, {analyze_args.threads}));
        } else if (repro->parsed()) {
            RunConfig config;
            if (!scenario_name.empty()) {
                const Scenario scenario = scenario_from_string(scenario_name);
                config = default_run_config(scenario);
                if (!repro_args.config_path.empty()) {
                    config = load_config(repro_args, scenario);
                    if (config.scenario != scenario)
                        throw validation_error(
                            "scenario argument disagrees with the config file");
                }
                if (!repro_args.out_dir.empty()) config.output_dir = repro_args.out_dir;
                if (repro_args.seed) config.source.seed = *repro_args.seed;
            } else {
                if (repro_args.config_path.empty())
                    throw validation_error("reproduce needs a scenario name or --config");
                config = load_config(repro_args, Scenario::fig3);
            }
            report(run_scenario(config, {repro_args.threads}));
        }
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
