// Copyright 2026 The relphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// relphase CLI: scenario-driven runs with machine-readable output.
//
// Exit codes: 0 success, 2 validation failure (bad scenario, bad usage),
// 3 numeric failure (undefined phase, truncation, rank deficiency, ...).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "relphase/scenario.hpp"
#include "relphase/version.hpp"

namespace {

struct VerbOptions {
    std::string scenario_path;
    std::string out_path;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
};

void add_common_options(CLI::App* verb, VerbOptions& opts) {
    verb->add_option("--scenario", opts.scenario_path, "Scenario file to run")
        ->required();
    verb->add_option("--out", opts.out_path,
                     "Output file (stdout when omitted)");
    verb->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"json", "csv-fringe"}))
        ->capture_default_str();
    verb->add_option("--seed", opts.seed,
                     "Seed override for sampled runs (u64)");
}

bool kind_matches_verb(relphase::ScenarioKind kind, const std::string& verb) {
    using relphase::ScenarioKind;
    if (verb == "phase") {
        return kind == ScenarioKind::discrete_phase ||
               kind == ScenarioKind::continuous_phase;
    }
    if (verb == "protocol") return kind == ScenarioKind::protocol;
    if (verb == "uhlmann") return kind == ScenarioKind::uhlmann;
    if (verb == "oracle") return kind == ScenarioKind::model_oracle;
    return false;
}

int run_verb(const std::string& verb, const VerbOptions& opts) {
    std::ifstream in(opts.scenario_path);
    if (!in) {
        std::cerr << "error: cannot open scenario file '" << opts.scenario_path
                  << "'\n";
        return 2;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();

    try {
        const relphase::Scenario scenario =
            relphase::parse_scenario(buffer.str(), opts.seed);
        if (!kind_matches_verb(scenario.kind, verb)) {
            std::cerr << "error: scenario kind does not match the '" << verb
                      << "' verb\n";
            return 2;
        }
        const relphase::RunReport report = relphase::execute(scenario);
        const relphase::OutputFormat format =
            (opts.format == "json") ? relphase::OutputFormat::json
                                    : relphase::OutputFormat::csv_fringe;
        const std::string payload = relphase::emit(report, format);
        if (opts.out_path.empty()) {
            std::cout << payload;
        } else {
            std::ofstream out(opts.out_path, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot write to '" << opts.out_path << "'\n";
                return 2;
            }
            out << payload;
        }
        return 0;
    } catch (const relphase::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == relphase::Error::Kind::validation ? 2 : 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geometric phases of relative states in bipartite quantum "
                 "systems: discrete Bargmann phases, interference-protocol "
                 "simulation and Uhlmann holonomies."};
    app.set_version_flag("--version", relphase::kVersion);
    app.require_subcommand(1);

    VerbOptions phase_opts, protocol_opts, uhlmann_opts, oracle_opts;
    add_common_options(
        app.add_subcommand("phase",
                           "Discrete or continuous relative-state phases"),
        phase_opts);
    add_common_options(
        app.add_subcommand("protocol", "Interference protocol simulation"),
        protocol_opts);
    add_common_options(
        app.add_subcommand("uhlmann", "Mixed-state Uhlmann holonomy"),
        uhlmann_opts);
    add_common_options(
        app.add_subcommand("oracle", "Closed-form model oracles"),
        oracle_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (app.got_subcommand("phase")) return run_verb("phase", phase_opts);
    if (app.got_subcommand("protocol")) return run_verb("protocol", protocol_opts);
    if (app.got_subcommand("uhlmann")) return run_verb("uhlmann", uhlmann_opts);
    if (app.got_subcommand("oracle")) return run_verb("oracle", oracle_opts);
    return 2;
}
