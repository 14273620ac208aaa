// Copyright 2026 The cavtel Authors
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

// cavtel: batch front end. Exit codes: 0 ok, 2 config error, 3 invariant
// breach, 4 truncation breach.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cavtel/commands.hpp"
#include "cavtel/config.hpp"
#include "cavtel/error.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitTruncation = 4;

struct Options {
    std::string config_path;
    std::string out_path;
    bool oracle = false;
    std::uint64_t trials = 0;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> frame;
    bool no_spectator = false;
};

cavtel::RunConfig resolve_config(const Options& o) {
    cavtel::RunConfig cfg = o.config_path.empty() ? cavtel::RunConfig{} : cavtel::load_config(o.config_path);
    if (o.seed) cfg.seed = *o.seed;
    if (o.frame) cfg.frame = cavtel::detail::parse_frame(*o.frame);
    if (o.no_spectator) cfg.spectator_phase_on = false;
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cat-state teleportation between the modes of a lossy bimodal cavity"};
    app.require_subcommand(1);
    Options o;

    const auto add_common = [&o](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "key = value run configuration")->check(CLI::ExistingFile);
        sub->add_option("--out", o.out_path, "output file (default stdout)");
        sub->add_option("--frame", o.frame, "rotating|lab")->check(CLI::IsMember({"rotating", "lab"}));
        sub->add_flag("--no-spectator-phase", o.no_spectator, "ignore the far-mode dispersive phase");
    };

    CLI::App* coeffs = app.add_subcommand("coeffs", "u_ij(t), full and simplified, with deviations");
    add_common(coeffs);
    CLI::App* protocol = app.add_subcommand("protocol", "ideal branch table and optional sampled trials");
    add_common(protocol);
    protocol->add_option("--trials", o.trials, "number of sampled runs");
    protocol->add_option("--seed", o.seed, "seed for sampled runs");
    CLI::App* fid = app.add_subcommand("fidelity", "fidelity of the teleported cat versus time");
    add_common(fid);
    fid->add_flag("--oracle", o.oracle, "also integrate the Fock-basis master equation");
    CLI::App* fig = app.add_subcommand("figure2", "four fidelity curves, alpha = 0.5, 1, 1.5, 2");
    fig->add_option("--out", o.out_path, "output file (default stdout)");
    fig->add_flag("--no-spectator-phase", o.no_spectator, "ignore the far-mode dispersive phase");
    CLI::App* check = app.add_subcommand("oracle-check", "analytic results against the Fock-basis oracle");
    add_common(check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    std::unique_ptr<std::ofstream> file;
    if (!o.out_path.empty()) {
        file = std::make_unique<std::ofstream>(o.out_path, std::ios::binary);
        if (!*file) {
            std::cerr << "error: cannot open output file '" << o.out_path << "'\n";
            return kExitConfig;
        }
    }
    std::ostream& out = file ? *file : std::cout;

    try {
        if (fig->parsed()) {
            cavtel::cli::cmd_figure2(!o.no_spectator, out);
            return 0;
        }
        const cavtel::RunConfig cfg = resolve_config(o);
        if (coeffs->parsed()) {
            cavtel::cli::cmd_coeffs(cfg, out);
        } else if (protocol->parsed()) {
            cavtel::cli::cmd_protocol(cfg, o.trials, out);
        } else if (fid->parsed()) {
            cavtel::cli::cmd_fidelity(cfg, o.oracle, out);
        } else if (check->parsed()) {
            if (!cavtel::cli::cmd_oracle_check(cfg, out)) {
                std::cerr << "error: oracle check failed\n";
                return kExitInvariant;
            }
        }
    } catch (const cavtel::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const cavtel::TruncationBreach& e) {
        std::cerr << "truncation breach: " << e.what() << '\n';
        return kExitTruncation;
    } catch (const cavtel::Error& e) {
        std::cerr << "invariant breach: " << e.what() << '\n';
        return kExitInvariant;
    }
    return 0;
}
