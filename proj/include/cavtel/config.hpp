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

// Flat `key = value` run configuration. '#' starts a comment. Frequencies are
// given in Hz and converted to rad/s here (x 2 pi); damping is given either as
// a lifetime in seconds (gamma11_inv_s, gamma22_inv_s) or as a rate in 1/s
// (gamma12, gamma21).

#ifndef CAVTEL_CONFIG_HPP
#define CAVTEL_CONFIG_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "cavtel/dynamics.hpp"
#include "cavtel/error.hpp"
#include "cavtel/fidelity.hpp"
#include "cavtel/protocol.hpp"
#include "cavtel/states.hpp"

namespace cavtel {

enum class Frame { rotating, lab };

struct RunConfig {
    // mode system
    double gamma11_inv_s = 1e-3;
    double gamma22_inv_s = 0.9e-3;
    double gamma12 = 0.0;
    double gamma21 = 0.0;
    double omega1_Hz = 51.1e9;
    double Delta_Hz = 1e7;
    double delta_Hz = 1e5;
    double g_Hz = 1e4;
    double lamb11_Hz = 0.0;
    double lamb22_Hz = 0.0;
    double lamb12_Hz = 0.0;
    double lamb21_Hz = 0.0;
    // protocol
    double alpha_re = 1.0;
    double alpha_im = 0.0;
    double beta_re = 1.0;
    double beta_im = 0.0;
    double c_plus = std::numbers::sqrt2 / 2.0;
    double c_plus_im = 0.0;
    double c_minus = std::numbers::sqrt2 / 2.0;
    double c_minus_im = 0.0;
    int parity = 1;
    bool spectator_phase_on = true;
    std::optional<double> phase_meas_error;
    std::uint64_t seed = 12345;
    // run
    double t_max_s = 1e-3;
    int n_points = 200;
    double t_tel_s = kTeleportTime;
    Frame frame = Frame::rotating;

    [[nodiscard]] Complex alpha() const { return {alpha_re, alpha_im}; }
    [[nodiscard]] Complex beta() const { return {beta_re, beta_im}; }

    [[nodiscard]] CatSpec target() const {
        return {Complex(c_plus, c_plus_im), Complex(c_minus, c_minus_im), alpha(), parity};
    }

    /// Per-interaction spectator phase, or 0 when switched off.
    [[nodiscard]] double spectator_phase() const {
        return spectator_phase_on ? cavtel::spectator_phase(delta_Hz, Delta_Hz) : 0.0;
    }

    [[nodiscard]] ModeSystem mode_system() const {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        ModeSystem s;
        s.omega1 = two_pi * omega1_Hz;
        s.omega2 = two_pi * (omega1_Hz + Delta_Hz);
        s.gamma11 = 1.0 / gamma11_inv_s;
        s.gamma22 = 1.0 / gamma22_inv_s;
        s.gamma12 = gamma12;
        s.gamma21 = gamma21;
        s.lamb11 = two_pi * lamb11_Hz;
        s.lamb22 = two_pi * lamb22_Hz;
        s.lamb12 = two_pi * lamb12_Hz;
        s.lamb21 = two_pi * lamb21_Hz;
        return s;
    }

    [[nodiscard]] ProtocolConfig protocol_config() const {
        ProtocolConfig p;
        p.alpha = alpha();
        p.beta = beta();
        p.c_plus = {c_plus, c_plus_im};
        p.c_minus = {c_minus, c_minus_im};
        p.parity = parity;
        p.spectator_phase = spectator_phase();
        p.phase_meas_error = phase_meas_error;
        p.rng_seed = seed;
        return p;
    }

    void validate() const {
        if (!(gamma11_inv_s > 0.0) || !(gamma22_inv_s > 0.0)) {
            throw ConfigError("gamma11_inv_s and gamma22_inv_s must be positive");
        }
        if (!(Delta_Hz > 0.0)) throw ConfigError("Delta_Hz must be positive");
        if (!(delta_Hz > 0.0)) throw ConfigError("delta_Hz must be positive");
        if (!(t_max_s > 0.0)) throw ConfigError("t_max_s must be positive");
        if (!(t_tel_s >= 0.0)) throw ConfigError("t_tel_s must be non-negative");
        if (n_points < 2) throw ConfigError("n_points must be at least 2");
        try {
            mode_system().validate();
            protocol_config().validate();
            target().validate();
        } catch (const InvariantBreach& e) {
            throw ConfigError(e.what());
        }
    }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline double parse_double(std::string_view v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
        throw ConfigError("expected a finite number, got '" + std::string(v) + "'");
    }
    return out;
}

template <typename Int>
Int parse_int(std::string_view v) {
    Int out{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ConfigError("expected an integer, got '" + std::string(v) + "'");
    }
    return out;
}

inline bool parse_bool(std::string_view v) {
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw ConfigError("expected true/false, got '" + std::string(v) + "'");
}

inline Frame parse_frame(std::string_view v) {
    if (v == "rotating") return Frame::rotating;
    if (v == "lab") return Frame::lab;
    throw ConfigError("frame must be 'rotating' or 'lab', got '" + std::string(v) + "'");
}

}  // namespace detail

/// Sets one key. Unknown keys are a ConfigError.
inline void set_config_value(RunConfig& c, std::string_view key, std::string_view value) {
    using namespace detail;
    static const std::map<std::string_view, double RunConfig::*> reals{
        {"gamma11_inv_s", &RunConfig::gamma11_inv_s},
        {"gamma22_inv_s", &RunConfig::gamma22_inv_s},
        {"gamma12", &RunConfig::gamma12},
        {"gamma21", &RunConfig::gamma21},
        {"omega1_Hz", &RunConfig::omega1_Hz},
        {"Delta_Hz", &RunConfig::Delta_Hz},
        {"delta_Hz", &RunConfig::delta_Hz},
        {"g_Hz", &RunConfig::g_Hz},
        {"lamb11_Hz", &RunConfig::lamb11_Hz},
        {"lamb22_Hz", &RunConfig::lamb22_Hz},
        {"lamb12_Hz", &RunConfig::lamb12_Hz},
        {"lamb21_Hz", &RunConfig::lamb21_Hz},
        {"alpha_re", &RunConfig::alpha_re},
        {"alpha_im", &RunConfig::alpha_im},
        {"beta_re", &RunConfig::beta_re},
        {"beta_im", &RunConfig::beta_im},
        {"c_plus", &RunConfig::c_plus},
        {"c_plus_im", &RunConfig::c_plus_im},
        {"c_minus", &RunConfig::c_minus},
        {"c_minus_im", &RunConfig::c_minus_im},
        {"t_max_s", &RunConfig::t_max_s},
        {"t_tel_s", &RunConfig::t_tel_s},
    };
    if (const auto it = reals.find(key); it != reals.end()) {
        c.*(it->second) = parse_double(value);
    } else if (key == "parity") {
        c.parity = parse_int<int>(value);
    } else if (key == "n_points") {
        c.n_points = parse_int<int>(value);
    } else if (key == "seed") {
        c.seed = parse_int<std::uint64_t>(value);
    } else if (key == "spectator_phase_on") {
        c.spectator_phase_on = parse_bool(value);
    } else if (key == "phase_meas_error") {
        c.phase_meas_error = parse_double(value);
    } else if (key == "frame") {
        c.frame = parse_frame(value);
    } else {
        throw ConfigError("unknown key '" + std::string(key) + "'");
    }
}

/// Parses a config stream on top of the defaults, then validates. Messages
/// carry `source:line`.
inline RunConfig parse_config(std::istream& in, const std::string& source = "<config>") {
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = detail::trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        const std::string where = source + ":" + std::to_string(lineno) + ": ";
        if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
        const auto key = detail::trim(view.substr(0, eq));
        const auto value = detail::trim(view.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + "empty key");
        try {
            set_config_value(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
    }
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(source + ": " + e.what());
    }
    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in, path);
}

}  // namespace cavtel

#endif  // CAVTEL_CONFIG_HPP
