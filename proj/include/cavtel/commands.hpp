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

// Subcommand bodies behind the `cavtel` tool. Each writes to a stream so it can
// be driven from tests as well as from main().

#ifndef CAVTEL_COMMANDS_HPP
#define CAVTEL_COMMANDS_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "cavtel/config.hpp"
#include "cavtel/dynamics.hpp"
#include "cavtel/fidelity.hpp"
#include "cavtel/oracle.hpp"
#include "cavtel/protocol.hpp"
#include "cavtel/states.hpp"

namespace cavtel::cli {

/// 17 significant digits, '.' decimal, C locale. Negative zero prints as 0.
inline std::string format_number(double x) {
    if (x == 0.0) x = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void header(std::initializer_list<std::string> names) { header(std::vector<std::string>(names)); }

    void header(const std::vector<std::string>& names) {
        for (std::size_t i = 0; i < names.size(); ++i) out_ << (i ? "," : "") << names[i];
        out_ << '\n';
    }

    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
        out_ << '\n';
    }

private:
    std::ostream& out_;
};

inline std::vector<double> time_grid(double t_max, int n_points) {
    std::vector<double> t(n_points);
    for (int i = 0; i < n_points; ++i) t[i] = t_max * static_cast<double>(i) / static_cast<double>(n_points - 1);
    return t;
}

/// Full and simplified u_ij(t) side by side with |full - simplified| per entry.
inline void cmd_coeffs(const RunConfig& cfg, std::ostream& out) {
    const ModeSystem sys = cfg.mode_system();
    const bool rotating = cfg.frame == Frame::rotating;
    const DrainParams p = drain_params(sys);
    CsvWriter csv(out);
    std::vector<std::string> cols{"t"};
    for (const char* which : {"full", "simp"})
        for (const char* e : {"u11", "u12", "u21", "u22"})
            for (const char* part : {"re", "im"}) cols.push_back(std::string(which) + "_" + e + "_" + part);
    for (const char* e : {"u11", "u12", "u21", "u22"}) cols.push_back(std::string("dev_") + e);
    csv.header(cols);
    for (double t : time_grid(cfg.t_max_s, cfg.n_points)) {
        const EvolutionMatrix full = rotating ? u_full_rotating(sys, t) : u_full(p, t);
        const EvolutionMatrix simp = u_simplified(sys, t, rotating);
        std::vector<double> row{t};
        for (const EvolutionMatrix* u : {&full, &simp})
            for (Complex z : {u->u11, u->u12, u->u21, u->u22}) {
                row.push_back(z.real());
                row.push_back(z.imag());
            }
        row.push_back(std::abs(full.u11 - simp.u11));
        row.push_back(std::abs(full.u12 - simp.u12));
        row.push_back(std::abs(full.u21 - simp.u21));
        row.push_back(std::abs(full.u22 - simp.u22));
        csv.row(row);
    }
}

/// Expected reported frequency of each branch once misreads are included.
inline std::array<double, 4> reported_probabilities(const std::vector<BranchOutcome>& table, double error_prob) {
    std::array<double, 4> exact{};
    for (const BranchOutcome& b : table) exact[branch_index(b.atom, b.field_sign)] = b.probability;
    std::array<double, 4> out{};
    for (int a = 0; a < 2; ++a) {
        const double plus = exact[2 * a];
        const double minus = exact[2 * a + 1];
        out[2 * a] = plus * (1.0 - error_prob) + minus * error_prob;
        out[2 * a + 1] = minus * (1.0 - error_prob) + plus * error_prob;
    }
    return out;
}

inline void cmd_protocol(const RunConfig& cfg, std::uint64_t trials, std::ostream& out) {
    const ProtocolConfig pc = cfg.protocol_config();
    const std::vector<BranchOutcome> table = run_protocol(pc);
    const double eps = pc.error_probability();

    out << "# branch table\n";
    out << "alpha_re,alpha_im,beta_re,beta_im,spectator_phase,misread_probability\n";
    out << format_number(pc.alpha.real()) << ',' << format_number(pc.alpha.imag()) << ','
        << format_number(pc.beta.real()) << ',' << format_number(pc.beta.imag()) << ','
        << format_number(pc.spectator_phase) << ',' << format_number(eps) << '\n';
    out << "atom,field_sign,classification,probability,delivered_fidelity\n";
    double total = 0.0;
    double success = 0.0;
    for (const BranchOutcome& b : table) {
        out << to_string(b.atom) << ',' << (b.field_sign > 0 ? "+1" : "-1") << ',' << to_string(b.classification)
            << ',' << format_number(b.probability) << ',' << format_number(b.delivered_fidelity) << '\n';
        total += b.probability;
        if (b.classification != Classification::failure) success += b.probability;
    }
    if (std::abs(total - 1.0) > 1e-12) throw InvariantBreach("protocol: branch probabilities do not sum to 1");
    out << "probability_sum," << format_number(total) << '\n';
    out << "total_success," << format_number(success) << '\n';

    if (trials > 0) {
        const auto counts = sample_trials(pc, trials);
        const auto expected = reported_probabilities(table, eps);
        out << "# sampled, " << trials << " trials, seed " << pc.rng_seed << '\n';
        out << "atom,reported_sign,count,frequency,expected,sigma\n";
        for (AtomLevel atom : {AtomLevel::g, AtomLevel::e}) {
            for (int sign : {+1, -1}) {
                const std::size_t i = branch_index(atom, sign);
                const double n = static_cast<double>(trials);
                const double sigma = std::sqrt(expected[i] * (1.0 - expected[i]) / n);
                out << to_string(atom) << ',' << (sign > 0 ? "+1" : "-1") << ',' << counts[i] << ','
                    << format_number(static_cast<double>(counts[i]) / n) << ',' << format_number(expected[i]) << ','
                    << format_number(sigma) << '\n';
            }
        }
    }
}

/// Single-mode oracle fidelity along `times`, stepping the Lindblad solver
/// from one grid point to the next.
inline std::vector<double> oracle_fidelity_series(const CatSpec& target, double mean_gamma,
                                                  const std::vector<double>& times, double spectator_total,
                                                  double lab_omega = 0.0) {
    const int n_max = oracle::truncation_for(std::abs(target.alpha));
    const oracle::LindbladSpec spec = oracle::single_mode_spec(n_max, mean_gamma);
    oracle::FockDensity rho = oracle::rotate_phase(
        oracle::FockDensity::pure(oracle::cat_to_fock(target, n_max), {n_max + 1}), spectator_total);
    std::vector<double> out;
    double now = 0.0;
    for (double t : times) {
        rho = oracle::evolve_lindblad(rho, spec, t - now);
        now = t;
        const oracle::FockDensity view = lab_omega == 0.0 ? rho : oracle::rotate_phase(rho, -lab_omega * t);
        out.push_back(oracle::oracle_fidelity(view, target));
    }
    return out;
}

inline void cmd_fidelity(const RunConfig& cfg, bool with_oracle, std::ostream& out) {
    const ModeSystem sys = cfg.mode_system();
    const CatSpec target = cfg.target();
    CurveOptions opts;
    opts.rotating_frame = cfg.frame == Frame::rotating;
    opts.spectator_phase_total = 2.0 * cfg.spectator_phase();
    const FidelityCurve curve = fidelity_curve(target, sys, cfg.t_max_s, cfg.n_points, opts);

    CsvWriter csv(out);
    if (!with_oracle) {
        csv.header({"t", "F_analytic"});
        for (std::size_t i = 0; i < curve.times.size(); ++i) csv.row({curve.times[i], curve.values[i]});
        return;
    }
    const std::vector<double> oracle_f = oracle_fidelity_series(
        target, sys.mean_damping(), curve.times, opts.spectator_phase_total, opts.rotating_frame ? 0.0 : sys.omega1);
    csv.header({"t", "F_analytic", "F_oracle", "abs_dF"});
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        csv.row({curve.times[i], curve.values[i], oracle_f[i], std::abs(curve.values[i] - oracle_f[i])});
    }
}

inline constexpr std::array<double, 4> kFigureAlphas{0.5, 1.0, 1.5, 2.0};

/// Balanced even cats at the four reference amplitudes and damping times,
/// 200 points over [0, 1 ms], rotating frame.
inline std::array<FidelityCurve, 4> figure2_curves(bool spectator_on) {
    RunConfig cfg;
    cfg.spectator_phase_on = spectator_on;
    const ModeSystem sys = cfg.mode_system();
    CurveOptions opts;
    opts.spectator_phase_total = 2.0 * cfg.spectator_phase();
    std::array<FidelityCurve, 4> curves;
    for (std::size_t i = 0; i < kFigureAlphas.size(); ++i) {
        CatSpec spec = cfg.target();
        spec.alpha = kFigureAlphas[i];
        curves[i] = fidelity_curve(spec, sys, 1e-3, 200, opts);
    }
    return curves;
}

inline void cmd_figure2(bool spectator_on, std::ostream& out) {
    const auto curves = figure2_curves(spectator_on);
    CsvWriter csv(out);
    csv.header({"t", "F_alpha_0.5", "F_alpha_1.0", "F_alpha_1.5", "F_alpha_2.0"});
    for (std::size_t k = 0; k < curves[0].times.size(); ++k) {
        csv.row({curves[0].times[k], curves[0].values[k], curves[1].values[k], curves[2].values[k],
                 curves[3].values[k]});
    }
}

/// Analytic-vs-oracle report at the configured amplitude and t_tel. Returns
/// true when every check is inside its tolerance.
inline bool cmd_oracle_check(const RunConfig& cfg, std::ostream& out) {
    const ModeSystem sys = cfg.mode_system();
    const double gbar = sys.mean_damping();
    const double t = cfg.t_tel_s;
    const CatSpec target = cfg.target();
    const double a = std::abs(target.alpha);
    const int n_max = oracle::truncation_for(a);
    const oracle::LindbladSpec spec = oracle::single_mode_spec(n_max, gbar);
    const double u = std::exp(-0.5 * gbar * t);

    struct Row {
        std::string name;
        double value;
        double tolerance;
    };
    std::vector<Row> rows;

    {
        const auto rho0 = oracle::FockDensity::pure(oracle::coherent_to_fock(target.alpha, n_max), {n_max + 1});
        const auto rho = oracle::evolve_lindblad(rho0, spec, t);
        const double f = oracle::sandwich(oracle::coherent_to_fock(u * target.alpha, n_max), rho).real();
        rows.push_back({"coherent_transport_infidelity", 1.0 - f, 1e-6});
    }
    {
        const auto rho0 = oracle::FockDensity::pure(oracle::cat_to_fock(target, n_max), {n_max + 1});
        const auto rho = oracle::evolve_lindblad(rho0, spec, t);
        const double analytic = fidelity(target, build_rho1(target, u));
        rows.push_back({"fidelity_abs_diff", std::abs(analytic - oracle::oracle_fidelity(rho, target)), 1e-8});
    }
    {
        const auto rho0 = oracle::FockDensity::pure(oracle::coherent_to_fock(target.alpha, n_max), {n_max + 1});
        const auto flipped = oracle::dispersive_pi_fock(rho0, dispersive_shift(cfg.g_Hz, cfg.delta_Hz));
        const double f = oracle::sandwich(oracle::coherent_to_fock(-target.alpha, n_max), flipped).real();
        rows.push_back({"dispersive_pi_infidelity", 1.0 - f, 1e-10});
    }

    bool ok = true;
    out << "check,value,tolerance,pass\n";
    for (const Row& r : rows) {
        const bool pass = std::abs(r.value) <= r.tolerance;
        ok = ok && pass;
        out << r.name << ',' << format_number(r.value) << ',' << format_number(r.tolerance) << ','
            << (pass ? "yes" : "no") << '\n';
    }
    return ok;
}

}  // namespace cavtel::cli

#endif  // CAVTEL_COMMANDS_HPP
