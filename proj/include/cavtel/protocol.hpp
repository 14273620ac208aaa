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

// Ideal (lossless) teleportation of a cat state from mode 2 to mode 1, run as
// a symbolic state machine over TermState.
//
// Ramsey convention: |g> -> (|g> - |e>)/sqrt2, |e> -> (|g> + |e>)/sqrt2.
// Atom 2 enters the first zone in |e>, so it leaves as (|e> + |g>)/sqrt2, and
// the second zone maps the post-interaction state onto the four readout
// branches with the sign pattern
//   e,-b: (C+|-a> - C-|a>)    e,+b: (-C+|a> + C-|-a>)
//   g,+b: (C+|a> + C-|-a>)    g,-b: (C+|-a> + C-|a>)

#ifndef CAVTEL_PROTOCOL_HPP
#define CAVTEL_PROTOCOL_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "cavtel/error.hpp"
#include "cavtel/states.hpp"

namespace cavtel {

enum class Mode { mode1, mode2 };

enum class Classification { success_direct, success_after_correction, failure };

inline const char* to_string(Classification c) {
    switch (c) {
        case Classification::success_direct:
            return "success_direct";
        case Classification::success_after_correction:
            return "success_after_correction";
        case Classification::failure:
            return "failure";
    }
    return "?";
}

inline Classification classify(AtomLevel atom, int field_sign) {
    if (atom == AtomLevel::e) return Classification::failure;
    return field_sign > 0 ? Classification::success_direct : Classification::success_after_correction;
}

struct ProtocolConfig {
    Complex alpha{1.0, 0.0};
    Complex beta{1.0, 0.0};
    Complex c_plus{std::numbers::sqrt2 / 2.0, 0.0};
    Complex c_minus{std::numbers::sqrt2 / 2.0, 0.0};
    int parity = +1;
    double spectator_phase = 0.0;
    /// Probability that the probe stream misreads the mode-2 cluster; unset
    /// means |<0|2 beta>|^2 = exp(-4|beta|^2).
    std::optional<double> phase_meas_error;
    std::uint64_t rng_seed = 1;

    [[nodiscard]] double error_probability() const {
        return phase_meas_error.value_or(std::exp(-4.0 * std::norm(beta)));
    }

    [[nodiscard]] CatSpec target() const { return {c_plus, c_minus, alpha, parity}; }

    void validate() const {
        CatSpec{c_plus, c_minus, beta, parity}.validate();
        const double eps = error_probability();
        if (!(eps >= 0.0 && eps < 1.0)) {
            throw InvariantBreach("ProtocolConfig: phase_meas_error must lie in [0, 1)");
        }
    }
};

/// Collapse of the prepared mode-2 field after detecting atom 1.
inline CatSpec prepare_cat(Complex beta, Complex c_plus, Complex c_minus, AtomLevel detected) {
    CatSpec spec{c_plus, c_minus, beta, detected == AtomLevel::g ? +1 : -1};
    spec.validate();
    (void)cat_norm(spec);
    return spec;
}

inline TermState ramsey_half_pulse(const TermState& state) {
    const double r = std::numbers::sqrt2 / 2.0;
    TermState out;
    for (const Term& t : state) {
        if (t.atom == AtomLevel::g) {
            out.add(r * t.weight, AtomLevel::g, t.amp1, t.amp2);
            out.add(-r * t.weight, AtomLevel::e, t.amp1, t.amp2);
        } else {
            out.add(r * t.weight, AtomLevel::g, t.amp1, t.amp2);
            out.add(r * t.weight, AtomLevel::e, t.amp1, t.amp2);
        }
    }
    return out;
}

/// chi*tau = pi interaction of an excited atom with `mode`: flips that mode's
/// amplitude and rotates the other mode by `spectator_phase`.
inline TermState dispersive_pi(const TermState& state, Mode mode, double spectator_phase) {
    const Complex spin = std::polar(1.0, spectator_phase);
    return state.transform([&](Term t) {
        if (t.atom != AtomLevel::e) return t;
        if (mode == Mode::mode1) {
            t.amp1 = -t.amp1;
            t.amp2 *= spin;
        } else {
            t.amp2 = -t.amp2;
            t.amp1 *= spin;
        }
        return t;
    });
}

/// D(ref) on mode 2: D(ref)|a> = exp(i Im(ref conj(a))) |a + ref>.
inline TermState displace_mode2(const TermState& state, Complex ref) {
    return state.transform([ref](Term t) {
        t.weight *= std::polar(1.0, std::imag(ref * std::conj(t.amp2)));
        t.amp2 += ref;
        return t;
    });
}

/// Second correction atom: a dispersive pi on mode 1 by a deterministically
/// excited atom; negates every mode-1 amplitude.
inline TermState apply_correction(const TermState& state, double spectator_phase = 0.0) {
    const Complex spin = std::polar(1.0, spectator_phase);
    return state.transform([spin](Term t) {
        t.amp1 = -t.amp1;
        t.amp2 *= spin;
        return t;
    });
}

/// Mode-2 readout sectors after displacement: amplitudes near 0 (field was
/// -beta) and near 2 beta_ref (field was +beta).
struct ClusterSplit {
    TermState near_zero;      // normalized, empty if absent
    TermState near_two_beta;  // normalized, empty if absent
    double p_zero = 0.0;
    double p_two_beta = 0.0;
};

inline ClusterSplit split_clusters(const TermState& state, Complex beta_ref) {
    const Complex far = 2.0 * beta_ref;
    const double separation = std::abs(far);
    if (separation < 1e-9) {
        throw AmbiguousCluster("split_clusters: reference amplitude is zero, clusters coincide");
    }
    TermState zero;
    TermState two;
    for (const Term& t : state) {
        const double d0 = std::abs(t.amp2);
        const double d2 = std::abs(t.amp2 - far);
        if (std::min(d0, d2) > 0.25 * separation) {
            throw AmbiguousCluster("split_clusters: mode-2 amplitude is near neither readout cluster");
        }
        (d0 <= d2 ? zero : two).add(t);
    }
    const double n0 = term_norm(zero);
    const double n2 = term_norm(two);
    const double total = n0 * n0 + n2 * n2;
    if (total < kNullNorm) throw NullState("split_clusters: state has zero norm");
    ClusterSplit out;
    out.p_zero = n0 * n0 / total;
    out.p_two_beta = n2 * n2 / total;
    if (n0 >= kNullNorm) out.near_zero = Complex(1.0 / n0, 0.0) * zero;
    if (n2 >= kNullNorm) out.near_two_beta = Complex(1.0 / n2, 0.0) * two;
    return out;
}

/// Uniform double in [0, 1) from 53 random bits; identical on every platform.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct PhaseReading {
    int field_sign = +1;  // reported
    int true_sign = +1;   // cluster the state was projected on
    TermState state;
    double probability = 0.0;  // of the true cluster
};

/// Probe-stream readout of the displaced mode 2. The reported sign is flipped
/// with probability `error_prob`.
inline PhaseReading measure_phase(const TermState& state, Complex beta_ref, double error_prob, std::mt19937_64& rng) {
    const ClusterSplit split = split_clusters(state, beta_ref);
    PhaseReading r;
    const bool plus = uniform01(rng) < split.p_two_beta;
    r.true_sign = plus ? +1 : -1;
    r.state = plus ? split.near_two_beta : split.near_zero;
    r.probability = plus ? split.p_two_beta : split.p_zero;
    r.field_sign = uniform01(rng) < error_prob ? -r.true_sign : r.true_sign;
    return r;
}

/// Snapshots of the pipeline, named by what has just happened.
struct ProtocolStages {
    TermState before_interactions;  // atom 2 after R1', mode 1 coherent, mode 2 cat
    TermState after_mode1;          // dispersive pi on mode 1
    TermState after_mode2;          // Stark switch, dispersive pi on mode 2
    TermState after_ramsey;         // R2'
};

inline ProtocolStages protocol_stages(const ProtocolConfig& cfg) {
    cfg.validate();
    const CatSpec cat = prepare_cat(cfg.beta, cfg.c_plus, cfg.c_minus, cfg.parity > 0 ? AtomLevel::g : AtomLevel::e);
    const double n = cat_norm(cat);
    TermState atom_in_e;
    atom_in_e.add(cat.c_plus / n, AtomLevel::e, cfg.alpha, cat.alpha);
    atom_in_e.add(static_cast<double>(cat.parity) * cat.c_minus / n, AtomLevel::e, cfg.alpha, -cat.alpha);

    ProtocolStages s;
    s.before_interactions = ramsey_half_pulse(atom_in_e);
    s.after_mode1 = dispersive_pi(s.before_interactions, Mode::mode1, cfg.spectator_phase);
    s.after_mode2 = dispersive_pi(s.after_mode1, Mode::mode2, cfg.spectator_phase);
    s.after_ramsey = ramsey_half_pulse(s.after_mode2);
    return s;
}

struct BranchOutcome {
    AtomLevel atom = AtomLevel::g;
    int field_sign = +1;
    Classification classification = Classification::failure;
    double probability = 0.0;
    /// Post-measurement atom + field state, normalized; empty if probability is 0.
    TermState state;
    /// Mode-1 state conditional on mode 2 sitting at its cluster centre.
    TermState residual_mode1;
    /// Fidelity with the target of what the branch delivers in mode 1 (after
    /// the correction atom for success_after_correction).
    double delivered_fidelity = 0.0;
};

namespace detail {

inline TermState condition_on_mode2(const TermState& state, Complex centre) {
    TermState out;
    for (const Term& t : state) {
        out.add(t.weight * overlap(centre, t.amp2), t.atom, t.amp1, Complex{});
    }
    return normalized(out);
}

}  // namespace detail

/// Full branch table: atom detection x field-sign readout, exact.
inline std::vector<BranchOutcome> run_protocol(const ProtocolConfig& cfg) {
    const ProtocolStages stages = protocol_stages(cfg);
    const CatSpec target = cfg.target();
    std::vector<BranchOutcome> out;
    for (AtomLevel atom : {AtomLevel::g, AtomLevel::e}) {
        const Projection proj = project_atom(stages.after_ramsey, atom);
        const TermState displaced = displace_mode2(proj.state, cfg.beta);
        const ClusterSplit split = split_clusters(displaced, cfg.beta);
        for (int sign : {+1, -1}) {
            BranchOutcome b;
            b.atom = atom;
            b.field_sign = sign;
            b.classification = classify(atom, sign);
            b.probability = proj.probability * (sign > 0 ? split.p_two_beta : split.p_zero);
            b.state = sign > 0 ? split.near_two_beta : split.near_zero;
            if (!b.state.empty()) {
                b.residual_mode1 = detail::condition_on_mode2(b.state, sign > 0 ? 2.0 * cfg.beta : Complex{});
                const TermState delivered = b.classification == Classification::success_after_correction
                                                ? apply_correction(b.state)
                                                : b.state;
                b.delivered_fidelity = mode1_fidelity(delivered, target);
            }
            out.push_back(std::move(b));
        }
    }
    return out;
}

/// Index into a 4-entry branch table ordered (g,+), (g,-), (e,+), (e,-).
inline std::size_t branch_index(AtomLevel atom, int field_sign) {
    return (atom == AtomLevel::g ? 0 : 2) + (field_sign > 0 ? 0 : 1);
}

/// Monte Carlo repetition of the detection stage; counts indexed by
/// branch_index(atom, reported sign).
inline std::array<std::uint64_t, 4> sample_trials(const ProtocolConfig& cfg, std::uint64_t trials) {
    const ProtocolStages stages = protocol_stages(cfg);
    const Projection on_g = project_atom(stages.after_ramsey, AtomLevel::g);
    const Projection on_e = project_atom(stages.after_ramsey, AtomLevel::e);
    const TermState disp_g = displace_mode2(on_g.state, cfg.beta);
    const TermState disp_e = displace_mode2(on_e.state, cfg.beta);
    const double eps = cfg.error_probability();

    std::mt19937_64 rng(cfg.rng_seed);
    std::array<std::uint64_t, 4> counts{};
    for (std::uint64_t i = 0; i < trials; ++i) {
        const bool g = uniform01(rng) < on_g.probability;
        const PhaseReading r = measure_phase(g ? disp_g : disp_e, cfg.beta, eps, rng);
        ++counts[branch_index(g ? AtomLevel::g : AtomLevel::e, r.field_sign)];
    }
    return counts;
}

}  // namespace cavtel

#endif  // CAVTEL_PROTOCOL_HPP
