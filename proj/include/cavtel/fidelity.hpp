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

// Teleported cat under cavity loss: the two-component mixture
//   rho_1 = N [ w++ |a><a| + w-- |-a><-a| + coh |a><-a| + conj(coh) |-a><a| ],
// a = u11(t) alpha0, coh = Z(t) C+ conj(C-) parity, and its fidelity with the
// ideal cat.

#ifndef CAVTEL_FIDELITY_HPP
#define CAVTEL_FIDELITY_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "cavtel/dynamics.hpp"
#include "cavtel/error.hpp"
#include "cavtel/states.hpp"

namespace cavtel {

/// Default teleportation-completion time: middle of the 300-400 us flight.
inline constexpr double kTeleportTime = 3.5e-4;

struct CatMixture {
    Complex amp;
    double w_pp = 1.0;
    double w_mm = 0.0;
    Complex coh;
    double norm_const = 1.0;

    [[nodiscard]] double trace() const {
        return norm_const * (w_pp + w_mm + 2.0 * std::real(coh * overlap(-amp, amp)));
    }

    /// The 2x2 coefficient matrix [[w++, coh], [conj(coh), w--]] is PSD.
    [[nodiscard]] bool is_physical(double tol = 1e-12) const {
        return w_pp >= -tol && w_mm >= -tol && std::norm(coh) <= w_pp * w_mm + tol && norm_const > 0.0;
    }
};

/// Mixture after the cat's amplitude has decayed by u11. `extra_phase` rotates
/// the decayed amplitude (accumulated spectator phase).
inline CatMixture build_rho1(const CatSpec& spec, Complex u11, double extra_phase = 0.0) {
    const double mag = std::abs(u11);
    if (mag > 1.0 + 1e-15) throw InvariantBreach("build_rho1: |u11| must not exceed 1");
    CatMixture m;
    m.amp = u11 * spec.alpha * std::polar(1.0, extra_phase);
    m.w_pp = std::norm(spec.c_plus);
    m.w_mm = std::norm(spec.c_minus);
    m.coh = decoherence_z(spec.alpha, std::min(mag, 1.0)) * spec.c_plus * std::conj(spec.c_minus) *
            static_cast<double>(spec.parity);
    const double tr = m.w_pp + m.w_mm + 2.0 * std::real(m.coh * overlap(-m.amp, m.amp));
    if (tr < kNullNorm) throw NullState("build_rho1: mixture has zero trace");
    m.norm_const = 1.0 / tr;
    return m;
}

/// <Psi| rho_1 |Psi> with |Psi> the normalized target cat.
inline double fidelity(const CatSpec& spec, const CatMixture& m) {
    const Complex p = cat_overlap(spec, m.amp);
    const Complex q = cat_overlap(spec, -m.amp);
    const double f = m.norm_const * (m.w_pp * std::norm(p) + m.w_mm * std::norm(q) + 2.0 * std::real(m.coh * p * std::conj(q)));
    return std::clamp(f, 0.0, 1.0);
}

/// Closed-form t -> infinity limit for the balanced even cat:
/// 2 exp(-|a|^2) / (1 + exp(-2|a|^2)).
inline double balanced_even_asymptote(Complex alpha0) {
    const double n = std::norm(alpha0);
    return 2.0 * std::exp(-n) / (1.0 + std::exp(-2.0 * n));
}

struct FidelityCurve {
    std::vector<double> times;
    std::vector<double> values;
};

struct CurveOptions {
    bool rotating_frame = true;
    double spectator_phase_total = 0.0;
};

/// Uniform grid on [0, t_max]. For balanced even cats with real alpha and no
/// spectator phase the curve must be non-increasing; a rise beyond 1e-9 is an
/// InvariantBreach.
inline FidelityCurve fidelity_curve(const CatSpec& spec, const ModeSystem& sys, double t_max, int n_points,
                                    const CurveOptions& opts = {}) {
    if (n_points < 2) throw InvariantBreach("fidelity_curve: need at least two points");
    if (!(t_max > 0.0)) throw InvariantBreach("fidelity_curve: t_max must be positive");
    spec.validate();
    FidelityCurve curve;
    curve.times.reserve(n_points);
    curve.values.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double t = t_max * static_cast<double>(i) / static_cast<double>(n_points - 1);
        const EvolutionMatrix u = u_simplified(sys, t, opts.rotating_frame);
        curve.times.push_back(t);
        curve.values.push_back(fidelity(spec, build_rho1(spec, u.u11, opts.spectator_phase_total)));
    }
    const bool balanced_even = spec.parity == 1 && std::abs(spec.c_plus - spec.c_minus) < 1e-12 &&
                               spec.alpha.imag() == 0.0 && opts.spectator_phase_total == 0.0 &&
                               opts.rotating_frame && sys.chi_mode == ChiMode::none;
    if (balanced_even) {
        for (std::size_t i = 1; i < curve.values.size(); ++i) {
            if (curve.values[i] > curve.values[i - 1] + 1e-9) {
                throw InvariantBreach("fidelity_curve: balanced even cat fidelity increased with time");
            }
        }
    }
    return curve;
}

}  // namespace cavtel

#endif  // CAVTEL_FIDELITY_HPP
