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

// Heisenberg-picture evolution of the two lossy cavity modes at zero
// temperature: a_i(t) = sum_j u_ij(t) a_j(0) + (reservoir terms).
//
// Units: angular frequencies in rad/s, rates in 1/s, times in s.

#ifndef CAVTEL_DYNAMICS_HPP
#define CAVTEL_DYNAMICS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "cavtel/error.hpp"
#include "cavtel/states.hpp"

namespace cavtel {

inline constexpr Complex kI{0.0, 1.0};

/// Which mode currently carries the dispersive shift chi.
enum class ChiMode { none, mode1, mode2 };

struct ModeSystem {
    double omega1 = 2.0 * std::numbers::pi * 51.1e9;
    double omega2 = 2.0 * std::numbers::pi * (51.1e9 + 1e7);
    double gamma11 = 1e3;
    double gamma22 = 1.0 / 0.9e-3;
    double gamma12 = 0.0;
    double gamma21 = 0.0;
    double lamb11 = 0.0;
    double lamb22 = 0.0;
    double lamb12 = 0.0;
    double lamb21 = 0.0;
    double chi_active = 0.0;
    ChiMode chi_mode = ChiMode::none;

    void validate() const {
        if (!(gamma11 > 0.0) || !(gamma22 > 0.0)) {
            throw InvariantBreach("ModeSystem: gamma11 and gamma22 must be positive");
        }
        if (gamma12 * gamma21 > gamma11 * gamma22) {
            throw InvariantBreach("ModeSystem: gamma12*gamma21 must not exceed gamma11*gamma22");
        }
        if (!(omega2 > omega1)) {
            throw InvariantBreach("ModeSystem: omega2 must exceed omega1");
        }
    }

    [[nodiscard]] double mean_damping() const { return 0.5 * (gamma11 + gamma22); }
    [[nodiscard]] double chi_on_mode1() const { return chi_mode == ChiMode::mode1 ? chi_active : 0.0; }
    [[nodiscard]] double chi_on_mode2() const { return chi_mode == ChiMode::mode2 ? chi_active : 0.0; }
};

/// chi = g^2 / delta. Any consistent angular units.
inline double dispersive_shift(double g, double detuning) { return g * g / detuning; }

/// Phase picked up by the far-detuned spectator mode while the atom makes a
/// chi*tau = pi interaction with the near mode: g^2 tau / (Delta + delta)
/// with g^2 tau / delta = pi. Unit-free.
inline double spectator_phase(double detuning, double mode_spacing) {
    return std::numbers::pi * detuning / (mode_spacing + detuning);
}

/// Drift matrix M = [[A, C], [D, B]] of da/dt = -M a.
struct DrainParams {
    Complex A, B, C, D;
};

inline DrainParams drain_params(const ModeSystem& sys) {
    return {
        kI * (sys.omega1 + sys.chi_on_mode1() + sys.lamb11) + 0.5 * sys.gamma11,
        kI * (sys.omega2 + sys.chi_on_mode2() + sys.lamb22) + 0.5 * sys.gamma22,
        kI * sys.lamb12 + 0.5 * sys.gamma12,
        kI * sys.lamb21 + 0.5 * sys.gamma21,
    };
}

struct EvolutionMatrix {
    Complex u11{1.0, 0.0};
    Complex u12{0.0, 0.0};
    Complex u21{0.0, 0.0};
    Complex u22{1.0, 0.0};
    double t = 0.0;

    /// Composition: (*this) after `first`.
    [[nodiscard]] EvolutionMatrix after(const EvolutionMatrix& first) const {
        return {u11 * first.u11 + u12 * first.u21, u11 * first.u12 + u12 * first.u22,
                u21 * first.u11 + u22 * first.u21, u21 * first.u12 + u22 * first.u22, t + first.t};
    }

    [[nodiscard]] double max_abs_diff(const EvolutionMatrix& o) const {
        return std::max({std::abs(u11 - o.u11), std::abs(u12 - o.u12), std::abs(u21 - o.u21),
                         std::abs(u22 - o.u22)});
    }

    [[nodiscard]] double largest_singular_value() const {
        const double fro = std::norm(u11) + std::norm(u12) + std::norm(u21) + std::norm(u22);
        const double det = std::norm(u11 * u22 - u12 * u21);
        return std::sqrt(0.5 * (fro + std::sqrt(std::max(fro * fro - 4.0 * det, 0.0))));
    }
};

namespace detail {

// sinh(z)/z, even in z.
inline Complex sinhc(Complex z) {
    if (std::abs(z) < 1e-8) return 1.0 + z * z / 6.0;
    return std::sinh(z) / z;
}

}  // namespace detail

/// Closed form of exp(-M t) given an explicit root s of s^2 = (B-A)^2 + 4CD.
/// Either sign of s yields the same matrix.
inline EvolutionMatrix u_full_with_root(const DrainParams& p, double t, Complex s) {
    const Complex z = 0.5 * s * t;
    const Complex decay = std::exp(-0.5 * (p.A + p.B) * t);
    const Complex ch = std::cosh(z);
    const Complex shc = detail::sinhc(z);
    EvolutionMatrix u;
    u.u11 = decay * (ch + (p.B - p.A) * (0.5 * t) * shc);
    u.u22 = decay * (ch + (p.A - p.B) * (0.5 * t) * shc);
    u.u12 = -decay * p.C * t * shc;
    u.u21 = -decay * p.D * t * shc;
    u.t = t;
    return u;
}

/// Full two-mode coefficients u_ij(t) = [exp(-M t)]_ij.
inline EvolutionMatrix u_full(const DrainParams& p, double t) {
    if (t < 0.0) throw InvariantBreach("u_full: t must be non-negative");
    if (t == 0.0) return EvolutionMatrix{};
    const Complex s = std::sqrt((p.B - p.A) * (p.B - p.A) + 4.0 * p.C * p.D);
    return u_full_with_root(p, t, s);
}

/// Removes the free rotations e^{-i omega_i t} row by row.
inline EvolutionMatrix to_rotating_frame(EvolutionMatrix u, const ModeSystem& sys) {
    const Complex r1 = std::exp(kI * (sys.omega1 * u.t));
    const Complex r2 = std::exp(kI * (sys.omega2 * u.t));
    u.u11 *= r1;
    u.u12 *= r1;
    u.u21 *= r2;
    u.u22 *= r2;
    return u;
}

/// u_full in the frame rotating at omega1 (mode 1) and omega2 (mode 2). The
/// common rotation is removed from M before exponentiating, so no large
/// phases are formed and cancelled.
inline EvolutionMatrix u_full_rotating(const ModeSystem& sys, double t) {
    DrainParams p = drain_params(sys);
    p.A -= kI * sys.omega1;
    p.B -= kI * sys.omega1;
    EvolutionMatrix u = u_full(p, t);
    const Complex r = std::exp(kI * ((sys.omega2 - sys.omega1) * t));
    u.u21 *= r;
    u.u22 *= r;
    return u;
}

/// Decoupled-modes regime: u12 = u21 = 0 and both modes decay at the mean
/// rate (gamma11 + gamma22)/2. Dispersive phases are kept in either frame.
inline EvolutionMatrix u_simplified(const ModeSystem& sys, double t, bool rotating_frame) {
    if (t < 0.0) throw InvariantBreach("u_simplified: t must be non-negative");
    const double half_rate = 0.5 * sys.mean_damping();
    const double w1 = (rotating_frame ? 0.0 : sys.omega1) + sys.chi_on_mode1();
    const double w2 = (rotating_frame ? 0.0 : sys.omega2) + sys.chi_on_mode2();
    EvolutionMatrix u;
    u.u11 = std::exp(Complex(-half_rate * t, -w1 * t));
    u.u22 = std::exp(Complex(-half_rate * t, -w2 * t));
    u.t = t;
    return u;
}

/// Z = exp[-2|alpha0|^2 (1 - |u11|^2)], the surviving fraction of cat coherence.
inline double decoherence_z(Complex alpha0, double u11_mag) {
    if (!(u11_mag >= 0.0 && u11_mag <= 1.0)) {
        throw InvariantBreach("decoherence_z: |u11| must lie in [0, 1]");
    }
    return std::exp(-2.0 * std::norm(alpha0) * (1.0 - u11_mag * u11_mag));
}

/// Amplitude a coherent state |beta0> has decayed to; the reference field
/// injected for the displacement readout must match it.
inline Complex reference_amplitude(Complex beta0, Complex u22) { return u22 * beta0; }

}  // namespace cavtel

#endif  // CAVTEL_DYNAMICS_HPP
