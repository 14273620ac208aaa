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

#include <cmath>
#include <complex>
#include <random>

#include "cavtel/dynamics.hpp"
#include "cavtel/oracle.hpp"
#include "gtest/gtest.h"

namespace cavtel {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ModeSystem reference_system() {
    ModeSystem s;
    s.omega1 = kTwoPi * 51.1e9;
    s.omega2 = s.omega1 + kTwoPi * 1e5;
    return s;
}

DrainParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> re(0.0, 2e3);
    std::uniform_real_distribution<double> im(-1e8, 1e8);
    std::uniform_real_distribution<double> cd(-1e3 / std::numbers::sqrt2, 1e3 / std::numbers::sqrt2);
    return {Complex(re(rng), im(rng)), Complex(re(rng), im(rng)), Complex(cd(rng), cd(rng)), Complex(cd(rng), cd(rng))};
}

TEST(DrainParams, lossless_limit) {
    ModeSystem s;
    s.gamma11 = s.gamma22 = 0.0;  // not validated: drain_params is pure arithmetic
    const DrainParams p = drain_params(s);
    EXPECT_EQ(p.A, Complex(0.0, s.omega1));
    EXPECT_EQ(p.B, Complex(0.0, s.omega2));
    EXPECT_EQ(p.C, Complex(0.0, 0.0));
    EXPECT_EQ(p.D, Complex(0.0, 0.0));
}

TEST(DrainParams, damping_and_dispersive_shift) {
    ModeSystem s = reference_system();
    EXPECT_DOUBLE_EQ(drain_params(s).A.real(), 500.0);
    s.chi_active = dispersive_shift(1e4, 1e5);
    s.chi_mode = ChiMode::mode1;
    EXPECT_DOUBLE_EQ(drain_params(s).A.imag() - s.omega1, 1e3);
    EXPECT_DOUBLE_EQ(drain_params(s).B.imag(), s.omega2);
    s.chi_mode = ChiMode::mode2;
    EXPECT_DOUBLE_EQ(drain_params(s).B.imag() - s.omega2, 1e3);
}

TEST(ModeSystem, validation) {
    ModeSystem s = reference_system();
    EXPECT_NO_THROW(s.validate());
    s.gamma12 = s.gamma21 = 1.2e3;
    EXPECT_THROW(s.validate(), InvariantBreach);
    s = reference_system();
    s.omega2 = s.omega1;
    EXPECT_THROW(s.validate(), InvariantBreach);
}

TEST(UFull, identity_at_zero) {
    std::mt19937_64 rng(1);
    const EvolutionMatrix u = u_full(random_params(rng), 0.0);
    EXPECT_EQ(u.u11, Complex(1.0, 0.0));
    EXPECT_EQ(u.u12, Complex(0.0, 0.0));
    EXPECT_EQ(u.u21, Complex(0.0, 0.0));
    EXPECT_EQ(u.u22, Complex(1.0, 0.0));
}

TEST(UFull, decoupled_modes) {
    const DrainParams p{Complex(500.0, 3e5), Complex(555.0, 7e5), 0.0, 0.0};
    for (double t : {1e-5, 3.5e-4, 1e-3}) {
        const EvolutionMatrix u = u_full(p, t);
        EXPECT_NEAR(std::abs(u.u11 - std::exp(-p.A * t)), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(u.u22 - std::exp(-p.B * t)), 0.0, 1e-12);
        EXPECT_EQ(u.u12, Complex(0.0, 0.0));
        EXPECT_EQ(u.u21, Complex(0.0, 0.0));
    }
}

TEST(UFull, equals_matrix_exponential) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> tt(0.0, 1e-3);
    for (int i = 0; i < 300; ++i) {
        const DrainParams p = random_params(rng);
        const double t = tt(rng);
        EXPECT_LT(u_full(p, t).max_abs_diff(oracle::expm_evolution(p, t)), 1e-10) << "draw " << i;
    }
}

TEST(UFull, degenerate_root) {
    // (B - A)^2 + 4CD = 0 exactly: s = 0, Jordan block.
    const DrainParams p{Complex(400.0, 0.0), Complex(600.0, 0.0), Complex(100.0, 0.0), Complex(-100.0, 0.0)};
    for (double t : {1e-6, 1e-4, 1e-3}) {
        EXPECT_LT(u_full(p, t).max_abs_diff(oracle::expm_evolution(p, t)), 1e-13);
    }
    // Nearly degenerate.
    const DrainParams q{Complex(400.0, 0.0), Complex(600.0, 0.0), Complex(100.0, 0.0), Complex(-100.0 + 1e-9, 0.0)};
    EXPECT_LT(u_full(q, 1e-3).max_abs_diff(oracle::expm_evolution(q, 1e-3)), 1e-13);
}

TEST(UFull, root_sign_does_not_matter) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        const DrainParams p = random_params(rng);
        const Complex s = std::sqrt((p.B - p.A) * (p.B - p.A) + 4.0 * p.C * p.D);
        const double t = 4e-4;
        EXPECT_LT(u_full_with_root(p, t, s).max_abs_diff(u_full_with_root(p, t, -s)), 1e-12);
    }
}

TEST(UFull, semigroup) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> tt(0.0, 5e-4);
    for (int i = 0; i < 100; ++i) {
        const DrainParams p = random_params(rng);
        const double t1 = tt(rng);
        const double t2 = tt(rng);
        EXPECT_LT(u_full(p, t1 + t2).max_abs_diff(u_full(p, t2).after(u_full(p, t1))), 1e-9);
    }
}

TEST(UFull, contractive_for_physical_damping) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> g(1.0, 2e3);
    std::uniform_real_distribution<double> frac(-1.0, 1.0);
    std::uniform_real_distribution<double> w(-1e7, 1e7);
    std::uniform_real_distribution<double> tt(0.0, 1e-2);
    for (int i = 0; i < 200; ++i) {
        ModeSystem s;
        s.omega1 = w(rng);
        s.omega2 = s.omega1 + std::abs(w(rng)) + 1.0;
        s.gamma11 = g(rng);
        s.gamma22 = g(rng);
        s.gamma12 = s.gamma21 = frac(rng) * std::sqrt(s.gamma11 * s.gamma22);
        s.lamb12 = s.lamb21 = w(rng) * 1e-3;
        s.validate();
        EXPECT_LE(u_full(drain_params(s), tt(rng)).largest_singular_value(), 1.0 + 1e-12);
    }
}

TEST(UFull, swapping_mode_labels) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 50; ++i) {
        const DrainParams p = random_params(rng);
        const DrainParams q{p.B, p.A, p.D, p.C};
        const EvolutionMatrix u = u_full(p, 6e-4);
        const EvolutionMatrix v = u_full(q, 6e-4);
        EXPECT_NEAR(std::abs(u.u11 - v.u22), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(u.u22 - v.u11), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(u.u12 - v.u21), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(u.u21 - v.u12), 0.0, 1e-12);
    }
}

TEST(UFullRotating, matches_lab_frame_with_phases_removed) {
    ModeSystem s;
    s.omega1 = 3e6;
    s.omega2 = 3.4e6;
    s.gamma12 = s.gamma21 = 800.0;
    for (double t : {1e-4, 7e-4}) {
        EXPECT_LT(u_full_rotating(s, t).max_abs_diff(to_rotating_frame(u_full(drain_params(s), t), s)), 1e-11);
    }
}

TEST(USimplified, identity_at_zero) {
    const EvolutionMatrix u = u_simplified(reference_system(), 0.0, false);
    EXPECT_EQ(u.u11, Complex(1.0, 0.0));
    EXPECT_EQ(u.u22, Complex(1.0, 0.0));
}

TEST(USimplified, mean_damping_decay) {
    const ModeSystem s = reference_system();
    EXPECT_NEAR(s.mean_damping(), 1055.5555555555556, 1e-10);
    // e^{-0.18472...}, 30-digit evaluation.
    EXPECT_NEAR(std::abs(u_simplified(s, 3.5e-4, false).u11), 0.831335178220373290, 1e-15);
    EXPECT_NEAR(std::abs(u_simplified(s, 3.5e-4, false).u22), 0.831335178220373290, 1e-15);
}

TEST(USimplified, rotating_frame_is_real) {
    const ModeSystem s = reference_system();
    const EvolutionMatrix u = u_simplified(s, 6e-4, true);
    EXPECT_EQ(u.u11.imag(), 0.0);
    EXPECT_EQ(u.u22.imag(), 0.0);
    EXPECT_DOUBLE_EQ(u.u11.real(), std::exp(-0.5 * s.mean_damping() * 6e-4));
}

TEST(USimplified, keeps_dispersive_phase_in_rotating_frame) {
    ModeSystem s = reference_system();
    s.chi_active = 2e3;
    s.chi_mode = ChiMode::mode2;
    const EvolutionMatrix u = u_simplified(s, 1e-4, true);
    EXPECT_NEAR(std::arg(u.u22), -0.2, 1e-14);
    EXPECT_EQ(u.u11.imag(), 0.0);
}

// The simplified regime drops u12, u21 and replaces each mode's own rate by
// the mean rate. The first is good to 2e-3 across the regime; the second is an
// O((gamma22 - gamma11) t) change that is checked against its exact size.
TEST(USimplified, approximates_full_coefficients_in_reference_regime) {
    for (double gamma_x : {0.0, 500.0, 1000.0}) {
        for (double spacing : {kTwoPi * 1e5, kTwoPi * 2e6}) {
            ModeSystem s = reference_system();
            s.omega2 = s.omega1 + spacing;
            s.gamma12 = s.gamma21 = gamma_x;
            for (int i = 0; i <= 50; ++i) {
                const double t = 1e-3 * i / 50.0;
                const EvolutionMatrix full = u_full_rotating(s, t);
                const EvolutionMatrix simp = u_simplified(s, t, true);
                EXPECT_LT(std::abs(full.u12 - simp.u12), 2e-3);
                EXPECT_LT(std::abs(full.u21 - simp.u21), 2e-3);
                const double rate_gap1 = std::abs(std::exp(-0.5 * s.gamma11 * t) - std::exp(-0.5 * s.mean_damping() * t));
                const double rate_gap2 = std::abs(std::exp(-0.5 * s.gamma22 * t) - std::exp(-0.5 * s.mean_damping() * t));
                EXPECT_LT(std::abs(full.u11 - simp.u11), rate_gap1 + 2e-3);
                EXPECT_LT(std::abs(full.u22 - simp.u22), rate_gap2 + 2e-3);
            }
        }
    }
}

TEST(DecoherenceZ, examples) {
    EXPECT_DOUBLE_EQ(decoherence_z(1.0, 1.0), 1.0);
    // alpha0 = 1, |u11|^2 = e^{-0.369444...}; 30-digit value.
    EXPECT_NEAR(decoherence_z(1.0, std::exp(-0.5 * 0.36944444444444444)), 0.539148819665782568, 1e-14);
    for (double m : {0.0, 0.3, 0.9}) EXPECT_DOUBLE_EQ(decoherence_z(0.0, m), 1.0);
    EXPECT_THROW((void)decoherence_z(1.0, 1.5), InvariantBreach);
}

TEST(ReferenceAmplitude, examples) {
    EXPECT_EQ(reference_amplitude(Complex(0.7, 0.2), 1.0), Complex(0.7, 0.2));
    const ModeSystem s = reference_system();
    EXPECT_NEAR(std::abs(reference_amplitude(1.0, u_simplified(s, 3.5e-4, true).u22)), 0.831335178220373290, 1e-15);
    EXPECT_EQ(reference_amplitude(0.0, Complex(0.3, 0.4)), Complex(0.0, 0.0));
}

TEST(SpectatorPhase, reference_parameters) {
    EXPECT_NEAR(spectator_phase(1e5, 1e7), std::numbers::pi * 1e5 / 1.01e7, 1e-16);
    EXPECT_NEAR(spectator_phase(1e5, 1e7), 0.0311, 1e-4);
}

}  // namespace
}  // namespace cavtel
