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
#include <numbers>
#include <random>

#include "cavtel/oracle.hpp"
#include "cavtel/states.hpp"
#include "gtest/gtest.h"

namespace cavtel {
namespace {

const double kHalf = std::numbers::sqrt2 / 2.0;

// Independent route: sum_n conj(c_n(a)) c_n(b) in the number basis.
Complex fock_overlap(Complex a, Complex b) {
    const int n = oracle::truncation_for(std::max(std::abs(a), std::abs(b))) + 20;
    return oracle::coherent_to_fock(a, n).dot(oracle::coherent_to_fock(b, n));
}

Complex random_amp(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> d(-scale, scale);
    return {d(rng), d(rng)};
}

TEST(Overlap, identity_cases) {
    EXPECT_NEAR(std::abs(overlap(Complex(1.3, -0.4), Complex(1.3, -0.4)) - 1.0), 0.0, 1e-15);
    EXPECT_EQ(overlap(0.0, 0.0), Complex(1.0, 0.0));
}

TEST(Overlap, opposite_amplitudes) {
    // Frozen from a 30-digit Fock sum: e^{-2}.
    EXPECT_NEAR(overlap(1.0, -1.0).real(), 0.135335283236612691894, 1e-15);
    EXPECT_NEAR(overlap(1.0, -1.0).imag(), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(overlap(1.0, -1.0) - fock_overlap(1.0, -1.0)), 0.0, 1e-13);
}

TEST(Overlap, matches_fock_expansion_and_is_hermitian_and_bounded) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const Complex a = random_amp(rng, 2.0);
        const Complex b = random_amp(rng, 2.0);
        const Complex ab = overlap(a, b);
        EXPECT_NEAR(std::abs(ab - fock_overlap(a, b)), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(ab - std::conj(overlap(b, a))), 0.0, 1e-15);
        EXPECT_LT(std::abs(ab), 1.0);
    }
}

TEST(CatNorm, balanced_even_cat) {
    // sqrt(1 + e^{-2}) from the Fock route.
    const CatSpec spec{kHalf, kHalf, 1.0, +1};
    EXPECT_NEAR(cat_norm(spec), 1.06552113223371252474, 1e-14);
    const oracle::CVector psi = kHalf * oracle::coherent_to_fock(1.0, 40) + kHalf * oracle::coherent_to_fock(-1.0, 40);
    EXPECT_NEAR(cat_norm(spec), psi.norm(), 1e-13);
}

TEST(CatNorm, single_coherent_state) {
    for (double a : {0.0, 0.5, 2.0, 3.7}) EXPECT_DOUBLE_EQ(cat_norm(CatSpec{1.0, 0.0, a, -1}), 1.0);
}

TEST(CatNorm, odd_cat_of_vacuum_is_null) {
    EXPECT_THROW((void)cat_norm(CatSpec{kHalf, kHalf, 0.0, -1}), NullState);
}

TEST(CatSpec, rejects_unnormalized_coefficients) {
    EXPECT_THROW((CatSpec{0.7, 0.7, 1.0, 1}).validate(), InvariantBreach);
    EXPECT_THROW((CatSpec{1.0, 0.0, 1.0, 2}).validate(), InvariantBreach);
    EXPECT_NO_THROW((CatSpec{kHalf, Complex(0.0, kHalf), 1.0, 1}).validate());
}

TEST(TermNorm, trivial_states) {
    TermState one{{1.0, AtomLevel::g, 0.3, -0.2}};
    EXPECT_DOUBLE_EQ(term_norm(one), 1.0);
    // Two identical labels collapse into one term with summed weight.
    TermState two;
    two.add(0.5, AtomLevel::e, 1.0, 1.0);
    two.add(0.5, AtomLevel::e, 1.0, 1.0);
    EXPECT_EQ(two.size(), 1u);
    EXPECT_NEAR(term_norm(two), 1.0, 1e-15);
}

TEST(TermNorm, initial_protocol_state_is_normalized) {
    // (|e> + |g>)/sqrt2 |alpha> (C+|beta> + C-|-beta>)/N, checked against the
    // Fock route for the field part.
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        const Complex alpha = random_amp(rng, 1.5);
        const Complex beta = random_amp(rng, 1.5);
        const CatSpec cat{kHalf, kHalf, beta, +1};
        const double n = cat_norm(cat);
        TermState s;
        for (AtomLevel atom : {AtomLevel::e, AtomLevel::g}) {
            s.add(kHalf * kHalf / n, atom, alpha, beta);
            s.add(kHalf * kHalf / n, atom, alpha, -beta);
        }
        EXPECT_NEAR(term_norm(s), 1.0, 1e-12);

        const int nm = oracle::truncation_for(std::abs(beta));
        const oracle::CVector f = (kHalf / n) * (oracle::coherent_to_fock(beta, nm) + oracle::coherent_to_fock(-beta, nm));
        EXPECT_NEAR(f.norm(), 1.0, 1e-9);
    }
}

TEST(TermNorm, permutation_and_merge_invariance) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Term> terms;
        for (int k = 0; k < 5; ++k) {
            terms.push_back({random_amp(rng, 1.0), k % 2 ? AtomLevel::e : AtomLevel::g, random_amp(rng, 1.5),
                             random_amp(rng, 1.5)});
        }
        TermState a;
        for (const Term& t : terms) a.add(t);
        std::shuffle(terms.begin(), terms.end(), rng);
        TermState b;
        for (const Term& t : terms) b.add(t);
        EXPECT_NEAR(term_norm(a), term_norm(b), 1e-12);

        // Split the first term in two halves: same vector, same norm.
        TermState c;
        Term half = terms[0];
        half.weight *= 0.5;
        c.add(half);
        c.add(half);
        for (std::size_t k = 1; k < terms.size(); ++k) c.add(terms[k]);
        EXPECT_EQ(c.size(), terms.size());
        EXPECT_NEAR(term_norm(c), term_norm(b), 1e-12);
    }
}

TEST(ProjectAtom, certain_outcome) {
    TermState s{{1.0, AtomLevel::g, 0.5, 1.0}};
    const Projection p = project_atom(s, AtomLevel::g);
    EXPECT_DOUBLE_EQ(p.probability, 1.0);
    EXPECT_THROW((void)project_atom(s, AtomLevel::e), NullState);
}

TEST(ProjectAtom, balanced_superposition) {
    TermState s{{kHalf, AtomLevel::e, 0.5, 1.0}, {kHalf, AtomLevel::g, 0.5, 1.0}};
    EXPECT_NEAR(project_atom(s, AtomLevel::e).probability, 0.5, 1e-15);
}

TEST(ProjectAtom, outcomes_are_complete_for_random_states) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        TermState s;
        for (int k = 0; k < 6; ++k) {
            s.add(random_amp(rng, 1.0), k % 3 ? AtomLevel::e : AtomLevel::g, random_amp(rng, 2.0), random_amp(rng, 2.0));
        }
        s = normalized(s);
        const double pg = project_atom(s, AtomLevel::g).probability;
        const double pe = project_atom(s, AtomLevel::e).probability;
        EXPECT_NEAR(pg + pe, 1.0, 1e-12);
        EXPECT_NEAR(term_norm(project_atom(s, AtomLevel::g).state), 1.0, 1e-12);
    }
}

TEST(Mode1Fidelity, product_state_reduces_to_pure_overlap) {
    const CatSpec target{kHalf, kHalf, 1.2, +1};
    TermState s = cat_as_mode1(target);
    EXPECT_NEAR(mode1_fidelity(s, target), 1.0, 1e-13);
    TermState shifted{{1.0, AtomLevel::g, 1.2, 0.7}};
    const double expected = std::norm(cat_overlap(target, 1.2));
    EXPECT_NEAR(mode1_fidelity(shifted, target), expected, 1e-14);
}

}  // namespace
}  // namespace cavtel
