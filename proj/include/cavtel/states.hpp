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

// Coherent-state algebra. Every field state is kept as a finite superposition
// of coherent-state labels; nothing here touches the number basis.

#ifndef CAVTEL_STATES_HPP
#define CAVTEL_STATES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "cavtel/error.hpp"

namespace cavtel {

using Complex = std::complex<double>;

enum class AtomLevel { g, e };

inline const char* to_string(AtomLevel level) { return level == AtomLevel::g ? "g" : "e"; }

/// Amplitudes closer than this are the same coherent-state label.
inline constexpr double kLabelTolerance = 1e-12;
/// Allowed imaginary residue of a Gram-matrix norm.
inline constexpr double kNormImagTolerance = 1e-12;
/// Norms below this are treated as the null vector.
inline constexpr double kNullNorm = 1e-14;

/// <a|b> for coherent states |a>, |b>.
inline Complex overlap(Complex a, Complex b) {
    return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
}

/// C+|alpha> + parity * C-|-alpha>, coefficients normalized but the ket itself
/// generally not (the two coherent states overlap).
struct CatSpec {
    Complex c_plus{1.0, 0.0};
    Complex c_minus{0.0, 0.0};
    Complex alpha{0.0, 0.0};
    int parity = +1;

    void validate() const {
        if (parity != 1 && parity != -1) {
            throw InvariantBreach("CatSpec: parity must be +1 or -1");
        }
        const double sum = std::norm(c_plus) + std::norm(c_minus);
        if (!(std::abs(sum - 1.0) <= 1e-12)) {
            throw InvariantBreach("CatSpec: |c_plus|^2 + |c_minus|^2 must equal 1");
        }
        if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
            throw InvariantBreach("CatSpec: alpha must be finite");
        }
    }
};

/// Physical norm of the cat ket.
inline double cat_norm(const CatSpec& spec) {
    const double cross = 2.0 * spec.parity *
                         std::real(std::conj(spec.c_plus) * spec.c_minus * overlap(spec.alpha, -spec.alpha));
    const double sq = std::norm(spec.c_plus) + std::norm(spec.c_minus) + cross;
    const double n = std::sqrt(std::max(sq, 0.0));
    if (n < kNullNorm) {
        throw NullState("cat_norm: superposition is the null vector");
    }
    return n;
}

/// <Psi|a> for the normalized cat |Psi> and a coherent state |a>.
inline Complex cat_overlap(const CatSpec& spec, Complex a) {
    const Complex v = std::conj(spec.c_plus) * overlap(spec.alpha, a) +
                      static_cast<double>(spec.parity) * std::conj(spec.c_minus) * overlap(-spec.alpha, a);
    return v / cat_norm(spec);
}

struct Term {
    Complex weight;
    AtomLevel atom = AtomLevel::g;
    Complex amp1;
    Complex amp2;
};

inline bool same_label(const Term& a, const Term& b) {
    return a.atom == b.atom && std::abs(a.amp1 - b.amp1) < kLabelTolerance &&
           std::abs(a.amp2 - b.amp2) < kLabelTolerance;
}

/// Ordered superposition of |atom>|amp1>_1|amp2>_2 product kets.
class TermState {
public:
    TermState() = default;
    TermState(std::initializer_list<Term> terms) {
        for (const Term& t : terms) add(t);
    }

    /// Appends a term, folding it into an existing one with the same label.
    void add(const Term& term) {
        for (Term& t : terms_) {
            if (same_label(t, term)) {
                t.weight += term.weight;
                return;
            }
        }
        terms_.push_back(term);
    }

    void add(Complex weight, AtomLevel atom, Complex amp1, Complex amp2) { add(Term{weight, atom, amp1, amp2}); }

    [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] bool empty() const { return terms_.empty(); }

    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    TermState& operator*=(Complex s) {
        for (Term& t : terms_) t.weight *= s;
        return *this;
    }

    friend TermState operator*(Complex s, TermState state) {
        state *= s;
        return state;
    }

    friend TermState operator+(TermState a, const TermState& b) {
        for (const Term& t : b) a.add(t);
        return a;
    }

    friend TermState operator-(TermState a, const TermState& b) {
        for (Term t : b) {
            t.weight = -t.weight;
            a.add(t);
        }
        return a;
    }

    /// Terms for which pred(term) holds, in order.
    template <typename Pred>
    [[nodiscard]] TermState filter(Pred pred) const {
        TermState out;
        for (const Term& t : terms_) {
            if (pred(t)) out.terms_.push_back(t);
        }
        return out;
    }

    /// Applies f to every term; f may change labels, so duplicates are re-merged.
    template <typename F>
    [[nodiscard]] TermState transform(F f) const {
        TermState out;
        for (const Term& t : terms_) out.add(f(t));
        return out;
    }

private:
    std::vector<Term> terms_;
};

/// <a|b>, exact over non-orthogonal coherent labels.
inline Complex inner(const TermState& a, const TermState& b) {
    Complex sum{0.0, 0.0};
    for (const Term& x : a) {
        for (const Term& y : b) {
            if (x.atom != y.atom) continue;
            sum += std::conj(x.weight) * y.weight * overlap(x.amp1, y.amp1) * overlap(x.amp2, y.amp2);
        }
    }
    return sum;
}

inline double term_norm(const TermState& state) {
    const Complex sq = inner(state, state);
    double scale = 1.0;
    for (const Term& t : state) scale += std::abs(t.weight);
    if (std::abs(sq.imag()) > kNormImagTolerance * scale * scale) {
        throw ConsistencyError("term_norm: Gram sum has a non-negligible imaginary part");
    }
    if (sq.real() < -kNormImagTolerance * scale * scale) {
        throw ConsistencyError("term_norm: Gram sum is negative");
    }
    return std::sqrt(std::max(sq.real(), 0.0));
}

/// Scales the state to unit norm; throws NullState if it has none.
inline TermState normalized(TermState state) {
    const double n = term_norm(state);
    if (n < kNullNorm) throw NullState("normalized: state has zero norm");
    state *= Complex(1.0 / n, 0.0);
    return state;
}

struct Projection {
    TermState state;
    double probability = 0.0;
};

/// Projects onto the atomic level `outcome`. Returns the renormalized branch
/// and its Born probability.
inline Projection project_atom(const TermState& state, AtomLevel outcome) {
    TermState branch = state.filter([outcome](const Term& t) { return t.atom == outcome; });
    const double n = term_norm(branch);
    if (n < kNullNorm) {
        throw NullState(std::string("project_atom: branch ") + to_string(outcome) + " has zero norm");
    }
    branch *= Complex(1.0 / n, 0.0);
    return {std::move(branch), n * n};
}

/// The normalized cat as a mode-1 TermState (atom g, mode 2 vacuum).
inline TermState cat_as_mode1(const CatSpec& spec) {
    const double n = cat_norm(spec);
    TermState s;
    s.add(spec.c_plus / n, AtomLevel::g, spec.alpha, 0.0);
    s.add(static_cast<double>(spec.parity) * spec.c_minus / n, AtomLevel::g, -spec.alpha, 0.0);
    return s;
}

/// <Psi| rho_1 |Psi>, where rho_1 is the mode-1 state left after tracing out
/// the atom and mode 2 of |s>/||s||.
inline double mode1_fidelity(const TermState& state, const CatSpec& target) {
    Complex num{0.0, 0.0};
    for (const Term& x : state) {
        const Complex px = cat_overlap(target, x.amp1);
        for (const Term& y : state) {
            if (x.atom != y.atom) continue;
            num += std::conj(x.weight) * y.weight * std::conj(px) * cat_overlap(target, y.amp1) *
                   overlap(x.amp2, y.amp2);
        }
    }
    const double n = term_norm(state);
    if (n < kNullNorm) throw NullState("mode1_fidelity: state has zero norm");
    return num.real() / (n * n);
}

}  // namespace cavtel

#endif  // CAVTEL_STATES_HPP
