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

// Brute-force reference: truncated Fock-basis density matrices evolved under
// the zero-temperature Lindblad generator
//   d rho/dt = -i[H, rho] + sum_jk gamma_jk (a_k rho a_j^+ - {a_j^+ a_k, rho}/2),
// plus an independent 2x2 matrix exponential. Nothing here calls into the
// coherent-label algebra of states/dynamics/fidelity.

#ifndef CAVTEL_ORACLE_HPP
#define CAVTEL_ORACLE_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "cavtel/dynamics.hpp"
#include "cavtel/error.hpp"
#include "cavtel/states.hpp"

namespace cavtel::oracle {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using SpMatrix = Eigen::SparseMatrix<Complex>;

/// Truncation large enough for a coherent amplitude of modulus `a`:
/// ceil(a^2 + 8a + 15).
inline int truncation_for(double a) { return static_cast<int>(std::ceil(a * a + 8.0 * a + 15.0)); }

/// Poisson weight above n_max for mean photon number |a|^2.
inline double poisson_tail(double mean, int n_max) {
    double log_p = -mean;  // log p_0
    for (int n = 1; n <= n_max; ++n) log_p += std::log(mean) - std::log(static_cast<double>(n));
    if (mean == 0.0) return 0.0;
    double tail = 0.0;
    for (int n = n_max + 1; n < n_max + 2000; ++n) {
        log_p += std::log(mean) - std::log(static_cast<double>(n));
        const double p = std::exp(log_p);
        tail += p;
        if (p < 1e-30 && static_cast<double>(n) > mean) break;
    }
    return tail;
}

/// c_n = exp(-|a|^2/2) a^n / sqrt(n!), n = 0..n_max.
inline CVector coherent_to_fock(Complex a, int n_max) {
    if (n_max < 0) throw InvariantBreach("coherent_to_fock: n_max must be non-negative");
    const double tail = poisson_tail(std::norm(a), n_max);
    if (tail >= 1e-8) {
        throw TruncationBreach("coherent_to_fock: amplitude |a| = " + std::to_string(std::abs(a)) +
                               " leaves tail mass " + std::to_string(tail) + " above n_max = " +
                               std::to_string(n_max));
    }
    CVector c(n_max + 1);
    c(0) = std::exp(-0.5 * std::norm(a));
    for (int n = 1; n <= n_max; ++n) c(n) = c(n - 1) * a / std::sqrt(static_cast<double>(n));
    return c;
}

/// Kronecker product, mode 1 is the slow index.
inline CVector kron(const CVector& a, const CVector& b) {
    CVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

struct FockDensity {
    std::vector<int> dims;  // per mode, n_max + 1
    CMatrix rho;

    [[nodiscard]] int mode_count() const { return static_cast<int>(dims.size()); }
    [[nodiscard]] Eigen::Index dim() const { return rho.rows(); }

    static FockDensity pure(const CVector& psi, std::vector<int> dims) {
        FockDensity d;
        d.dims = std::move(dims);
        d.rho = psi * psi.adjoint();
        return d;
    }

    [[nodiscard]] Complex trace() const { return rho.trace(); }
    [[nodiscard]] double purity() const { return (rho * rho).trace().real(); }

    [[nodiscard]] double hermiticity_error() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }

    [[nodiscard]] double min_eigenvalue() const {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }

    /// Population of the two highest Fock levels of `mode`.
    [[nodiscard]] double top_population(int mode) const {
        const int d1 = dims[0];
        const int d2 = mode_count() == 2 ? dims[1] : 1;
        double pop = 0.0;
        for (int i = 0; i < d1; ++i) {
            for (int j = 0; j < d2; ++j) {
                const int n = mode == 0 ? i : j;
                const int top = dims[mode] - 1;
                if (n >= top - 1) pop += rho(i * d2 + j, i * d2 + j).real();
            }
        }
        return pop;
    }

    void check_truncation(const char* where) const {
        for (int m = 0; m < mode_count(); ++m) {
            const double pop = top_population(m);
            if (pop >= 1e-8) {
                throw TruncationBreach(std::string(where) + ": top two Fock levels of mode " + std::to_string(m + 1) +
                                       " hold population " + std::to_string(pop));
            }
        }
    }
};

/// Reduced state of one mode of a two-mode density.
inline FockDensity partial_trace(const FockDensity& d, int keep) {
    if (d.mode_count() != 2) throw InvariantBreach("partial_trace: needs a two-mode density");
    const int d1 = d.dims[0];
    const int d2 = d.dims[1];
    FockDensity out;
    out.dims = {d.dims[keep]};
    out.rho = CMatrix::Zero(d.dims[keep], d.dims[keep]);
    for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d2; ++j)
            for (int k = 0; k < d1; ++k)
                for (int l = 0; l < d2; ++l) {
                    if (keep == 0 && j == l) out.rho(i, k) += d.rho(i * d2 + j, k * d2 + l);
                    if (keep == 1 && i == k) out.rho(j, l) += d.rho(i * d2 + j, k * d2 + l);
                }
    return out;
}

/// Annihilation operator of `mode` on the composite space.
inline SpMatrix annihilation(const std::vector<int>& dims, int mode) {
    const int d1 = dims[0];
    const int d2 = dims.size() == 2 ? dims[1] : 1;
    std::vector<Eigen::Triplet<Complex>> trip;
    for (int i = 0; i < d1; ++i) {
        for (int j = 0; j < d2; ++j) {
            const int n = mode == 0 ? i : j;
            if (n == 0) continue;
            const int from = i * d2 + j;
            const int to = mode == 0 ? (i - 1) * d2 + j : i * d2 + (j - 1);
            trip.emplace_back(to, from, std::sqrt(static_cast<double>(n)));
        }
    }
    SpMatrix a(d1 * d2, d1 * d2);
    a.setFromTriplets(trip.begin(), trip.end());
    return a;
}

struct LindbladSpec {
    std::vector<int> dims;
    SpMatrix hamiltonian;   // Hermitian, rad/s
    Eigen::MatrixXd gamma;  // mode_count x mode_count, PSD

    void validate() const {
        const Eigen::Index n = static_cast<Eigen::Index>(dims.size());
        if (gamma.rows() != n || gamma.cols() != n) throw InvariantBreach("LindbladSpec: gamma shape mismatch");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (gamma + gamma.transpose()));
        if (es.eigenvalues().minCoeff() < -1e-9 * std::max(1.0, gamma.cwiseAbs().maxCoeff())) {
            throw InvariantBreach("LindbladSpec: gamma matrix is not positive semidefinite");
        }
        const CMatrix h(hamiltonian);
        if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, h.cwiseAbs().maxCoeff())) {
            throw InvariantBreach("LindbladSpec: hamiltonian is not Hermitian");
        }
    }

    /// Upper bound on the spectral radius of H (max absolute row sum).
    [[nodiscard]] double hamiltonian_scale() const {
        const CMatrix h(hamiltonian);
        return h.cwiseAbs().rowwise().sum().maxCoeff();
    }
};

/// One damped mode, H = omega a^+a + chi a^+a (atom pinned excited if chi != 0).
inline LindbladSpec single_mode_spec(int n_max, double gamma, double omega = 0.0) {
    LindbladSpec s;
    s.dims = {n_max + 1};
    const SpMatrix a = annihilation(s.dims, 0);
    s.hamiltonian = omega * SpMatrix(a.adjoint() * a);
    s.gamma = Eigen::MatrixXd::Constant(1, 1, gamma);
    return s;
}

/// Two modes sharing one reservoir. H = sum_jk (omega_j delta_jk + lamb_jk
/// + chi_j delta_jk) a_j^+ a_k; free rotations dropped when rotating_frame.
inline LindbladSpec two_mode_spec(int n_max1, int n_max2, const ModeSystem& sys, bool rotating_frame) {
    if (sys.lamb12 != sys.lamb21) throw InvariantBreach("two_mode_spec: lamb12 must equal lamb21 for Hermitian H");
    LindbladSpec s;
    s.dims = {n_max1 + 1, n_max2 + 1};
    const SpMatrix a1 = annihilation(s.dims, 0);
    const SpMatrix a2 = annihilation(s.dims, 1);
    const double w1 = (rotating_frame ? 0.0 : sys.omega1) + sys.lamb11 + sys.chi_on_mode1();
    const double w2 = (rotating_frame ? 0.0 : sys.omega2) + sys.lamb22 + sys.chi_on_mode2();
    s.hamiltonian = w1 * SpMatrix(a1.adjoint() * a1) + w2 * SpMatrix(a2.adjoint() * a2) +
                    sys.lamb12 * SpMatrix(a1.adjoint() * a2) + sys.lamb21 * SpMatrix(a2.adjoint() * a1);
    s.gamma.resize(2, 2);
    s.gamma << sys.gamma11, sys.gamma12, sys.gamma21, sys.gamma22;
    return s;
}

/// L(rho) = K rho + rho K^+ + sum_jk gamma_jk a_k rho a_j^+, K = -iH - (1/2) sum gamma_jk a_j^+ a_k.
class Generator {
public:
    explicit Generator(const LindbladSpec& spec) {
        const int modes = static_cast<int>(spec.dims.size());
        std::vector<SpMatrix> a;
        for (int m = 0; m < modes; ++m) a.push_back(annihilation(spec.dims, m));
        k_ = Complex(0.0, -1.0) * spec.hamiltonian;
        for (int j = 0; j < modes; ++j) {
            for (int k = 0; k < modes; ++k) {
                const double g = spec.gamma(j, k);
                if (g == 0.0) continue;
                k_ -= (0.5 * g) * SpMatrix(a[j].adjoint() * a[k]);
                jumps_.push_back({g, a[k], SpMatrix(a[j].adjoint())});
            }
        }
        k_adj_ = k_.adjoint();
    }

    [[nodiscard]] CMatrix apply(const CMatrix& rho) const {
        CMatrix out = k_ * rho + rho * k_adj_;
        for (const Jump& jump : jumps_) out += jump.rate * (jump.left * (rho * jump.right));
        return out;
    }

private:
    struct Jump {
        double rate;
        SpMatrix left;
        SpMatrix right;
    };
    SpMatrix k_;
    SpMatrix k_adj_;
    std::vector<Jump> jumps_;
};

namespace detail {

inline CMatrix rk4(const Generator& gen, CMatrix rho, double t, long steps) {
    const double h = t / static_cast<double>(steps);
    for (long i = 0; i < steps; ++i) {
        const CMatrix k1 = gen.apply(rho);
        const CMatrix k2 = gen.apply(rho + (0.5 * h) * k1);
        const CMatrix k3 = gen.apply(rho + (0.5 * h) * k2);
        const CMatrix k4 = gen.apply(rho + h * k3);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        rho = 0.5 * (rho + rho.adjoint()).eval();
    }
    return rho;
}

}  // namespace detail

/// Step bound: 1 / (50 max(damping scale, |H|)), where the damping scale
/// includes the photon number reachable within the truncation.
inline double default_step(const LindbladSpec& spec) {
    int n_total = 0;
    for (int d : spec.dims) n_total += d - 1;
    const double rate = spec.gamma.cwiseAbs().maxCoeff() * std::max(n_total, 1);
    return 1.0 / (50.0 * std::max({rate, spec.hamiltonian_scale(), 1e-300}));
}

/// Fixed-step RK4 from 0 to t. Runs at the step count implied by dt_max and at
/// twice that; the finer result is returned if the two agree within 1e-8.
/// dt_max <= 0 selects default_step(spec).
inline FockDensity evolve_lindblad(const FockDensity& rho, const LindbladSpec& spec, double t, double dt_max = 0.0) {
    spec.validate();
    if (rho.dims != spec.dims) throw InvariantBreach("evolve_lindblad: density and spec dims differ");
    if (t < 0.0) throw InvariantBreach("evolve_lindblad: t must be non-negative");
    const double mean_gamma = spec.gamma.trace() / static_cast<double>(spec.dims.size());
    const double bound = 1.0 / (50.0 * std::max({mean_gamma, spec.hamiltonian_scale(), 1e-300}));
    if (dt_max <= 0.0) dt_max = default_step(spec);
    if (dt_max > bound) throw InvariantBreach("evolve_lindblad: dt_max exceeds 1/(50 max(gamma, |H|))");
    rho.check_truncation("evolve_lindblad (input)");
    if (t == 0.0) return rho;

    const Generator gen(spec);
    const long steps = std::max(1L, static_cast<long>(std::ceil(t / dt_max)));
    const CMatrix coarse = detail::rk4(gen, rho.rho, t, steps);
    FockDensity out{rho.dims, detail::rk4(gen, rho.rho, t, 2 * steps)};
    const double change = (out.rho - coarse).cwiseAbs().maxCoeff();
    if (change > 1e-8) {
        throw StepSizeRejected("evolve_lindblad: halving dt changed the state by " + std::to_string(change));
    }
    if (std::abs(out.trace() - rho.trace()) > 1e-10) {
        throw ConsistencyError("evolve_lindblad: trace drifted");
    }
    out.check_truncation("evolve_lindblad (output)");
    return out;
}

/// Conjugation by exp(-i chi tau a^+a) with chi tau = pi on `mode`.
inline FockDensity dispersive_pi_fock(const FockDensity& rho, double chi, int mode = 0) {
    if (chi == 0.0) throw InvariantBreach("dispersive_pi_fock: chi must be non-zero");
    const double tau = std::numbers::pi / chi;
    const int d1 = rho.dims[0];
    const int d2 = rho.mode_count() == 2 ? rho.dims[1] : 1;
    CVector phase(d1 * d2);
    for (int i = 0; i < d1; ++i) {
        for (int j = 0; j < d2; ++j) {
            const int n = mode == 0 ? i : j;
            phase(i * d2 + j) = std::polar(1.0, -chi * tau * static_cast<double>(n));
        }
    }
    FockDensity out = rho;
    out.rho = phase.asDiagonal() * rho.rho * phase.conjugate().asDiagonal();
    return out;
}

/// exp(i phi a^+a) on a single mode: rotates coherent amplitudes by e^{i phi}.
inline FockDensity rotate_phase(const FockDensity& rho, double phi) {
    CVector phase(rho.dim());
    for (Eigen::Index n = 0; n < rho.dim(); ++n) phase(n) = std::polar(1.0, phi * static_cast<double>(n));
    FockDensity out = rho;
    out.rho = phase.asDiagonal() * rho.rho * phase.conjugate().asDiagonal();
    return out;
}

/// Cat ket in the number basis, normalized by its own Fock norm.
inline CVector cat_to_fock(const CatSpec& spec, int n_max) {
    CVector psi = spec.c_plus * coherent_to_fock(spec.alpha, n_max) +
                  static_cast<double>(spec.parity) * spec.c_minus * coherent_to_fock(-spec.alpha, n_max);
    const double n = psi.norm();
    if (n < kNullNorm) throw NullState("cat_to_fock: null superposition");
    return psi / n;
}

inline Complex sandwich(const CVector& psi, const FockDensity& rho) { return psi.dot(rho.rho * psi); }

/// <Psi| rho |Psi> for a single-mode density and the cat target.
inline double oracle_fidelity(const FockDensity& rho, const CatSpec& spec) {
    if (rho.mode_count() != 1) throw InvariantBreach("oracle_fidelity: single-mode density expected");
    const CVector psi = cat_to_fock(spec, rho.dims[0] - 1);
    return sandwich(psi, rho).real();
}

// ---------------------------------------------------------------------------
// 2x2 matrix exponential by scaling and squaring, in long double.

using LComplex = std::complex<long double>;
using LMatrix2 = std::array<LComplex, 4>;  // row-major

inline LMatrix2 mul(const LMatrix2& x, const LMatrix2& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3]};
}

inline LMatrix2 expm(const LMatrix2& x) {
    long double norm = 0.0L;
    for (int r = 0; r < 2; ++r) norm = std::max(norm, std::abs(x[2 * r]) + std::abs(x[2 * r + 1]));
    int squarings = 0;
    while (norm > 0.25L) {
        norm *= 0.5L;
        ++squarings;
    }
    const long double scale = std::ldexp(1.0L, -squarings);
    LMatrix2 y{x[0] * scale, x[1] * scale, x[2] * scale, x[3] * scale};
    LMatrix2 result{1.0L, 0.0L, 0.0L, 1.0L};
    LMatrix2 term = result;
    for (int k = 1; k <= 24; ++k) {
        term = mul(term, y);
        for (auto& v : term) v /= static_cast<long double>(k);
        for (int i = 0; i < 4; ++i) result[i] += term[i];
    }
    for (int i = 0; i < squarings; ++i) result = mul(result, result);
    return result;
}

/// exp(-M t) for M = [[A, C], [D, B]].
inline EvolutionMatrix expm_evolution(const DrainParams& p, double t) {
    const auto lc = [](Complex z) { return LComplex(z.real(), z.imag()); };
    const long double lt = t;
    const LMatrix2 e = expm({-lc(p.A) * lt, -lc(p.C) * lt, -lc(p.D) * lt, -lc(p.B) * lt});
    const auto dc = [](LComplex z) { return Complex(static_cast<double>(z.real()), static_cast<double>(z.imag())); };
    return {dc(e[0]), dc(e[1]), dc(e[2]), dc(e[3]), t};
}

}  // namespace cavtel::oracle

#endif  // CAVTEL_ORACLE_HPP
