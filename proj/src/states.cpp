// Copyright 2026 The sqcat Authors
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

#include "sqcat/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sqcat/error.hpp"

namespace sqcat {

namespace {

constexpr double kTailLimit = 1e-12;

void require_contained(const StateVector &v, const char *what) {
    int cutoff = cutoff_of(v);
    double total = v.squaredNorm();
    if (tail_population(v, cutoff / 2) >= kTailLimit * total) {
        fail(ErrorKind::cutoff_insufficient,
             std::string(what) + ": population above cutoff/2 exceeds 1e-12 at cutoff " + std::to_string(cutoff));
    }
}

StateVector parity_part(const StateVector &v, int parity_sign) {
    StateVector out = StateVector::Zero(v.size());
    int start = parity_sign > 0 ? 0 : 1;
    for (Eigen::Index n = start; n < v.size(); n += 2) {
        out[n] = v[n];
    }
    return out;
}

void require_sign(int parity_sign) {
    if (parity_sign != 1 && parity_sign != -1) {
        fail(ErrorKind::invalid_argument, "parity_sign must be +1 or -1");
    }
}

}  // namespace

DerivedAmplitudes derive_amplitudes(cplx alpha, cplx xi) {
    double r = std::abs(xi);
    cplx phase = r > 0 ? xi / r : cplx{1.0, 0.0};
    DerivedAmplitudes d;
    d.gamma = alpha * std::cosh(r) + phase * std::conj(alpha) * std::sinh(r);
    d.zeta = d.gamma;
    double overlap = std::exp(-2.0 * std::norm(d.gamma));
    d.normPlus = std::sqrt(2.0 * (1.0 + overlap));
    d.normMinus = std::sqrt(2.0 * (1.0 - overlap));
    return d;
}

SCParams make_sc_params(double alpha, double xi, double safety) {
    SCParams p;
    p.alpha = alpha;
    p.xi = xi;
    p.cutoff = choose_cutoff(alpha, xi, safety);
    return p;
}

StateVector coherent(cplx alpha, int cutoff) {
    SCParams p;
    p.alpha = alpha;
    p.cutoff = cutoff;
    return squeezed_displaced(p);
}

StateVector squeezed_displaced(const SCParams &params) {
    StateVector v = squeezed_coherent_amplitudes(params.alpha, params.xi, params.cutoff);
    require_contained(v, "squeezed_displaced");
    return v / v.norm();
}

StateVector cat(cplx alpha, int parity_sign, int cutoff) {
    SCParams p;
    p.alpha = alpha;
    p.cutoff = cutoff;
    return squeezed_cat(p, parity_sign);
}

StateVector squeezed_cat(const SCParams &params, int parity_sign) {
    require_sign(parity_sign);
    if (parity_sign < 0 && std::abs(params.alpha) < 1e-12) {
        fail(ErrorKind::degenerate_input, "odd codeword is undefined at alpha = 0");
    }
    // |-alpha, xi> = Pi |alpha, xi>, so the superposition is a parity projection.
    StateVector raw = squeezed_coherent_amplitudes(params.alpha, params.xi, params.cutoff);
    StateVector v = parity_part(raw, parity_sign);
    double nrm = v.norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm)) {
        fail(ErrorKind::degenerate_input, "codeword has vanishing norm");
    }
    require_contained(v, "squeezed_cat");
    return v / nrm;
}

GKPParams make_gkp_params(double delta, int mu) {
    if (!(delta > 0.0) || (mu != 0 && mu != 1)) {
        fail(ErrorKind::invalid_argument, "GKP needs delta > 0 and mu in {0, 1}");
    }
    GKPParams p;
    p.delta = delta;
    p.mu = mu;
    double kappa = 0.5 * std::numbers::pi * delta * delta;
    int n = 0;
    while (std::exp(-kappa * std::pow(2.0 * (n + 1) - mu, 2)) >= 1e-14 ||
           std::exp(-kappa * std::pow(2.0 * (n + 1) + mu, 2)) >= 1e-14) {
        n++;
    }
    p.latticeCutoff = n;

    // Smallest cutoff whose upper half carries < 1e-12 of the population,
    // found on a generous grid and then doubled.
    double r = -std::log(delta);
    double reach = std::sqrt(0.5 * std::numbers::pi) * (2.0 * n + 1.0);
    int length = static_cast<int>(reach * reach + 30.0 * reach + 64.0 * std::exp(2.0 * std::abs(r)) + 64.0);
    p.cutoff = length;
    StateVector v = gkp_codeword(p);
    double tail = 0.0;
    int idx = 0;
    for (int k = length; k >= 0; k--) {
        if (tail + std::norm(v[k]) >= kTailLimit) {
            idx = k;
            break;
        }
        tail += std::norm(v[k]);
    }
    p.cutoff = std::max(16, 2 * idx);
    return p;
}

StateVector gkp_codeword(const GKPParams &params) {
    if (!(params.delta > 0.0) || (params.mu != 0 && params.mu != 1)) {
        fail(ErrorKind::invalid_argument, "GKP needs delta > 0 and mu in {0, 1}");
    }
    double kappa = 0.5 * std::numbers::pi * params.delta * params.delta;
    int nmax = params.latticeCutoff;
    double dropped = std::max(std::exp(-kappa * std::pow(2.0 * (nmax + 1) - params.mu, 2)),
                              std::exp(-kappa * std::pow(2.0 * (nmax + 1) + params.mu, 2)));
    if (nmax < 0 || dropped >= 1e-14) {
        fail(ErrorKind::lattice_cutoff_insufficient,
             "GKP lattice cutoff " + std::to_string(nmax) + " drops envelope weight " + std::to_string(dropped));
    }
    double xi = -std::log(params.delta);
    double spacing = std::sqrt(0.5 * std::numbers::pi);
    StateVector v = StateVector::Zero(params.cutoff + 1);
    for (int n = -nmax; n <= nmax; n++) {
        double k = 2.0 * n + params.mu;
        double w = std::exp(-kappa * k * k);
        v += w * squeezed_coherent_amplitudes(spacing * k, xi, params.cutoff);
    }
    require_contained(v, "gkp_codeword");
    return v / v.norm();
}

std::array<StateVector, 2> gkp_codewords(double delta) {
    GKPParams zero = make_gkp_params(delta, 0);
    GKPParams one = make_gkp_params(delta, 1);
    zero.cutoff = one.cutoff = std::max(zero.cutoff, one.cutoff);
    return {gkp_codeword(zero), gkp_codeword(one)};
}

WignerResult wigner(const DensityMatrix &rho, const Eigen::VectorXd &xs, const Eigen::VectorXd &ys) {
    int cutoff = cutoff_of(rho);
    for (double x : xs) {
        for (double y : ys) {
            if (x * x + y * y > cutoff / 4.0) {
                fail(ErrorKind::grid_out_of_range, "Wigner grid leaves |beta|^2 <= cutoff/4");
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (rho + rho.adjoint()));
    std::vector<std::pair<double, StateVector>> parts;
    for (Eigen::Index k = 0; k < eig.eigenvalues().size(); k++) {
        if (std::abs(eig.eigenvalues()[k]) > 1e-14) {
            parts.emplace_back(eig.eigenvalues()[k], eig.eigenvectors().col(k));
        }
    }

    WignerResult out;
    out.xs = xs;
    out.ys = ys;
    out.values.resize(xs.size(), ys.size());
    for (Eigen::Index i = 0; i < xs.size(); i++) {
        for (Eigen::Index j = 0; j < ys.size(); j++) {
            cplx beta{xs[i], ys[j]};
            // phi = D(-beta) psi; W = (2/pi) <phi| Pi |phi>.
            auto gen = [&](const StateVector &v) -> StateVector {
                return -beta * apply_create(v) + std::conj(beta) * apply_destroy(v);
            };
            double bound = 2.0 * std::abs(beta) * std::sqrt(static_cast<double>(cutoff) + 1.0);
            double w = 0.0;
            for (const auto &[lambda, psi] : parts) {
                StateVector phi = expv(gen, bound, psi);
                w += lambda * phi.dot(apply_parity(phi)).real();
            }
            out.values(i, j) = 2.0 / std::numbers::pi * w;
        }
    }

    auto trapezoid = [](const Eigen::VectorXd &grid, auto &&f) {
        double s = 0.0;
        for (Eigen::Index k = 0; k + 1 < grid.size(); k++) {
            s += 0.5 * (grid[k + 1] - grid[k]) * (f(k) + f(k + 1));
        }
        return s;
    };
    out.marginalX.resize(xs.size());
    for (Eigen::Index i = 0; i < xs.size(); i++) {
        out.marginalX[i] = trapezoid(ys, [&](Eigen::Index j) { return out.values(i, j); });
    }
    out.marginalY.resize(ys.size());
    for (Eigen::Index j = 0; j < ys.size(); j++) {
        out.marginalY[j] = trapezoid(xs, [&](Eigen::Index i) { return out.values(i, j); });
    }
    return out;
}

std::vector<std::pair<cplx, cplx>> generation_sequence(cplx alpha, cplx xi, int n_steps) {
    if (n_steps < 1) {
        fail(ErrorKind::invalid_argument, "n_steps must be >= 1");
    }
    double r = std::abs(xi) / n_steps;
    cplx phase = std::abs(xi) > 0 ? xi / std::abs(xi) : cplx{1.0, 0.0};
    std::vector<std::pair<cplx, cplx>> seq;
    cplx a = alpha / static_cast<double>(n_steps);
    for (int m = 0; m < n_steps; m++) {
        seq.emplace_back(a, xi / static_cast<double>(n_steps));
        a = a * std::cosh(r) + std::conj(a) * phase * std::sinh(r);
    }
    return seq;
}

FockOperator generation_product(const std::vector<std::pair<cplx, cplx>> &sequence, int cutoff) {
    FockOperator u = identity(cutoff);
    for (const auto &[a, x] : sequence) {
        u = u * displacement(a, cutoff) * squeeze(x, cutoff);
    }
    return u;
}

FockOperator lift_gate(const FockOperator &cat_gate, cplx xi) {
    FockOperator s = squeeze(xi, cutoff_of(cat_gate));
    return s * cat_gate * s.adjoint();
}

cplx displacement_expectation(const StateVector &psi, cplx beta) {
    auto gen = [&](const StateVector &v) -> StateVector {
        return beta * apply_create(v) - std::conj(beta) * apply_destroy(v);
    };
    double bound = 2.0 * std::abs(beta) * std::sqrt(static_cast<double>(psi.size()));
    return psi.dot(expv(gen, bound, psi));
}

double translation_model(double alpha, double xi, double eta) {
    return std::cos(std::abs(alpha * eta)) * std::exp(-0.5 * std::exp(-2.0 * std::abs(xi)) * eta * eta);
}

double translation_exact(double alpha, double xi, double eta) {
    double gamma = alpha * std::exp(xi);
    double overlap = std::exp(-2.0 * gamma * gamma);
    return std::exp(-0.5 * std::exp(-2.0 * xi) * eta * eta) * (std::cos(2.0 * alpha * eta) + overlap) /
           (1.0 + overlap);
}

}  // namespace sqcat
