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

#include "sqcat/fock.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sqcat/error.hpp"

namespace sqcat {

namespace {

void require_cutoff(int cutoff) {
    if (cutoff < 1) {
        fail(ErrorKind::invalid_argument, "cutoff must be >= 1, got " + std::to_string(cutoff));
    }
}

cplx unit_phase(cplx xi) {
    double r = std::abs(xi);
    return r > 0 ? xi / r : cplx{1.0, 0.0};
}

}  // namespace

FockOperator destroy(int cutoff) {
    require_cutoff(cutoff);
    FockOperator a = FockOperator::Zero(cutoff + 1, cutoff + 1);
    for (int n = 1; n <= cutoff; n++) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

FockOperator create(int cutoff) {
    return destroy(cutoff).adjoint();
}

FockOperator number(int cutoff) {
    require_cutoff(cutoff);
    FockOperator n = FockOperator::Zero(cutoff + 1, cutoff + 1);
    for (int k = 0; k <= cutoff; k++) {
        n(k, k) = k;
    }
    return n;
}

FockOperator parity(int cutoff) {
    require_cutoff(cutoff);
    FockOperator p = FockOperator::Zero(cutoff + 1, cutoff + 1);
    for (int k = 0; k <= cutoff; k++) {
        p(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
    }
    return p;
}

FockOperator identity(int cutoff) {
    require_cutoff(cutoff);
    return FockOperator::Identity(cutoff + 1, cutoff + 1);
}

Eigen::MatrixXcd expm(const Eigen::MatrixXcd &generator) {
    return generator.exp();
}

FockOperator displacement(cplx alpha, int cutoff) {
    require_cutoff(cutoff);
    double m = std::abs(alpha);
    if (m * m + 8.0 * m > cutoff) {
        fail(ErrorKind::cutoff_insufficient,
             "displacement |alpha|=" + std::to_string(m) + " needs cutoff >= |alpha|^2 + 8|alpha|");
    }
    FockOperator a = destroy(cutoff);
    FockOperator d = expm(alpha * a.adjoint() - std::conj(alpha) * a);
    if (tail_population(d.col(0), cutoff / 2) >= 1e-12) {
        fail(ErrorKind::cutoff_insufficient, "displaced vacuum leaks above cutoff/2");
    }
    return d;
}

int squeeze_min_cutoff(cplx xi) {
    return static_cast<int>(std::ceil(20.0 * std::exp(2.0 * std::abs(xi))));
}

FockOperator squeeze(cplx xi, int cutoff) {
    require_cutoff(cutoff);
    if (std::abs(xi) > 2.0) {
        fail(ErrorKind::unsupported_regime, "|xi| > 2 is not supported by dense squeeze()");
    }
    if (cutoff < squeeze_min_cutoff(xi)) {
        fail(ErrorKind::cutoff_insufficient, "squeeze needs cutoff >= " + std::to_string(squeeze_min_cutoff(xi)));
    }
    FockOperator a = destroy(cutoff);
    FockOperator a2 = a * a;
    return expm(0.5 * (std::conj(xi) * a2 - xi * a2.adjoint()));
}

FockOperator bogoliubov_mode(cplx xi, int cutoff) {
    require_cutoff(cutoff);
    double r = std::abs(xi);
    FockOperator a = destroy(cutoff);
    return std::cosh(r) * a + std::sinh(r) * unit_phase(xi) * a.adjoint();
}

StateVector squeezed_coherent_amplitudes(cplx alpha, cplx xi, int cutoff) {
    require_cutoff(cutoff);
    double r = std::abs(xi);
    cplx phase = unit_phase(xi);
    double ch = std::cosh(r);
    double sh = std::sinh(r);
    cplx gamma = alpha * ch + std::conj(alpha) * phase * sh;
    cplx log_c0 = -0.5 * std::norm(alpha) - 0.5 * std::conj(alpha) * std::conj(alpha) * phase * std::tanh(r) -
                  0.5 * std::log(ch);

    // The recurrence runs on rescaled values; `log_scale` tracks the factor
    // removed whenever the magnitudes grow too large.
    std::vector<cplx> c(cutoff + 1);
    c[0] = 1.0;
    double log_scale = 0.0;
    if (cutoff >= 1) {
        c[1] = gamma * c[0] / ch;
    }
    for (int n = 1; n < cutoff; n++) {
        c[n + 1] = (gamma * c[n] - phase * sh * std::sqrt(static_cast<double>(n)) * c[n - 1]) /
                   (ch * std::sqrt(static_cast<double>(n + 1)));
        if (std::abs(c[n + 1]) > 1e150) {
            for (int k = 0; k <= n + 1; k++) {
                c[k] *= 1e-150;
            }
            log_scale += 150.0 * std::log(10.0);
        }
    }
    StateVector out(cutoff + 1);
    for (int n = 0; n <= cutoff; n++) {
        out[n] = (c[n] == 0.0) ? cplx{0.0, 0.0} : std::exp(std::log(c[n]) + log_c0 + log_scale);
    }
    return out;
}

int tail_index(cplx alpha, cplx xi, double tol) {
    double r = std::abs(xi);
    double nbar = std::norm(alpha) * std::exp(2.0 * r) + std::sinh(r) * std::sinh(r);
    int length = std::max(64, static_cast<int>(8.0 * nbar + 16.0 * std::exp(2.0 * r) + 64.0));
    for (int attempt = 0; attempt < 16; attempt++, length *= 2) {
        StateVector c = squeezed_coherent_amplitudes(alpha, xi, length);
        int worst = 0;
        bool converged = true;
        for (int sign = 0; sign < 2; sign++) {
            std::vector<double> pop(length + 1, 0.0);
            double total = 0.0;
            for (int n = sign; n <= length; n += 2) {
                pop[n] = std::norm(c[n]);
                total += pop[n];
            }
            if (total < 1e-280) {
                continue;
            }
            double tail = 0.0;
            int idx = 0;
            for (int n = length; n >= 0; n--) {
                if (tail + pop[n] >= tol * total) {
                    idx = n;
                    break;
                }
                tail += pop[n];
            }
            double end_tail = 0.0;
            for (int n = (3 * length) / 4; n <= length; n++) {
                end_tail += pop[n];
            }
            if (end_tail > 1e-6 * tol * total) {
                converged = false;
            }
            worst = std::max(worst, idx);
        }
        if (converged) {
            return worst;
        }
    }
    fail(ErrorKind::unsupported_regime, "could not bound the Fock tail of the requested state");
}

int choose_cutoff(cplx alpha, cplx xi, double safety) {
    if (!(safety >= 1.0)) {
        fail(ErrorKind::invalid_argument, "choose_cutoff safety must be >= 1");
    }
    if (std::abs(xi) > 2.0) {
        fail(ErrorKind::unsupported_regime, "choose_cutoff supports |xi| <= 2");
    }
    int n_tail = tail_index(alpha, xi, 1e-12);
    return std::max(16, static_cast<int>(std::ceil(2.0 * safety * n_tail)));
}

StateVector apply_destroy(const StateVector &v) {
    Eigen::Index n = v.size();
    StateVector out = StateVector::Zero(n);
    for (Eigen::Index k = 1; k < n; k++) {
        out[k - 1] = std::sqrt(static_cast<double>(k)) * v[k];
    }
    return out;
}

StateVector apply_create(const StateVector &v) {
    Eigen::Index n = v.size();
    StateVector out = StateVector::Zero(n);
    for (Eigen::Index k = 1; k < n; k++) {
        out[k] = std::sqrt(static_cast<double>(k)) * v[k - 1];
    }
    return out;
}

StateVector apply_number(const StateVector &v, int power) {
    StateVector out = v;
    for (Eigen::Index k = 0; k < v.size(); k++) {
        out[k] *= std::pow(static_cast<double>(k), power);
    }
    return out;
}

StateVector apply_parity(const StateVector &v) {
    StateVector out = v;
    for (Eigen::Index k = 1; k < v.size(); k += 2) {
        out[k] = -out[k];
    }
    return out;
}

StateVector expv(const std::function<StateVector(const StateVector &)> &apply_generator, double norm_bound,
                 const StateVector &v) {
    int steps = std::max(1, static_cast<int>(std::ceil(norm_bound)));
    double h = 1.0 / steps;
    StateVector x = v;
    for (int s = 0; s < steps; s++) {
        StateVector term = x;
        StateVector sum = x;
        for (int k = 1; k < 80; k++) {
            term = apply_generator(term) * (h / k);
            sum += term;
            if (term.lpNorm<1>() <= 1e-18 * sum.lpNorm<1>()) {
                break;
            }
        }
        x = sum;
    }
    return x;
}

double tail_population(const StateVector &v, int from) {
    double t = 0.0;
    for (Eigen::Index k = from + 1; k < v.size(); k++) {
        t += std::norm(v[k]);
    }
    return t;
}

double lower_block_distance(const Eigen::MatrixXcd &m, const Eigen::MatrixXcd &target) {
    Eigen::Index k = (std::min(m.rows(), target.rows()) - 1) / 2 + 1;
    return (m.topLeftCorner(k, k) - target.topLeftCorner(k, k)).cwiseAbs().maxCoeff();
}

double unitarity_residual(const FockOperator &u) {
    Eigen::MatrixXcd g = u.adjoint() * u;
    return lower_block_distance(g, Eigen::MatrixXcd::Identity(u.rows(), u.cols()));
}

}  // namespace sqcat
