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

#include "sqcat/noise.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sqcat/error.hpp"

namespace sqcat {

namespace {

constexpr double kAbsTol = 1e-10;
constexpr double kRelTol = 1e-10;

void require_square(const Eigen::MatrixXcd &rho) {
    if (rho.rows() != rho.cols() || rho.rows() < 1) {
        fail(ErrorKind::invalid_argument, "density matrix must be square");
    }
}

void require_params(const NoiseParams &p) {
    if (!(p.kappa1_tau >= 0.0) || !(p.kappa2_tau >= 0.0)) {
        fail(ErrorKind::invalid_argument, "noise rates must be non-negative");
    }
}

// d sigma_mn / ds = k1 e^{-k1 s} sqrt((m+1)(n+1)) sigma_{m+1,n+1}
struct LossRhs {
    Eigen::ArrayXXd weights;

    explicit LossRhs(Eigen::Index d) : weights(d - 1, d - 1) {
        for (Eigen::Index n = 0; n + 1 < d; n++) {
            for (Eigen::Index m = 0; m + 1 < d; m++) {
                weights(m, n) = std::sqrt(static_cast<double>((m + 1) * (n + 1)));
            }
        }
    }

    void operator()(const Eigen::MatrixXcd &sigma, double k1, double s, Eigen::MatrixXcd &out) const {
        Eigen::Index d = sigma.rows();
        double f = k1 * std::exp(-k1 * s);
        out.resize(d, d);
        out.row(d - 1).setZero();
        out.col(d - 1).setZero();
        out.topLeftCorner(d - 1, d - 1).array() = f * weights * sigma.bottomRightCorner(d - 1, d - 1).array();
    }
};

}  // namespace

DensityMatrix lindblad_rhs(const DensityMatrix &rho, const NoiseParams &p) {
    require_square(rho);
    require_params(p);
    Eigen::Index d = rho.rows();
    DensityMatrix out(d, d);
    for (Eigen::Index n = 0; n < d; n++) {
        for (Eigen::Index m = 0; m < d; m++) {
            double diff = static_cast<double>(m - n);
            cplx v = -(0.5 * p.kappa1_tau * static_cast<double>(m + n) + 0.5 * p.kappa2_tau * diff * diff) * rho(m, n);
            if (m + 1 < d && n + 1 < d) {
                v += p.kappa1_tau * std::sqrt(static_cast<double>((m + 1) * (n + 1))) * rho(m + 1, n + 1);
            }
            out(m, n) = v;
        }
    }
    return out;
}

Eigen::MatrixXcd loss_interaction_solution(const Eigen::MatrixXcd &rho, double k1, EvolveStats *stats) {
    require_square(rho);
    if (!(k1 >= 0.0)) {
        fail(ErrorKind::invalid_argument, "loss rate must be non-negative");
    }
    if (k1 == 0.0) {
        return rho;
    }
    // Dormand-Prince 5(4) tableau.
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;

    Eigen::Index d = rho.rows();
    if (d == 1) {
        return rho;
    }
    LossRhs loss_rhs(d);
    Eigen::MatrixXcd y = rho;
    Eigen::MatrixXcd k1m(d, d), k2m(d, d), k3m(d, d), k4m(d, d), k5m(d, d), k6m(d, d), k7m(d, d);
    Eigen::MatrixXcd tmp(d, d), ynew(d, d);
    double s = 0.0;
    double h = std::min(1.0, 0.5 / (k1 * static_cast<double>(d)));
    h = std::max(h, 1e-3);
    loss_rhs(y, k1, s, k1m);
    int accepted = 0, rejected = 0;
    while (s < 1.0) {
        if (s + h > 1.0) {
            h = 1.0 - s;
        }
        tmp = y + h * a21 * k1m;
        loss_rhs(tmp, k1, s + c2 * h, k2m);
        tmp = y + h * (a31 * k1m + a32 * k2m);
        loss_rhs(tmp, k1, s + c3 * h, k3m);
        tmp = y + h * (a41 * k1m + a42 * k2m + a43 * k3m);
        loss_rhs(tmp, k1, s + c4 * h, k4m);
        tmp = y + h * (a51 * k1m + a52 * k2m + a53 * k3m + a54 * k4m);
        loss_rhs(tmp, k1, s + c5 * h, k5m);
        tmp = y + h * (a61 * k1m + a62 * k2m + a63 * k3m + a64 * k4m + a65 * k5m);
        loss_rhs(tmp, k1, s + h, k6m);
        ynew = y + h * (b1 * k1m + b3 * k3m + b4 * k4m + b5 * k5m + b6 * k6m);
        loss_rhs(ynew, k1, s + h, k7m);
        tmp = h * (e1 * k1m + e3 * k3m + e4 * k4m + e5 * k5m + e6 * k6m + e7 * k7m);

        double err = 0.0;
        for (Eigen::Index n = 0; n < d; n++) {
            for (Eigen::Index m = 0; m < d; m++) {
                double scale = kAbsTol + kRelTol * std::max(std::abs(y(m, n)), std::abs(ynew(m, n)));
                err = std::max(err, std::abs(tmp(m, n)) / scale);
            }
        }
        if (err <= 1.0) {
            s += h;
            y.swap(ynew);
            k1m.swap(k7m);
            accepted++;
        } else {
            rejected++;
        }
        double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
        if (s < 1.0 && h < 1e-12) {
            fail(ErrorKind::integrator_failure, "step size underflow in evolve");
        }
    }
    if (stats != nullptr) {
        stats->acceptedSteps += accepted;
        stats->rejectedSteps += rejected;
    }
    return y;
}

DensityMatrix dephase_and_damp(const Eigen::MatrixXcd &sigma, const NoiseParams &p) {
    Eigen::Index d = sigma.rows();
    DensityMatrix out(d, d);
    for (Eigen::Index n = 0; n < d; n++) {
        for (Eigen::Index m = 0; m < d; m++) {
            double diff = static_cast<double>(m - n);
            double lambda = -0.5 * p.kappa2_tau * diff * diff - 0.5 * p.kappa1_tau * static_cast<double>(m + n);
            out(m, n) = std::exp(lambda) * sigma(m, n);
        }
    }
    return out;
}

DensityMatrix evolve(const DensityMatrix &rho, const NoiseParams &p, EvolveStats *stats) {
    require_square(rho);
    require_params(p);
    return dephase_and_damp(loss_interaction_solution(rho, p.kappa1_tau, stats), p);
}

DensityMatrix evolve_closed_form(const DensityMatrix &rho, const NoiseParams &p) {
    require_square(rho);
    require_params(p);
    Eigen::Index d = rho.rows();
    double eta = std::exp(-p.kappa1_tau);
    auto log_binom = [](double top, double k) {
        return std::lgamma(top + 1.0) - std::lgamma(k + 1.0) - std::lgamma(top - k + 1.0);
    };
    DensityMatrix out = DensityMatrix::Zero(d, d);
    for (Eigen::Index n = 0; n < d; n++) {
        for (Eigen::Index m = 0; m < d; m++) {
            cplx acc = 0.0;
            for (Eigen::Index k = 0; m + k < d && n + k < d; k++) {
                double lw = 0.5 * (log_binom(static_cast<double>(m + k), static_cast<double>(k)) +
                                   log_binom(static_cast<double>(n + k), static_cast<double>(k)));
                double w = std::exp(lw) * std::pow(eta, 0.5 * static_cast<double>(m + n));
                if (k > 0) {
                    w *= std::pow(1.0 - eta, static_cast<double>(k));
                }
                acc += w * rho(m + k, n + k);
            }
            double diff = static_cast<double>(m - n);
            out(m, n) = std::exp(-0.5 * p.kappa2_tau * diff * diff) * acc;
        }
    }
    return out;
}

LeadingKraus leading_kraus(const NoiseParams &p, int cutoff) {
    require_params(p);
    LeadingKraus k;
    FockOperator n = number(cutoff);
    FockOperator n2 = n * n;
    k.K0 = identity(cutoff) - 0.5 * p.kappa1_tau * n - 0.5 * p.kappa2_tau * n2;
    k.K1 = std::sqrt(p.kappa1_tau) * destroy(cutoff);
    k.K2 = std::sqrt(p.kappa2_tau) * n;
    k.regimeWarning = p.kappa1_tau + p.kappa2_tau > 0.2;
    return k;
}

DensityMatrix apply_kraus(const LeadingKraus &k, const DensityMatrix &rho) {
    return k.K0 * rho * k.K0.adjoint() + k.K1 * rho * k.K1.adjoint() + k.K2 * rho * k.K2.adjoint();
}

double channel_fidelity_direct(const std::array<StateVector, 2> &codewords, const Channel &total_channel) {
    for (const auto &c : codewords) {
        if (std::abs(c.norm() - 1.0) > 1e-10) {
            fail(ErrorKind::invalid_argument, "channel fidelity needs normalized codewords");
        }
    }
    double f = 0.0;
    for (int m = 0; m < 2; m++) {
        for (int n = 0; n < 2; n++) {
            DensityMatrix unit = codewords[m] * codewords[n].adjoint();
            DensityMatrix out = total_channel(unit);
            f += codewords[m].dot(out * codewords[n]).real();
        }
    }
    return 0.25 * f;
}

Channel noise_channel(const NoiseParams &p) {
    return [p](const DensityMatrix &rho) { return evolve(rho, p); };
}

double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    Eigen::MatrixXcd diff = a - b;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
    return 0.5 * eig.eigenvalues().cwiseAbs().sum();
}

}  // namespace sqcat
