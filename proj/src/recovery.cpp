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

#include "sqcat/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sqcat/error.hpp"
#include "sqcat/parallel.hpp"

namespace sqcat {

namespace {

constexpr double kTieTolerance = 1e-10;
constexpr double kKrausFloor = 1e-12;

Eigen::MatrixXcd unit(const CodePair &code, int a, int b) {
    return code.codewords[a] * code.codewords[b].adjoint();
}

NoisyCodeImages project_images(const Eigen::MatrixXcd &e, const std::array<Eigen::MatrixXcd, 3> &rho) {
    NoisyCodeImages out;
    out.blocks[0][0] = e.adjoint() * rho[0] * e;
    out.blocks[1][1] = e.adjoint() * rho[1] * e;
    out.blocks[0][1] = e.adjoint() * rho[2] * e;
    out.blocks[1][0] = out.blocks[0][1].adjoint();
    return out;
}

bool better(double f, double n, double best_f, double best_n) {
    if (f > best_f + kTieTolerance) {
        return true;
    }
    return std::abs(f - best_f) <= kTieTolerance && n < best_n;
}

}  // namespace

LossFrameImages loss_frame_images(const CodePair &code, double kappa1_tau) {
    LossFrameImages out;
    out.kappa1_tau = kappa1_tau;
    out.sigma[0] = loss_interaction_solution(unit(code, 0, 0), kappa1_tau);
    out.sigma[1] = loss_interaction_solution(unit(code, 1, 1), kappa1_tau);
    out.sigma[2] = loss_interaction_solution(unit(code, 0, 1), kappa1_tau);
    return out;
}

NoisyCodeImages noisy_code_images(const CodePair &code, const LossFrameImages &frame, double kappa2_tau) {
    NoiseParams p{frame.kappa1_tau, kappa2_tau};
    std::array<Eigen::MatrixXcd, 3> rho;
    for (int k = 0; k < 3; k++) {
        rho[k] = dephase_and_damp(frame.sigma[k], p);
    }
    return project_images(code.modeled_basis(), rho);
}

NoisyCodeImages noisy_code_images(const CodePair &code, const Channel &channel) {
    std::array<Eigen::MatrixXcd, 3> rho{channel(unit(code, 0, 0)), channel(unit(code, 1, 1)),
                                        channel(unit(code, 0, 1))};
    return project_images(code.modeled_basis(), rho);
}

Eigen::MatrixXcd process_matrix(const RecoveryBasis &basis, const NoisyCodeImages &images) {
    int k = basis.size();
    std::vector<Eigen::MatrixXcd> beta;
    for (int i = 0; i < k; i++) {
        beta.push_back(basis.bra_matrix(i));
    }
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(k, k);
    for (int i = 0; i < k; i++) {
        for (int j = 0; j < k; j++) {
            cplx acc = 0.0;
            for (int a = 0; a < 2; a++) {
                for (int b = 0; b < 2; b++) {
                    acc += (beta[i].row(a) * images.blocks[a][b] * beta[j].row(b).adjoint())(0, 0);
                }
            }
            w(i, j) = acc;
        }
    }
    return 0.5 * (w + w.adjoint());
}

Eigen::MatrixXcd process_matrix(const CodePair &code, const RecoveryBasis &basis, const NoiseParams &p) {
    return process_matrix(basis, noisy_code_images(code, loss_frame_images(code, p.kappa1_tau), p.kappa2_tau));
}

Eigen::MatrixXcd process_matrix(const CodePair &code, const RecoveryBasis &basis, const Channel &channel) {
    return process_matrix(basis, noisy_code_images(code, channel));
}

double tp_residual(const Eigen::MatrixXcd &X, const RecoveryBasis &basis) {
    int k = basis.size();
    int d = basis.modeled_dim();
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < k; i++) {
        Eigen::MatrixXcd bi = basis.bra_matrix(i);
        for (int j = 0; j < k; j++) {
            if (X(i, j) != 0.0) {
                sum += X(i, j) * basis.bra_matrix(j).adjoint() * bi;
            }
        }
    }
    return (sum - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
}

double recovery_fidelity(const Eigen::MatrixXcd &X, const Eigen::MatrixXcd &W) {
    return 0.25 * (X.array() * W.array()).sum().real();
}

RecoverySolution solve_sdp(const Eigen::MatrixXcd &W, const RecoveryBasis &basis) {
    int k = basis.size();
    int d = basis.modeled_dim();
    if (W.rows() != k || W.cols() != k) {
        fail(ErrorKind::invalid_argument, "process matrix does not match the recovery basis");
    }
    if ((W - W.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + W.cwiseAbs().maxCoeff())) {
        fail(ErrorKind::invalid_argument, "process matrix is not Hermitian");
    }
    std::vector<Eigen::MatrixXcd> beta;
    for (int i = 0; i < k; i++) {
        beta.push_back(basis.bra_matrix(i));
    }
    // g[i][j] = beta_j^dag beta_i
    std::vector<std::vector<Eigen::MatrixXcd>> g(k, std::vector<Eigen::MatrixXcd>(k));
    for (int i = 0; i < k; i++) {
        for (int j = 0; j < k; j++) {
            g[i][j] = beta[j].adjoint() * beta[i];
        }
    }
    HermitianSdp sdp;
    sdp.C = W.transpose() / 4.0;
    std::vector<double> rhs;
    const cplx iu{0.0, 1.0};
    for (int p = 0; p < d; p++) {
        for (int q = p; q < d; q++) {
            // Tr(A X) = sum_ij X_ij g[i][j](p, q)
            Eigen::MatrixXcd a(k, k);
            for (int i = 0; i < k; i++) {
                for (int j = 0; j < k; j++) {
                    a(j, i) = g[i][j](p, q);
                }
            }
            sdp.A.push_back(0.5 * (a + a.adjoint()));
            rhs.push_back(p == q ? 1.0 : 0.0);
            if (p != q) {
                sdp.A.push_back((a - a.adjoint()) / (2.0 * iu));
                rhs.push_back(0.0);
            }
        }
    }
    sdp.b = Eigen::Map<Eigen::VectorXd>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
    SdpResult r = solve_hermitian_sdp(sdp);

    RecoverySolution sol;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(r.X);
    Eigen::VectorXd vals = eig.eigenvalues().cwiseMax(0.0);
    sol.X = eig.eigenvectors() * vals.asDiagonal() * eig.eigenvectors().adjoint();
    sol.fidelity = recovery_fidelity(sol.X, W);
    sol.gap = r.gap;
    sol.iterations = r.iterations;
    sol.tpResidual = tp_residual(sol.X, basis);
    return sol;
}

std::vector<FockOperator> extract_kraus(RecoverySolution &sol, const RecoveryBasis &basis) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(sol.X);
    sol.krausCompact.clear();
    std::vector<FockOperator> dense;
    Eigen::MatrixXcd c = basis.modeled.leftCols(2);
    for (Eigen::Index r = eig.eigenvalues().size() - 1; r >= 0; r--) {
        double s = eig.eigenvalues()[r];
        if (s < kKrausFloor) {
            continue;
        }
        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, basis.modeled_dim());
        for (int i = 0; i < basis.size(); i++) {
            rho += eig.eigenvectors()(i, r) * basis.bra_matrix(i);
        }
        rho *= std::sqrt(s);
        sol.krausCompact.push_back(rho);
        dense.push_back(c * rho * basis.modeled.adjoint());
    }
    return dense;
}

double kraus_tp_residual(const std::vector<Eigen::MatrixXcd> &kraus_compact) {
    if (kraus_compact.empty()) {
        return std::numeric_limits<double>::infinity();
    }
    Eigen::Index d = kraus_compact[0].cols();
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
    for (const auto &r : kraus_compact) {
        sum += r.adjoint() * r;
    }
    return (sum - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
}

Channel recovery_channel(const Eigen::MatrixXcd &modeled, const std::vector<Eigen::MatrixXcd> &kraus_compact) {
    if (kraus_compact.empty()) {
        fail(ErrorKind::invalid_argument, "recovery channel needs extracted Kraus operators");
    }
    Eigen::MatrixXcd e = modeled;
    Eigen::MatrixXcd c = modeled.leftCols(2);
    std::vector<Eigen::MatrixXcd> kraus = kraus_compact;
    return [e, c, kraus](const DensityMatrix &rho) -> DensityMatrix {
        Eigen::MatrixXcd rho_e = rho * e;              // N x D
        Eigen::MatrixXcd inner = e.adjoint() * rho_e;  // D x D
        Eigen::MatrixXcd code = Eigen::MatrixXcd::Zero(2, 2);
        for (const auto &r : kraus) {
            code += r * inner * r.adjoint();
        }
        Eigen::MatrixXcd e_rho = e.adjoint() * rho;  // D x N
        DensityMatrix out = rho - e * e_rho - rho_e * e.adjoint() + e * inner * e.adjoint();
        out += c * code * c.adjoint();
        return out;
    };
}

Channel full_recovery_map(const RecoverySolution &sol, const RecoveryBasis &basis) {
    return recovery_channel(basis.modeled, sol.krausCompact);
}

std::vector<double> alpha_grid(const OptimizeOptions &o) {
    std::vector<double> out;
    if (o.alphaPoints == 1) {
        out.push_back(o.alphaMin);
        return out;
    }
    double la = std::log(o.alphaMin), lb = std::log(o.alphaMax);
    for (int i = 0; i < o.alphaPoints; i++) {
        out.push_back(std::exp(la + (lb - la) * i / (o.alphaPoints - 1)));
    }
    return out;
}

CodePair encoding_code(double alpha, double xi) {
    if (alpha == 0.0 && xi == 0.0) {
        SCParams meta;
        meta.cutoff = 16;
        StateVector zero = StateVector::Zero(meta.cutoff + 1), one = StateVector::Zero(meta.cutoff + 1);
        zero[0] = 1.0;
        one[1] = 1.0;
        return build_error_subspaces(std::array<StateVector, 2>{zero, one}, meta);
    }
    return build_error_subspaces(make_sc_params(alpha, xi));
}

CellEvaluation evaluate_encoding(double alpha, double xi, double kappa1_tau, const std::vector<double> &kappa2_tau) {
    CellEvaluation cell;
    cell.alpha = alpha;
    cell.xi = xi;
    try {
        CodePair code = encoding_code(alpha, xi);
        RecoveryBasis basis = recovery_basis(code);
        cell.cutoff = code.cutoff();
        cell.meanPhotons = code.mean_photons();
        LossFrameImages frame = loss_frame_images(code, kappa1_tau);
        for (double k2 : kappa2_tau) {
            Eigen::MatrixXcd w = process_matrix(basis, noisy_code_images(code, frame, k2));
            RecoverySolution sol = solve_sdp(w, basis);
            cell.fidelity.push_back(sol.fidelity);
            cell.gap.push_back(sol.gap);
            cell.tpResidual.push_back(sol.tpResidual);
        }
        cell.ok = true;
    } catch (const Error &e) {
        cell.ok = false;
        cell.error = std::string(error_kind_name(e.kind())) + ": " + e.what();
    }
    return cell;
}

namespace {

struct Point {
    double u;   // log alpha
    double xi;
    double f;   // fidelity
    double n;
    double gap;
    double tp;
    int cutoff;
};

// Bounded Nelder-Mead on (log alpha, xi), maximizing fidelity.
Point nelder_mead(Point start, double du, double dxi, double kappa1, double kappa2, double xi_max,
                  const OptimizeOptions &o, int &evaluations, std::vector<std::string> &warnings) {
    double ulo = std::log(o.alphaMin), uhi = std::log(o.alphaMax);
    bool two_d = xi_max > 0.0;
    auto eval = [&](double u, double xi) {
        u = std::clamp(u, ulo, uhi);
        xi = std::clamp(xi, 0.0, xi_max);
        evaluations++;
        CellEvaluation c = evaluate_encoding(std::exp(u), xi, kappa1, {kappa2});
        if (!c.ok) {
            warnings.push_back("refinement point skipped: " + c.error);
            return Point{u, xi, -std::numeric_limits<double>::infinity(), 0.0, 0.0, 0.0, 0};
        }
        return Point{u, xi, c.fidelity[0], c.meanPhotons, c.gap[0], c.tpResidual[0], c.cutoff};
    };
    auto away = [](double x, double step, double lo, double hi) { return x + step <= hi ? x + step : std::max(lo, x - step); };

    std::vector<Point> simplex{start};
    simplex.push_back(eval(away(start.u, du, ulo, uhi), start.xi));
    if (two_d) {
        simplex.push_back(eval(start.u, away(start.xi, dxi, 0.0, xi_max)));
    }
    auto order = [&]() {
        std::stable_sort(simplex.begin(), simplex.end(), [](const Point &a, const Point &b) { return a.f > b.f; });
    };
    while (evaluations < o.nelderMeadEvaluations) {
        order();
        Point &worst = simplex.back();
        if (simplex.front().f - worst.f < 1e-13) {
            break;
        }
        double cu = 0.0, cx = 0.0;
        for (size_t k = 0; k + 1 < simplex.size(); k++) {
            cu += simplex[k].u;
            cx += simplex[k].xi;
        }
        cu /= static_cast<double>(simplex.size() - 1);
        cx /= static_cast<double>(simplex.size() - 1);
        Point refl = eval(2 * cu - worst.u, 2 * cx - worst.xi);
        if (refl.f > simplex.front().f) {
            Point exp = eval(3 * cu - 2 * worst.u, 3 * cx - 2 * worst.xi);
            worst = exp.f > refl.f ? exp : refl;
        } else if (refl.f > simplex[simplex.size() - 2].f) {
            worst = refl;
        } else {
            Point contr = eval(0.5 * (cu + worst.u), 0.5 * (cx + worst.xi));
            if (contr.f > worst.f) {
                worst = contr;
            } else {
                for (size_t k = 1; k < simplex.size(); k++) {
                    simplex[k] = eval(0.5 * (simplex[0].u + simplex[k].u), 0.5 * (simplex[0].xi + simplex[k].xi));
                }
            }
        }
    }
    order();
    return simplex.front();
}

}  // namespace

std::vector<EncodingResult> optimize_encoding_row(double kappa1_tau, const std::vector<double> &kappa2_tau,
                                                  double xi_max, const OptimizeOptions &o) {
    if (!(xi_max >= 0.0) || o.alphaPoints < 1 || o.xiPoints < 1 || !(o.alphaMin > 0.0) ||
        !(o.alphaMax >= o.alphaMin)) {
        fail(ErrorKind::invalid_argument, "invalid encoding search options");
    }
    std::vector<double> alphas = alpha_grid(o);
    std::vector<double> xis;
    int nxi = xi_max > 0.0 ? o.xiPoints : 1;
    for (int j = 0; j < nxi; j++) {
        xis.push_back(nxi == 1 ? 0.0 : xi_max * j / (nxi - 1));
    }
    std::vector<std::pair<double, double>> cells;
    for (double xi : xis) {
        for (double a : alphas) {
            cells.emplace_back(a, xi);
        }
    }
    cells.emplace_back(0.0, 0.0);
    for (const auto &c : o.candidates) {
        if (c.second <= xi_max + 1e-15 && c.first >= o.alphaMin && c.first <= o.alphaMax) {
            cells.push_back(c);
        }
    }
    std::vector<CellEvaluation> evals(cells.size());
    parallel_for(static_cast<int>(cells.size()), [&](int i) {
        evals[i] = evaluate_encoding(cells[i].first, cells[i].second, kappa1_tau, kappa2_tau);
    });

    double du = alphas.size() > 1 ? std::log(alphas[1] / alphas[0]) : 0.1;
    double dxi = xis.size() > 1 ? xis[1] - xis[0] : 0.1;
    std::vector<EncodingResult> results(kappa2_tau.size());
    parallel_for(static_cast<int>(kappa2_tau.size()), [&](int q) {
        EncodingResult &res = results[q];
        Point best{0, 0, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 0, 0, 0};
        for (const auto &c : evals) {
            if (!c.ok) {
                res.warnings.push_back("cell (" + std::to_string(c.alpha) + ", " + std::to_string(c.xi) +
                                       ") skipped: " + c.error);
                continue;
            }
            res.evaluations++;
            if (better(c.fidelity[q], c.meanPhotons, best.f, best.n)) {
                double u = c.alpha > 0.0 ? std::log(c.alpha) : -std::numeric_limits<double>::infinity();
                best = Point{u, c.xi, c.fidelity[q], c.meanPhotons, c.gap[q], c.tpResidual[q], c.cutoff};
            }
        }
        if (!std::isfinite(best.f)) {
            fail(ErrorKind::sdp_failure, "no encoding cell could be evaluated");
        }
        if (o.nelderMeadEvaluations > 0 && best.f < 1.0 - kTieTolerance && std::isfinite(best.u)) {
            int used = 0;
            Point refined = nelder_mead(best, du, dxi, kappa1_tau, kappa2_tau[q], xi_max, o, used, res.warnings);
            res.evaluations += used;
            if (refined.f > best.f + 1e-13) {
                best = refined;
            }
        }
        res.alphaOpt = std::exp(best.u);
        res.xiOpt = best.xi;
        res.fidelityOpt = best.f;
        res.meanPhotons = best.n;
        res.sdpGap = best.gap;
        res.tpResidual = best.tp;
        res.cutoff = best.cutoff;
        res.code = encoding_code(res.alphaOpt, res.xiOpt);
    });
    return results;
}

EncodingResult optimize_encoding(const NoiseParams &p, double xi_max, const OptimizeOptions &options) {
    return optimize_encoding_row(p.kappa1_tau, {p.kappa2_tau}, xi_max, options)[0];
}

std::vector<EncodingResult> cat_baseline_row(double kappa1_tau, const std::vector<double> &kappa2_tau,
                                             const OptimizeOptions &options) {
    return optimize_encoding_row(kappa1_tau, kappa2_tau, 0.0, options);
}

EncodingResult cat_baseline(const NoiseParams &p, const OptimizeOptions &options) {
    return optimize_encoding(p, 0.0, options);
}

double single_rail_baseline(const NoiseParams &p) {
    StateVector zero = StateVector::Zero(2), one = StateVector::Zero(2);
    zero[0] = 1.0;
    one[1] = 1.0;
    return channel_fidelity_direct({zero, one}, noise_channel(p));
}

}  // namespace sqcat
