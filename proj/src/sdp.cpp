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

#include "sqcat/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sqcat/error.hpp"

namespace sqcat {

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

double inner(const Mat &a, const Mat &b) {
    return (a.array() * b.array()).sum();
}

Mat sym(const Mat &m) {
    return 0.5 * (m + m.transpose());
}

// Largest t <= 1 with x + t dx still PSD, scaled back by `fraction`.
double max_step(const Mat &x, const Mat &dx, double fraction) {
    Eigen::LLT<Mat> llt(x);
    if (llt.info() != Eigen::Success) {
        return 0.0;
    }
    Mat l_inv = llt.matrixL().solve(Mat::Identity(x.rows(), x.cols()));
    Mat m = sym(l_inv * dx * l_inv.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> eig(m, Eigen::EigenvaluesOnly);
    double lmin = eig.eigenvalues().minCoeff();
    if (lmin >= 0.0) {
        return 1.0;
    }
    return std::min(1.0, fraction * (-1.0 / lmin));
}

struct RealSdp {
    Mat C;
    std::vector<Mat> A;
    Vec b;

    Vec apply(const Mat &x) const {
        Vec out(static_cast<Eigen::Index>(A.size()));
        for (size_t k = 0; k < A.size(); k++) {
            out[static_cast<Eigen::Index>(k)] = inner(A[k], x);
        }
        return out;
    }
    Mat adjoint(const Vec &y) const {
        Mat out = Mat::Zero(C.rows(), C.cols());
        for (size_t k = 0; k < A.size(); k++) {
            out += y[static_cast<Eigen::Index>(k)] * A[k];
        }
        return out;
    }
};

}  // namespace

Eigen::MatrixXd real_embedding(const Eigen::MatrixXcd &h) {
    Eigen::Index n = h.rows();
    Mat out(2 * n, 2 * n);
    out.topLeftCorner(n, n) = h.real();
    out.topRightCorner(n, n) = -h.imag();
    out.bottomLeftCorner(n, n) = h.imag();
    out.bottomRightCorner(n, n) = h.real();
    return out;
}

SdpResult solve_hermitian_sdp(const HermitianSdp &problem, const SdpOptions &options) {
    Eigen::Index k = problem.C.rows();
    if (problem.C.cols() != k || static_cast<Eigen::Index>(problem.A.size()) != problem.b.size()) {
        fail(ErrorKind::invalid_argument, "inconsistent SDP dimensions");
    }
    // Tr(H X) = <H~, X~> / 2; the real problem is a minimization.
    RealSdp p;
    p.C = -0.5 * real_embedding(problem.C);
    p.b = problem.b;
    for (const auto &a : problem.A) {
        if (a.rows() != k || a.cols() != k) {
            fail(ErrorKind::invalid_argument, "constraint matrix dimension mismatch");
        }
        p.A.push_back(0.5 * real_embedding(a));
    }
    Eigen::Index n = 2 * k;
    Eigen::Index m = p.b.size();

    double scale = 1.0 + p.C.norm();
    Mat x = Mat::Identity(n, n);
    Mat s = scale * Mat::Identity(n, n);
    Vec y = Vec::Zero(m);

    SdpResult result;
    double bnorm = 1.0 + p.b.norm();
    double cnorm = 1.0 + p.C.norm();
    for (int it = 0; it <= options.maxIterations; it++) {
        Vec rp = p.b - p.apply(x);
        Mat rd = p.C - s - p.adjoint(y);
        double mu = inner(x, s) / static_cast<double>(n);
        double pobj = inner(p.C, x);
        double dobj = p.b.dot(y);
        result.iterations = it;
        result.primalObjective = -pobj;
        result.dualObjective = -dobj;
        result.gap = std::abs(pobj - dobj);
        result.primalInfeasibility = rp.norm() / bnorm;
        result.dualInfeasibility = rd.norm() / cnorm;
        if (result.primalInfeasibility < options.feasTol && result.dualInfeasibility < options.feasTol &&
            result.gap < options.gapTol && inner(x, s) < options.gapTol) {
            result.converged = true;
            break;
        }
        if (it == options.maxIterations) {
            break;
        }

        Eigen::LDLT<Mat> s_fact(s);
        Mat s_inv = s_fact.solve(Mat::Identity(n, n));
        s_inv = sym(s_inv);

        Mat schur(m, m);
        std::vector<Mat> xa(static_cast<size_t>(m));
        for (Eigen::Index l = 0; l < m; l++) {
            xa[static_cast<size_t>(l)] = x * p.A[static_cast<size_t>(l)] * s_inv;
        }
        for (Eigen::Index a = 0; a < m; a++) {
            for (Eigen::Index l = a; l < m; l++) {
                double v = inner(p.A[static_cast<size_t>(a)], xa[static_cast<size_t>(l)]);
                schur(a, l) = v;
                schur(l, a) = v;
            }
        }
        Eigen::LLT<Mat> schur_fact(schur);
        if (schur_fact.info() != Eigen::Success) {
            schur.diagonal().array() += 1e-14 * schur.diagonal().cwiseAbs().maxCoeff();
            schur_fact.compute(schur);
            if (schur_fact.info() != Eigen::Success) {
                fail(ErrorKind::sdp_failure, "Schur complement is not positive definite");
            }
        }
        Mat x_rd = x * rd * s_inv;
        Vec a_x_rd = p.apply(x_rd);

        auto direction = [&](const Mat &rc, Mat &dx, Vec &dy, Mat &ds) {
            Vec rhs = rp - p.apply(rc) + a_x_rd;
            dy = schur_fact.solve(rhs);
            ds = rd - p.adjoint(dy);
            dx = sym(rc - x * ds * s_inv);
        };

        Mat dx, ds;
        Vec dy;
        direction(-x, dx, dy, ds);
        double ap = max_step(x, dx, 1.0);
        double ad = max_step(s, ds, 1.0);
        double mu_aff = inner(x + ap * dx, s + ad * ds) / static_cast<double>(n);
        double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

        Mat rc = sigma * mu * s_inv - x - dx * ds * s_inv;
        direction(sym(rc), dx, dy, ds);
        ap = max_step(x, dx, 0.98);
        ad = max_step(s, ds, 0.98);
        x = sym(x + ap * dx);
        y = y + ad * dy;
        s = sym(s + ad * ds);
    }

    if (!result.converged && !(result.gap <= 1e-7 && result.primalInfeasibility <= 1e-9)) {
        fail(ErrorKind::sdp_failure, "interior point stalled after " + std::to_string(result.iterations) +
                                         " iterations, gap " + std::to_string(result.gap));
    }
    Eigen::MatrixXcd xc(k, k);
    xc.real() = 0.5 * (x.topLeftCorner(k, k) + x.bottomRightCorner(k, k));
    xc.imag() = 0.5 * (x.bottomLeftCorner(k, k) - x.topRightCorner(k, k));
    result.X = 0.5 * (xc + xc.adjoint());
    result.y = y;
    return result;
}

}  // namespace sqcat
