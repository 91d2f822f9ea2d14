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

#ifndef SQCAT_SDP_HPP
#define SQCAT_SDP_HPP

#include <vector>

#include <Eigen/Dense>

namespace sqcat {

/// maximize Re Tr(C X) subject to Tr(A_k X) = b_k and X >= 0, with C and all
/// A_k Hermitian.
struct HermitianSdp {
    Eigen::MatrixXcd C;
    std::vector<Eigen::MatrixXcd> A;
    Eigen::VectorXd b;
};

struct SdpOptions {
    double gapTol = 1e-10;
    double feasTol = 1e-11;
    int maxIterations = 200;
};

struct SdpResult {
    Eigen::MatrixXcd X;
    Eigen::VectorXd y;
    double primalObjective = 0.0;
    double dualObjective = 0.0;
    double gap = 0.0;
    double primalInfeasibility = 0.0;
    double dualInfeasibility = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Primal-dual interior point (HKM direction, Mehrotra predictor-corrector)
/// on the real symmetric embedding. Throws sdp_failure when it stalls
/// before reaching gap <= 1e-7.
SdpResult solve_hermitian_sdp(const HermitianSdp &problem, const SdpOptions &options = {});

/// [[Re H, -Im H], [Im H, Re H]].
Eigen::MatrixXd real_embedding(const Eigen::MatrixXcd &h);

}  // namespace sqcat

#endif
