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

#ifndef SQCAT_RECOVERY_HPP
#define SQCAT_RECOVERY_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "sqcat/noise.hpp"
#include "sqcat/sdp.hpp"
#include "sqcat/subspaces.hpp"

namespace sqcat {

/// E^dag N(|c_a><c_b|) E for a, b in {0, 1}, with E the modeled basis.
struct NoisyCodeImages {
    std::array<std::array<Eigen::MatrixXcd, 2>, 2> blocks;
};

/// Loss-frame solutions for |c0><c0|, |c1><c1|, |c0><c1| at a fixed kappa1;
/// reusable across kappa2.
struct LossFrameImages {
    double kappa1_tau = 0.0;
    std::array<Eigen::MatrixXcd, 3> sigma;
};

LossFrameImages loss_frame_images(const CodePair &code, double kappa1_tau);
NoisyCodeImages noisy_code_images(const CodePair &code, const LossFrameImages &frame, double kappa2_tau);
NoisyCodeImages noisy_code_images(const CodePair &code, const Channel &channel);

/// W_ij = sum_{m,n} <c_m| B_i N(|c_m><c_n|) B_j^dag |c_n>, a Gram matrix.
/// The fidelity of the recovery sum_ij X_ij B_i . B_j^dag is sum_ij X_ij W_ij / 4.
Eigen::MatrixXcd process_matrix(const RecoveryBasis &basis, const NoisyCodeImages &images);
Eigen::MatrixXcd process_matrix(const CodePair &code, const RecoveryBasis &basis, const NoiseParams &p);
Eigen::MatrixXcd process_matrix(const CodePair &code, const RecoveryBasis &basis, const Channel &channel);

struct RecoverySolution {
    Eigen::MatrixXcd X;
    double fidelity = 0.0;
    double gap = 0.0;
    double tpResidual = 0.0;
    int iterations = 0;
    /// R_r = C kraus[r] E^dag with C = [c+ c-] and E the modeled basis.
    std::vector<Eigen::MatrixXcd> krausCompact;
};

/// sum_ij X_ij beta_j^dag beta_i - 1 on the modeled subspace, max entry.
double tp_residual(const Eigen::MatrixXcd &X, const RecoveryBasis &basis);

/// sum_ij X_ij W_ij / 4.
double recovery_fidelity(const Eigen::MatrixXcd &X, const Eigen::MatrixXcd &W);

RecoverySolution solve_sdp(const Eigen::MatrixXcd &W, const RecoveryBasis &basis);

/// Fills sol.krausCompact from the eigendecomposition of X and returns the
/// dense operators.
std::vector<FockOperator> extract_kraus(RecoverySolution &sol, const RecoveryBasis &basis);

/// max |sum_r R_r^dag R_r - 1| on the modeled subspace.
double kraus_tp_residual(const std::vector<Eigen::MatrixXcd> &kraus_compact);

/// rho -> sum_r R_r rho R_r^dag + Q rho Q, Q = 1 - E E^dag.
Channel full_recovery_map(const RecoverySolution &sol, const RecoveryBasis &basis);
Channel recovery_channel(const Eigen::MatrixXcd &modeled, const std::vector<Eigen::MatrixXcd> &kraus_compact);

struct EncodingResult {
    double alphaOpt = 0.0;
    double xiOpt = 0.0;
    double fidelityOpt = 0.0;
    double meanPhotons = 0.0;
    double sdpGap = 0.0;
    double tpResidual = 0.0;
    int cutoff = 0;
    int evaluations = 0;
    CodePair code;
    std::vector<std::string> warnings;
};

struct OptimizeOptions {
    int alphaPoints = 21;
    double alphaMin = 0.05;
    double alphaMax = 2.5;
    int xiPoints = 11;
    int nelderMeadEvaluations = 40;
    /// Extra (alpha, xi) points evaluated alongside the grid.
    std::vector<std::pair<double, double>> candidates;
};

/// Log-spaced alpha grid used by the searches.
std::vector<double> alpha_grid(const OptimizeOptions &options);

struct CellEvaluation {
    double alpha = 0.0;
    double xi = 0.0;
    std::vector<double> fidelity;  // one per kappa2
    std::vector<double> gap;
    std::vector<double> tpResidual;
    double meanPhotons = 0.0;
    int cutoff = 0;
    bool ok = false;
    std::string error;
};

/// Code for an (alpha, xi) cell. alpha = xi = 0 is the small-alpha limit of
/// the cat family, with codewords |0> and |1>.
CodePair encoding_code(double alpha, double xi);

/// One encoding against kappa1 fixed and several kappa2; failures are
/// recorded in the result rather than thrown.
CellEvaluation evaluate_encoding(double alpha, double xi, double kappa1_tau, const std::vector<double> &kappa2_tau);

/// Grid search plus bounded Nelder-Mead, sharing the grid stage across the
/// kappa2 values. Ties within 1e-10 in F go to the smaller <n>. The grid always
/// includes the alpha -> 0 cat limit.
std::vector<EncodingResult> optimize_encoding_row(double kappa1_tau, const std::vector<double> &kappa2_tau,
                                                  double xi_max, const OptimizeOptions &options = {});
EncodingResult optimize_encoding(const NoiseParams &p, double xi_max, const OptimizeOptions &options = {});

std::vector<EncodingResult> cat_baseline_row(double kappa1_tau, const std::vector<double> &kappa2_tau,
                                             const OptimizeOptions &options = {});
EncodingResult cat_baseline(const NoiseParams &p, const OptimizeOptions &options = {});

/// Codewords |0>, |1> under the noise channel alone.
double single_rail_baseline(const NoiseParams &p);

}  // namespace sqcat

#endif
