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

#ifndef SQCAT_STATES_HPP
#define SQCAT_STATES_HPP

#include <array>
#include <utility>
#include <vector>

#include "sqcat/fock.hpp"

namespace sqcat {

/// Squeezed-cat parameters. With the default theta = 0 convention alpha and xi
/// are real and non-negative, so squeezing is orthogonal to the displacement.
struct SCParams {
    cplx alpha{0.0, 0.0};
    cplx xi{0.0, 0.0};
    int cutoff = 0;
};

struct DerivedAmplitudes {
    cplx gamma;   // alpha cosh r + e^{i theta} alpha^* sinh r
    cplx zeta;    // D(alpha) S(xi) = S(xi) D(zeta)
    double normPlus;
    double normMinus;
};

DerivedAmplitudes derive_amplitudes(cplx alpha, cplx xi);

/// SCParams with the cutoff filled in by choose_cutoff.
SCParams make_sc_params(double alpha, double xi, double safety = 1.0);

StateVector coherent(cplx alpha, int cutoff);
StateVector squeezed_displaced(const SCParams &params);
StateVector cat(cplx alpha, int parity_sign, int cutoff);
StateVector squeezed_cat(const SCParams &params, int parity_sign);

struct GKPParams {
    double delta = 0.3;
    int mu = 0;
    int latticeCutoff = 0;
    int cutoff = 0;
};

/// Fills latticeCutoff and cutoff for the given envelope width and label.
GKPParams make_gkp_params(double delta, int mu);
StateVector gkp_codeword(const GKPParams &params);
/// |0(delta)> and |1(delta)> on the larger of their two cutoffs.
std::array<StateVector, 2> gkp_codewords(double delta);

struct WignerResult {
    Eigen::VectorXd xs;
    Eigen::VectorXd ys;
    Eigen::MatrixXd values;      // values(i, j) = W(xs[i], ys[j])
    Eigen::VectorXd marginalX;   // integral over y at each x
    Eigen::VectorXd marginalY;   // integral over x at each y
};

/// W(x, y) for beta = x + i y, normalized so that the integral over dx dy is 1.
WignerResult wigner(const DensityMatrix &rho, const Eigen::VectorXd &xs, const Eigen::VectorXd &ys);

/// Stepwise displacements and squeezings whose ordered product
/// D(a_0) S(x_0) D(a_1) S(x_1) ... equals D(alpha) S(xi).
std::vector<std::pair<cplx, cplx>> generation_sequence(cplx alpha, cplx xi, int n_steps);
FockOperator generation_product(const std::vector<std::pair<cplx, cplx>> &sequence, int cutoff);

/// S(xi) G S(xi)^dag.
FockOperator lift_gate(const FockOperator &cat_gate, cplx xi);

/// <psi| D(beta) |psi>.
cplx displacement_expectation(const StateVector &psi, cplx beta);

/// cos(|alpha eta|) exp(-e^{-2|xi|} eta^2 / 2), the large-squeezing model of the
/// even-codeword response to a displacement i eta orthogonal to alpha.
double translation_model(double alpha, double xi, double eta);

/// Exact <C+| D(i eta) |C+> for real alpha, xi (theta = 0).
double translation_exact(double alpha, double xi, double eta);

}  // namespace sqcat

#endif
