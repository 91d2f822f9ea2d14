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

#ifndef SQCAT_NOISE_HPP
#define SQCAT_NOISE_HPP

#include <array>
#include <functional>

#include "sqcat/fock.hpp"

namespace sqcat {

/// Loss and dephasing strengths as dimensionless products kappa * tau.
struct NoiseParams {
    double kappa1_tau = 0.0;
    double kappa2_tau = 0.0;
};

/// A channel acting on density matrices.
using Channel = std::function<DensityMatrix(const DensityMatrix &)>;

struct LeadingKraus {
    FockOperator K0;
    FockOperator K1;
    FockOperator K2;
    bool regimeWarning = false;
};

/// kappa1 D[a] rho + kappa2 D[a^dag a] rho, in units where tau = 1.
DensityMatrix lindblad_rhs(const DensityMatrix &rho, const NoiseParams &p);

struct EvolveStats {
    int acceptedSteps = 0;
    int rejectedSteps = 0;
};

/// rho(tau) = exp(L tau) rho by adaptive Dormand-Prince integration in the
/// interaction frame of the diagonal part of L.
DensityMatrix evolve(const DensityMatrix &rho, const NoiseParams &p, EvolveStats *stats = nullptr);

/// The loss-only interaction-frame solution sigma(1). The full evolve() result is
/// dephase_and_damp(sigma, p), which lets callers reuse sigma across kappa2.
Eigen::MatrixXcd loss_interaction_solution(const Eigen::MatrixXcd &rho, double kappa1_tau,
                                           EvolveStats *stats = nullptr);
DensityMatrix dephase_and_damp(const Eigen::MatrixXcd &sigma, const NoiseParams &p);

/// The exact channel from the amplitude-damping sum, used as an oracle.
DensityMatrix evolve_closed_form(const DensityMatrix &rho, const NoiseParams &p);

LeadingKraus leading_kraus(const NoiseParams &p, int cutoff);
DensityMatrix apply_kraus(const LeadingKraus &k, const DensityMatrix &rho);

/// (1/4) sum_{m,n} <c_m| E(|c_m><c_n|) |c_n>.
double channel_fidelity_direct(const std::array<StateVector, 2> &codewords, const Channel &total_channel);

Channel noise_channel(const NoiseParams &p);

double trace_distance(const DensityMatrix &a, const DensityMatrix &b);

}  // namespace sqcat

#endif
