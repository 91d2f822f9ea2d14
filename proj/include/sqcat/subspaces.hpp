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

#ifndef SQCAT_SUBSPACES_HPP
#define SQCAT_SUBSPACES_HPP

#include <array>
#include <utility>
#include <vector>

#include "sqcat/fock.hpp"
#include "sqcat/states.hpp"

namespace sqcat {

/// Orthonormal error states reached from C+ and C- by the m-th error
/// operator: m = 1 is a, m = 2 is a^dag a, m = 3 is (a^dag a)^2.
struct ErrorPair {
    int m = 0;
    StateVector plus;
    StateVector minus;
};

struct CodePair {
    std::array<StateVector, 2> codewords;  // {C+, C-}
    std::vector<ErrorPair> errorBasis;
    SCParams params;
    std::vector<std::pair<int, int>> droppedDims;  // (m, +1 or -1)

    int cutoff() const {
        return cutoff_of(codewords[0]);
    }
    /// Columns C+, C-, then plus/minus of each retained error pair.
    Eigen::MatrixXcd modeled_basis() const;
    /// Mean photon number of the maximally mixed logical state.
    double mean_photons() const;
};

constexpr double kGramSchmidtDropThreshold = 1e-8;

CodePair build_error_subspaces(const SCParams &params);

/// Same construction for arbitrary orthonormal codewords.
CodePair build_error_subspaces(const std::array<StateVector, 2> &codewords, const SCParams &meta);

/// B = sum_a weight[a] |c_a><e_{bra[a]}| with e the modeled basis. For a
/// P_m^(n) operator, m names the error subspace and n the logical action.
struct BasisOperator {
    int m = 0;
    int n = 0;
    std::array<int, 2> bra{0, 1};
    std::array<cplx, 2> weight{1.0, 1.0};
};

struct RecoveryBasis {
    std::vector<BasisOperator> operators;
    Eigen::MatrixXcd modeled;  // N x D orthonormal columns
    std::array<StateVector, 2> codewords;

    int size() const {
        return static_cast<int>(operators.size());
    }
    int modeled_dim() const {
        return static_cast<int>(modeled.cols());
    }
    FockOperator dense(int i) const;
    /// Coefficients of B_i^dag restricted to the modeled subspace: row a holds
    /// the bra <e_k| coefficients attached to |c_a>.
    Eigen::MatrixXcd bra_matrix(int i) const;
};

RecoveryBasis recovery_basis(const CodePair &code);

}  // namespace sqcat

#endif
