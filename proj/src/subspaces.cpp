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

#include "sqcat/subspaces.hpp"

#include <cmath>

#include "sqcat/error.hpp"

namespace sqcat {

namespace {

StateVector apply_error(int m, const StateVector &v) {
    switch (m) {
        case 0:
            return v;
        case 1:
            return apply_destroy(v);
        case 2:
            return apply_number(v, 1);
        case 3:
            return apply_number(v, 2);
        default:
            fail(ErrorKind::invalid_argument, "error index out of range");
    }
}

// Twice-iterated modified Gram-Schmidt. Returns false when the residual falls
// below the relative drop threshold.
bool orthonormalize(StateVector &v, const std::vector<StateVector> &accepted) {
    double original = v.norm();
    if (!(original > 0.0)) {
        return false;
    }
    for (int pass = 0; pass < 2; pass++) {
        for (const auto &u : accepted) {
            v -= u * u.dot(v);
        }
    }
    double residual = v.norm();
    if (residual < kGramSchmidtDropThreshold * original) {
        return false;
    }
    v /= residual;
    return true;
}

}  // namespace

Eigen::MatrixXcd CodePair::modeled_basis() const {
    Eigen::MatrixXcd e(codewords[0].size(), 2 + 2 * static_cast<Eigen::Index>(errorBasis.size()));
    e.col(0) = codewords[0];
    e.col(1) = codewords[1];
    for (size_t k = 0; k < errorBasis.size(); k++) {
        e.col(2 + 2 * k) = errorBasis[k].plus;
        e.col(3 + 2 * k) = errorBasis[k].minus;
    }
    return e;
}

double CodePair::mean_photons() const {
    double total = 0.0;
    for (const auto &c : codewords) {
        total += c.dot(apply_number(c, 1)).real();
    }
    return 0.5 * total;
}

CodePair build_error_subspaces(const SCParams &params) {
    if (std::abs(params.alpha) < 1e-12) {
        fail(ErrorKind::degenerate_input, "code construction needs alpha != 0");
    }
    std::array<StateVector, 2> cw{squeezed_cat(params, +1), squeezed_cat(params, -1)};
    return build_error_subspaces(cw, params);
}

CodePair build_error_subspaces(const std::array<StateVector, 2> &codewords, const SCParams &meta) {
    if (codewords[0].size() != codewords[1].size()) {
        fail(ErrorKind::invalid_argument, "codewords must share a cutoff");
    }
    CodePair code;
    code.codewords = codewords;
    code.params = meta;
    code.params.cutoff = cutoff_of(codewords[0]);

    std::vector<StateVector> accepted{codewords[0], codewords[1]};
    for (int m = 1; m <= 3; m++) {
        StateVector plus = apply_error(m, codewords[0]);
        StateVector minus = apply_error(m, codewords[1]);
        bool keep_plus = orthonormalize(plus, accepted);
        if (keep_plus) {
            accepted.push_back(plus);
        }
        bool keep_minus = orthonormalize(minus, accepted);
        if (keep_plus && keep_minus) {
            accepted.push_back(minus);
            code.errorBasis.push_back(ErrorPair{m, plus, minus});
            continue;
        }
        // A subspace is modeled only with both partners present.
        if (keep_plus) {
            accepted.pop_back();
        }
        if (!keep_plus) {
            code.droppedDims.emplace_back(m, +1);
        }
        if (!keep_minus) {
            code.droppedDims.emplace_back(m, -1);
        }
        if (keep_plus != keep_minus) {
            code.droppedDims.emplace_back(m, keep_plus ? +1 : -1);
        }
    }
    return code;
}

FockOperator RecoveryBasis::dense(int i) const {
    const BasisOperator &b = operators.at(i);
    FockOperator out = FockOperator::Zero(modeled.rows(), modeled.rows());
    for (int a = 0; a < 2; a++) {
        out += b.weight[a] * codewords[a] * modeled.col(b.bra[a]).adjoint();
    }
    return out;
}

Eigen::MatrixXcd RecoveryBasis::bra_matrix(int i) const {
    const BasisOperator &b = operators.at(i);
    Eigen::MatrixXcd beta = Eigen::MatrixXcd::Zero(2, modeled.cols());
    for (int a = 0; a < 2; a++) {
        beta(a, b.bra[a]) += b.weight[a];
    }
    return beta;
}

RecoveryBasis recovery_basis(const CodePair &code) {
    RecoveryBasis basis;
    basis.modeled = code.modeled_basis();
    basis.codewords = code.codewords;
    const cplx i{0.0, 1.0};
    int blocks = 1 + static_cast<int>(code.errorBasis.size());
    for (int block = 0; block < blocks; block++) {
        int m = block == 0 ? 0 : code.errorBasis[block - 1].m;
        int kp = 2 * block;
        int km = 2 * block + 1;
        basis.operators.push_back(BasisOperator{m, 0, {kp, km}, {1.0, 1.0}});
        basis.operators.push_back(BasisOperator{m, 1, {km, kp}, {1.0, 1.0}});
        basis.operators.push_back(BasisOperator{m, 2, {km, kp}, {i, -i}});
        basis.operators.push_back(BasisOperator{m, 3, {kp, km}, {1.0, -1.0}});
    }
    return basis;
}

}  // namespace sqcat
