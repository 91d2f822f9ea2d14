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

#ifndef SQCAT_KL_HPP
#define SQCAT_KL_HPP

#include <array>
#include <vector>

#include "sqcat/fock.hpp"

namespace sqcat {

/// Ordered error operators. The first one must be the identity.
using ErrorSet = std::vector<FockOperator>;

/// {1, a, a^dag a, (a^dag a)^2}.
ErrorSet default_error_set(int cutoff);

/// f(i, j, l, l') = <psi_i| E_l^dag E_l' |psi_j>.
struct KLTensor {
    int nErrors = 0;
    std::vector<cplx> entries;

    cplx operator()(int i, int j, int l, int lp) const {
        return entries[((i * 2 + j) * nErrors + l) * nErrors + lp];
    }
    cplx &at(int i, int j, int l, int lp) {
        return entries[((i * 2 + j) * nErrors + l) * nErrors + lp];
    }
};

KLTensor kl_tensor(const std::array<StateVector, 2> &codewords, const ErrorSet &errors);

/// Selects one entry of the 4x4 tables over {1, a, a^dag a, (a^dag a)^2}.
/// row indexes E_l (entering as E_l^dag), col indexes E_l'. sign = +1 puts C+
/// in the bra. sameParity picks <C+-|..|C+-> instead of <C+-|..|C-+>.
struct KLEntry {
    bool sameParity = true;
    int sign = +1;
    int row = 0;
    int col = 0;
};

/// E_row^dag E_col as one of the eleven distinct normal-ish products.
enum class KLProduct {
    identity,
    a,
    n,
    n2,
    adag,
    adag2_a,
    adag2_a_n,
    adag_a2,
    n3,
    n_adag_a2,
    n4,
};

KLProduct kl_product(int row, int col);
bool kl_product_is_odd(KLProduct p);
const char *kl_product_name(KLProduct p);

cplx kl_oracle_cat(const KLEntry &entry, cplx alpha);

/// Which variant of the squeezed closed forms to return. The quadratic,
/// cubic and quartic same-parity photon moments as tabulated carry a wrong
/// gamma-independent term; `corrected` replaces it with the exact
/// squeezed-vacuum moment, `tabulated` returns the plain expression.
enum class ClosedForm { corrected, tabulated };

/// Real alpha and xi (theta = 0).
cplx kl_oracle_sc(const KLEntry &entry, double alpha, double xi, ClosedForm form = ClosedForm::corrected);

struct KLLimits {
    double lossOffdiag = 0.0;             // <C-|a|C+>
    double dephasingGap = 0.0;            // <C-|n|C-> - <C+|n|C+>
    double dephasingGapAsymptote = 0.0;   // 2 a^2 e^{4r - 2 a^2 e^{2r}}
    double catDephasingGap = 0.0;         // 2 a^2 csch(2 a^2)
};

KLLimits kl_limits(double alpha, double xi);

/// sum_{l,l'} |f_00ll' - f_11ll'|^2 + |f_01ll'|^2.
double kl_cost(const std::array<StateVector, 2> &codewords, const ErrorSet &errors);
double kl_cost(const KLTensor &f);

struct DegeneracyReport {
    std::array<double, 2> number{0.0, 0.0};  // <a^dag a> on C+, C-
    std::array<cplx, 2> a2{0.0, 0.0};        // <a^2> on C+, C-
    double sumResidual = 0.0;                // max |<a^dag a> + <a^2>|
    double diffResidual = 0.0;               // max |<a^dag a> - <a^2>|
    double asymptote = 0.0;                  // e^{2|xi|} / 4
    bool oddDefined = true;
};

/// Entries for an undefined odd codeword (alpha = 0) are NaN.
DegeneracyReport degeneracy_check(double alpha, double xi);

}  // namespace sqcat

#endif
