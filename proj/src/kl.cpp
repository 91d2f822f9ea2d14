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

#include "sqcat/kl.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sqcat/error.hpp"
#include "sqcat/states.hpp"

namespace sqcat {

namespace {

using ld = long double;

void require_entry(const KLEntry &e) {
    if (e.row < 0 || e.row > 3 || e.col < 0 || e.col > 3 || (e.sign != 1 && e.sign != -1)) {
        fail(ErrorKind::invalid_argument, "KL entry selector out of range");
    }
}

// Same-parity squeezed moments as tabulated. R = (N-+ / N+-)^2.
ld tabulated_moment(KLProduct p, ld g, ld x, ld R) {
    ld g2 = g * g, g4 = g2 * g2, g8 = g4 * g4;
    ld s1 = std::sinh(x), c1 = std::cosh(x);
    ld c2 = std::cosh(2 * x), s2 = std::sinh(2 * x);
    ld c4 = std::cosh(4 * x), s4 = std::sinh(4 * x);
    ld c6 = std::cosh(6 * x), s6 = std::sinh(6 * x);
    ld c8 = std::cosh(8 * x), s8 = std::sinh(8 * x);
    switch (p) {
        case KLProduct::n:
            return s1 * (s1 - 2 * g2 * c1) + g2 * c2 * R;
        case KLProduct::n2:
            return 0.25L * ((4 * g4 + 1) * c4 + 4 * g2 * s2 - 6 * g2 * s4 - 2 * c2 +
                            2 * g2 * (-2 * g2 * s4 - 2 * c2 + 3 * c4 + 1) * R + 1);
        case KLProduct::n3:
            return (1.0L / 32) *
                   ((24 * g4 + 11) * c2 - 2 * (24 * g4 + 5) * c4 -
                    2 * g2 * ((16 * g4 + 45) * s6 - 60 * g2 * c6 + s2 - 36 * s4) + 5 * c6 - 6 +
                    2 * g2 * R * ((16 * g4 + 45) * c6 - 12 * (g2 * (s2 - 2 * s4 + 5 * s6) + 1) + 19 * c2 - 36 * c4));
        case KLProduct::n4:
            return (1.0L / 64) *
                   (-6 * (16 * g4 + 3) * c2 + 16 * (7 * g4 + 1) * c4 - 2 * (240 * g4 + 7) * c6 + 72 * g4 -
                    56 * g2 * s2 + (64 * g8 + 840 * g4 + 7) * c8 + 8 * (9 - 8 * g4) * g2 * s4 +
                    8 * (16 * g4 + 45) * g2 * s6 - 28 * (16 * g4 + 15) * g2 * s8 + 9 +
                    4 * g2 * R *
                        (4 * (4 * g4 + 3) * c4 - 2 * (16 * g4 + 45) * c6 - 22 * c2 + 105 * c8 + 11 +
                         2 * g2 * (56 * g2 * c8 - (8 * g4 + 105) * s8 + 12 * s2 - 14 * s4 + 60 * s6)));
        default:
            return 0;
    }
}

// <n^k> on squeezed vacuum, s = sinh r.
ld squeezed_vacuum_moment(int k, ld s) {
    ld s2 = s * s;
    switch (k) {
        case 1:
            return s2;
        case 2:
            return s2 * (3 * s2 + 2);
        case 3:
            return s2 * (15 * s2 * s2 + 18 * s2 + 4);
        case 4:
            return s2 * (105 * s2 * s2 * s2 + 180 * s2 * s2 + 84 * s2 + 8);
        default:
            return 0;
    }
}

int moment_order(KLProduct p) {
    switch (p) {
        case KLProduct::n:
            return 1;
        case KLProduct::n2:
            return 2;
        case KLProduct::n3:
            return 3;
        case KLProduct::n4:
            return 4;
        default:
            return 0;
    }
}

// Opposite-parity squeezed elements <C+-|op|C-+>; P = N+-, M = N-+.
ld opposite_element(KLProduct p, ld g, ld x, ld P, ld M) {
    ld g2 = g * g, g4 = g2 * g2;
    ld s1 = std::sinh(x), c1 = std::cosh(x);
    ld s3 = std::sinh(3 * x), c3 = std::cosh(3 * x);
    ld s5 = std::sinh(5 * x), c5 = std::cosh(5 * x);
    ld u = 4 * g2 * c3 + 5 * s1 - 3 * s3;
    ld v = 4 * g2 * s3 + 3 * c1 - 3 * c3;
    ld w = 8 * g2 * (-2 * g2 * s5 + c1 - 4 * c3 + 5 * c5) - 22 * s1 + 27 * s3 - 15 * s5;
    ld z = (16 * g4 + 15) * c5 - 8 * g2 * (s1 - 4 * s3 + 5 * s5) + 6 * c1 - 21 * c3;
    switch (p) {
        case KLProduct::a:
            return g * c1 * P / M - g * s1 * M / P;
        case KLProduct::adag:
            return g * c1 * M / P - g * s1 * P / M;
        case KLProduct::adag2_a:
            return g * u * P / (4 * M) - g * v * M / (4 * P);
        case KLProduct::adag_a2:
            return g * u * M / (4 * P) - g * v * P / (4 * M);
        case KLProduct::adag2_a_n:
            return g * P / (16 * M) * w + g * M / (16 * P) * z;
        case KLProduct::n_adag_a2:
            return g * M / (16 * P) * w + g * P / (16 * M) * z;
        default:
            return 0;
    }
}

struct Norms {
    ld plus;
    ld minus;
};

Norms cat_norms(ld gamma_sq) {
    ld overlap = std::exp(-2 * gamma_sq);
    // 1 - e^{-2x} via expm1 keeps small amplitudes accurate.
    return Norms{std::sqrt(2 * (1 + overlap)), std::sqrt(-2 * std::expm1(-2 * gamma_sq))};
}

}  // namespace

ErrorSet default_error_set(int cutoff) {
    FockOperator n = number(cutoff);
    return ErrorSet{identity(cutoff), destroy(cutoff), n, n * n};
}

KLTensor kl_tensor(const std::array<StateVector, 2> &codewords, const ErrorSet &errors) {
    if (errors.empty()) {
        fail(ErrorKind::invalid_argument, "error set is empty");
    }
    Eigen::Index dim = codewords[0].size();
    if (codewords[1].size() != dim) {
        fail(ErrorKind::invalid_argument, "codewords must share a cutoff");
    }
    for (const auto &e : errors) {
        if (e.rows() != dim || e.cols() != dim) {
            fail(ErrorKind::invalid_argument, "error operator dimension mismatch");
        }
    }
    if ((errors[0] - FockOperator::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-14) {
        fail(ErrorKind::invalid_argument, "first element of the error set must be the identity");
    }
    for (const auto &c : codewords) {
        if (std::abs(c.norm() - 1.0) > 1e-10) {
            fail(ErrorKind::invalid_argument, "kl_tensor needs normalized codewords");
        }
        int cutoff = cutoff_of(c);
        if (tail_population(c, cutoff / 2) >= 1e-12) {
            fail(ErrorKind::cutoff_insufficient,
                 "codeword population above cutoff/2 exceeds 1e-12 at cutoff " + std::to_string(cutoff));
        }
    }
    int ne = static_cast<int>(errors.size());
    std::vector<StateVector> images;
    for (int i = 0; i < 2; i++) {
        for (int l = 0; l < ne; l++) {
            images.push_back(errors[l] * codewords[i]);
        }
    }
    KLTensor f;
    f.nErrors = ne;
    f.entries.assign(4 * ne * ne, 0.0);
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            for (int l = 0; l < ne; l++) {
                for (int lp = 0; lp < ne; lp++) {
                    f.at(i, j, l, lp) = images[i * ne + l].dot(images[j * ne + lp]);
                }
            }
        }
    }
    return f;
}

KLProduct kl_product(int row, int col) {
    static constexpr KLProduct table[4][4] = {
        {KLProduct::identity, KLProduct::a, KLProduct::n, KLProduct::n2},
        {KLProduct::adag, KLProduct::n, KLProduct::adag2_a, KLProduct::adag2_a_n},
        {KLProduct::n, KLProduct::adag_a2, KLProduct::n2, KLProduct::n3},
        {KLProduct::n2, KLProduct::n_adag_a2, KLProduct::n3, KLProduct::n4},
    };
    if (row < 0 || row > 3 || col < 0 || col > 3) {
        fail(ErrorKind::invalid_argument, "KL entry selector out of range");
    }
    return table[row][col];
}

bool kl_product_is_odd(KLProduct p) {
    switch (p) {
        case KLProduct::a:
        case KLProduct::adag:
        case KLProduct::adag2_a:
        case KLProduct::adag2_a_n:
        case KLProduct::adag_a2:
        case KLProduct::n_adag_a2:
            return true;
        default:
            return false;
    }
}

const char *kl_product_name(KLProduct p) {
    switch (p) {
        case KLProduct::identity:
            return "1";
        case KLProduct::a:
            return "a";
        case KLProduct::n:
            return "ad a";
        case KLProduct::n2:
            return "(ad a)^2";
        case KLProduct::adag:
            return "ad";
        case KLProduct::adag2_a:
            return "ad^2 a";
        case KLProduct::adag2_a_n:
            return "ad^2 a ad a";
        case KLProduct::adag_a2:
            return "ad a^2";
        case KLProduct::n3:
            return "(ad a)^3";
        case KLProduct::n_adag_a2:
            return "ad a ad a^2";
        case KLProduct::n4:
            return "(ad a)^4";
    }
    return "?";
}

cplx kl_oracle_cat(const KLEntry &e, cplx alpha) {
    require_entry(e);
    double x = std::norm(alpha);
    Norms nn = cat_norms(x);
    double np = static_cast<double>(nn.plus), nm = static_cast<double>(nn.minus);
    double P = e.sign > 0 ? np : nm;  // N+- (bra side)
    double M = e.sign > 0 ? nm : np;  // N-+
    KLProduct prod = kl_product(e.row, e.col);
    bool needs_minus = !e.sameParity || e.sign < 0;
    if (e.sameParity && kl_product_is_odd(prod)) {
        return 0.0;
    }
    if (!e.sameParity && !kl_product_is_odd(prod)) {
        return 0.0;
    }
    if (e.sameParity && prod == KLProduct::identity) {
        return 1.0;
    }
    if (needs_minus && !(M > 0.0 && P > 0.0)) {
        fail(ErrorKind::degenerate_input, "odd cat codeword is undefined at alpha = 0");
    }
    cplx ac = std::conj(alpha);
    if (e.sameParity) {
        double R = (M / P) * (M / P);
        int key = e.row * 4 + e.col;
        switch (key) {
            case 0 * 4 + 2:
            case 1 * 4 + 1:
            case 2 * 4 + 0:
                return x * R;
            case 0 * 4 + 3:
            case 2 * 4 + 2:
            case 3 * 4 + 0:
                return x * (x + R);
            case 2 * 4 + 3:
            case 3 * 4 + 2:
                return x * (3 * x + (x * x + 1) * R);
            case 3 * 4 + 3:
                return x * (x * (x * x + 7) + (6 * x * x + 1) * R);
            default:
                return 0.0;
        }
    }
    switch (e.row * 4 + e.col) {
        case 0 * 4 + 1:
            return alpha * P / M;
        case 1 * 4 + 0:
            return ac * M / P;
        case 1 * 4 + 2:
            return x * ac * P / M;
        case 1 * 4 + 3:
            return x * ac * (x * M * M + P * P) / (M * P);
        case 2 * 4 + 1:
            return x * alpha * M / P;
        case 3 * 4 + 1:
            return x * alpha * (x * P * P + M * M) / (M * P);
        default:
            return 0.0;
    }
}

cplx kl_oracle_sc(const KLEntry &e, double alpha, double xi, ClosedForm form) {
    require_entry(e);
    KLProduct prod = kl_product(e.row, e.col);
    if (e.sameParity && kl_product_is_odd(prod)) {
        return 0.0;
    }
    if (!e.sameParity && !kl_product_is_odd(prod)) {
        return 0.0;
    }
    if (prod == KLProduct::identity) {
        return 1.0;
    }
    ld x = std::abs(static_cast<ld>(xi));
    ld g = static_cast<ld>(alpha) * std::exp(x);
    Norms nn = cat_norms(g * g);
    ld P = e.sign > 0 ? nn.plus : nn.minus;
    ld M = e.sign > 0 ? nn.minus : nn.plus;
    bool needs_minus = !e.sameParity || e.sign < 0;
    if (needs_minus && !(M > 0 && P > 0)) {
        fail(ErrorKind::degenerate_input, "odd codeword is undefined at alpha = 0");
    }
    if (!e.sameParity) {
        return static_cast<double>(opposite_element(prod, g, x, P, M));
    }
    ld R = (M / P) * (M / P);
    ld v = tabulated_moment(prod, g, x, R);
    int k = moment_order(prod);
    if (form == ClosedForm::corrected && k >= 2) {
        v += squeezed_vacuum_moment(k, std::sinh(x)) - tabulated_moment(prod, 0, x, 0);
    }
    return static_cast<double>(v);
}

KLLimits kl_limits(double alpha, double xi) {
    KLLimits out;
    ld a = static_cast<ld>(alpha), r = std::abs(static_cast<ld>(xi));
    ld a2 = a * a;
    if (a != 0) {
        out.lossOffdiag = kl_oracle_sc(KLEntry{false, -1, 0, 1}, alpha, xi).real();
        out.dephasingGap = kl_oracle_sc(KLEntry{true, -1, 0, 2}, alpha, xi).real() -
                           kl_oracle_sc(KLEntry{true, +1, 0, 2}, alpha, xi).real();
        out.catDephasingGap = static_cast<double>(2 * a2 / std::sinh(2 * a2));
    } else {
        out.catDephasingGap = 1.0;
        out.dephasingGap = std::numeric_limits<double>::quiet_NaN();
    }
    out.dephasingGapAsymptote = static_cast<double>(2 * a2 * std::exp(4 * r - 2 * a2 * std::exp(2 * r)));
    return out;
}

double kl_cost(const KLTensor &f) {
    double c = 0.0;
    for (int l = 0; l < f.nErrors; l++) {
        for (int lp = 0; lp < f.nErrors; lp++) {
            c += std::norm(f(0, 0, l, lp) - f(1, 1, l, lp)) + std::norm(f(0, 1, l, lp));
        }
    }
    return c;
}

double kl_cost(const std::array<StateVector, 2> &codewords, const ErrorSet &errors) {
    return kl_cost(kl_tensor(codewords, errors));
}

DegeneracyReport degeneracy_check(double alpha, double xi) {
    DegeneracyReport out;
    SCParams p = make_sc_params(alpha, xi);
    out.asymptote = std::exp(2.0 * std::abs(xi)) / 4.0;
    out.oddDefined = std::abs(alpha) > 1e-12;
    double nan = std::numeric_limits<double>::quiet_NaN();
    for (int k = 0; k < 2; k++) {
        int sign = k == 0 ? +1 : -1;
        if (sign < 0 && !out.oddDefined) {
            out.number[k] = nan;
            out.a2[k] = cplx{nan, nan};
            continue;
        }
        StateVector c = squeezed_cat(p, sign);
        out.number[k] = c.dot(apply_number(c, 1)).real();
        out.a2[k] = c.dot(apply_destroy(apply_destroy(c)));
        out.sumResidual = std::max(out.sumResidual, std::abs(out.number[k] + out.a2[k]));
        out.diffResidual = std::max(out.diffResidual, std::abs(out.number[k] - out.a2[k]));
    }
    return out;
}

}  // namespace sqcat
