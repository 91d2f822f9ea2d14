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

#include <cmath>

#include <gtest/gtest.h>

#include "sqcat/error.hpp"
#include "sqcat/kl.hpp"
#include "sqcat/states.hpp"

using namespace sqcat;

namespace {

std::array<StateVector, 2> sc_codewords(double alpha, double xi) {
    SCParams p = make_sc_params(alpha, xi);
    return {squeezed_cat(p, +1), squeezed_cat(p, -1)};
}

// Tensor element selected by a table entry.
cplx tensor_entry(const KLTensor &f, const KLEntry &e) {
    int i = e.sign > 0 ? 0 : 1;
    int j = e.sameParity ? i : 1 - i;
    return f(i, j, e.row, e.col);
}

ErrorSet dephasing_set(int cutoff) {
    return ErrorSet{identity(cutoff), number(cutoff)};
}

}  // namespace

TEST(kl, tensor_basic_entries) {
    auto cw = sc_codewords(1.0, 0.0);
    KLTensor f = kl_tensor(cw, default_error_set(cutoff_of(cw[0])));
    EXPECT_NEAR(std::abs(f(0, 0, 0, 0) - 1.0), 0.0, 1e-14);
    // Parity forbids <C-+|a^dag a|C+->.
    EXPECT_LT(std::abs(f(0, 1, 0, 2)), 1e-15);
    EXPECT_LT(std::abs(f(1, 0, 0, 2)), 1e-15);
    double gap = (f(1, 1, 0, 2) - f(0, 0, 0, 2)).real();
    EXPECT_NEAR(gap, 2.0 / std::sinh(2.0), 1e-12);
    EXPECT_NEAR(gap, 0.55144113, 1e-8);
}

TEST(kl, tensor_hermitian_symmetry) {
    auto cw = sc_codewords(0.7, 0.9);
    KLTensor f = kl_tensor(cw, default_error_set(cutoff_of(cw[0])));
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            for (int l = 0; l < 4; l++) {
                for (int lp = 0; lp < 4; lp++) {
                    EXPECT_LT(std::abs(f(i, j, l, lp) - std::conj(f(j, i, lp, l))), 1e-10);
                }
            }
        }
    }
}

TEST(kl, tensor_input_checks) {
    auto cw = sc_codewords(0.5, 0.0);
    int cutoff = cutoff_of(cw[0]);
    ErrorSet bad{number(cutoff), identity(cutoff)};
    EXPECT_THROW(kl_tensor(cw, bad), Error);
    std::array<StateVector, 2> unnormalized{2.0 * cw[0], cw[1]};
    EXPECT_THROW(kl_tensor(unnormalized, default_error_set(cutoff)), Error);

    // A coherent state of amplitude 2 does not fit a cutoff of 20.
    StateVector leaky = squeezed_coherent_amplitudes(2.0, 0.0, 20);
    leaky.normalize();
    try {
        kl_tensor({leaky, leaky}, default_error_set(20));
        FAIL() << "expected an error";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::cutoff_insufficient);
    }
}

TEST(kl, cat_table_examples) {
    double t = std::tanh(1.0);
    EXPECT_NEAR(kl_oracle_cat(KLEntry{false, +1, 0, 1}, 1.0).real(), 1.0 / std::sqrt(t), 1e-12);
    EXPECT_NEAR(kl_oracle_cat(KLEntry{false, +1, 0, 1}, 1.0).real(), 1.14587752, 1e-8);
    EXPECT_NEAR(kl_oracle_cat(KLEntry{false, -1, 0, 1}, 1.0).real(), std::sqrt(t), 1e-12);
    EXPECT_NEAR(kl_oracle_cat(KLEntry{false, -1, 0, 1}, 1.0).real(), 0.87269362, 1e-8);
    EXPECT_EQ(kl_oracle_cat(KLEntry{true, +1, 0, 0}, 1.0), cplx(1.0));
    EXPECT_THROW(kl_oracle_cat(KLEntry{true, +1, 4, 0}, 1.0), Error);
}

TEST(kl, cat_tables_match_tensor) {
    for (double alpha : {0.5, 1.0, 2.0}) {
        auto cw = sc_codewords(alpha, 0.0);
        KLTensor f = kl_tensor(cw, default_error_set(cutoff_of(cw[0])));
        for (bool same : {true, false}) {
            for (int s : {+1, -1}) {
                for (int r = 0; r < 4; r++) {
                    for (int c = 0; c < 4; c++) {
                        KLEntry e{same, s, r, c};
                        EXPECT_LT(std::abs(tensor_entry(f, e) - kl_oracle_cat(e, alpha)), 1e-8)
                            << alpha << " " << kl_product_name(kl_product(r, c));
                    }
                }
            }
        }
        DerivedAmplitudes d = derive_amplitudes(alpha, 0.0);
        double r2 = std::pow(d.normMinus / d.normPlus, 2);
        EXPECT_NEAR(kl_oracle_cat(KLEntry{true, +1, 1, 1}, alpha).real(), alpha * alpha * r2, 1e-12);
    }
}

TEST(kl, squeezed_closed_forms_match_tensor) {
    for (double alpha : {0.3, 0.5, 1.0}) {
        for (double xi : {0.0, 0.5, 1.0, 1.5}) {
            auto cw = sc_codewords(alpha, xi);
            KLTensor f = kl_tensor(cw, default_error_set(cutoff_of(cw[0])));
            for (bool same : {true, false}) {
                for (int s : {+1, -1}) {
                    for (int r = 0; r < 4; r++) {
                        for (int c = 0; c < 4; c++) {
                            KLEntry e{same, s, r, c};
                            EXPECT_LT(std::abs(tensor_entry(f, e) - kl_oracle_sc(e, alpha, xi)), 1e-8)
                                << alpha << " " << xi << " " << same << " " << s << " "
                                << kl_product_name(kl_product(r, c));
                        }
                    }
                }
            }
        }
    }
}

TEST(kl, squeezed_vacuum_photon_number) {
    for (double xi : {0.3, 1.0, 1.5}) {
        // The gamma = 0 limit reached with a vanishing amplitude.
        cplx v = kl_oracle_sc(KLEntry{true, +1, 0, 2}, 1e-9, xi);
        EXPECT_NEAR(v.real(), std::pow(std::sinh(xi), 2), 1e-9);
    }
}

TEST(kl, squeezed_forms_reduce_to_cat_tables) {
    for (double alpha : {0.4, 1.3}) {
        for (bool same : {true, false}) {
            for (int s : {+1, -1}) {
                for (int r = 0; r < 4; r++) {
                    for (int c = 0; c < 4; c++) {
                        KLEntry e{same, s, r, c};
                        EXPECT_LT(std::abs(kl_oracle_sc(e, alpha, 0.0) - kl_oracle_cat(e, alpha)), 1e-10);
                    }
                }
            }
        }
    }
}

TEST(kl, tabulated_moments_carry_constant_offset) {
    // The plain squeezed moments of order 2 to 4 are off by a term that only
    // depends on the squeezing; the corrected variant removes it.
    double alpha = 0.5;
    double xi = 1.0;
    auto cw = sc_codewords(alpha, xi);
    KLTensor f = kl_tensor(cw, default_error_set(cutoff_of(cw[0])));
    KLEntry n2{true, +1, 2, 2};
    double numeric = tensor_entry(f, n2).real();
    EXPECT_NEAR(kl_oracle_sc(n2, alpha, xi, ClosedForm::corrected).real(), numeric, 1e-8);
    double offset = kl_oracle_sc(n2, alpha, xi, ClosedForm::tabulated).real() - numeric;
    EXPECT_GT(std::abs(offset), 1e-3);
    double offset_other = kl_oracle_sc(n2, 0.8, xi, ClosedForm::tabulated).real() -
                          kl_oracle_sc(n2, 0.8, xi, ClosedForm::corrected).real();
    EXPECT_NEAR(offset, offset_other, 1e-9);
    // n is printed correctly.
    KLEntry n1{true, +1, 0, 2};
    EXPECT_NEAR(kl_oracle_sc(n1, alpha, xi, ClosedForm::tabulated).real(), tensor_entry(f, n1).real(), 1e-10);
}

TEST(kl, parity_selection_rules) {
    for (double alpha : {0.3, 1.0}) {
        for (double xi : {0.0, 1.0}) {
            auto cw = sc_codewords(alpha, xi);
            KLTensor f = kl_tensor(cw, default_error_set(cutoff_of(cw[0])));
            for (int r = 0; r < 4; r++) {
                for (int c = 0; c < 4; c++) {
                    bool odd = kl_product_is_odd(kl_product(r, c));
                    for (int i = 0; i < 2; i++) {
                        if (odd) {
                            EXPECT_LT(std::abs(f(i, i, r, c)), 1e-12);
                        } else {
                            EXPECT_LT(std::abs(f(i, 1 - i, r, c)), 1e-12);
                        }
                    }
                }
            }
        }
    }
}

TEST(kl, cat_dephasing_gap) {
    for (double a2 : {0.5, 1.0, 2.0, 4.0}) {
        double alpha = std::sqrt(a2);
        auto cw = sc_codewords(alpha, 0.0);
        KLTensor f = kl_tensor(cw, default_error_set(cutoff_of(cw[0])));
        double gap = (f(1, 1, 0, 2) - f(0, 0, 0, 2)).real();
        EXPECT_NEAR(gap, 2.0 * a2 / std::sinh(2.0 * a2), 1e-8) << a2;
    }
}

TEST(kl, cat_dephasing_gap_scaling) {
    KLLimits l1 = kl_limits(1.0, 0.0);
    KLLimits l4 = kl_limits(2.0, 0.0);
    double ratio = l1.dephasingGap / l4.dephasingGap;
    double csch_ratio = (2.0 / std::sinh(2.0)) / (8.0 / std::sinh(8.0));
    EXPECT_NEAR(ratio / csch_ratio, 1.0, 0.05);
    EXPECT_GT(ratio, 10.0);
}

TEST(kl, limits_examples) {
    KLLimits big = kl_limits(0.4, 3.0);
    EXPECT_LE(std::abs(big.lossOffdiag - 0.4), 0.02);

    KLLimits mid = kl_limits(0.5, 1.5);
    auto cw = sc_codewords(0.5, 1.5);
    KLTensor f = kl_tensor(cw, default_error_set(cutoff_of(cw[0])));
    double numeric = (f(1, 1, 0, 2) - f(0, 0, 0, 2)).real();
    EXPECT_NEAR(mid.dephasingGap, numeric, 1e-9);
    EXPECT_LE(std::abs(numeric - mid.dephasingGapAsymptote) / numeric, 0.2);

    for (double alpha : {0.3, 0.8, 1.5}) {
        KLLimits c = kl_limits(alpha, 0.0);
        EXPECT_NEAR(c.dephasingGap, c.catDephasingGap, 1e-12);
        EXPECT_NEAR(c.catDephasingGap, 2.0 * alpha * alpha / std::sinh(2.0 * alpha * alpha), 1e-14);
    }
}

TEST(kl, loss_offdiag_matches_tensor) {
    for (double xi : {0.0, 0.7, 1.5}) {
        auto cw = sc_codewords(0.4, xi);
        KLTensor f = kl_tensor(cw, default_error_set(cutoff_of(cw[0])));
        EXPECT_NEAR(kl_limits(0.4, xi).lossOffdiag, f(1, 0, 0, 1).real(), 1e-9);
    }
}

TEST(kl, squeezed_dephasing_gap_decreases) {
    // At alpha = 0.5 the gap still rises slightly up to xi ~ 0.6 before the
    // exponential suppression takes over.
    EXPECT_GT(kl_limits(0.5, 0.6).dephasingGap, kl_limits(0.5, 0.5).dephasingGap);
    EXPECT_LT(kl_limits(0.5, 1.5).dephasingGap, 1e-2 * kl_limits(0.5, 0.5).dephasingGap);
    double prev = 1e300;
    for (int k = 0; k <= 9; k++) {
        double xi = 0.6 + 0.1 * k;
        double gap = kl_limits(0.5, xi).dephasingGap;
        EXPECT_LT(gap, prev) << xi;
        prev = gap;
    }
}

TEST(kl, cost_examples) {
    auto cw = sc_codewords(0.6, 0.4);
    int cutoff = cutoff_of(cw[0]);
    EXPECT_NEAR(kl_cost(cw, ErrorSet{identity(cutoff)}), 0.0, 1e-24);
    EXPECT_GT(kl_cost(cw, default_error_set(cutoff)), 0.0);
}

TEST(kl, cost_sc_shrinks_with_squeezing) {
    double prev = 1e300;
    for (double xi : {0.5, 1.0, 1.5}) {
        auto s = sc_codewords(1.0, xi);
        double c = kl_cost(s, dephasing_set(cutoff_of(s[0])));
        EXPECT_LT(c, prev) << xi;
        prev = c;
    }
}

TEST(kl, cost_gkp_grows_with_squeezing) {
    double prev = -1.0;
    for (double xi : {0.5, 1.0, 1.5}) {
        auto g = gkp_codewords(std::exp(-xi));
        double c = kl_cost(g, dephasing_set(cutoff_of(g[0])));
        EXPECT_GT(c, prev) << xi;
        prev = c;
    }
}

TEST(kl, degeneracy_examples) {
    DegeneracyReport coh = degeneracy_check(3.0, 0.0);
    for (int s = 0; s < 2; s++) {
        EXPECT_NEAR(coh.number[s], 9.0, 1e-3);
        EXPECT_NEAR(coh.a2[s].real(), 9.0, 1e-3);
    }
    EXPECT_LE(coh.diffResidual, 1e-3);

    DegeneracyReport sq = degeneracy_check(0.3, 2.0);
    double target = std::exp(4.0) / 4.0;
    EXPECT_NEAR(sq.asymptote, target, 1e-12);
    for (int s = 0; s < 2; s++) {
        EXPECT_LE(std::abs(sq.number[s] - target) / target, 0.15);
        EXPECT_LE(std::abs(-sq.a2[s].real() - target) / target, 0.15);
    }

    DegeneracyReport vac = degeneracy_check(0.0, 0.0);
    EXPECT_NEAR(vac.number[0], 0.0, 1e-15);
    EXPECT_NEAR(std::abs(vac.a2[0]), 0.0, 1e-15);
    EXPECT_FALSE(vac.oddDefined);
    EXPECT_TRUE(std::isnan(vac.number[1]));
}
