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

#ifndef SQCAT_FOCK_HPP
#define SQCAT_FOCK_HPP

#include <Eigen/Dense>
#include <complex>
#include <functional>

namespace sqcat {

using cplx = std::complex<double>;

// Dense objects on the truncated number basis |0>, ..., |cutoff>. The cutoff is
// always dimension - 1.
using FockOperator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using DensityMatrix = Eigen::MatrixXcd;

inline int cutoff_of(const Eigen::MatrixXcd &m) {
    return static_cast<int>(m.rows()) - 1;
}
inline int cutoff_of(const Eigen::VectorXcd &v) {
    return static_cast<int>(v.size()) - 1;
}

FockOperator destroy(int cutoff);
FockOperator create(int cutoff);
FockOperator number(int cutoff);
FockOperator parity(int cutoff);
FockOperator identity(int cutoff);

/// Dense matrix exponential (Pade scaling and squaring).
Eigen::MatrixXcd expm(const Eigen::MatrixXcd &generator);

/// D(alpha) = exp(alpha a^dag - alpha^* a).
FockOperator displacement(cplx alpha, int cutoff);

/// S(xi) = exp((xi^* a^2 - xi a^dag^2) / 2).
FockOperator squeeze(cplx xi, int cutoff);

/// b = cosh(r) a + sinh(r) e^{i theta} a^dag for xi = r e^{i theta}.
FockOperator bogoliubov_mode(cplx xi, int cutoff);

/// Smallest cutoff that the squeeze() precondition accepts.
int squeeze_min_cutoff(cplx xi);

int choose_cutoff(cplx alpha, cplx xi, double safety = 1.0);

/// Index n beyond which both parity components of |alpha, xi> carry less than
/// `tol` relative population. No regime limit on xi.
int tail_index(cplx alpha, cplx xi, double tol);

/// Fock amplitudes of D(alpha) S(xi) |0> for n = 0..cutoff, from the
/// annihilation recurrence of the displaced Bogoliubov mode. Not renormalized.
StateVector squeezed_coherent_amplitudes(cplx alpha, cplx xi, int cutoff);

// Structured O(N) actions on vectors.
StateVector apply_destroy(const StateVector &v);
StateVector apply_create(const StateVector &v);
StateVector apply_number(const StateVector &v, int power = 1);
StateVector apply_parity(const StateVector &v);

/// exp(G) v for a generator known only through its action, using a scaled
/// Taylor series. `norm_bound` is any upper bound on the induced 1-norm of G.
StateVector expv(const std::function<StateVector(const StateVector &)> &apply_generator, double norm_bound,
                 const StateVector &v);

/// Population of v above index `from` (exclusive).
double tail_population(const StateVector &v, int from);

/// max |m_ij - t_ij| over i, j <= cutoff / 2.
double lower_block_distance(const Eigen::MatrixXcd &m, const Eigen::MatrixXcd &target);

/// max |(U^dag U - I)_ij| over the lower half block.
double unitarity_residual(const FockOperator &u);

}  // namespace sqcat

#endif
