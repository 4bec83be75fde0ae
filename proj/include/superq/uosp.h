// Copyright 2026 The superq Authors
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

#ifndef _SUPERQ_UOSP_H
#define _SUPERQ_UOSP_H

#include <array>

#include "superq/supermatrix.h"

namespace superq {

/// Basis order (|0>, |1>, |•>): two even vectors then one odd vector.
Grading superqubit_grading();

/// Bloch angles plus the real super displacement of a UOSP(1|2) element.
struct GroupElementParams {
    double theta = 0;
    double phi = 0;
    double p = 0;
};

struct UospGenerators {
    Supermatrix a1;
    Supermatrix a2;
    Supermatrix a3;
    Supermatrix q1;
    Supermatrix q2;
};

/// A_j = (i/2)(sigma_j ⊕ 0) and the two odd generators, as matrices over the algebra of the given order.
UospGenerators generators(size_t order);

/// zeta Q1 + zeta^# Q2 for an odd supernumber zeta.
Supermatrix odd_combination(const Supernumber &zeta);

/// sum_i xi_i A_i + (p eta) Q1 + (p eta^#) Q2, using generator pair `pair` of the algebra.
Supermatrix algebra_element(size_t order, size_t pair, const std::array<double, 3> &xi, double p);

/// Graded commutator [a, b] = ab - (-1)^{|a||b|} ba of homogeneous matrices.
Supermatrix graded_commutator(const Supermatrix &a, const Supermatrix &b);

/// Closed form of S(2p eta) = exp((2p eta) Q1 + (2p eta^#) Q2).
Supermatrix s_matrix(size_t order, size_t pair, double p);

/// exp(zeta Q1 + zeta^# Q2) by the terminating series, for any odd zeta.
Supermatrix s_matrix_exp(const Supernumber &zeta);

/// U(alpha, beta) ⊕ 1. Requires |alpha|^2 + |beta|^2 = 1 within 1e-12.
Supermatrix su2_block(size_t order, complex alpha, complex beta);
/// alpha = cos(theta), beta = e^{i phi} sin(theta).
Supermatrix su2_block(size_t order, double theta, double phi);

/// Z = U(alpha, beta) S(2p eta).
Supermatrix group_element(size_t order, size_t pair, const GroupElementParams &params);
Supermatrix group_element(size_t order, size_t pair, complex alpha, complex beta, double p);

/// S(2p eta) U(alpha, beta), the ordering used to prepare superqubits and local measurement rotations.
Supermatrix rotation(size_t order, size_t pair, const GroupElementParams &params);

}  // namespace superq

#endif
