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

#include "superq/uosp.h"

#include <cmath>
#include <sstream>

#include "superq/errors.h"

namespace superq {

namespace {

void check_pair(size_t order, size_t pair) {
    if (pair == 0 || 2 * pair > order) {
        std::stringstream ss;
        ss << "Generator pair " << pair << " does not exist in an algebra of order " << order << ".";
        throw DimensionError(ss.str());
    }
}

}  // namespace

Grading superqubit_grading() {
    return standard_grading(2, 1);
}

UospGenerators generators(size_t order) {
    const complex i{0, 1};
    auto g = superqubit_grading();
    UospGenerators out;
    out.a1 = Supermatrix::from_complex(order, g, g, {{0, i / 2.0, 0}, {i / 2.0, 0, 0}, {0, 0, 0}});
    out.a2 = Supermatrix::from_complex(order, g, g, {{0, 0.5, 0}, {-0.5, 0, 0}, {0, 0, 0}});
    out.a3 = Supermatrix::from_complex(order, g, g, {{i / 2.0, 0, 0}, {0, -i / 2.0, 0}, {0, 0, 0}});
    out.q1 = Supermatrix::from_complex(order, g, g, {{0, 0, 0}, {0, 0, -0.5}, {-0.5, 0, 0}});
    out.q2 = Supermatrix::from_complex(order, g, g, {{0, 0, -0.5}, {0, 0, 0}, {0, 0.5, 0}});
    return out;
}

Supermatrix odd_combination(const Supernumber &zeta) {
    if (zeta.parity() != Parity::ODD && !zeta.is_zero()) {
        throw ParityError("odd_combination requires an odd supernumber.");
    }
    auto gens = generators(zeta.order());
    return scalar_left(zeta, gens.q1) + scalar_left(zeta.hash(), gens.q2);
}

Supermatrix algebra_element(size_t order, size_t pair, const std::array<double, 3> &xi, double p) {
    check_pair(order, pair);
    auto gens = generators(order);
    auto zeta = Supernumber::eta(order, pair) * p;
    return gens.a1 * xi[0] + gens.a2 * xi[1] + gens.a3 * xi[2] + odd_combination(zeta);
}

Supermatrix graded_commutator(const Supermatrix &a, const Supermatrix &b) {
    Parity pa = a.parity();
    Parity pb = b.parity();
    if (pa == Parity::INHOMOGENEOUS || pb == Parity::INHOMOGENEOUS) {
        throw ParityError("graded_commutator requires homogeneous matrices.");
    }
    if (pa == Parity::ODD && pb == Parity::ODD) {
        return a * b + b * a;
    }
    return a * b - b * a;
}

Supermatrix s_matrix(size_t order, size_t pair, double p) {
    check_pair(order, pair);
    auto eta = Supernumber::eta(order, pair);
    auto eta_h = Supernumber::eta_hash(order, pair);
    auto one = Supernumber::one(order);
    auto pair_product = eta * eta_h;
    Supermatrix s(order, superqubit_grading(), superqubit_grading());
    s.at(0, 0) = one + pair_product * (p * p / 2);
    s.at(1, 1) = s.at(0, 0);
    s.at(0, 2) = eta_h * -p;
    s.at(1, 2) = eta * -p;
    s.at(2, 0) = eta * p;
    s.at(2, 1) = eta_h * -p;
    s.at(2, 2) = one - pair_product * (p * p);
    return s;
}

Supermatrix s_matrix_exp(const Supernumber &zeta) {
    return exp_nilpotent(odd_combination(zeta));
}

Supermatrix su2_block(size_t order, complex alpha, complex beta) {
    double norm = std::norm(alpha) + std::norm(beta);
    if (!(std::abs(norm - 1) <= 1e-12)) {
        std::stringstream ss;
        ss << "SU(2) block requires |alpha|^2 + |beta|^2 = 1, got " << norm << ".";
        throw DomainError(ss.str());
    }
    auto g = superqubit_grading();
    return Supermatrix::from_complex(
        order, g, g, {{alpha, -std::conj(beta), 0}, {beta, std::conj(alpha), 0}, {0, 0, 1}});
}

Supermatrix su2_block(size_t order, double theta, double phi) {
    return su2_block(order, std::cos(theta), std::polar(1.0, phi) * std::sin(theta));
}

Supermatrix group_element(size_t order, size_t pair, const GroupElementParams &params) {
    return su2_block(order, params.theta, params.phi) * s_matrix(order, pair, params.p);
}

Supermatrix group_element(size_t order, size_t pair, complex alpha, complex beta, double p) {
    return su2_block(order, alpha, beta) * s_matrix(order, pair, p);
}

Supermatrix rotation(size_t order, size_t pair, const GroupElementParams &params) {
    return s_matrix(order, pair, params.p) * su2_block(order, params.theta, params.phi);
}

}  // namespace superq
