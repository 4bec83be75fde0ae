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

#include "gtest/gtest.h"

#include "superq/errors.h"
#include "test_util.test.h"

using namespace superq;

namespace {

double uniform(std::mt19937_64 &rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

GroupElementParams random_params(std::mt19937_64 &rng) {
    return {uniform(rng, -M_PI, M_PI), uniform(rng, -M_PI, M_PI), uniform(rng, -2, 2)};
}

}  // namespace

TEST(uosp, generator_values) {
    auto gens = generators(2);
    auto g = superqubit_grading();
    ASSERT_EQ(gens.q1, Supermatrix::from_complex(2, g, g, {{0, 0, 0}, {0, 0, -0.5}, {-0.5, 0, 0}}));
    ASSERT_EQ(gens.q2, Supermatrix::from_complex(2, g, g, {{0, 0, -0.5}, {0, 0, 0}, {0, 0.5, 0}}));
    ASSERT_EQ(gens.q1.parity(), Parity::ODD);
    ASSERT_EQ(gens.q2.parity(), Parity::ODD);
    for (const auto *a : {&gens.a1, &gens.a2, &gens.a3}) {
        ASSERT_EQ(a->parity(), Parity::EVEN);
        ASSERT_EQ(a->grade_adjoint(), -*a);
    }
    // Q_i^‡ = -eps^{ij} Q_j.
    ASSERT_EQ(gens.q1.grade_adjoint(), -gens.q2);
    ASSERT_EQ(gens.q2.grade_adjoint(), gens.q1);
}

TEST(uosp, su2_generators_satisfy_commutation_relations) {
    auto gens = generators(2);
    // [A_1, A_2] = -A_3 for A_j = (i/2) sigma_j.
    ASSERT_TRUE(graded_commutator(gens.a1, gens.a2).approx_equal(-gens.a3, 1e-15));
    ASSERT_TRUE(graded_commutator(gens.a2, gens.a3).approx_equal(-gens.a1, 1e-15));
}

TEST(uosp, odd_generator_times_eta_adjoint) {
    auto gens = generators(2);
    auto eta = Supernumber::eta(2, 1);
    auto eta_h = Supernumber::eta_hash(2, 1);
    ASSERT_EQ(scalar_left(eta, gens.q1).grade_adjoint(), -scalar_left(eta_h, gens.q2));
    ASSERT_EQ(scalar_left(eta_h, gens.q2).grade_adjoint(), -scalar_left(eta, gens.q1));
    // Odd scalars anticommute with odd generators.
    ASSERT_EQ(scalar_left(eta, gens.q1), -scalar_right(gens.q1, eta));
    ASSERT_EQ(scalar_left(eta, gens.q2), -scalar_right(gens.q2, eta));
}

TEST(uosp, algebra_element) {
    auto zero = algebra_element(2, 1, {0, 0, 0}, 0);
    ASSERT_EQ(zero, Supermatrix(2, superqubit_grading(), superqubit_grading()));
    auto &rng = test_rng();
    for (int rep = 0; rep < 50; rep++) {
        std::array<double, 3> xi{uniform(rng, -3, 3), uniform(rng, -3, 3), uniform(rng, -3, 3)};
        auto s = algebra_element(4, 1 + rep % 2, xi, uniform(rng, -3, 3));
        ASSERT_EQ(s.parity(), Parity::EVEN);
        ASSERT_TRUE(s.is_super_antihermitian());
    }
    ASSERT_THROW(algebra_element(2, 2, {0, 0, 0}, 1), DimensionError);
}

TEST(uosp, odd_coefficients_on_even_generators_break_antihermiticity) {
    auto gens = generators(2);
    auto eta = Supernumber::eta(2, 1);
    auto bad = algebra_element(2, 1, {0.3, 0, 0}, 0.5) + scalar_left(eta, gens.a1);
    ASSERT_NE(bad.parity(), Parity::EVEN);
    ASSERT_FALSE(bad.is_super_antihermitian());
}

TEST(uosp, algebra_closed_under_bracket) {
    auto &rng = test_rng();
    for (int rep = 0; rep < 20; rep++) {
        std::array<double, 3> x1{uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)};
        std::array<double, 3> x2{uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)};
        auto s1 = algebra_element(4, 1, x1, uniform(rng, -1, 1));
        auto s2 = algebra_element(4, 1, x2, uniform(rng, -1, 1));
        ASSERT_TRUE(graded_commutator(s1, s2).is_super_antihermitian(1e-13));
    }
}

TEST(uosp, s_matrix_closed_form_matches_series) {
    auto &rng = test_rng();
    for (int rep = 0; rep < 100; rep++) {
        double p = uniform(rng, -10, 10);
        auto eta = Supernumber::eta(2, 1);
        auto series = s_matrix_exp(eta * (2 * p));
        ASSERT_LT(series.distance(s_matrix(2, 1, p)), 1e-12 * std::max(1.0, p * p)) << p;
    }
    // Second pair of a four-generator algebra.
    auto series = s_matrix_exp(Supernumber::eta(4, 2) * 0.6);
    ASSERT_LT(series.distance(s_matrix(4, 2, 0.3)), 1e-15);
}

TEST(uosp, s_matrix_group_laws) {
    auto g = superqubit_grading();
    ASSERT_EQ(s_matrix(2, 1, 0), Supermatrix::identity(2, g));
    auto &rng = test_rng();
    for (int rep = 0; rep < 50; rep++) {
        double p = uniform(rng, -2, 2);
        double q = uniform(rng, -2, 2);
        ASSERT_LT((s_matrix(2, 1, p) * s_matrix(2, 1, q)).distance(s_matrix(2, 1, p + q)), 1e-13);
        ASSERT_LT((s_matrix(2, 1, p) * s_matrix(2, 1, q)).distance(s_matrix(2, 1, q) * s_matrix(2, 1, p)), 1e-13);
        ASSERT_LT(s_matrix(2, 1, p).grade_adjoint().distance(s_matrix(2, 1, -p)), 1e-15);
        ASSERT_LT((s_matrix(2, 1, -p) * s_matrix(2, 1, p)).distance(Supermatrix::identity(2, g)), 1e-13);
    }
}

TEST(uosp, mixed_odd_parameters_break_product_law) {
    auto eta = Supernumber::eta(2, 1);
    auto eta_h = Supernumber::eta_hash(2, 1);
    // zeta = p1 eta + p2 eta^#, lambda = q1 eta + q2 eta^# with p2 q1 != p1 q2.
    auto zeta = eta * 0.3 + eta_h * 0.1;
    auto lambda = eta * 0.2 + eta_h * 0.5;
    double residual = (s_matrix_exp(zeta) * s_matrix_exp(lambda)).distance(s_matrix_exp(zeta + lambda));
    ASSERT_GT(residual, 1e-3);
    // Pure eta-direction parameters close.
    auto a = eta * 0.3;
    auto b = eta * -0.8;
    ASSERT_LT((s_matrix_exp(a) * s_matrix_exp(b)).distance(s_matrix_exp(a + b)), 1e-15);
}

TEST(uosp, su2_block_validation) {
    ASSERT_THROW(su2_block(2, complex(1), complex(0.1)), DomainError);
    auto u = su2_block(2, complex(0.6), complex(0, 0.8));
    ASSERT_EQ(u.parity(), Parity::EVEN);
    ASSERT_LT((u.grade_adjoint() * u).distance(Supermatrix::identity(2, superqubit_grading())), 1e-15);
}

TEST(uosp, group_element_superunitary) {
    auto g = superqubit_grading();
    ASSERT_EQ(group_element(2, 1, GroupElementParams{}), Supermatrix::identity(2, g));
    auto &rng = test_rng();
    for (int rep = 0; rep < 100; rep++) {
        auto params = random_params(rng);
        for (const auto &z : {group_element(2, 1, params), rotation(2, 1, params)}) {
            ASSERT_EQ(z.parity(), Parity::EVEN);
            ASSERT_LT((z.grade_adjoint() * z).distance(Supermatrix::identity(2, g)), 1e-12);
            ASSERT_LT((z * z.grade_adjoint()).distance(Supermatrix::identity(2, g)), 1e-12);
        }
    }
}

TEST(uosp, u_and_s_essentially_commute) {
    auto &rng = test_rng();
    auto eta = Supernumber::eta(2, 1);
    auto eta_h = Supernumber::eta_hash(2, 1);
    double worst_printed = 0;
    for (int rep = 0; rep < 50; rep++) {
        auto params = random_params(rng);
        complex alpha = std::cos(params.theta);
        complex beta = std::polar(1.0, params.phi) * std::sin(params.theta);
        double p = params.p;
        auto u = su2_block(2, alpha, beta);
        auto rhs = s_matrix(2, 1, p) * u;

        // The relation that holds: U S(2p eta') = S(2p eta) U with eta' = alpha eta - beta eta^#.
        auto eta_prime = eta * alpha - eta_h * beta;
        auto lhs = u * s_matrix_exp(eta_prime * (2 * p));
        ASSERT_LT(lhs.distance(rhs), 1e-13);

        // The variant eta~ = alpha^# eta^# + beta^# eta equals hash(eta') and generally fails.
        auto eta_tilde = eta_h * std::conj(alpha) + eta * std::conj(beta);
        ASSERT_TRUE(eta_tilde.approx_equal(eta_prime.hash(), 1e-15));
        worst_printed = std::max(worst_printed, (u * s_matrix_exp(eta_tilde * (2 * p))).distance(rhs));
    }
    RecordProperty("ussu_hash_variant_max_residual", std::to_string(worst_printed));
    std::cout << "U S(2p eta~) vs S(2p eta) U with eta~ = alpha^# eta^# + beta^# eta: max residual "
              << worst_printed << " (eta' = alpha eta - beta eta^# gives residual < 1e-13)\n";
}
