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

#include "superq/superstate.h"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "superq/errors.h"

namespace superq {

namespace {

size_t num_kets(size_t parties) {
    if (parties == 1) {
        return 3;
    }
    if (parties == 2) {
        return 9;
    }
    throw DimensionError("Only one- and two-party states are supported, got " + std::to_string(parties) + ".");
}

bool index_parity(size_t parties, size_t index) {
    if (parties == 1) {
        return index == 2;
    }
    return (index / 3 == 2) != (index % 3 == 2);
}

// Converts between left-pulled coefficients and right coordinates (the map is an involution).
Supernumber flip_odd_part_on_odd_ket(const Supernumber &x, bool odd_ket) {
    if (!odd_ket) {
        return x;
    }
    return x.even_part() - x.odd_part();
}

}  // namespace

std::string outcome_label(Outcome m) {
    switch (m) {
        case Outcome::ZERO:
            return "0";
        case Outcome::ONE:
            return "1";
        default:
            return "•";
    }
}

std::string ket_label(size_t parties, size_t index) {
    if (index >= num_kets(parties)) {
        throw DimensionError("Ket index out of range.");
    }
    if (parties == 1) {
        return outcome_label((Outcome)index);
    }
    return outcome_label((Outcome)(index / 3)) + outcome_label((Outcome)(index % 3));
}

SuperState::SuperState(size_t parties, size_t order) : parties_(parties), order_(order) {
    coeffs_.assign(num_kets(parties), Supernumber::zero(order));
}

SuperState SuperState::from_coeffs(size_t parties, std::vector<Supernumber> coeffs) {
    if (coeffs.size() != num_kets(parties)) {
        throw DimensionError("Expected " + std::to_string(num_kets(parties)) + " coefficients.");
    }
    SuperState out(parties, coeffs[0].order());
    for (const auto &c : coeffs) {
        if (c.order() != out.order_) {
            throw DimensionError("State coefficients have mismatched algebra orders.");
        }
    }
    out.coeffs_ = std::move(coeffs);
    return out;
}

SuperState SuperState::basis_ket(size_t order, const std::vector<Outcome> &ket) {
    SuperState out(ket.size(), order);
    size_t index = 0;
    for (auto m : ket) {
        index = index * 3 + (size_t)m;
    }
    out.coeffs_[index] = Supernumber::one(order);
    return out;
}

SuperState SuperState::from_right_column(size_t parties, const Supermatrix &column) {
    SuperState out(parties, column.order());
    if (column.num_cols() != 1 || column.row_grading() != out.grading()) {
        throw DimensionError("Column does not match the graded basis of a " + std::to_string(parties) +
                             "-party state.");
    }
    for (size_t i = 0; i < out.size(); i++) {
        out.coeffs_[i] = flip_odd_part_on_odd_ket(column.at(i, 0), out.ket_parity(i));
    }
    return out;
}

const Supernumber &SuperState::coeff(size_t index) const {
    if (index >= coeffs_.size()) {
        throw DimensionError("Ket index out of range.");
    }
    return coeffs_[index];
}

const Supernumber &SuperState::coeff(const std::vector<Outcome> &ket) const {
    if (ket.size() != parties_) {
        throw DimensionError("Ket label length does not match the number of parties.");
    }
    size_t index = 0;
    for (auto m : ket) {
        index = index * 3 + (size_t)m;
    }
    return coeff(index);
}

bool SuperState::ket_parity(size_t index) const {
    return index_parity(parties_, index);
}

Grading SuperState::grading() const {
    Grading g(coeffs_.size());
    for (size_t i = 0; i < g.size(); i++) {
        g[i] = ket_parity(i);
    }
    return g;
}

bool SuperState::is_even() const {
    for (size_t i = 0; i < coeffs_.size(); i++) {
        const auto &c = coeffs_[i];
        if (c.is_zero()) {
            continue;
        }
        Parity expected = ket_parity(i) ? Parity::ODD : Parity::EVEN;
        if (c.parity() != expected) {
            return false;
        }
    }
    return true;
}

Supermatrix SuperState::right_column() const {
    Supermatrix col(order_, grading(), Grading{0});
    for (size_t i = 0; i < coeffs_.size(); i++) {
        col.at(i, 0) = flip_odd_part_on_odd_ket(coeffs_[i], ket_parity(i));
    }
    return col;
}

Supermatrix SuperState::bra() const {
    return right_column().grade_adjoint();
}

void SuperState::check_same_shape(const SuperState &other) const {
    if (parties_ != other.parties_ || order_ != other.order_) {
        throw DimensionError("States differ in party count or algebra order.");
    }
}

SuperState SuperState::operator+(const SuperState &other) const {
    check_same_shape(other);
    SuperState out = *this;
    for (size_t i = 0; i < coeffs_.size(); i++) {
        out.coeffs_[i] += other.coeffs_[i];
    }
    return out;
}

SuperState SuperState::operator*(complex scalar) const {
    SuperState out = *this;
    for (auto &c : out.coeffs_) {
        c = c * scalar;
    }
    return out;
}

bool SuperState::approx_equal(const SuperState &other, double tol) const {
    check_same_shape(other);
    for (size_t i = 0; i < coeffs_.size(); i++) {
        if (!coeffs_[i].approx_equal(other.coeffs_[i], tol)) {
            return false;
        }
    }
    return true;
}

std::string SuperState::str() const {
    std::stringstream ss;
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); i++) {
        if (coeffs_[i].is_zero()) {
            continue;
        }
        if (!first) {
            ss << " + ";
        }
        first = false;
        ss << "(" << coeffs_[i] << ")|" << ket_label(parties_, i) << ">";
    }
    return first ? "0" : ss.str();
}

std::string SuperState::to_json() const {
    nlohmann::ordered_json j;
    j["parties"] = parties_;
    j["order"] = order_;
    auto kets = nlohmann::ordered_json::array();
    for (size_t i = 0; i < coeffs_.size(); i++) {
        nlohmann::ordered_json k;
        k["ket"] = ket_label(parties_, i);
        auto terms = nlohmann::ordered_json::array();
        for (const auto &t : coeffs_[i].terms()) {
            std::vector<size_t> mono;
            for (size_t g = 0; g < order_; g++) {
                if (t.mono >> g & 1) {
                    mono.push_back(g + 1);
                }
            }
            terms.push_back({{"monomial", mono}, {"re", t.coeff.real()}, {"im", t.coeff.imag()}});
        }
        k["terms"] = terms;
        kets.push_back(k);
    }
    j["kets"] = kets;
    return j.dump(2);
}

SuperState SuperState::from_json(const std::string &text) {
    auto j = nlohmann::json::parse(text);
    size_t parties = j.at("parties").get<size_t>();
    size_t order = j.at("order").get<size_t>();
    SuperState out(parties, order);
    const auto &kets = j.at("kets");
    if (!kets.is_array() || kets.size() != out.size()) {
        throw DimensionError("State JSON must list every basis ket.");
    }
    for (size_t i = 0; i < kets.size(); i++) {
        std::vector<Term> terms;
        for (const auto &t : kets[i].at("terms")) {
            Monomial mono = 0;
            for (size_t g : t.at("monomial").get<std::vector<size_t>>()) {
                if (g == 0 || g > order) {
                    throw DimensionError("Monomial generator index out of range in state JSON.");
                }
                Monomial bit = Monomial{1} << (g - 1);
                if (mono & bit) {
                    throw DimensionError("Repeated generator in state JSON monomial.");
                }
                mono |= bit;
            }
            terms.push_back(Term{mono, complex(t.at("re").get<double>(), t.at("im").get<double>())});
        }
        out.coeffs_[i] = Supernumber::from_terms(order, std::move(terms));
    }
    return out;
}

SuperState superqubit(double p, complex alpha, complex beta, size_t order, size_t pair) {
    auto z = s_matrix(order, pair, p) * su2_block(order, alpha, beta);
    return apply(z, SuperState::basis_ket(order, {Outcome::ZERO}));
}

SuperState superqubit(double p, double theta, double phi, size_t order, size_t pair) {
    return superqubit(p, std::cos(theta), std::polar(1.0, phi) * std::sin(theta), order, pair);
}

double metric_sign(size_t parties, size_t index) {
    return (parties == 2 && index == 8) ? -1.0 : 1.0;
}

Supernumber inner_product(const SuperState &u, const SuperState &v) {
    if (u.parties() != v.parties() || u.order() != v.order()) {
        throw DimensionError("inner_product: states differ in party count or algebra order.");
    }
    Supernumber total = Supernumber::zero(u.order());
    for (size_t i = 0; i < u.size(); i++) {
        const auto &a = u.coeff(i);
        const auto &b = v.coeff(i);
        if (a.is_zero() || b.is_zero()) {
            continue;
        }
        total += a.hash() * b * metric_sign(u.parties(), i);
    }
    return total;
}

Supernumber grassmann_transition(const SuperState &u, const SuperState &v) {
    auto amp = inner_product(u, v);
    return amp * amp.hash();
}

double transition_probability(const SuperState &u, const SuperState &v) {
    return grassmann_transition(u, v).modified_rogers();
}

std::vector<Supernumber> measure_grassmann(const SuperState &state) {
    std::vector<Supernumber> out;
    out.reserve(state.size());
    for (size_t i = 0; i < state.size(); i++) {
        const auto &c = state.coeff(i);
        double sign = (state.ket_parity(i) ? -1.0 : 1.0) * metric_sign(state.parties(), i);
        out.push_back(c * c.hash() * sign);
    }
    return out;
}

std::vector<double> measure_real(const SuperState &state) {
    std::vector<double> out;
    out.reserve(state.size());
    for (const auto &x : measure_grassmann(state)) {
        out.push_back(x.modified_rogers());
    }
    return out;
}

SuperState tensor(const SuperState &a, const SuperState &b) {
    if (a.parties() != 1 || b.parties() != 1) {
        throw DimensionError("tensor expects two single-party states.");
    }
    if (a.order() != b.order()) {
        throw DimensionError("tensor factors must live in the same algebra.");
    }
    Monomial sa = 0;
    Monomial sb = 0;
    for (size_t i = 0; i < 3; i++) {
        sa |= a.coeff(i).support();
        sb |= b.coeff(i).support();
    }
    if (sa & sb) {
        throw DimensionError("tensor factors must use disjoint Grassmann generators.");
    }
    std::vector<Supernumber> coeffs;
    for (size_t m = 0; m < 3; m++) {
        for (size_t n = 0; n < 3; n++) {
            // c_m|m> d_n|n> = (-1)^{|m||n|} c_m d_n |mn> for an even second factor.
            double sign = (m == 2 && n == 2) ? -1.0 : 1.0;
            coeffs.push_back(a.coeff(m) * b.coeff(n) * sign);
        }
    }
    return SuperState::from_coeffs(2, std::move(coeffs));
}

SuperState swap_parties(const SuperState &state) {
    if (state.parties() != 2) {
        throw DimensionError("swap_parties expects a two-party state.");
    }
    std::vector<Supernumber> coeffs(9);
    for (size_t m = 0; m < 3; m++) {
        for (size_t n = 0; n < 3; n++) {
            double sign = (m == 2 && n == 2) ? -1.0 : 1.0;
            coeffs[n * 3 + m] = state.coeff(m * 3 + n) * sign;
        }
    }
    return SuperState::from_coeffs(2, std::move(coeffs));
}

SuperState upsilon(double p_a, double p_b) {
    const size_t order = 4;
    auto eta_a = Supernumber::eta(order, 1);
    auto eta_b = Supernumber::eta(order, 2);
    auto one = Supernumber::one(order);
    auto gamma_a = one + eta_a * Supernumber::eta_hash(order, 1) * (p_a * p_a / 2);
    auto gamma_b = one + eta_b * Supernumber::eta_hash(order, 2) * (p_b * p_b / 2);
    std::vector<Supernumber> coeffs(9, Supernumber::zero(order));
    coeffs[0] = gamma_a * gamma_b * (1 / std::sqrt(2.0));
    coeffs[4] = coeffs[0];
    coeffs[5] = eta_b * gamma_a * p_b;
    coeffs[7] = eta_a * gamma_b * p_a;
    coeffs[8] = eta_a * eta_b * (-p_a * p_b);
    return SuperState::from_coeffs(2, std::move(coeffs));
}

SuperState apply(const Supermatrix &z, const SuperState &state) {
    return SuperState::from_right_column(state.parties(), z * state.right_column());
}

SuperState apply_local(const Supermatrix &z_a, const Supermatrix &z_b, const SuperState &state) {
    if (state.parties() != 2) {
        throw DimensionError("apply_local expects a two-party state.");
    }
    auto id = Supermatrix::identity(state.order(), superqubit_grading());
    auto col = graded_kron(id, z_b) * state.right_column();
    return SuperState::from_right_column(2, graded_kron(z_a, id) * col);
}

Supermatrix density_matrix(const SuperState &state) {
    if (state.parties() != 1) {
        throw DimensionError("density_matrix is defined for single-party states.");
    }
    return state.right_column() * state.bra();
}

double compactify(double p) {
    if (!std::isfinite(p)) {
        throw DomainError("compactify requires a finite displacement.");
    }
    double x = p / (2 * M_PI);
    double out = x - std::floor(x) - 0.5;
    // Rounding can land exactly on the excluded endpoint.
    if (out >= 0.5) {
        out -= 1;
    }
    return out;
}

bool is_physical(double p) {
    return std::abs(p) <= 0.5;
}

PhysicalPair physical_pair(double p, double q) {
    return {std::abs(p - q) <= 1 && std::abs(p + q) <= 1, is_physical(p) && is_physical(q)};
}

}  // namespace superq
