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

#ifndef _SUPERQ_SUPERSTATE_H
#define _SUPERQ_SUPERSTATE_H

#include <string>
#include <vector>

#include "superq/supermatrix.h"
#include "superq/uosp.h"

namespace superq {

/// Single-party basis labels; BULLET is the odd basis vector.
enum class Outcome : uint8_t {
    ZERO = 0,
    ONE = 1,
    BULLET = 2,
};

std::string outcome_label(Outcome m);
/// e.g. "0•" for (ZERO, BULLET).
std::string ket_label(size_t parties, size_t index);

/// A one- or two-party superqubit state.
///
/// Coefficients are stored left-pulled: the state is sum_i c_i |i>, with the Grassmann
/// coefficient written to the left of the (possibly odd) basis ket. Two-party kets are indexed
/// lexicographically, index = 3 * m_A + m_B, and |m_A n_B> has parity |m| xor |n|.
class SuperState {
   public:
    SuperState() = default;
    /// The zero vector.
    SuperState(size_t parties, size_t order);

    static SuperState from_coeffs(size_t parties, std::vector<Supernumber> coeffs);
    static SuperState basis_ket(size_t order, const std::vector<Outcome> &ket);
    /// Inverse of right_column.
    static SuperState from_right_column(size_t parties, const Supermatrix &column);

    size_t parties() const {
        return parties_;
    }
    size_t order() const {
        return order_;
    }
    size_t size() const {
        return coeffs_.size();
    }
    const std::vector<Supernumber> &coeffs() const {
        return coeffs_;
    }
    const Supernumber &coeff(size_t index) const;
    const Supernumber &coeff(const std::vector<Outcome> &ket) const;

    /// Parity of basis ket `index`.
    bool ket_parity(size_t index) const;
    Grading grading() const;
    /// Every coefficient has the parity of its ket (so the vector is even).
    bool is_even() const;

    /// Right coordinates u^i with |psi> = sum_i |i> u^i, as a column supermatrix.
    Supermatrix right_column() const;
    /// The row vector <psi| = (right column)^‡.
    Supermatrix bra() const;

    SuperState operator+(const SuperState &other) const;
    SuperState operator*(complex scalar) const;
    bool approx_equal(const SuperState &other, double tol = DEFAULT_COMPARE_TOLERANCE) const;

    std::string str() const;
    /// JSON record: parties, order, and per-ket lists of {monomial, re, im}.
    std::string to_json() const;
    static SuperState from_json(const std::string &text);

   private:
    void check_same_shape(const SuperState &other) const;

    size_t parties_ = 0;
    size_t order_ = 0;
    std::vector<Supernumber> coeffs_;
};

/// S(2p eta) U(alpha, beta) |0>, on generator pair `pair` of an algebra of the given order.
SuperState superqubit(double p, double theta, double phi, size_t order = 2, size_t pair = 1);
SuperState superqubit(double p, complex alpha, complex beta, size_t order = 2, size_t pair = 1);

/// Metric sign of basis ket `index`: -1 for the two-party |••>, +1 otherwise.
double metric_sign(size_t parties, size_t index);

/// <u|v> = sum_i g_i hash(c_i) c'_i with the metric above.
Supernumber inner_product(const SuperState &u, const SuperState &v);
/// <u|v> hash(<u|v>).
Supernumber grassmann_transition(const SuperState &u, const SuperState &v);
/// Modified Rogers norm of grassmann_transition.
double transition_probability(const SuperState &u, const SuperState &v);

/// Grassmann-valued outcome probabilities (-1)^{|i|} g_i c_i hash(c_i) over the standard basis.
std::vector<Supernumber> measure_grassmann(const SuperState &state);
/// Modified Rogers norms of measure_grassmann.
std::vector<double> measure_real(const SuperState &state);

/// Two-party product of single-party states living on disjoint generators of one algebra.
SuperState tensor(const SuperState &a, const SuperState &b);
/// Relabels parties A <-> B.
SuperState swap_parties(const SuperState &state);

/// The entangled two-party resource state, party A on pair 1 and party B on pair 2 of CΛ_4.
SuperState upsilon(double p_a, double p_b);

/// Applies an even operator to the state (3x3 for one party, 9x9 for two).
SuperState apply(const Supermatrix &z, const SuperState &state);
/// Applies z_a ⊗ z_b to a two-party state.
SuperState apply_local(const Supermatrix &z_a, const Supermatrix &z_b, const SuperState &state);

/// |psi><psi| for a single-party state.
Supermatrix density_matrix(const SuperState &state);

/// Maps R onto [-1/2, 1/2): p / 2pi - floor(p / 2pi) - 1/2.
double compactify(double p);
/// |p| <= 1/2.
bool is_physical(double p);

struct PhysicalPair {
    /// |p - q| <= 1 and |p + q| <= 1.
    bool s1;
    /// |p| <= 1/2 and |q| <= 1/2.
    bool s2;
};
PhysicalPair physical_pair(double p, double q);

}  // namespace superq

#endif
