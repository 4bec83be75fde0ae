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

#include "superq/supermatrix.h"

#include <algorithm>
#include <sstream>

#include "superq/errors.h"

namespace superq {

namespace {

void check_grading(const Grading &g) {
    for (auto e : g) {
        if (e > 1) {
            throw DimensionError("Grading entries must be 0 (even) or 1 (odd).");
        }
    }
}

std::string shape_str(const Supermatrix &m) {
    std::stringstream ss;
    ss << m.num_rows() << "x" << m.num_cols();
    return ss.str();
}

}  // namespace

Grading standard_grading(size_t even, size_t odd) {
    Grading g(even + odd, 0);
    std::fill(g.begin() + even, g.end(), 1);
    return g;
}

Grading kron_grading(const Grading &a, const Grading &b) {
    Grading g;
    g.reserve(a.size() * b.size());
    for (auto x : a) {
        for (auto y : b) {
            g.push_back(x ^ y);
        }
    }
    return g;
}

Supermatrix::Supermatrix(size_t order, Grading rows, Grading cols)
    : order_(order), rows_(std::move(rows)), cols_(std::move(cols)) {
    check_grading(rows_);
    check_grading(cols_);
    entries_.assign(rows_.size() * cols_.size(), Supernumber::zero(order));
}

Supermatrix Supermatrix::identity(size_t order, const Grading &grading) {
    Supermatrix m(order, grading, grading);
    for (size_t k = 0; k < grading.size(); k++) {
        m.at(k, k) = Supernumber::one(order);
    }
    return m;
}

Supermatrix Supermatrix::from_complex(
    size_t order, Grading rows, Grading cols, const std::vector<std::vector<complex>> &values) {
    Supermatrix m(order, std::move(rows), std::move(cols));
    if (values.size() != m.num_rows()) {
        throw DimensionError("Row count of values does not match the row grading.");
    }
    for (size_t i = 0; i < values.size(); i++) {
        if (values[i].size() != m.num_cols()) {
            throw DimensionError("Column count of values does not match the column grading.");
        }
        for (size_t j = 0; j < values[i].size(); j++) {
            m.at(i, j) = Supernumber::from_complex(order, values[i][j]);
        }
    }
    return m;
}

Supermatrix Supermatrix::column(const Grading &rows, const std::vector<Supernumber> &entries) {
    if (entries.size() != rows.size() || entries.empty()) {
        throw DimensionError("Column entries must match the (nonempty) row grading.");
    }
    Supermatrix m(entries[0].order(), rows, Grading{0});
    for (size_t i = 0; i < entries.size(); i++) {
        if (entries[i].order() != m.order_) {
            throw DimensionError("Column entries have mismatched algebra orders.");
        }
        m.at(i, 0) = entries[i];
    }
    return m;
}

const Supernumber &Supermatrix::at(size_t row, size_t col) const {
    if (row >= rows_.size() || col >= cols_.size()) {
        throw DimensionError("Supermatrix index out of range.");
    }
    return entries_[row * cols_.size() + col];
}

Supernumber &Supermatrix::at(size_t row, size_t col) {
    if (row >= rows_.size() || col >= cols_.size()) {
        throw DimensionError("Supermatrix index out of range.");
    }
    return entries_[row * cols_.size() + col];
}

Parity Supermatrix::parity() const {
    bool has_even = false;
    bool has_odd = false;
    for (size_t i = 0; i < rows_.size(); i++) {
        for (size_t j = 0; j < cols_.size(); j++) {
            bool position = rows_[i] ^ cols_[j];
            for (const auto &t : at(i, j).terms()) {
                if (monomial_is_odd(t.mono) == position) {
                    has_even = true;
                } else {
                    has_odd = true;
                }
            }
        }
    }
    if (has_even && has_odd) {
        return Parity::INHOMOGENEOUS;
    }
    return has_odd ? Parity::ODD : Parity::EVEN;
}

void Supermatrix::require_parity(Parity expected, const char *what) const {
    Parity actual = parity();
    if (actual != expected) {
        std::stringstream ss;
        ss << what << ": expected a" << (expected == Parity::EVEN ? "n even" : "n odd") << " supermatrix.";
        throw ParityError(ss.str());
    }
}

Supermatrix Supermatrix::even_part() const {
    Supermatrix out(order_, rows_, cols_);
    for (size_t i = 0; i < rows_.size(); i++) {
        for (size_t j = 0; j < cols_.size(); j++) {
            out.at(i, j) = (rows_[i] ^ cols_[j]) ? at(i, j).odd_part() : at(i, j).even_part();
        }
    }
    return out;
}

Supermatrix Supermatrix::odd_part() const {
    Supermatrix out(order_, rows_, cols_);
    for (size_t i = 0; i < rows_.size(); i++) {
        for (size_t j = 0; j < cols_.size(); j++) {
            out.at(i, j) = (rows_[i] ^ cols_[j]) ? at(i, j).even_part() : at(i, j).odd_part();
        }
    }
    return out;
}

void Supermatrix::check_same_shape(const Supermatrix &other) const {
    if (order_ != other.order_ || rows_ != other.rows_ || cols_ != other.cols_) {
        throw DimensionError("Supermatrix shape or grading mismatch: " + shape_str(*this) + " vs " +
                             shape_str(other) + ".");
    }
}

Supermatrix Supermatrix::operator+(const Supermatrix &other) const {
    check_same_shape(other);
    Supermatrix out = *this;
    for (size_t k = 0; k < entries_.size(); k++) {
        out.entries_[k] += other.entries_[k];
    }
    return out;
}

Supermatrix Supermatrix::operator-(const Supermatrix &other) const {
    check_same_shape(other);
    Supermatrix out = *this;
    for (size_t k = 0; k < entries_.size(); k++) {
        out.entries_[k] -= other.entries_[k];
    }
    return out;
}

Supermatrix Supermatrix::operator-() const {
    Supermatrix out = *this;
    for (auto &e : out.entries_) {
        e = -e;
    }
    return out;
}

Supermatrix Supermatrix::operator*(complex scalar) const {
    Supermatrix out = *this;
    for (auto &e : out.entries_) {
        e = e * scalar;
    }
    return out;
}

Supermatrix Supermatrix::operator*(const Supermatrix &other) const {
    if (order_ != other.order_ || cols_ != other.rows_) {
        throw DimensionError("Cannot multiply " + shape_str(*this) + " by " + shape_str(other) +
                             ": inner gradings or algebra orders differ.");
    }
    Supermatrix out(order_, rows_, other.cols_);
    for (size_t i = 0; i < rows_.size(); i++) {
        for (size_t k = 0; k < cols_.size(); k++) {
            const auto &a = at(i, k);
            if (a.is_zero()) {
                continue;
            }
            for (size_t j = 0; j < other.cols_.size(); j++) {
                const auto &b = other.at(k, j);
                if (!b.is_zero()) {
                    out.at(i, j) += a * b;
                }
            }
        }
    }
    return out;
}

Supermatrix Supermatrix::supertranspose_homogeneous(bool odd) const {
    Supermatrix out(order_, cols_, rows_);
    for (size_t i = 0; i < rows_.size(); i++) {
        for (size_t j = 0; j < cols_.size(); j++) {
            const auto &x = at(i, j);
            if (x.is_zero()) {
                continue;
            }
            bool negate = ((int)odd ^ cols_[j]) & (rows_[i] ^ cols_[j]);
            out.at(j, i) = negate ? -x : x;
        }
    }
    return out;
}

Supermatrix Supermatrix::supertranspose() const {
    switch (parity()) {
        case Parity::EVEN:
            return supertranspose_homogeneous(false);
        case Parity::ODD:
            return supertranspose_homogeneous(true);
        default:
            return even_part().supertranspose_homogeneous(false) + odd_part().supertranspose_homogeneous(true);
    }
}

Supermatrix Supermatrix::hash_entries() const {
    Supermatrix out = *this;
    for (auto &e : out.entries_) {
        e = e.hash();
    }
    return out;
}

Supermatrix Supermatrix::grade_adjoint() const {
    return supertranspose().hash_entries();
}

Supernumber Supermatrix::supertrace() const {
    if (rows_ != cols_) {
        throw DimensionError("Supertrace requires a square matrix with matching row and column gradings.");
    }
    Parity p = parity();
    if (p == Parity::INHOMOGENEOUS) {
        return even_part().supertrace() + odd_part().supertrace();
    }
    // sTr = Tr(A) - (-1)^{|S|} Tr(D).
    Supernumber even_sum = Supernumber::zero(order_);
    Supernumber odd_sum = Supernumber::zero(order_);
    for (size_t k = 0; k < rows_.size(); k++) {
        if (rows_[k]) {
            odd_sum += at(k, k);
        } else {
            even_sum += at(k, k);
        }
    }
    return p == Parity::ODD ? even_sum + odd_sum : even_sum - odd_sum;
}

double Supermatrix::distance(const Supermatrix &other) const {
    check_same_shape(other);
    double worst = 0;
    for (size_t k = 0; k < entries_.size(); k++) {
        worst = std::max(worst, entries_[k].distance(other.entries_[k]));
    }
    return worst;
}

bool Supermatrix::approx_equal(const Supermatrix &other, double tol) const {
    return distance(other) <= tol;
}

bool Supermatrix::is_super_antihermitian(double tol) const {
    return grade_adjoint().approx_equal(-*this, tol);
}

std::string Supermatrix::str() const {
    std::stringstream ss;
    for (size_t i = 0; i < rows_.size(); i++) {
        ss << "[";
        for (size_t j = 0; j < cols_.size(); j++) {
            if (j) {
                ss << ", ";
            }
            ss << at(i, j);
        }
        ss << "]\n";
    }
    return ss.str();
}

Supermatrix scalar_left(const Supernumber &zeta, const Supermatrix &m) {
    if (zeta.order() != m.order()) {
        throw DimensionError("Scalar and supermatrix live in algebras of different order.");
    }
    Supernumber ze = zeta.even_part();
    Supernumber zo = zeta.odd_part();
    Supermatrix out(m.order(), m.row_grading(), m.col_grading());
    for (size_t i = 0; i < m.num_rows(); i++) {
        bool flip = m.row_grading()[i];
        for (size_t j = 0; j < m.num_cols(); j++) {
            const auto &x = m.at(i, j);
            if (x.is_zero()) {
                continue;
            }
            Supernumber odd_term = zo * x;
            out.at(i, j) = flip ? ze * x - odd_term : ze * x + odd_term;
        }
    }
    return out;
}

Supermatrix scalar_right(const Supermatrix &m, const Supernumber &zeta) {
    if (zeta.order() != m.order()) {
        throw DimensionError("Scalar and supermatrix live in algebras of different order.");
    }
    Supernumber ze = zeta.even_part();
    Supernumber zo = zeta.odd_part();
    Supermatrix out(m.order(), m.row_grading(), m.col_grading());
    for (size_t i = 0; i < m.num_rows(); i++) {
        for (size_t j = 0; j < m.num_cols(); j++) {
            bool flip = m.col_grading()[j];
            const auto &x = m.at(i, j);
            if (x.is_zero()) {
                continue;
            }
            Supernumber odd_term = x * zo;
            out.at(i, j) = flip ? x * ze - odd_term : x * ze + odd_term;
        }
    }
    return out;
}

Supermatrix graded_kron(const Supermatrix &a, const Supermatrix &b) {
    if (a.order() != b.order()) {
        throw DimensionError("graded_kron factors live in algebras of different order.");
    }
    a.require_parity(Parity::EVEN, "graded_kron");
    b.require_parity(Parity::EVEN, "graded_kron");
    const auto &ar = a.row_grading();
    const auto &ac = a.col_grading();
    const auto &br = b.row_grading();
    const auto &bc = b.col_grading();
    Supermatrix out(a.order(), kron_grading(ar, br), kron_grading(ac, bc));
    for (size_t i = 0; i < ar.size(); i++) {
        for (size_t j = 0; j < ac.size(); j++) {
            const auto &x = a.at(i, j);
            if (x.is_zero()) {
                continue;
            }
            for (size_t k = 0; k < br.size(); k++) {
                // Moving b_kl past a_ij and the ket |k> past |j> costs (-1)^{(|i|+|j|)|k|}.
                bool negate = (ar[i] ^ ac[j]) & br[k];
                for (size_t l = 0; l < bc.size(); l++) {
                    const auto &y = b.at(k, l);
                    if (y.is_zero()) {
                        continue;
                    }
                    Supernumber v = x * y;
                    out.at(i * br.size() + k, j * bc.size() + l) = negate ? -v : v;
                }
            }
        }
    }
    return out;
}

Supermatrix exp_nilpotent(const Supermatrix &m) {
    if (m.row_grading() != m.col_grading()) {
        throw DimensionError("exp_nilpotent requires a square matrix with matching gradings.");
    }
    for (size_t i = 0; i < m.num_rows(); i++) {
        for (size_t j = 0; j < m.num_cols(); j++) {
            if (m.at(i, j).body() != complex{0, 0}) {
                throw NotNilpotentError("exp_nilpotent: entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                        ") has a nonzero body.");
            }
        }
    }
    Supermatrix total = Supermatrix::identity(m.order(), m.row_grading());
    Supermatrix power = total;
    Supermatrix zero(m.order(), m.row_grading(), m.col_grading());
    // Every entry of m^k is a sum of products of k souls, so m^(N+1) = 0.
    for (size_t k = 1; k <= m.order() + 1; k++) {
        power = (power * m) * (1.0 / (double)k);
        if (power == zero) {
            break;
        }
        total = total + power;
    }
    return total;
}

Supernumber form(const Supermatrix &u, const Supermatrix &v) {
    if (u.num_cols() != 1 || v.num_cols() != 1) {
        throw DimensionError("form expects column supervectors.");
    }
    return (u.grade_adjoint() * v).at(0, 0);
}

}  // namespace superq
