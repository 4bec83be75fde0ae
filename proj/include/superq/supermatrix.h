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

#ifndef _SUPERQ_SUPERMATRIX_H
#define _SUPERQ_SUPERMATRIX_H

#include <string>
#include <vector>

#include "superq/grassmann.h"

namespace superq {

/// Parity of each basis vector along one side of a matrix (0 = even, 1 = odd).
using Grading = std::vector<uint8_t>;

/// The standard (p|q) grading: p even basis vectors followed by q odd ones.
Grading standard_grading(size_t even, size_t odd);

/// Grading of the composite basis (i, k) in lexicographic order, with parity |i| xor |k|.
Grading kron_grading(const Grading &a, const Grading &b);

/// A Z2-graded matrix over the Grassmann algebra of a fixed order.
///
/// Each row and column carries its own parity, so the standard block layout and the
/// lexicographic layout produced by graded_kron are handled uniformly. An entry at
/// (i, j) of an even matrix has parity |i| xor |j|; of an odd matrix, 1 xor |i| xor |j|.
/// The parity of the matrix is derived from its entries rather than stored.
class Supermatrix {
   public:
    Supermatrix() = default;
    /// Zero matrix with the given gradings.
    Supermatrix(size_t order, Grading rows, Grading cols);

    static Supermatrix identity(size_t order, const Grading &grading);
    /// Builds a matrix with complex entries; entries that are nonzero on a grade-mismatched
    /// position make the matrix odd or inhomogeneous, which is allowed.
    static Supermatrix from_complex(
        size_t order, Grading rows, Grading cols, const std::vector<std::vector<complex>> &values);
    /// Column supervector from a list of entries.
    static Supermatrix column(const Grading &rows, const std::vector<Supernumber> &entries);

    size_t order() const {
        return order_;
    }
    size_t num_rows() const {
        return rows_.size();
    }
    size_t num_cols() const {
        return cols_.size();
    }
    const Grading &row_grading() const {
        return rows_;
    }
    const Grading &col_grading() const {
        return cols_;
    }
    const Supernumber &at(size_t row, size_t col) const;
    Supernumber &at(size_t row, size_t col);

    /// EVEN for the zero matrix.
    Parity parity() const;
    /// Throws ParityError unless the matrix has the expected parity.
    void require_parity(Parity expected, const char *what) const;
    Supermatrix even_part() const;
    Supermatrix odd_part() const;

    Supermatrix operator+(const Supermatrix &other) const;
    Supermatrix operator-(const Supermatrix &other) const;
    Supermatrix operator-() const;
    Supermatrix operator*(const Supermatrix &other) const;
    Supermatrix operator*(complex scalar) const;
    bool operator==(const Supermatrix &other) const = default;

    /// Graded transpose. Order 4 on homogeneous matrices.
    Supermatrix supertranspose() const;
    /// Applies the hash involution to every entry.
    Supermatrix hash_entries() const;
    /// The grade adjoint: hash composed with supertranspose.
    Supermatrix grade_adjoint() const;
    Supernumber supertrace() const;

    /// Largest entry distance (max coefficient modulus of the difference).
    double distance(const Supermatrix &other) const;
    bool approx_equal(const Supermatrix &other, double tol = DEFAULT_COMPARE_TOLERANCE) const;
    bool is_super_antihermitian(double tol = DEFAULT_COMPARE_TOLERANCE) const;

    std::string str() const;

   private:
    void check_same_shape(const Supermatrix &other) const;
    Supermatrix supertranspose_homogeneous(bool odd) const;

    size_t order_ = 0;
    Grading rows_;
    Grading cols_;
    std::vector<Supernumber> entries_;
};

/// Left multiplication by a supernumber: rows of odd parity pick up (-1)^{|zeta|}.
Supermatrix scalar_left(const Supernumber &zeta, const Supermatrix &m);
/// Right multiplication by a supernumber: columns of odd parity pick up (-1)^{|zeta|}.
Supermatrix scalar_right(const Supermatrix &m, const Supernumber &zeta);

/// Graded tensor product of two even matrices, acting on the lexicographic composite basis.
Supermatrix graded_kron(const Supermatrix &a, const Supermatrix &b);

/// exp(m) for a matrix whose entries all have zero body; the series terminates.
Supermatrix exp_nilpotent(const Supermatrix &m);

/// The bilinear form u^‡ v of two column supervectors.
Supernumber form(const Supermatrix &u, const Supermatrix &v);

}  // namespace superq

#endif
