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

#ifndef _SUPERQ_GRASSMANN_H
#define _SUPERQ_GRASSMANN_H

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace superq {

using complex = std::complex<double>;

enum class Parity : uint8_t {
    EVEN = 0,
    ODD = 1,
    INHOMOGENEOUS = 2,
};

/// Returns -1 for an odd grade, +1 for an even one.
inline double grade_sign(bool odd) {
    return odd ? -1.0 : 1.0;
}

/// A monomial of the Grassmann algebra as a bitmask over generators.
/// Bit k-1 is set when generator k (1-based) is present. Generators are
/// always multiplied in ascending index order inside a stored monomial.
using Monomial = uint32_t;

/// Largest supported algebra order (width of the monomial mask in use).
constexpr size_t MAX_ORDER = 16;

/// Coefficients smaller than this (in modulus) are dropped after every operation.
constexpr double DEFAULT_PRUNE_TOLERANCE = 1e-14;
/// Default tolerance for approx_equal and for "is this zero" style checks.
constexpr double DEFAULT_COMPARE_TOLERANCE = 1e-12;

/// Process-wide prune tolerance. Changing it while other threads do arithmetic is a race.
double prune_tolerance();
void set_prune_tolerance(double tol);

/// Generators come in hash-conjugate pairs: index 2i-1 is eta_i and index 2i is eta_i^#.
constexpr size_t eta_index(size_t pair) {
    return 2 * pair - 1;
}
constexpr size_t eta_hash_index(size_t pair) {
    return 2 * pair;
}

struct Term {
    Monomial mono;
    complex coeff;

    bool operator==(const Term &other) const = default;
};

inline bool monomial_is_odd(Monomial m) {
    return __builtin_popcount(m) & 1;
}

/// An element of the complex Grassmann algebra of order N.
///
/// Stored as a sparse list of (monomial, coefficient) terms sorted by monomial mask.
/// Values are immutable once built; every operation returns a new value.
class Supernumber {
   public:
    /// The zero element of the order-0 algebra (plain complex numbers).
    Supernumber() = default;
    /// The zero element of the algebra of the given order.
    explicit Supernumber(size_t order);

    static Supernumber zero(size_t order);
    static Supernumber one(size_t order);
    static Supernumber from_complex(size_t order, complex value);
    /// The k-th generator (1-based).
    static Supernumber generator(size_t order, size_t index);
    static Supernumber eta(size_t order, size_t pair);
    static Supernumber eta_hash(size_t order, size_t pair);
    /// Builds a value from arbitrary terms; monomials must be valid for the order.
    static Supernumber from_terms(size_t order, std::vector<Term> terms);

    size_t order() const {
        return order_;
    }
    std::span<const Term> terms() const {
        return terms_;
    }
    bool is_zero() const {
        return terms_.empty();
    }
    /// Coefficient of the given monomial (zero when absent).
    complex coeff(Monomial mono) const;
    /// Union of all generators that appear in any stored monomial.
    Monomial support() const;

    complex body() const;
    Supernumber soul() const;
    Parity parity() const;
    bool is_even() const {
        return parity() == Parity::EVEN;
    }
    bool is_odd() const;
    Supernumber even_part() const;
    Supernumber odd_part() const;

    Supernumber operator+(const Supernumber &other) const;
    Supernumber operator-(const Supernumber &other) const;
    Supernumber operator-() const;
    Supernumber operator*(const Supernumber &other) const;
    Supernumber operator*(complex scalar) const;
    Supernumber &operator+=(const Supernumber &other);
    Supernumber &operator-=(const Supernumber &other);
    /// Exact structural equality (same order, same stored terms).
    bool operator==(const Supernumber &other) const = default;

    /// Grade involution: eta_i -> eta_i^#, eta_i^# -> -eta_i, order preserving, antilinear.
    Supernumber hash() const;
    /// Antilinear anti-automorphism: eta_i <-> eta_i^#, reverses generator order.
    Supernumber star() const;
    /// Left-derivative Berezin integral with respect to the generator with the given 1-based index.
    Supernumber berezin(size_t index) const;

    double rogers_r1() const;
    /// Berezin integral against prod_i exp(-eta_i eta_i^#). Requires an even argument.
    double modified_rogers() const;

    Supernumber invert() const;
    Supernumber inv_sqrt() const;

    /// Largest coefficient modulus of (this - other).
    double distance(const Supernumber &other) const;
    bool approx_equal(const Supernumber &other, double tol = DEFAULT_COMPARE_TOLERANCE) const;
    /// Even and invariant under hash.
    bool is_real_even(double tol = DEFAULT_COMPARE_TOLERANCE) const;

    /// Renders e.g. "1 + 0.5·η1η1#".
    std::string str() const;

   private:
    Supernumber(size_t order, std::vector<Term> sorted_terms);
    void check_same_order(const Supernumber &other) const;

    size_t order_ = 0;
    std::vector<Term> terms_;
};

inline Supernumber operator*(complex scalar, const Supernumber &a) {
    return a * scalar;
}

std::ostream &operator<<(std::ostream &out, const Supernumber &value);

/// Human readable name of a generator, e.g. "η2#".
std::string generator_name(size_t index);

/// Sign of moving the product (monomial a)(monomial b) into ascending order, or 0 if they overlap.
int merge_sign(Monomial a, Monomial b);

}  // namespace superq

#endif
