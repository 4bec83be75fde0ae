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

#include "superq/grassmann.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "superq/errors.h"

namespace superq {

namespace {

std::atomic<double> global_prune_tolerance{DEFAULT_PRUNE_TOLERANCE};

void check_order(size_t order) {
    if (order > MAX_ORDER || order % 2 != 0) {
        std::stringstream ss;
        ss << "Grassmann algebra order must be even and at most " << MAX_ORDER << ", got " << order << ".";
        throw DimensionError(ss.str());
    }
}

bool negligible(complex c, double tol) {
    return std::abs(c) < tol;
}

// Sorts terms by monomial, merges duplicates and prunes small coefficients.
std::vector<Term> normalize(std::vector<Term> terms) {
    double tol = prune_tolerance();
    std::sort(terms.begin(), terms.end(), [](const Term &a, const Term &b) {
        return a.mono < b.mono;
    });
    std::vector<Term> out;
    out.reserve(terms.size());
    for (const auto &t : terms) {
        if (!out.empty() && out.back().mono == t.mono) {
            out.back().coeff += t.coeff;
        } else {
            out.push_back(t);
        }
    }
    std::erase_if(out, [tol](const Term &t) {
        return negligible(t.coeff, tol);
    });
    return out;
}

// Reorders a product of generators (0-based bit positions, in multiplication order) into
// ascending order. Returns the monomial and the permutation sign, or sign 0 if a generator repeats.
std::pair<Monomial, int> canonicalize(std::span<const uint8_t> gens) {
    Monomial mono = 0;
    int inversions = 0;
    for (size_t a = 0; a < gens.size(); a++) {
        Monomial bit = Monomial{1} << gens[a];
        if (mono & bit) {
            return {0, 0};
        }
        mono |= bit;
        for (size_t b = a + 1; b < gens.size(); b++) {
            inversions += gens[a] > gens[b];
        }
    }
    return {mono, (inversions & 1) ? -1 : 1};
}

std::vector<uint8_t> bits_of(Monomial m) {
    std::vector<uint8_t> out;
    while (m) {
        out.push_back((uint8_t)__builtin_ctz(m));
        m &= m - 1;
    }
    return out;
}

}  // namespace

double prune_tolerance() {
    return global_prune_tolerance.load(std::memory_order_relaxed);
}

void set_prune_tolerance(double tol) {
    if (!(tol >= 0)) {
        throw DomainError("Prune tolerance must be non-negative.");
    }
    global_prune_tolerance.store(tol, std::memory_order_relaxed);
}

int merge_sign(Monomial a, Monomial b) {
    if (a & b) {
        return 0;
    }
    // Each generator of b must hop over every generator of a with a larger index.
    int hops = 0;
    while (b) {
        int j = __builtin_ctz(b);
        hops += __builtin_popcount(a >> (j + 1));
        b &= b - 1;
    }
    return (hops & 1) ? -1 : 1;
}

std::string generator_name(size_t index) {
    std::string s = "η" + std::to_string((index + 1) / 2);
    if (index % 2 == 0) {
        s += "#";
    }
    return s;
}

Supernumber::Supernumber(size_t order) : order_(order) {
    check_order(order);
}

Supernumber::Supernumber(size_t order, std::vector<Term> sorted_terms)
    : order_(order), terms_(std::move(sorted_terms)) {
}

Supernumber Supernumber::zero(size_t order) {
    return Supernumber(order);
}

Supernumber Supernumber::one(size_t order) {
    return from_complex(order, 1.0);
}

Supernumber Supernumber::from_complex(size_t order, complex value) {
    check_order(order);
    if (negligible(value, prune_tolerance())) {
        return Supernumber(order);
    }
    return Supernumber(order, {Term{0, value}});
}

Supernumber Supernumber::generator(size_t order, size_t index) {
    check_order(order);
    if (index == 0 || index > order) {
        throw DimensionError("Generator index " + std::to_string(index) + " outside algebra of order " +
                             std::to_string(order) + ".");
    }
    return Supernumber(order, {Term{Monomial{1} << (index - 1), 1.0}});
}

Supernumber Supernumber::eta(size_t order, size_t pair) {
    return generator(order, eta_index(pair));
}

Supernumber Supernumber::eta_hash(size_t order, size_t pair) {
    return generator(order, eta_hash_index(pair));
}

Supernumber Supernumber::from_terms(size_t order, std::vector<Term> terms) {
    check_order(order);
    Monomial limit = order == 32 ? ~Monomial{0} : ((Monomial{1} << order) - 1);
    for (const auto &t : terms) {
        if (t.mono & ~limit) {
            throw DimensionError("Monomial uses a generator outside the algebra order.");
        }
    }
    return Supernumber(order, normalize(std::move(terms)));
}

void Supernumber::check_same_order(const Supernumber &other) const {
    if (order_ != other.order_) {
        std::stringstream ss;
        ss << "Supernumber order mismatch: " << order_ << " vs " << other.order_ << ".";
        throw DimensionError(ss.str());
    }
}

complex Supernumber::coeff(Monomial mono) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), mono, [](const Term &t, Monomial m) {
        return t.mono < m;
    });
    if (it != terms_.end() && it->mono == mono) {
        return it->coeff;
    }
    return 0.0;
}

Monomial Supernumber::support() const {
    Monomial m = 0;
    for (const auto &t : terms_) {
        m |= t.mono;
    }
    return m;
}

complex Supernumber::body() const {
    if (!terms_.empty() && terms_.front().mono == 0) {
        return terms_.front().coeff;
    }
    return 0.0;
}

Supernumber Supernumber::soul() const {
    std::vector<Term> out;
    for (const auto &t : terms_) {
        if (t.mono != 0) {
            out.push_back(t);
        }
    }
    return Supernumber(order_, std::move(out));
}

Parity Supernumber::parity() const {
    bool has_even = false;
    bool has_odd = false;
    for (const auto &t : terms_) {
        if (monomial_is_odd(t.mono)) {
            has_odd = true;
        } else {
            has_even = true;
        }
    }
    if (has_even && has_odd) {
        return Parity::INHOMOGENEOUS;
    }
    return has_odd ? Parity::ODD : Parity::EVEN;
}

bool Supernumber::is_odd() const {
    return !terms_.empty() && parity() == Parity::ODD;
}

Supernumber Supernumber::even_part() const {
    std::vector<Term> out;
    for (const auto &t : terms_) {
        if (!monomial_is_odd(t.mono)) {
            out.push_back(t);
        }
    }
    return Supernumber(order_, std::move(out));
}

Supernumber Supernumber::odd_part() const {
    std::vector<Term> out;
    for (const auto &t : terms_) {
        if (monomial_is_odd(t.mono)) {
            out.push_back(t);
        }
    }
    return Supernumber(order_, std::move(out));
}

Supernumber Supernumber::operator+(const Supernumber &other) const {
    check_same_order(other);
    double tol = prune_tolerance();
    std::vector<Term> out;
    out.reserve(terms_.size() + other.terms_.size());
    auto a = terms_.begin();
    auto b = other.terms_.begin();
    while (a != terms_.end() || b != other.terms_.end()) {
        if (b == other.terms_.end() || (a != terms_.end() && a->mono < b->mono)) {
            out.push_back(*a++);
        } else if (a == terms_.end() || b->mono < a->mono) {
            out.push_back(*b++);
        } else {
            complex c = a->coeff + b->coeff;
            if (!negligible(c, tol)) {
                out.push_back(Term{a->mono, c});
            }
            ++a;
            ++b;
        }
    }
    return Supernumber(order_, std::move(out));
}

Supernumber Supernumber::operator-() const {
    std::vector<Term> out = terms_;
    for (auto &t : out) {
        t.coeff = -t.coeff;
    }
    return Supernumber(order_, std::move(out));
}

Supernumber Supernumber::operator-(const Supernumber &other) const {
    return *this + (-other);
}

Supernumber &Supernumber::operator+=(const Supernumber &other) {
    *this = *this + other;
    return *this;
}

Supernumber &Supernumber::operator-=(const Supernumber &other) {
    *this = *this - other;
    return *this;
}

Supernumber Supernumber::operator*(complex scalar) const {
    double tol = prune_tolerance();
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto &t : terms_) {
        complex c = t.coeff * scalar;
        if (!negligible(c, tol)) {
            out.push_back(Term{t.mono, c});
        }
    }
    return Supernumber(order_, std::move(out));
}

Supernumber Supernumber::operator*(const Supernumber &other) const {
    check_same_order(other);
    if (terms_.empty() || other.terms_.empty()) {
        return Supernumber(order_);
    }
    double tol = prune_tolerance();
    if (order_ <= 8) {
        // Small algebras: accumulate densely, which also yields ascending monomial order.
        std::array<complex, 256> acc{};
        std::array<bool, 256> hit{};
        for (const auto &x : terms_) {
            for (const auto &y : other.terms_) {
                int s = merge_sign(x.mono, y.mono);
                if (s == 0) {
                    continue;
                }
                Monomial m = x.mono | y.mono;
                acc[m] += (double)s * x.coeff * y.coeff;
                hit[m] = true;
            }
        }
        std::vector<Term> out;
        size_t limit = size_t{1} << order_;
        for (size_t m = 0; m < limit; m++) {
            if (hit[m] && !negligible(acc[m], tol)) {
                out.push_back(Term{(Monomial)m, acc[m]});
            }
        }
        return Supernumber(order_, std::move(out));
    }
    std::vector<Term> out;
    out.reserve(terms_.size() * other.terms_.size());
    for (const auto &x : terms_) {
        for (const auto &y : other.terms_) {
            int s = merge_sign(x.mono, y.mono);
            if (s != 0) {
                out.push_back(Term{x.mono | y.mono, (double)s * x.coeff * y.coeff});
            }
        }
    }
    return Supernumber(order_, normalize(std::move(out)));
}

Supernumber Supernumber::hash() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    std::vector<uint8_t> mapped;
    for (const auto &t : terms_) {
        mapped.clear();
        int sign = 1;
        for (uint8_t g : bits_of(t.mono)) {
            if (g % 2 == 0) {
                // eta_i -> eta_i^#
                mapped.push_back(g + 1);
            } else {
                // eta_i^# -> -eta_i
                mapped.push_back(g - 1);
                sign = -sign;
            }
        }
        auto [mono, perm] = canonicalize(mapped);
        out.push_back(Term{mono, (double)(sign * perm) * std::conj(t.coeff)});
    }
    return Supernumber(order_, normalize(std::move(out)));
}

Supernumber Supernumber::star() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    std::vector<uint8_t> mapped;
    for (const auto &t : terms_) {
        auto gens = bits_of(t.mono);
        mapped.clear();
        for (auto it = gens.rbegin(); it != gens.rend(); ++it) {
            mapped.push_back((*it % 2 == 0) ? *it + 1 : *it - 1);
        }
        auto [mono, perm] = canonicalize(mapped);
        out.push_back(Term{mono, (double)perm * std::conj(t.coeff)});
    }
    return Supernumber(order_, normalize(std::move(out)));
}

Supernumber Supernumber::berezin(size_t index) const {
    if (index == 0 || index > order_) {
        throw DimensionError("Berezin integration variable " + std::to_string(index) +
                             " outside algebra of order " + std::to_string(order_) + ".");
    }
    Monomial g = Monomial{1} << (index - 1);
    std::vector<Term> out;
    for (const auto &t : terms_) {
        if (!(t.mono & g)) {
            continue;
        }
        // Move g to the front past every generator with a smaller index.
        int hops = __builtin_popcount(t.mono & (g - 1));
        out.push_back(Term{t.mono & ~g, (hops & 1) ? -t.coeff : t.coeff});
    }
    return Supernumber(order_, std::move(out));
}

double Supernumber::rogers_r1() const {
    double total = 0;
    for (const auto &t : terms_) {
        total += std::abs(t.coeff);
    }
    return total;
}

double Supernumber::modified_rogers() const {
    if (parity() != Parity::EVEN) {
        throw ParityError("The modified Rogers norm is only defined for even supernumbers.");
    }
    Supernumber integrand = *this;
    size_t pairs = order_ / 2;
    for (size_t i = 1; i <= pairs; i++) {
        // exp(-eta_i eta_i^#) truncates to 1 - eta_i eta_i^#.
        Supernumber weight = one(order_) - eta(order_, i) * eta_hash(order_, i);
        integrand = weight * integrand;
    }
    for (size_t i = 1; i <= pairs; i++) {
        integrand = integrand.berezin(eta_hash_index(i)).berezin(eta_index(i));
    }
    return integrand.body().real();
}

Supernumber Supernumber::invert() const {
    if (parity() != Parity::EVEN) {
        throw ParityError("invert requires an even supernumber.");
    }
    complex b = body();
    if (std::abs(b) <= DEFAULT_COMPARE_TOLERANCE) {
        throw NotInvertibleError("Cannot invert a supernumber with zero body.");
    }
    // a = b(1 + n) with n nilpotent, so 1/a = (1/b) sum_k (-n)^k.
    Supernumber n = soul() * (1.0 / b);
    Supernumber minus_n = -n;
    Supernumber power = one(order_);
    Supernumber total = one(order_);
    for (size_t k = 1; k <= order_ / 2 + 1; k++) {
        power = power * minus_n;
        if (power.is_zero()) {
            break;
        }
        total += power;
    }
    return total * (1.0 / b);
}

Supernumber Supernumber::inv_sqrt() const {
    if (parity() != Parity::EVEN) {
        throw ParityError("inv_sqrt requires an even supernumber.");
    }
    complex b = body();
    if (std::abs(b.imag()) > DEFAULT_COMPARE_TOLERANCE || !(b.real() > 0)) {
        throw DomainError("inv_sqrt requires a real positive body.");
    }
    double c = b.real();
    // (1 + n)^(-1/2) = sum_k binom(-1/2, k) n^k.
    Supernumber n = soul() * (1.0 / c);
    Supernumber power = one(order_);
    Supernumber total = one(order_);
    double binom = 1;
    for (size_t k = 1; k <= order_ / 2 + 1; k++) {
        binom *= (-0.5 - (double)(k - 1)) / (double)k;
        power = power * n;
        if (power.is_zero()) {
            break;
        }
        total += power * binom;
    }
    return total * (1.0 / std::sqrt(c));
}

double Supernumber::distance(const Supernumber &other) const {
    check_same_order(other);
    double worst = 0;
    for (const auto &t : (*this - other).terms_) {
        worst = std::max(worst, std::abs(t.coeff));
    }
    return worst;
}

bool Supernumber::approx_equal(const Supernumber &other, double tol) const {
    return distance(other) <= tol;
}

bool Supernumber::is_real_even(double tol) const {
    return parity() == Parity::EVEN && hash().approx_equal(*this, tol);
}

namespace {

std::string format_complex(complex c, bool leading) {
    std::stringstream ss;
    ss << std::setprecision(12);
    if (c.imag() == 0) {
        double r = c.real();
        if (!leading) {
            ss << (r < 0 ? " - " : " + ");
            r = std::abs(r);
        }
        ss << r;
    } else {
        if (!leading) {
            ss << " + ";
        }
        ss << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    }
    return ss.str();
}

}  // namespace

std::string Supernumber::str() const {
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    bool leading = true;
    for (const auto &t : terms_) {
        bool unit = t.mono != 0 && t.coeff == complex{1, 0};
        bool minus_unit = t.mono != 0 && t.coeff == complex{-1, 0};
        if (unit) {
            out += leading ? "" : " + ";
        } else if (minus_unit) {
            out += leading ? "-" : " - ";
        } else {
            out += format_complex(t.coeff, leading);
            if (t.mono != 0) {
                out += "·";
            }
        }
        for (uint8_t g : bits_of(t.mono)) {
            out += generator_name(g + 1);
        }
        leading = false;
    }
    return out;
}

std::ostream &operator<<(std::ostream &out, const Supernumber &value) {
    return out << value.str();
}

}  // namespace superq
