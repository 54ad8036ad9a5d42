#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tlms/lattice.hpp"

namespace tlms {

struct MultiSection;

using Rational = boost::multiprecision::cpp_rational;

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Accepts "p" or "p/q" with optional sign; throws std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

/// Dense rectangular matrix over Q.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static RatMatrix identity(std::size_t n);
    static RatMatrix zero(std::size_t n) { return RatMatrix(n, n); }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const;
    bool is_identity() const;

    friend bool operator==(const RatMatrix&, const RatMatrix&) = default;
    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator*(const Rational& s, const RatMatrix& a);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

Rational det(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);
/// Throws DegenerateInputError for singular input.
RatMatrix inverse(const RatMatrix& m);
RatMatrix transpose(const RatMatrix& m);
/// "a b ; c d" with rationals as p/q.
std::string to_string(const RatMatrix& m);

/// Finite sum of rational multiples of characters z^m.
class LaurentPoly {
public:
    LaurentPoly() = default;
    static LaurentPoly monomial(const Rational& c, const Vec& exponent);
    static LaurentPoly constant(const Rational& c, std::size_t n = 2) { return monomial(c, Vec::zero(n)); }

    const std::map<Vec, Rational>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    void add_term(const Rational& c, const Vec& exponent);

    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

private:
    std::map<Vec, Rational> terms_;
};

LaurentPoly lp_add(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly lp_mul(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly lp_neg(const LaurentPoly& p);
/// "c * z^(a,b) + ..." in exponent order; "0" for the zero polynomial.
std::string to_string(const LaurentPoly& p);

bool is_regular_on(const LaurentPoly& p, const Cone& c);
/// Keeps the terms whose exponents are in c^perp; p must be regular on c.
LaurentPoly restrict_to_perp(const LaurentPoly& p, const Cone& c);

class LaurentMatrix {
public:
    LaurentMatrix() = default;
    explicit LaurentMatrix(std::size_t n) : n_(n), a_(n * n) {}
    static LaurentMatrix identity(std::size_t n, std::size_t dim = 2);

    std::size_t size() const noexcept { return n_; }
    LaurentPoly& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const LaurentPoly& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    friend bool operator==(const LaurentMatrix&, const LaurentMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<LaurentPoly> a_;
};

LaurentMatrix mat_mul(const LaurentMatrix& a, const LaurentMatrix& b);
std::string to_string(const LaurentMatrix& m);

/**
 * Monomial pattern of an adjacent pair: entry (a, b) is z^{m(a) - m(b)} when the
 * difference pairs nonnegatively with the shared ray, 0 otherwise. Rows index the
 * slots of cone i, columns the slots of cone j.
 */
LaurentMatrix monomial_matrix(const MultiSection& ms, std::size_t i, std::size_t j);

/// Sheet index of each slot of a cone: sheets in label order, each repeated weight times.
std::vector<std::size_t> slots(const MultiSection& ms, std::size_t cone);

}  // namespace tlms
