#include "tlms/laurent.hpp"

#include <charconv>
#include <stdexcept>

#include "tlms/error.hpp"
#include "tlms/multisection.hpp"

namespace tlms {

std::string to_string(const Rational& q) {
    const auto num = boost::multiprecision::numerator(q);
    const auto den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

namespace {

Int parse_int(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    Int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc::result_out_of_range) throw std::out_of_range("integer overflow in '" + std::string(s) + "'");
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
        throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
    return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    const Int p = parse_int(text.substr(0, slash));
    const auto den = text.substr(slash + 1);
    if (!den.empty() && (den.front() == '-' || den.front() == '+'))
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    const Int q = parse_int(den);
    if (q == 0) throw std::invalid_argument("malformed rational '" + std::string(text) + "': zero denominator");
    return Rational(p, q);
}

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows.size() ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
        if (r.size() != cols_) throw SizeMismatchError("ragged matrix literal");
        a_.insert(a_.end(), r.begin(), r.end());
    }
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

bool RatMatrix::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

bool RatMatrix::is_identity() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw SizeMismatchError("matrix product of incompatible sizes");
    RatMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& x = a(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
        }
    return c;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw SizeMismatchError("matrix sum of different sizes");
    RatMatrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
    return c;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw SizeMismatchError("matrix difference of different sizes");
    RatMatrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
    return c;
}

RatMatrix operator*(const Rational& s, const RatMatrix& a) {
    RatMatrix c = a;
    for (auto& x : c.a_) x *= s;
    return c;
}

namespace {

// Row echelon form in place; returns rank and the sign/scale product for det.
std::size_t eliminate(RatMatrix& m, Rational* det_factor) {
    std::size_t r = 0;
    Rational factor = 1;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
            factor = -factor;
        }
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m(i, c) == 0) continue;
            const Rational f = m(i, c) / m(r, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    if (det_factor) *det_factor = factor;
    return r;
}

}  // namespace

Rational det(const RatMatrix& m) {
    if (!m.square()) throw SizeMismatchError("determinant of a non-square matrix");
    RatMatrix w = m;
    Rational factor;
    if (eliminate(w, &factor) < w.rows()) return 0;
    Rational d = factor;
    for (std::size_t i = 0; i < w.rows(); ++i) d *= w(i, i);
    return d;
}

std::size_t rank(const RatMatrix& m) {
    RatMatrix w = m;
    return eliminate(w, nullptr);
}

RatMatrix inverse(const RatMatrix& m) {
    if (!m.square()) throw SizeMismatchError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix a(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
        a(i, n + i) = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) throw DegenerateInputError("matrix is singular");
        if (p != c)
            for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a(p, j), a(c, j));
        const Rational piv = a(c, c);
        for (std::size_t j = 0; j < 2 * n; ++j) a(c, j) /= piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0) continue;
            const Rational f = a(i, c);
            for (std::size_t j = 0; j < 2 * n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = a(i, n + j);
    return inv;
}

RatMatrix transpose(const RatMatrix& m) {
    RatMatrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

std::string to_string(const RatMatrix& m) {
    std::string s;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) s += " ; ";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) s += ' ';
            s += to_string(m(i, j));
        }
    }
    return s;
}

LaurentPoly LaurentPoly::monomial(const Rational& c, const Vec& exponent) {
    LaurentPoly p;
    p.add_term(c, exponent);
    return p;
}

void LaurentPoly::add_term(const Rational& c, const Vec& exponent) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (inserted) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

LaurentPoly lp_add(const LaurentPoly& p, const LaurentPoly& q) {
    LaurentPoly r = p;
    for (const auto& [e, c] : q.terms()) r.add_term(c, e);
    return r;
}

LaurentPoly lp_mul(const LaurentPoly& p, const LaurentPoly& q) {
    LaurentPoly r;
    for (const auto& [e1, c1] : p.terms())
        for (const auto& [e2, c2] : q.terms()) r.add_term(c1 * c2, e1 + e2);
    return r;
}

LaurentPoly lp_neg(const LaurentPoly& p) {
    LaurentPoly r;
    for (const auto& [e, c] : p.terms()) r.add_term(-c, e);
    return r;
}

std::string to_string(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (const auto& [e, c] : p.terms()) {
        if (!s.empty()) s += " + ";
        s += to_string(c) + " * z^" + to_string(e);
    }
    return s;
}

bool is_regular_on(const LaurentPoly& p, const Cone& c) {
    for (const auto& [e, coeff] : p.terms())
        if (!in_dual_cone(e, c)) return false;
    return true;
}

LaurentPoly restrict_to_perp(const LaurentPoly& p, const Cone& c) {
    if (!is_regular_on(p, c)) throw RegularityError("polynomial is not regular on the cone");
    LaurentPoly r;
    for (const auto& [e, coeff] : p.terms())
        if (in_perp(e, c)) r.add_term(coeff, e);
    return r;
}

LaurentMatrix LaurentMatrix::identity(std::size_t n, std::size_t dim) {
    LaurentMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = LaurentPoly::constant(1, dim);
    return m;
}

LaurentMatrix mat_mul(const LaurentMatrix& a, const LaurentMatrix& b) {
    if (a.size() != b.size()) throw SizeMismatchError("Laurent matrices of different sizes");
    const std::size_t n = a.size();
    LaurentMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            LaurentPoly acc;
            for (std::size_t k = 0; k < n; ++k) {
                if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
                acc = lp_add(acc, lp_mul(a(i, k), b(k, j)));
            }
            c(i, j) = std::move(acc);
        }
    return c;
}

std::string to_string(const LaurentMatrix& m) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += " ; ";
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (j) s += " | ";
            s += to_string(m(i, j));
        }
    }
    return s;
}

std::vector<std::size_t> slots(const MultiSection& ms, std::size_t cone) {
    std::vector<std::size_t> out;
    for (std::size_t s : ms.sheets_on(cone))
        for (int w = 0; w < ms.sheets[s].weight; ++w) out.push_back(s);
    return out;
}

LaurentMatrix monomial_matrix(const MultiSection& ms, std::size_t i, std::size_t j) {
    const auto ray = ms.fan.shared_ray(i, j);
    if (!ray) throw NotAdjacentError("cones " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " are not adjacent");
    const auto si = slots(ms, i), sj = slots(ms, j);
    if (si.size() != sj.size()) throw RankMismatchError("cones carry different total weight");
    LaurentMatrix z(si.size());
    for (std::size_t a = 0; a < si.size(); ++a)
        for (std::size_t b = 0; b < sj.size(); ++b) {
            const Vec d = ms.sheets[si[a]].slope - ms.sheets[sj[b]].slope;
            if (pair(d, *ray) >= 0) z(a, b) = LaurentPoly::monomial(1, d);
        }
    return z;
}

}  // namespace tlms
