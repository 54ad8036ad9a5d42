#include "tlms/lattice.hpp"

#include <numeric>

#include "tlms/error.hpp"

namespace tlms {

bool Vec::is_zero() const noexcept {
    for (Int x : c_)
        if (x != 0) return false;
    return true;
}

Vec Vec::operator-() const {
    Vec r = *this;
    for (auto& x : r.c_) x = checked_mul(x, -1);
    return r;
}

Vec& Vec::operator+=(const Vec& o) {
    if (o.dim() != dim()) throw DimensionError("vector length mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = checked_add(c_[i], o.c_[i]);
    return *this;
}

Vec& Vec::operator-=(const Vec& o) {
    if (o.dim() != dim()) throw DimensionError("vector length mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = checked_add(c_[i], checked_mul(o.c_[i], -1));
    return *this;
}

Vec operator*(Int s, const Vec& v) {
    Vec r = v;
    for (std::size_t i = 0; i < r.dim(); ++i) r[i] = checked_mul(s, r[i]);
    return r;
}

std::string to_string(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s + ")";
}

Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow");
    return r;
}

Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow");
    return r;
}

Cone Cone::ray(const Vec& v) { return make_cone({v}); }

Cone make_cone(std::vector<Vec> gens) {
    if (gens.empty()) throw DegenerateInputError("cone needs at least one generator");
    const std::size_t n = gens.front().dim();
    for (const auto& g : gens) {
        if (g.dim() != n) throw DimensionError("cone generators of different length");
        if (!is_primitive(g)) throw DegenerateInputError("cone generator " + to_string(g) + " is not primitive");
    }
    if (n == 2) {
        if (gens.size() > 2) throw DegenerateInputError("a strictly convex cone in rank 2 has at most 2 generators");
        if (gens.size() == 2 && cross(gens[0], gens[1]) == 0)
            throw DegenerateInputError("cone generators are parallel or antiparallel");
    }
    return Cone{std::move(gens)};
}

Int pair(const Vec& m, const Vec& v) {
    if (m.dim() != v.dim()) throw DimensionError("pairing of vectors with lengths " + std::to_string(m.dim()) +
                                                 " and " + std::to_string(v.dim()));
    Int s = 0;
    for (std::size_t i = 0; i < m.dim(); ++i) s = checked_add(s, checked_mul(m[i], v[i]));
    return s;
}

Vec primitive(const Vec& v) {
    if (v.is_zero()) throw DegenerateInputError("zero vector has no primitive generator");
    Int g = 0;
    for (Int x : v.coords()) g = std::gcd(g, x);
    Vec r = v;
    for (std::size_t i = 0; i < r.dim(); ++i) r[i] /= g;
    return r;
}

bool is_primitive(const Vec& v) { return !v.is_zero() && primitive(v) == v; }

bool in_dual_cone(const Vec& m, const Cone& c) {
    for (const auto& g : c.gens)
        if (pair(m, g) < 0) return false;
    return true;
}

bool in_perp(const Vec& m, const Cone& c) {
    for (const auto& g : c.gens)
        if (pair(m, g) != 0) return false;
    return true;
}

Int cross(const Vec& a, const Vec& b) {
    if (a.dim() != 2 || b.dim() != 2) throw DimensionError("cross product needs rank-2 vectors");
    return checked_add(checked_mul(a[0], b[1]), -checked_mul(a[1], b[0]));
}

Vec primitive_perp(const Vec& v) {
    if (v.dim() != 2) throw DimensionError("perp needs a rank-2 vector");
    return primitive(Vec{-v[1], v[0]});
}

}  // namespace tlms
