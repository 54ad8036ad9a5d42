#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace tlms {

using Int = std::int64_t;

/// Integer vector in N or M. The lattice it lives in is a matter of context.
class Vec {
public:
    Vec() = default;
    Vec(std::initializer_list<Int> coords) : c_(coords) {}
    explicit Vec(std::vector<Int> coords) : c_(std::move(coords)) {}

    static Vec zero(std::size_t n) { return Vec(std::vector<Int>(n, 0)); }

    std::size_t dim() const noexcept { return c_.size(); }
    Int operator[](std::size_t i) const { return c_[i]; }
    Int& operator[](std::size_t i) { return c_[i]; }
    const std::vector<Int>& coords() const noexcept { return c_; }
    bool is_zero() const noexcept;

    friend bool operator==(const Vec&, const Vec&) = default;
    friend auto operator<=>(const Vec&, const Vec&) = default;

    Vec operator-() const;
    Vec& operator+=(const Vec& o);
    Vec& operator-=(const Vec& o);
    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(Int s, const Vec& v);

private:
    std::vector<Int> c_;
};

/// "(a,b)" with no spaces.
std::string to_string(const Vec& v);

/// Generators of a rational strictly convex cone. An empty generator list is the zero cone.
struct Cone {
    std::vector<Vec> gens;

    static Cone origin() { return Cone{}; }
    static Cone ray(const Vec& v);
};

/// Builds a cone after checking primitivity and (for n = 2) minimality.
Cone make_cone(std::vector<Vec> gens);

Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);

Int pair(const Vec& m, const Vec& v);
Vec primitive(const Vec& v);
bool is_primitive(const Vec& v);
bool in_dual_cone(const Vec& m, const Cone& c);
bool in_perp(const Vec& m, const Cone& c);

/// Determinant of two vectors in a rank-2 lattice.
Int cross(const Vec& a, const Vec& b);

/// A primitive generator of v^perp in rank 2, oriented so that cross(v, u) > 0.
Vec primitive_perp(const Vec& v);

}  // namespace tlms
