#include "tlms/fan.hpp"

#include <algorithm>

#include "tlms/error.hpp"

namespace tlms {

Cone Fan2D::cone(std::size_t i) const {
    if (i >= size()) throw DegenerateInputError("cone index out of range");
    return Cone{{rays_[i], rays_[next(i)]}};
}

std::optional<std::size_t> Fan2D::shared_ray_index(std::size_t i, std::size_t j) const {
    if (i >= size() || j >= size() || i == j) return std::nullopt;
    if (next(i) == j) return j;
    if (next(j) == i) return i;
    return std::nullopt;
}

std::optional<Vec> Fan2D::shared_ray(std::size_t i, std::size_t j) const {
    if (auto r = shared_ray_index(i, j)) return rays_[*r];
    return std::nullopt;
}

Cone Fan2D::intersection(std::size_t i, std::size_t j) const {
    if (i == j) return cone(i);
    if (auto r = shared_ray_index(i, j)) return Cone{{rays_[*r]}};
    return Cone::origin();
}

namespace {

// 0 for directions in [0, pi) measured from ref, 1 for [pi, 2pi).
int half_plane(const Vec& ref, const Vec& v) {
    const Int c = cross(ref, v);
    if (c > 0) return 0;
    if (c == 0 && pair(ref, v) > 0) return 0;
    return 1;
}

}  // namespace

Fan2D build_complete_fan_2d(std::vector<Vec> rays) {
    for (const auto& v : rays)
        if (v.dim() != 2) throw DimensionError("fan rays must have length 2");
    if (rays.size() < 3) throw NotCompleteError("a complete fan in rank 2 needs at least 3 rays");
    for (auto& v : rays) {
        if (v.is_zero()) throw DegenerateInputError("zero ray");
        v = primitive(v);
    }
    const Vec ref = rays.front();
    std::stable_sort(rays.begin() + 1, rays.end(), [&](const Vec& a, const Vec& b) {
        const int ha = half_plane(ref, a), hb = half_plane(ref, b);
        if (ha != hb) return ha < hb;
        return cross(a, b) > 0;
    });
    for (std::size_t i = 0; i + 1 < rays.size(); ++i)
        for (std::size_t j = i + 1; j < rays.size(); ++j)
            if (rays[i] == rays[j]) throw NotCompleteError("duplicate ray " + to_string(rays[i]));
    for (std::size_t i = 0; i < rays.size(); ++i) {
        const Vec& a = rays[i];
        const Vec& b = rays[(i + 1) % rays.size()];
        if (cross(a, b) <= 0)
            throw NotCompleteError("angular gap from " + to_string(a) + " to " + to_string(b) + " is at least pi");
    }
    Fan2D f;
    f.rays_ = std::move(rays);
    return f;
}

}  // namespace tlms
