#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tlms/lattice.hpp"

namespace tlms {

/**
 * Complete fan in a rank-2 lattice.
 *
 * Rays are stored anticlockwise. Maximal cone i is cone(ray i, ray i+1 mod k),
 * so ray j is shared by cone j-1 (before it) and cone j (after it). Ray 0 closes
 * the cycle between cone k-1 and cone 0.
 */
class Fan2D {
public:
    Fan2D() = default;

    std::size_t size() const noexcept { return rays_.size(); }
    const Vec& ray(std::size_t j) const { return rays_.at(j); }
    const std::vector<Vec>& rays() const noexcept { return rays_; }

    Cone cone(std::size_t i) const;
    std::size_t before_cone(std::size_t ray) const { return (ray + size() - 1) % size(); }
    std::size_t after_cone(std::size_t ray) const { return ray % size(); }
    std::size_t next(std::size_t cone) const { return (cone + 1) % size(); }
    std::size_t prev(std::size_t cone) const { return (cone + size() - 1) % size(); }

    std::optional<std::size_t> shared_ray_index(std::size_t i, std::size_t j) const;
    std::optional<Vec> shared_ray(std::size_t i, std::size_t j) const;
    bool adjacent(std::size_t i, std::size_t j) const { return shared_ray_index(i, j).has_value(); }

    /// sigma_i ∩ sigma_j as a cone: the cone itself, the shared ray, or the origin.
    Cone intersection(std::size_t i, std::size_t j) const;

    friend bool operator==(const Fan2D&, const Fan2D&) = default;

private:
    friend Fan2D build_complete_fan_2d(std::vector<Vec> rays);
    std::vector<Vec> rays_;
};

Fan2D build_complete_fan_2d(std::vector<Vec> rays);

}  // namespace tlms
