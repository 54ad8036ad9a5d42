#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "tlms/fan.hpp"
#include "tlms/multisection.hpp"
#include "tlms/rank2.hpp"
#include "tlms/wallcross.hpp"

namespace tlms {

/// Random complete fan with k primitive rays, coordinates in [-bound, bound].
Fan2D random_fan(std::mt19937_64& rng, std::size_t k, Int bound = 4);

struct CoverOptions {
    std::size_t rank = 2;
    /// Monodromy is a single r-cycle; otherwise the closing matching is uniform.
    bool connected = true;
    /// Reject covers with two equal restrictions on a ray.
    bool separable = true;
    /// Shuffle sheet labels on every cone after construction.
    bool shuffle = true;
    Int max_coord = 5;
    Int slope_range = 3;
    Int step_range = 2;
};

/// One sampling attempt of a weight-1 cover; empty if integrality, bounds or separability fail.
std::optional<MultiSection> try_random_cover(std::mt19937_64& rng, const Fan2D& fan, const CoverOptions& opt);
/// Retries on `fan`; throws DegenerateInputError after max_attempts failures.
MultiSection random_cover(std::mt19937_64& rng, const Fan2D& fan, const CoverOptions& opt, int max_attempts = 2000);
/// Resamples the fan (k rays) until a cover is found.
MultiSection random_cover(std::mt19937_64& rng, std::size_t k, const CoverOptions& opt);

/// Seeded rank-2 indecomposable corpus; fan sizes cycle through min_rays..max_rays.
std::vector<MultiSection> rank2_corpus(std::uint64_t seed, std::size_t count, std::size_t min_rays = 3,
                                       std::size_t max_rays = 8);

/// Mixed multi-section with weights and repeated slopes, for separation tests.
MultiSection random_multisection(std::mt19937_64& rng);

/// Disjoint union of connected separable covers, total rank at most max_rank, one vertex lift each.
MultiSection random_multi_vertex_cover(std::mt19937_64& rng, std::size_t max_rank);

/// Nilpotent factor on (ray, vertex lift) with random entries in [-3, 3] on every slot allowed by (N1)/(N2).
WallFactor random_supported_factor(std::mt19937_64& rng, const MultiSection& ms, std::size_t ray, std::size_t vertex_lift);

/// Searches for a rank-2 cover over `fan` whose normalized interior types equal `types`.
std::optional<MultiSection> find_rank2_with_types(const Fan2D& fan, const std::vector<Tri>& types, std::uint64_t seed,
                                                  std::size_t max_tries = 200000);

}  // namespace tlms
