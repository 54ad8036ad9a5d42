#pragma once

#include <cstddef>
#include <vector>

#include "tlms/kaneyama.hpp"
#include "tlms/laurent.hpp"
#include "tlms/multisection.hpp"

namespace tlms {

/// Raised when the loop around the origin does not close; carries the loop matrix.
class ObstructionError : public Error {
public:
    ObstructionError(const std::string& msg, RatMatrix loop) : Error(msg), loop_(std::move(loop)) {}
    const RatMatrix& loop() const noexcept { return loop_; }

private:
    RatMatrix loop_;
};

/**
 * Rank-1 local system on the cover minus its vertex lifts, in a trivialization over
 * the sheets: scalar[j][a] multiplies the crossing of ray j by label a of cone j-1.
 */
struct LocalSystem {
    std::vector<std::vector<Rational>> scalar;

    /// Product of all crossing scalars; for a connected cover this is the monodromy.
    Rational monodromy() const;
};

/// Semi-flat coefficient matrix across ray j: scalar on the matched entries, zero elsewhere.
RatMatrix semiflat_matrix(const MultiSection& ms, const LocalSystem& ls, std::size_t ray);

struct SemiFlat {
    LocalSystem local_system;
    /// Indexed by ray: matrix from the frame of the cone before the ray to the one after.
    std::vector<RatMatrix> coefficient;
};

/**
 * Normalized semi-flat data on a cyclically labeled connected weight-1 cover: every
 * crossing scalar is 1 except label r crossing the closing ray, which gets (-1)^(r+1).
 */
SemiFlat build_semiflat_cocycle(const MultiSection& ms);

/// True when interior matchings keep labels and the closing ray sends label a to a+1 mod r.
bool is_cyclically_labeled(const MultiSection& ms);

/// Nilpotent part of a wall-crossing factor on ray `ray`, in the frame of the cone before it.
struct WallFactor {
    std::size_t ray = 0;
    std::size_t vertex_lift = 0;
    RatMatrix n;
};

struct WallFactorSet {
    std::vector<WallFactor> factors;
};

std::vector<Diagnostic> wall_support_diagnostics(const MultiSection& ms, const WallFactor& w);
bool check_wall_support(const MultiSection& ms, const WallFactor& w);

/// Finite exponential series; throws NilpotencyError if N^r != 0.
RatMatrix exponentiate(const RatMatrix& n);

/// Product of exp(N) over the factors on `ray`, ordered by vertex lift.
RatMatrix theta(const MultiSection& ms, const WallFactorSet& ws, std::size_t ray);

/// Coefficient transition across ray j: Theta_j times the semi-flat matrix.
RatMatrix wall_transition(const MultiSection& ms, const LocalSystem& ls, const WallFactorSet& ws, std::size_t ray);

/// Product of the wall transitions once around the origin, starting and ending at cone 0.
RatMatrix compose_loop(const MultiSection& ms, const LocalSystem& ls, const WallFactorSet& ws);

KaneyamaData assemble_bundle(const MultiSection& ms, const LocalSystem& ls, const WallFactorSet& ws);

bool check_restriction_semiflat(const MultiSection& ms, const KaneyamaData& g);

/// Reads the crossing scalars off the restriction of the assembled transitions to the rays.
LocalSystem extract_local_system(const MultiSection& ms, const KaneyamaData& g);

}  // namespace tlms
