#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tlms/kaneyama.hpp"
#include "tlms/multisection.hpp"
#include "tlms/wallcross.hpp"

namespace tlms {

enum class Tri { Upper, Lower };

/// "U" or "L".
std::string to_string(Tri t);

/// Entry (a, b) is m(a) - m(b) when it pairs nonnegatively with the shared ray, empty otherwise.
struct SlopeMatrix {
    std::array<std::array<std::optional<Vec>, 2>, 2> entry;
};

struct SlopeMatrices {
    /// Interior pairs (cone i-1, cone i) for i = 1..k-1, i.e. across rays 1..k-1.
    std::vector<SlopeMatrix> interior;
    std::vector<Tri> types;
    /// Pair (cone k-1, cone 0) across the closing ray.
    SlopeMatrix closing;
    /// Which off-diagonal wall-crossing slot the closing ray admits.
    Tri closing_type = Tri::Lower;
};

/**
 * Relabels a rank-2 indecomposable multi-section cyclically: interior matchings keep
 * labels, the closing ray swaps them, and the closing wall admits the (2,1) slot.
 */
MultiSection normalize_arrangement(const MultiSection& ms);

/// Cyclic labeling for rank r; label 1 of cone 0 is the lexicographically smallest slope.
MultiSection normalize_cyclic(const MultiSection& ms);

SlopeMatrix slope_matrix(const MultiSection& ms, std::size_t i, std::size_t j);
SlopeMatrices slope_matrices(const MultiSection& ms);

/// The two cases of the slope condition evaluated on an interior type sequence t_1..t_{k-1}.
bool slope_condition(const std::vector<Tri>& types);
bool check_slope_condition(const MultiSection& ms);

struct Rank2Construction {
    MultiSection normalized;
    SemiFlat semiflat;
    WallFactorSet walls;
    KaneyamaData data;
};

/// Explicit wall-crossing factors with entries in {0, 1, -1}; throws ObstructionError if none exist.
Rank2Construction construct_kaneyama_rank2(const MultiSection& ms);

struct SolverVariable {
    std::size_t ray;
    std::size_t row;
    std::size_t col;
};

struct SolverReport {
    bool solvable = false;
    std::vector<SolverVariable> variables;
    std::vector<Rational> solution;
    std::size_t free_parameter_count = 0;
    /// Constant part of (product - target) when unsolvable.
    std::optional<RatMatrix> defect;
    /// Verdict of the symbolic reduction; empty when it could not decide.
    std::optional<bool> symbolic;
    bool grid = false;
    std::string method;
};

/**
 * Decides whether prod_j (I + n_j) = P^{-1}, where P is the closing semi-flat matrix and
 * n_j has one unknown per allowed off-diagonal slot, by symbolic reduction over Q and by
 * an exhaustive search over {-2..2} per unknown.
 */
SolverReport brute_force_solver(const MultiSection& ms);

struct DimensionBound {
    Int general;
    std::optional<Int> rank2;
};

DimensionBound moduli_dim_bound(const MultiSection& ms);

}  // namespace tlms
