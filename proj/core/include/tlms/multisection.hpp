#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tlms/error.hpp"
#include "tlms/fan.hpp"
#include "tlms/lattice.hpp"

namespace tlms {

/// Lift of a maximal cone: the PL function has slope `slope` on it.
struct Sheet {
    std::size_t cone = 0;
    Vec slope;
    int weight = 1;

    friend bool operator==(const Sheet&, const Sheet&) = default;
};

/// Lift of a ray. `before` holds sheets over the cone preceding the ray, `after`
/// the sheets over the cone following it; both sides carry total weight `weight`.
struct RayLift {
    std::size_t ray = 0;
    Int restriction = 0;
    int weight = 1;
    std::vector<std::size_t> before;
    std::vector<std::size_t> after;

    friend bool operator==(const RayLift&, const RayLift&) = default;
};

/**
 * Weighted branched cover of a 2-d complete fan with a PL function, stored cell by cell.
 *
 * Sheet labels are positions among the sheets of the same cone, in storage order.
 * Vertex lifts partition the sheets; each block is one lift of the origin.
 */
struct MultiSection {
    Fan2D fan;
    int rank = 0;
    std::vector<Sheet> sheets;
    std::vector<RayLift> ray_lifts;
    std::vector<std::vector<std::size_t>> vertex_lifts;

    std::vector<std::size_t> sheets_on(std::size_t cone) const;
    std::vector<std::size_t> lifts_on(std::size_t ray) const;
    std::size_t label(std::size_t sheet) const;
    std::size_t sheet_at(std::size_t cone, std::size_t label) const;

    /// Ray lift on the sheet's clockwise edge (the ray its cone starts at).
    std::size_t lift_after(std::size_t sheet) const;
    /// Ray lift on the sheet's anticlockwise edge.
    std::size_t lift_before(std::size_t sheet) const;
    std::size_t vertex_of(std::size_t sheet) const;

    bool all_weights_one() const;

    friend bool operator==(const MultiSection&, const MultiSection&) = default;
};

/// Map of cells between two multi-sections over the same fan.
struct CoverMorphism {
    MultiSection source;
    MultiSection target;
    std::vector<std::size_t> sheet_map;
    std::vector<std::size_t> ray_lift_map;
    std::vector<std::size_t> vertex_map;
};

// Construction

/**
 * Weight-1 cover from labeled slopes and ray matchings.
 *
 * slopes[c] lists the sheets of cone c. matchings[j][a] is the label on cone j
 * continuing label a of cone j-1 across ray j. Vertex lifts are the connected
 * components unless glue_vertices is set, in which case there is a single one.
 */
MultiSection from_matchings(const Fan2D& fan, const std::vector<std::vector<Vec>>& slopes,
                            const std::vector<std::vector<std::size_t>>& matchings, bool glue_vertices = false);

/// The multi-section of an equivariantly split bundle, from its slope multisets.
MultiSection from_bundle_slopes(const Fan2D& fan, const std::vector<std::vector<Vec>>& slopes);

/// Slopes of O(sum a_j D_j), with pair(m(sigma), v_j) = a_j for rays v_j of sigma.
std::vector<Vec> line_bundle_slopes(const Fan2D& fan, const std::vector<Int>& a);
MultiSection line_bundle(const Fan2D& fan, const std::vector<Int>& a);
MultiSection zero_section(const Fan2D& fan);

// Queries

std::vector<Diagnostic> validate(const MultiSection& ms);
void require_valid(const MultiSection& ms);

/// Permutation of the labels of cone 0 obtained by walking once around the origin.
std::vector<std::size_t> monodromy(const MultiSection& ms);

/// Connected components of the cover with the vertex lifts removed, as sorted sheet sets.
std::vector<std::vector<std::size_t>> components(const MultiSection& ms);

bool check_separable(const MultiSection& ms, int k);
/// Separable in every stratum: 2-separable, 1-separable and one vertex lift.
bool is_separable(const MultiSection& ms);
bool ramification_in_codim2(const MultiSection& ms);
bool is_indecomposable_dim2(const MultiSection& ms);

/// Cell-for-cell isomorphism over the identity of the fan.
bool isomorphic(const MultiSection& a, const MultiSection& b);

// Operations

MultiSection dual(const MultiSection& ms);
MultiSection disjoint_union(const MultiSection& a, const MultiSection& b);
MultiSection fiber_product(const MultiSection& a, const MultiSection& b);
std::pair<MultiSection, CoverMorphism> canonical_separation(const MultiSection& ms);
MultiSection union_c(const MultiSection& a, const MultiSection& b);
MultiSection product_c(const MultiSection& a, const MultiSection& b);

/// Sub-cover spanned by a set of sheets closed under ray-lift adjacency; one vertex lift.
MultiSection sub_cover(const MultiSection& ms, const std::vector<std::size_t>& sheets);

/// Reorders sheets: perm[c][new_label] = old_label for each cone c.
MultiSection relabel(const MultiSection& ms, const std::vector<std::vector<std::size_t>>& perm);

CoverMorphism identity_morphism(const MultiSection& ms);
std::vector<Diagnostic> check_cover_morphism(const CoverMorphism& f);
bool verify_cover_morphism(const CoverMorphism& f);

}  // namespace tlms
