#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tlms/error.hpp"
#include "tlms/laurent.hpp"
#include "tlms/multisection.hpp"

namespace tlms {

/**
 * Coefficient matrices g_{ij} for every ordered pair of maximal cones.
 *
 * Row convention: entry (a, b) of g_{ij} links slot a over cone i to slot b over
 * cone j, with character z^{m(a) - m(b)}. The cocycle condition reads
 * g_{ij} g_{jl} = g_{il}.
 */
class KaneyamaData {
public:
    KaneyamaData() = default;
    /// Identity on the diagonal pairs, zero elsewhere.
    KaneyamaData(std::size_t cones, std::size_t rank);

    std::size_t cones() const noexcept { return k_; }
    std::size_t rank() const noexcept { return r_; }
    RatMatrix& at(std::size_t i, std::size_t j) { return g_.at(i * k_ + j); }
    const RatMatrix& at(std::size_t i, std::size_t j) const { return g_.at(i * k_ + j); }

    friend bool operator==(const KaneyamaData&, const KaneyamaData&) = default;

private:
    std::size_t k_ = 0, r_ = 0;
    std::vector<RatMatrix> g_;
};

/// Gauge matrices h_sigma, one per maximal cone.
struct GaugeFamily {
    std::vector<RatMatrix> h;
};

/// Fills every ordered pair from forward[i] = g_{i,i+1} by anticlockwise path products.
KaneyamaData complete_from_adjacent(const std::vector<RatMatrix>& forward);

std::vector<Diagnostic> validate_kaneyama(const MultiSection& ms, const KaneyamaData& g);

/// Entrywise coefficient times character; throws SupportError when (G2) fails.
LaurentMatrix assemble_transition(const MultiSection& ms, const KaneyamaData& g, std::size_t i, std::size_t j);

std::vector<Diagnostic> check_equivalence(const MultiSection& ms, const KaneyamaData& g, const KaneyamaData& g2,
                                          const GaugeFamily& h);
bool verify_equivalence(const MultiSection& ms, const KaneyamaData& g, const KaneyamaData& g2,
                        const GaugeFamily& h);

/// Block-diagonal data on the combinatorial union of the two multi-sections.
std::pair<MultiSection, KaneyamaData> direct_sum(const MultiSection& ms1, const KaneyamaData& g1,
                                                 const MultiSection& ms2, const KaneyamaData& g2);

KaneyamaData push_forward(const KaneyamaData& g, const CoverMorphism& f);

}  // namespace tlms
