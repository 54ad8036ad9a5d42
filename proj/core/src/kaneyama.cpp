#include "tlms/kaneyama.hpp"

namespace tlms {

namespace {

std::string pair_name(std::size_t i, std::size_t j) {
    return "g(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

void require_shape(const MultiSection& ms, const KaneyamaData& g) {
    if (g.cones() != ms.fan.size()) throw RankMismatchError("data has the wrong number of cones");
    if (g.rank() != static_cast<std::size_t>(ms.rank)) throw RankMismatchError("data rank differs from multi-section rank");
}

LaurentMatrix laurent_of(const MultiSection& ms, const KaneyamaData& g, std::size_t i, std::size_t j) {
    const auto si = slots(ms, i), sj = slots(ms, j);
    LaurentMatrix out(g.rank());
    for (std::size_t a = 0; a < si.size(); ++a)
        for (std::size_t b = 0; b < sj.size(); ++b)
            out(a, b) = LaurentPoly::monomial(g.at(i, j)(a, b), ms.sheets[si[a]].slope - ms.sheets[sj[b]].slope);
    return out;
}

}  // namespace

KaneyamaData::KaneyamaData(std::size_t cones, std::size_t rank) : k_(cones), r_(rank) {
    g_.assign(k_ * k_, RatMatrix::zero(r_));
    for (std::size_t i = 0; i < k_; ++i) at(i, i) = RatMatrix::identity(r_);
}

KaneyamaData complete_from_adjacent(const std::vector<RatMatrix>& forward) {
    const std::size_t k = forward.size();
    if (k == 0) throw DegenerateInputError("no transition matrices");
    const std::size_t r = forward.front().rows();
    KaneyamaData g(k, r);
    for (std::size_t i = 0; i < k; ++i) {
        RatMatrix acc = RatMatrix::identity(r);
        for (std::size_t step = 1; step < k; ++step) {
            const std::size_t from = (i + step - 1) % k;
            if (forward[from].rows() != r || !forward[from].square()) throw SizeMismatchError("transition sizes differ");
            acc = acc * forward[from];
            g.at(i, (i + step) % k) = acc;
        }
    }
    return g;
}

std::vector<Diagnostic> validate_kaneyama(const MultiSection& ms, const KaneyamaData& g) {
    require_shape(ms, g);
    std::vector<Diagnostic> out;
    const std::size_t k = ms.fan.size();
    for (std::size_t i = 0; i < k; ++i) {
        if (!g.at(i, i).is_identity()) out.push_back({pair_name(i, i), "(G1) must be the identity"});
        const auto si = slots(ms, i);
        for (std::size_t j = 0; j < k; ++j) {
            const auto sj = slots(ms, j);
            const Cone meet = ms.fan.intersection(i, j);
            const auto& m = g.at(i, j);
            for (std::size_t a = 0; a < si.size(); ++a)
                for (std::size_t b = 0; b < sj.size(); ++b) {
                    if (m(a, b) == 0) continue;
                    const std::string where = pair_name(i, j) + " entry (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
                    if (ms.vertex_of(si[a]) != ms.vertex_of(sj[b]))
                        out.push_back({where, "(G2) lifts do not meet"});
                    else if (!in_dual_cone(ms.sheets[si[a]].slope - ms.sheets[sj[b]].slope, meet))
                        out.push_back({where, "(G2) exponent not in the dual of the intersection"});
                }
            if (det(m) == 0) out.push_back({pair_name(i, j), "not invertible"});
        }
    }
    std::vector<LaurentMatrix> big(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) big[i * k + j] = laurent_of(ms, g, i, j);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t l = 0; l < k; ++l)
                if (!(mat_mul(big[i * k + j], big[j * k + l]) == big[i * k + l]))
                    out.push_back({pair_name(i, j) + pair_name(j, l), "(G3) cocycle fails against " + pair_name(i, l)});
    return out;
}

LaurentMatrix assemble_transition(const MultiSection& ms, const KaneyamaData& g, std::size_t i, std::size_t j) {
    require_shape(ms, g);
    const auto si = slots(ms, i), sj = slots(ms, j);
    const Cone meet = ms.fan.intersection(i, j);
    for (std::size_t a = 0; a < si.size(); ++a)
        for (std::size_t b = 0; b < sj.size(); ++b)
            if (g.at(i, j)(a, b) != 0 &&
                (!in_dual_cone(ms.sheets[si[a]].slope - ms.sheets[sj[b]].slope, meet) ||
                 ms.vertex_of(si[a]) != ms.vertex_of(sj[b])))
                throw SupportError(pair_name(i, j) + " violates the support condition at (" + std::to_string(a + 1) +
                                   "," + std::to_string(b + 1) + ")");
    return laurent_of(ms, g, i, j);
}

std::vector<Diagnostic> check_equivalence(const MultiSection& ms, const KaneyamaData& g, const KaneyamaData& g2,
                                          const GaugeFamily& h) {
    require_shape(ms, g);
    require_shape(ms, g2);
    const std::size_t k = ms.fan.size();
    if (h.h.size() != k) throw SizeMismatchError("need one gauge matrix per cone");
    std::vector<Diagnostic> out;
    for (std::size_t c = 0; c < k; ++c) {
        const auto& m = h.h[c];
        if (m.rows() != g.rank() || !m.square()) throw SizeMismatchError("gauge matrix has the wrong size");
        const auto sc = slots(ms, c);
        const Cone cone = ms.fan.cone(c);
        for (std::size_t a = 0; a < sc.size(); ++a)
            for (std::size_t b = 0; b < sc.size(); ++b)
                if (m(a, b) != 0 && !in_dual_cone(ms.sheets[sc[a]].slope - ms.sheets[sc[b]].slope, cone))
                    out.push_back({"h(" + std::to_string(c + 1) + ") entry (" + std::to_string(a + 1) + "," +
                                       std::to_string(b + 1) + ")",
                                   "(H1) exponent not in the dual cone"});
        if (det(m) == 0) out.push_back({"h(" + std::to_string(c + 1) + ")", "not invertible"});
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (ms.fan.adjacent(i, j) && !(g.at(i, j) * h.h[j] == h.h[i] * g2.at(i, j)))
                out.push_back({pair_name(i, j), "(H2) g h_j differs from h_i g'"});
    return out;
}

bool verify_equivalence(const MultiSection& ms, const KaneyamaData& g, const KaneyamaData& g2,
                        const GaugeFamily& h) {
    return check_equivalence(ms, g, g2, h).empty();
}

std::pair<MultiSection, KaneyamaData> direct_sum(const MultiSection& ms1, const KaneyamaData& g1,
                                                 const MultiSection& ms2, const KaneyamaData& g2) {
    require_shape(ms1, g1);
    require_shape(ms2, g2);
    const MultiSection u = disjoint_union(ms1, ms2);
    const std::size_t k = u.fan.size(), r1 = g1.rank(), r2 = g2.rank();
    KaneyamaData block(k, r1 + r2);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            RatMatrix m(r1 + r2, r1 + r2);
            for (std::size_t a = 0; a < r1; ++a)
                for (std::size_t b = 0; b < r1; ++b) m(a, b) = g1.at(i, j)(a, b);
            for (std::size_t a = 0; a < r2; ++a)
                for (std::size_t b = 0; b < r2; ++b) m(r1 + a, r1 + b) = g2.at(i, j)(a, b);
            block.at(i, j) = std::move(m);
        }
    auto [sep, q] = canonical_separation(u);
    return {sep, push_forward(block, q)};
}

KaneyamaData push_forward(const KaneyamaData& g, const CoverMorphism& f) {
    if (auto d = check_cover_morphism(f); !d.empty()) throw InvalidMorphismError("invalid cover morphism: " + to_string(d.front()));
    require_shape(f.source, g);
    const std::size_t k = f.source.fan.size();
    if (f.target.rank != f.source.rank) throw RankMismatchError("morphism changes the rank");
    // pi[c][source slot] = target slot
    std::vector<std::vector<std::size_t>> pi(k);
    for (std::size_t c = 0; c < k; ++c) {
        const auto src = slots(f.source, c), tgt = slots(f.target, c);
        std::vector<bool> used(tgt.size(), false);
        for (std::size_t a = 0; a < src.size(); ++a) {
            const std::size_t want = f.sheet_map[src[a]];
            std::size_t b = 0;
            while (b < tgt.size() && (used[b] || tgt[b] != want)) ++b;
            if (b == tgt.size()) throw InvalidMorphismError("slot assignment failed; weights do not match");
            used[b] = true;
            pi[c].push_back(b);
        }
    }
    KaneyamaData out(k, g.rank());
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            RatMatrix m(g.rank(), g.rank());
            for (std::size_t a = 0; a < g.rank(); ++a)
                for (std::size_t b = 0; b < g.rank(); ++b) m(pi[i][a], pi[j][b]) = g.at(i, j)(a, b);
            out.at(i, j) = std::move(m);
        }
    return out;
}

}  // namespace tlms
