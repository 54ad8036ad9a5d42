#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "tlms/generator.hpp"
#include "tlms/rank2.hpp"

using namespace tlms;

TEST_CASE("property: emit then parse is the identity on emitted documents") {
    std::mt19937_64 rng(123);
    for (int t = 0; t < 300; ++t) {
        Document d;
        const MultiSection ms = random_multisection(rng);
        d.fan = ms.fan;
        d.multisection = ms;
        const std::string text = emit_document(d);
        const Document back = parse_document(text);
        CHECK(emit_document(back) == text);
        CHECK(isomorphic(*back.multisection, ms));
        CHECK(validate(*back.multisection).empty());
    }
}

TEST_CASE("property: the rank-2 corpus generator") {
    const auto corpus = rank2_corpus(20240, 120);
    REQUIRE(corpus.size() == 120);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const MultiSection& ms = corpus[i];
        CHECK(ms.fan.size() == 3 + i % 6);
        CHECK(ms.rank == 2);
        CHECK(validate(ms).empty());
        CHECK(is_indecomposable_dim2(ms));
        for (const auto& s : ms.sheets) {
            CHECK(std::abs(s.slope[0]) <= 5);
            CHECK(std::abs(s.slope[1]) <= 5);
        }
    }
    CHECK(rank2_corpus(20240, 30) == std::vector<MultiSection>(corpus.begin(), corpus.begin() + 30));
}

TEST_CASE("property: higher-rank cyclic covers normalize cyclically") {
    std::mt19937_64 rng(55);
    for (int t = 0; t < 200; ++t) {
        CoverOptions opt;
        opt.rank = 2 + static_cast<std::size_t>(t % 3);
        const MultiSection ms = random_cover(rng, 3 + static_cast<std::size_t>(t % 6), opt);
        const MultiSection n = normalize_cyclic(ms);
        CHECK(is_cyclically_labeled(n));
        CHECK(isomorphic(n, ms));
        const SemiFlat sf = build_semiflat_cocycle(n);
        CHECK(sf.local_system.monodromy() == (opt.rank % 2 == 1 ? 1 : -1));
        // determinant of the bare loop is sign(cycle) times the monodromy, which is always 1
        CHECK(det(compose_loop(n, sf.local_system, {})) == 1);
    }
}
