#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "tlms/generator.hpp"

using namespace tlms;

TEST_CASE("projective plane fan") {
    const Fan2D f = fixtures::p2();
    REQUIRE(f.size() == 3);
    CHECK(f.ray(0) == Vec{1, 0});
    CHECK(f.ray(1) == Vec{0, 1});
    CHECK(f.ray(2) == Vec{-1, -1});
    CHECK(f.cone(0).gens == std::vector<Vec>{Vec{1, 0}, Vec{0, 1}});
    CHECK(f.cone(1).gens == std::vector<Vec>{Vec{0, 1}, Vec{-1, -1}});
    CHECK(f.cone(2).gens == std::vector<Vec>{Vec{-1, -1}, Vec{1, 0}});
    CHECK(f.shared_ray(0, 1) == Vec{0, 1});
    CHECK_FALSE(f.shared_ray(0, 0).has_value());
    CHECK(f.shared_ray(2, 0) == Vec{1, 0});
}

TEST_CASE("product of lines") {
    const Fan2D f = build_complete_fan_2d({Vec{1, 0}, Vec{0, 1}, Vec{-1, 0}, Vec{0, -1}});
    CHECK(f.size() == 4);
    CHECK_FALSE(f.shared_ray(0, 2).has_value());
    CHECK(f.intersection(0, 2).gens.empty());
    CHECK(f.intersection(1, 1).gens.size() == 2);
}

TEST_CASE("incomplete input") {
    CHECK_THROWS_AS(build_complete_fan_2d({Vec{1, 0}, Vec{0, 1}}), NotCompleteError);
    CHECK_THROWS_AS(build_complete_fan_2d({Vec{1, 0}, Vec{0, 1}, Vec{-1, 0}}), NotCompleteError);
    CHECK_THROWS_AS(build_complete_fan_2d({Vec{1, 0}, Vec{2, 0}, Vec{0, 1}, Vec{-1, -1}}), NotCompleteError);
    CHECK_THROWS_AS(build_complete_fan_2d({Vec{1, 0}, Vec{0, 0}, Vec{-1, -1}}), DegenerateInputError);
}

TEST_CASE("rays are primitivized and sorted from the first input ray") {
    const Fan2D f = build_complete_fan_2d({Vec{0, 2}, Vec{-3, -3}, Vec{1, 0}});
    CHECK(f.rays() == std::vector<Vec>{Vec{0, 1}, Vec{-1, -1}, Vec{1, 0}});
}

TEST_CASE("property: anticlockwise order and ray sharing") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        const std::size_t k = 3 + static_cast<std::size_t>(t % 6);
        const Fan2D f = random_fan(rng, k);
        // oracle: angles from the first ray increase strictly
        const double a0 = std::atan2(static_cast<double>(f.ray(0)[1]), static_cast<double>(f.ray(0)[0]));
        double prev = -1;
        for (std::size_t j = 0; j < k; ++j) {
            double a = std::atan2(static_cast<double>(f.ray(j)[1]), static_cast<double>(f.ray(j)[0])) - a0;
            if (a < 0) a += 2 * M_PI;
            CHECK(a > prev);
            prev = a;
        }
        // each ray is shared by exactly one consecutive pair
        for (std::size_t j = 0; j < k; ++j) {
            int hits = 0;
            for (std::size_t i = 0; i < k; ++i)
                if (f.shared_ray_index(i, f.next(i)) == j) ++hits;
            CHECK(hits == 1);
        }
        // permuting the input gives a cyclic relabeling
        std::vector<Vec> shuffled = f.rays();
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const Fan2D g = build_complete_fan_2d(shuffled);
        const auto it = std::find(f.rays().begin(), f.rays().end(), g.ray(0));
        REQUIRE(it != f.rays().end());
        const std::size_t off = static_cast<std::size_t>(it - f.rays().begin());
        for (std::size_t j = 0; j < k; ++j) CHECK(g.ray(j) == f.ray((j + off) % k));
    }
}
