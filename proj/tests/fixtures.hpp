#pragma once

#include <string>
#include <vector>

#include "tlms/format.hpp"
#include "tlms/multisection.hpp"

namespace fixtures {

using namespace tlms;

inline Fan2D p2() { return build_complete_fan_2d({Vec{1, 0}, Vec{0, 1}, Vec{-1, -1}}); }

// Rays (1,0), (0,1), (-1,-1) carry D_1, D_2, D_0.
inline MultiSection line_d1() { return line_bundle(p2(), {1, 0, 0}); }
inline MultiSection line_d2() { return line_bundle(p2(), {0, 1, 0}); }
inline MultiSection line_d0() { return line_bundle(p2(), {0, 0, 1}); }

inline MultiSection tangent_p2() {
    return from_matchings(p2(), {{Vec{1, 0}, Vec{0, 1}}, {Vec{-1, 0}, Vec{-1, 1}}, {Vec{0, -1}, Vec{1, -1}}},
                          {{1, 0}, {0, 1}, {0, 1}});
}

inline std::string corpus_path(const std::string& name) { return std::string(TLMS_CORPUS_DIR) + "/" + name; }

inline MultiSection corpus_ms(const std::string& name) { return *read_document(corpus_path(name)).multisection; }

/// Sorted slope multiset of a cone, each slope repeated by its weight.
inline std::vector<Vec> slope_multiset(const MultiSection& ms, std::size_t cone) {
    std::vector<Vec> out;
    for (std::size_t s : ms.sheets_on(cone))
        for (int w = 0; w < ms.sheets[s].weight; ++w) out.push_back(ms.sheets[s].slope);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace fixtures
