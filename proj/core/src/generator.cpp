#include "tlms/generator.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace tlms {

namespace {

Int uniform(std::mt19937_64& rng, Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); }

std::vector<std::size_t> random_perm(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

bool bounded(const Vec& v, Int b) { return std::abs(v[0]) <= b && std::abs(v[1]) <= b; }

}  // namespace

Fan2D random_fan(std::mt19937_64& rng, std::size_t k, Int bound) {
    for (;;) {
        std::vector<Vec> rays;
        std::set<Vec> seen;
        while (rays.size() < k) {
            Vec v{uniform(rng, -bound, bound), uniform(rng, -bound, bound)};
            if (v.is_zero()) continue;
            v = primitive(v);
            if (seen.insert(v).second) rays.push_back(v);
        }
        try {
            return build_complete_fan_2d(rays);
        } catch (const NotCompleteError&) {
        }
    }
}

std::optional<MultiSection> try_random_cover(std::mt19937_64& rng, const Fan2D& fan, const CoverOptions& opt) {
    const std::size_t k = fan.size(), r = opt.rank;
    std::vector<std::vector<Vec>> slopes(k, std::vector<Vec>(r));
    std::vector<std::vector<std::size_t>> match(k);
    for (auto& m : slopes[0]) m = Vec{uniform(rng, -opt.slope_range, opt.slope_range), uniform(rng, -opt.slope_range, opt.slope_range)};
    // sigma tracks where each label of cone 0 sits on the current cone.
    std::vector<std::size_t> sigma(r);
    std::iota(sigma.begin(), sigma.end(), 0);
    for (std::size_t j = 1; j < k; ++j) {
        match[j] = random_perm(rng, r);
        for (auto& s : sigma) s = match[j][s];
        if (j == k - 1) break;
        const Vec u = primitive_perp(fan.ray(j));
        for (std::size_t a = 0; a < r; ++a)
            slopes[j][match[j][a]] = slopes[j - 1][a] + uniform(rng, -opt.step_range, opt.step_range) * u;
    }
    std::vector<std::size_t> closing(r);
    if (opt.connected) {
        // closing o sigma must be an r-cycle zeta.
        const auto order = random_perm(rng, r);
        std::vector<std::size_t> zeta(r), inv_sigma(r);
        for (std::size_t i = 0; i < r; ++i) zeta[order[i]] = order[(i + 1) % r];
        for (std::size_t a = 0; a < r; ++a) inv_sigma[sigma[a]] = a;
        for (std::size_t b = 0; b < r; ++b) closing[b] = zeta[inv_sigma[b]];
    } else {
        closing = random_perm(rng, r);
    }
    match[0] = closing;
    const Vec& v1 = fan.ray(k - 1);
    const Vec& v0 = fan.ray(0);
    const Int d = cross(v1, v0);
    for (std::size_t a = 0; a < r; ++a) {
        const std::size_t b = match[k - 1][a];
        const Int p = pair(slopes[k - 2][a], v1);
        const Int q = pair(slopes[0][closing[b]], v0);
        const Int x = p * v0[1] - q * v1[1];
        const Int y = q * v1[0] - p * v0[0];
        if (x % d != 0 || y % d != 0) return std::nullopt;
        slopes[k - 1][b] = Vec{x / d, y / d};
    }
    for (const auto& cone : slopes)
        for (const auto& m : cone)
            if (!bounded(m, opt.max_coord)) return std::nullopt;
    MultiSection ms = from_matchings(fan, slopes, match);
    if (opt.separable && !check_separable(ms, 1)) return std::nullopt;
    if (opt.shuffle) {
        std::vector<std::vector<std::size_t>> perm(k);
        for (auto& p : perm) p = random_perm(rng, r);
        ms = relabel(ms, perm);
    }
    return ms;
}

MultiSection random_cover(std::mt19937_64& rng, const Fan2D& fan, const CoverOptions& opt, int max_attempts) {
    for (int attempt = 0; attempt < max_attempts; ++attempt)
        if (auto ms = try_random_cover(rng, fan, opt)) return *ms;
    throw DegenerateInputError("no admissible cover found on this fan");
}

MultiSection random_cover(std::mt19937_64& rng, std::size_t k, const CoverOptions& opt) {
    for (;;) {
        const Fan2D fan = random_fan(rng, k);
        for (int attempt = 0; attempt < 500; ++attempt)
            if (auto ms = try_random_cover(rng, fan, opt)) return *ms;
    }
}

std::vector<MultiSection> rank2_corpus(std::uint64_t seed, std::size_t count, std::size_t min_rays, std::size_t max_rays) {
    std::mt19937_64 rng(seed);
    std::vector<MultiSection> out;
    CoverOptions opt;
    while (out.size() < count) {
        const std::size_t k = min_rays + out.size() % (max_rays - min_rays + 1);
        const Fan2D fan = random_fan(rng, k);
        for (int attempt = 0; attempt < 500; ++attempt)
            if (auto ms = try_random_cover(rng, fan, opt)) {
                out.push_back(std::move(*ms));
                break;
            }
    }
    return out;
}

namespace {

MultiSection random_multisection_once(std::mt19937_64& rng) {
    const Fan2D fan = random_fan(rng, static_cast<std::size_t>(uniform(rng, 3, 6)), 2);
    auto piece = [&]() -> MultiSection {
        if (uniform(rng, 0, 2) == 0) {
            for (;;) {
                std::vector<Int> a(fan.size());
                for (auto& x : a) x = uniform(rng, -1, 1);
                try {
                    return line_bundle(fan, a);
                } catch (const DegenerateInputError&) {
                }
            }
        }
        CoverOptions opt;
        opt.rank = static_cast<std::size_t>(uniform(rng, 1, 3));
        opt.connected = uniform(rng, 0, 1) == 1;
        opt.separable = false;
        opt.slope_range = 1;
        opt.step_range = 1;
        opt.max_coord = 6;
        return random_cover(rng, fan, opt);
    };
    MultiSection ms = piece();
    const int extra = static_cast<int>(uniform(rng, 0, 2));
    for (int i = 0; i < extra; ++i) ms = disjoint_union(ms, uniform(rng, 0, 2) == 0 ? ms : piece());
    if (uniform(rng, 0, 3) == 0 && ms.rank <= 3) ms = fiber_product(ms, piece());
    return ms;
}

MultiSection random_multi_vertex_cover_once(std::mt19937_64& rng, std::size_t max_rank) {
    const Fan2D fan = random_fan(rng, static_cast<std::size_t>(uniform(rng, 3, 6)));
    std::size_t remaining = max_rank;
    std::optional<MultiSection> ms;
    while (remaining > 0) {
        CoverOptions opt;
        opt.rank = static_cast<std::size_t>(uniform(rng, 1, static_cast<Int>(remaining)));
        opt.max_coord = 8;
        MultiSection piece = random_cover(rng, fan, opt);
        ms = ms ? disjoint_union(*ms, piece) : piece;
        remaining -= opt.rank;
        if (uniform(rng, 0, 2) == 0) break;
    }
    return *ms;
}

}  // namespace

MultiSection random_multisection(std::mt19937_64& rng) {
    for (;;) {
        try {
            return random_multisection_once(rng);
        } catch (const DegenerateInputError&) {
        }
    }
}

MultiSection random_multi_vertex_cover(std::mt19937_64& rng, std::size_t max_rank) {
    for (;;) {
        try {
            return random_multi_vertex_cover_once(rng, max_rank);
        } catch (const DegenerateInputError&) {
        }
    }
}

WallFactor random_supported_factor(std::mt19937_64& rng, const MultiSection& ms, std::size_t ray, std::size_t vertex_lift) {
    const std::size_t r = static_cast<std::size_t>(ms.rank);
    const std::size_t cone = ms.fan.before_cone(ray);
    const auto& omega = ms.vertex_lifts.at(vertex_lift);
    auto in_omega = [&](std::size_t s) { return std::find(omega.begin(), omega.end(), s) != omega.end(); };
    WallFactor w{ray, vertex_lift, RatMatrix::zero(r)};
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) {
            if (a == b) continue;
            const std::size_t sa = ms.sheet_at(cone, a), sb = ms.sheet_at(cone, b);
            if (in_omega(sa) && in_omega(sb) && pair(ms.sheets[sa].slope - ms.sheets[sb].slope, ms.fan.ray(ray)) >= 0)
                w.n(a, b) = Rational(uniform(rng, -3, 3));
        }
    return w;
}

std::optional<MultiSection> find_rank2_with_types(const Fan2D& fan, const std::vector<Tri>& types, std::uint64_t seed,
                                                  std::size_t max_tries) {
    std::mt19937_64 rng(seed);
    CoverOptions opt;
    opt.shuffle = false;
    for (std::size_t t = 0; t < max_tries; ++t) {
        auto ms = try_random_cover(rng, fan, opt);
        if (!ms) continue;
        MultiSection nm = normalize_arrangement(*ms);
        if (slope_matrices(nm).types == types) return nm;
    }
    return std::nullopt;
}

}  // namespace tlms
