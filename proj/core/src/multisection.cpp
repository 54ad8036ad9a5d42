#include "tlms/multisection.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace tlms {

namespace {

bool contains(const std::vector<std::size_t>& v, std::size_t x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

std::vector<std::size_t> sorted_unique(std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::string sheet_name(const MultiSection& ms, std::size_t s) {
    return "sheet " + std::to_string(ms.label(s) + 1) + " of cone " + std::to_string(ms.sheets[s].cone + 1);
}

void require_same_fan(const MultiSection& a, const MultiSection& b) {
    if (!(a.fan == b.fan)) throw FanMismatchError("multi-sections live over different fans");
}

}  // namespace

std::vector<std::size_t> MultiSection::sheets_on(std::size_t cone) const {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < sheets.size(); ++s)
        if (sheets[s].cone == cone) out.push_back(s);
    return out;
}

std::vector<std::size_t> MultiSection::lifts_on(std::size_t ray) const {
    std::vector<std::size_t> out;
    for (std::size_t l = 0; l < ray_lifts.size(); ++l)
        if (ray_lifts[l].ray == ray) out.push_back(l);
    return out;
}

std::size_t MultiSection::label(std::size_t sheet) const {
    std::size_t n = 0;
    for (std::size_t s = 0; s < sheet; ++s)
        if (sheets[s].cone == sheets[sheet].cone) ++n;
    return n;
}

std::size_t MultiSection::sheet_at(std::size_t cone, std::size_t label) const {
    auto on = sheets_on(cone);
    if (label >= on.size()) throw DegenerateInputError("sheet label out of range");
    return on[label];
}

std::size_t MultiSection::lift_after(std::size_t sheet) const {
    const std::size_t ray = sheets.at(sheet).cone;
    for (std::size_t l = 0; l < ray_lifts.size(); ++l)
        if (ray_lifts[l].ray == ray && contains(ray_lifts[l].after, sheet)) return l;
    throw InvalidInputError(sheet_name(*this, sheet) + " has no ray lift on its clockwise edge");
}

std::size_t MultiSection::lift_before(std::size_t sheet) const {
    const std::size_t ray = fan.next(sheets.at(sheet).cone);
    for (std::size_t l = 0; l < ray_lifts.size(); ++l)
        if (ray_lifts[l].ray == ray && contains(ray_lifts[l].before, sheet)) return l;
    throw InvalidInputError(sheet_name(*this, sheet) + " has no ray lift on its anticlockwise edge");
}

std::size_t MultiSection::vertex_of(std::size_t sheet) const {
    for (std::size_t v = 0; v < vertex_lifts.size(); ++v)
        if (contains(vertex_lifts[v], sheet)) return v;
    throw InvalidInputError(sheet_name(*this, sheet) + " lies in no vertex lift");
}

bool MultiSection::all_weights_one() const {
    for (const auto& s : sheets)
        if (s.weight != 1) return false;
    for (const auto& l : ray_lifts)
        if (l.weight != 1) return false;
    return true;
}

MultiSection from_matchings(const Fan2D& fan, const std::vector<std::vector<Vec>>& slopes,
                            const std::vector<std::vector<std::size_t>>& matchings, bool glue_vertices) {
    const std::size_t k = fan.size();
    if (slopes.size() != k) throw SizeMismatchError("need one slope list per maximal cone");
    if (matchings.size() != k) throw SizeMismatchError("need one matching per ray");
    const std::size_t r = slopes.front().size();
    if (r == 0) throw DegenerateInputError("rank must be positive");
    MultiSection ms;
    ms.fan = fan;
    ms.rank = static_cast<int>(r);
    std::vector<std::size_t> first(k);
    for (std::size_t c = 0; c < k; ++c) {
        if (slopes[c].size() != r) throw SizeMismatchError("cone " + std::to_string(c + 1) + " has the wrong number of sheets");
        first[c] = ms.sheets.size();
        for (const auto& m : slopes[c]) {
            if (m.dim() != 2) throw DimensionError("slopes must have length 2");
            ms.sheets.push_back(Sheet{c, m, 1});
        }
    }
    for (std::size_t j = 0; j < k; ++j) {
        const auto& mt = matchings[j];
        if (mt.size() != r) throw SizeMismatchError("matching on ray " + std::to_string(j + 1) + " has the wrong length");
        std::vector<bool> hit(r, false);
        for (std::size_t x : mt) {
            if (x >= r || hit[x]) throw DegenerateInputError("matching on ray " + std::to_string(j + 1) + " is not a permutation");
            hit[x] = true;
        }
        const std::size_t cb = fan.before_cone(j), ca = fan.after_cone(j);
        for (std::size_t a = 0; a < r; ++a) {
            const std::size_t sb = first[cb] + a, sa = first[ca] + mt[a];
            ms.ray_lifts.push_back(RayLift{j, pair(ms.sheets[sb].slope, fan.ray(j)), 1, {sb}, {sa}});
        }
    }
    if (glue_vertices) {
        std::vector<std::size_t> all(ms.sheets.size());
        std::iota(all.begin(), all.end(), 0);
        ms.vertex_lifts = {all};
    } else {
        ms.vertex_lifts = components(ms);
    }
    return ms;
}

MultiSection from_bundle_slopes(const Fan2D& fan, const std::vector<std::vector<Vec>>& slopes) {
    const std::size_t k = fan.size();
    if (slopes.size() != k) throw SizeMismatchError("need one slope multiset per maximal cone");
    const std::size_t r = slopes.front().size();
    if (r == 0) throw DegenerateInputError("rank must be positive");
    MultiSection ms;
    ms.fan = fan;
    ms.rank = static_cast<int>(r);
    for (std::size_t c = 0; c < k; ++c) {
        if (slopes[c].size() != r)
            throw InconsistentSplittingError("slope multisets have different cardinalities");
        const std::size_t first = ms.sheets.size();
        for (const auto& m : slopes[c]) {
            if (m.dim() != 2) throw DimensionError("slopes must have length 2");
            bool merged = false;
            for (std::size_t s = first; s < ms.sheets.size(); ++s)
                if (ms.sheets[s].slope == m) {
                    ++ms.sheets[s].weight;
                    merged = true;
                }
            if (!merged) ms.sheets.push_back(Sheet{c, m, 1});
        }
    }
    for (std::size_t j = 0; j < k; ++j) {
        std::map<Int, std::pair<int, std::vector<std::size_t>>> before, after;
        for (std::size_t s : ms.sheets_on(fan.before_cone(j))) {
            auto& e = before[pair(ms.sheets[s].slope, fan.ray(j))];
            e.first += ms.sheets[s].weight;
            e.second.push_back(s);
        }
        for (std::size_t s : ms.sheets_on(fan.after_cone(j))) {
            auto& e = after[pair(ms.sheets[s].slope, fan.ray(j))];
            e.first += ms.sheets[s].weight;
            e.second.push_back(s);
        }
        bool same = before.size() == after.size();
        for (auto it = before.begin(), jt = after.begin(); same && it != before.end(); ++it, ++jt)
            same = it->first == jt->first && it->second.first == jt->second.first;
        if (!same)
            throw InconsistentSplittingError("restriction multisets disagree across ray " + to_string(fan.ray(j)));
        for (const auto& [value, e] : before)
            ms.ray_lifts.push_back(RayLift{j, value, e.first, e.second, after[value].second});
    }
    std::vector<std::size_t> all(ms.sheets.size());
    std::iota(all.begin(), all.end(), 0);
    ms.vertex_lifts = {all};
    return ms;
}

std::vector<Vec> line_bundle_slopes(const Fan2D& fan, const std::vector<Int>& a) {
    const std::size_t k = fan.size();
    if (a.size() != k) throw SizeMismatchError("need one coefficient per ray");
    std::vector<Vec> out;
    for (std::size_t i = 0; i < k; ++i) {
        const Vec& u = fan.ray(i);
        const Vec& w = fan.ray(fan.next(i));
        const Int ai = a[i], aj = a[fan.next(i)];
        const Int d = cross(u, w);
        const Int x = checked_add(checked_mul(ai, w[1]), -checked_mul(aj, u[1]));
        const Int y = checked_add(checked_mul(aj, u[0]), -checked_mul(ai, w[0]));
        if (x % d != 0 || y % d != 0)
            throw DegenerateInputError("divisor is not Cartier on cone " + std::to_string(i + 1));
        out.push_back(Vec{x / d, y / d});
    }
    return out;
}

MultiSection line_bundle(const Fan2D& fan, const std::vector<Int>& a) {
    std::vector<std::vector<Vec>> slopes;
    for (const auto& m : line_bundle_slopes(fan, a)) slopes.push_back({m});
    return from_bundle_slopes(fan, slopes);
}

MultiSection zero_section(const Fan2D& fan) { return line_bundle(fan, std::vector<Int>(fan.size(), 0)); }

std::vector<Diagnostic> validate(const MultiSection& ms) {
    std::vector<Diagnostic> out;
    const std::size_t k = ms.fan.size();
    if (k < 3) {
        out.push_back({"fan", "fewer than 3 rays"});
        return out;
    }
    if (ms.rank < 1) out.push_back({"multi-section", "rank must be positive"});
    bool cells_ok = true;
    for (std::size_t s = 0; s < ms.sheets.size(); ++s) {
        const auto& sh = ms.sheets[s];
        const std::string where = "sheet #" + std::to_string(s + 1);
        if (sh.cone >= k) {
            out.push_back({where, "cone index out of range"});
            cells_ok = false;
            continue;
        }
        if (sh.slope.dim() != 2) {
            out.push_back({where, "slope must have length 2"});
            cells_ok = false;
        }
        if (sh.weight < 1) out.push_back({where, "weight must be at least 1"});
    }
    if (!cells_ok) return out;
    for (std::size_t c = 0; c < k; ++c) {
        int total = 0;
        for (std::size_t s : ms.sheets_on(c)) total += ms.sheets[s].weight;
        if (total != ms.rank)
            out.push_back({"cone " + std::to_string(c + 1),
                           "total sheet weight " + std::to_string(total) + " differs from rank " + std::to_string(ms.rank)});
    }
    std::vector<int> as_after(ms.sheets.size(), 0), as_before(ms.sheets.size(), 0);
    std::vector<int> ray_total(k, 0);
    for (std::size_t l = 0; l < ms.ray_lifts.size(); ++l) {
        const auto& rl = ms.ray_lifts[l];
        const std::string where = "ray lift #" + std::to_string(l + 1);
        if (rl.ray >= k) {
            out.push_back({where, "ray index out of range"});
            continue;
        }
        ray_total[rl.ray] += rl.weight;
        if (rl.before.empty() || rl.after.empty()) out.push_back({where, "needs sheets on both sides"});
        int wb = 0, wa = 0;
        bool continuous = true;
        bool sides_ok = true;
        for (std::size_t s : rl.before) {
            if (s >= ms.sheets.size() || ms.sheets[s].cone != ms.fan.before_cone(rl.ray)) {
                sides_ok = false;
                continue;
            }
            ++as_before[s];
            wb += ms.sheets[s].weight;
            if (pair(ms.sheets[s].slope, ms.fan.ray(rl.ray)) != rl.restriction) continuous = false;
        }
        for (std::size_t s : rl.after) {
            if (s >= ms.sheets.size() || ms.sheets[s].cone != ms.fan.after_cone(rl.ray)) {
                sides_ok = false;
                continue;
            }
            ++as_after[s];
            wa += ms.sheets[s].weight;
            if (pair(ms.sheets[s].slope, ms.fan.ray(rl.ray)) != rl.restriction) continuous = false;
        }
        if (!sides_ok) out.push_back({where, "incident sheet does not lie over an adjacent cone"});
        if (wb != rl.weight || wa != rl.weight)
            out.push_back({where, "incident sheet weights do not add up to the lift weight"});
        if (!continuous)
            out.push_back({where + " on ray " + to_string(ms.fan.ray(rl.ray)), "continuity: incident slopes restrict differently"});
    }
    for (std::size_t j = 0; j < k; ++j)
        if (ray_total[j] != ms.rank)
            out.push_back({"ray " + to_string(ms.fan.ray(j)), "total lift weight differs from rank"});
    for (std::size_t s = 0; s < ms.sheets.size(); ++s) {
        if (as_after[s] != 1) out.push_back({sheet_name(ms, s), "must have exactly one ray lift on its clockwise edge"});
        if (as_before[s] != 1) out.push_back({sheet_name(ms, s), "must have exactly one ray lift on its anticlockwise edge"});
    }
    std::vector<int> seen(ms.sheets.size(), 0);
    std::vector<std::size_t> block(ms.sheets.size(), 0);
    for (std::size_t v = 0; v < ms.vertex_lifts.size(); ++v) {
        if (ms.vertex_lifts[v].empty()) out.push_back({"vertex lift #" + std::to_string(v + 1), "empty"});
        for (std::size_t s : ms.vertex_lifts[v]) {
            if (s >= ms.sheets.size()) {
                out.push_back({"vertex lift #" + std::to_string(v + 1), "sheet index out of range"});
                continue;
            }
            ++seen[s];
            block[s] = v;
        }
    }
    bool partition = true;
    for (std::size_t s = 0; s < ms.sheets.size(); ++s)
        if (seen[s] != 1) {
            out.push_back({sheet_name(ms, s), "must lie in exactly one vertex lift"});
            partition = false;
        }
    if (partition) {
        for (std::size_t l = 0; l < ms.ray_lifts.size(); ++l) {
            const auto& rl = ms.ray_lifts[l];
            std::set<std::size_t> blocks;
            for (std::size_t s : rl.before)
                if (s < ms.sheets.size()) blocks.insert(block[s]);
            for (std::size_t s : rl.after)
                if (s < ms.sheets.size()) blocks.insert(block[s]);
            if (blocks.size() > 1)
                out.push_back({"ray lift #" + std::to_string(l + 1), "incident sheets lie in different vertex lifts"});
        }
    }
    return out;
}

void require_valid(const MultiSection& ms) {
    auto d = validate(ms);
    if (d.empty()) return;
    std::string msg = "invalid multi-section: " + to_string(d.front());
    if (d.size() > 1) msg += " (and " + std::to_string(d.size() - 1) + " more)";
    throw InvalidInputError(msg);
}

std::vector<std::size_t> monodromy(const MultiSection& ms) {
    if (!ms.all_weights_one()) throw UnsupportedError("monodromy needs all weights equal to 1");
    const auto base = ms.sheets_on(0);
    std::vector<std::size_t> perm(base.size());
    for (std::size_t a = 0; a < base.size(); ++a) {
        std::size_t s = base[a];
        for (std::size_t step = 0; step < ms.fan.size(); ++step) s = ms.ray_lifts[ms.lift_before(s)].after.front();
        perm[a] = ms.label(s);
    }
    return perm;
}

std::vector<std::vector<std::size_t>> components(const MultiSection& ms) {
    UnionFind uf(ms.sheets.size());
    for (const auto& rl : ms.ray_lifts) {
        std::vector<std::size_t> all = rl.before;
        all.insert(all.end(), rl.after.begin(), rl.after.end());
        for (std::size_t i = 1; i < all.size(); ++i) uf.join(all[0], all[i]);
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t s = 0; s < ms.sheets.size(); ++s) groups[uf.find(s)].push_back(s);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, g] : groups) out.push_back(std::move(g));
    std::sort(out.begin(), out.end());
    return out;
}

bool check_separable(const MultiSection& ms, int k) {
    if (k == 1) {
        for (std::size_t j = 0; j < ms.fan.size(); ++j) {
            std::set<Int> seen;
            for (std::size_t l : ms.lifts_on(j))
                if (!seen.insert(ms.ray_lifts[l].restriction).second) return false;
        }
        return true;
    }
    if (k == 2) {
        for (std::size_t c = 0; c < ms.fan.size(); ++c) {
            std::set<Vec> seen;
            for (std::size_t s : ms.sheets_on(c))
                if (!seen.insert(ms.sheets[s].slope).second) return false;
        }
        return true;
    }
    throw UnsupportedError("separability is implemented for strata of dimension 1 and 2 only");
}

bool is_separable(const MultiSection& ms) {
    return ms.vertex_lifts.size() <= 1 && check_separable(ms, 1) && check_separable(ms, 2);
}

bool ramification_in_codim2(const MultiSection& ms) { return ms.all_weights_one(); }

bool is_indecomposable_dim2(const MultiSection& ms) {
    require_valid(ms);
    for (const auto& s : ms.sheets)
        if (s.weight != 1) throw UnsupportedError("indecomposability check needs all weights equal to 1");
    if (ms.vertex_lifts.size() != 1) return false;
    if (!check_separable(ms, 1) || !ramification_in_codim2(ms)) return false;
    const auto comps = components(ms);
    if (comps.size() == 1) return true;
    if (comps.size() > 20) throw UnsupportedError("too many components for the partition search");
    // Subsets always containing component 0, so each unordered split is visited once.
    const std::size_t n = comps.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); mask += 2) {
        if (mask == (std::uint64_t{1} << n) - 1) continue;
        std::vector<std::size_t> a, b;
        for (std::size_t c = 0; c < n; ++c) {
            auto& dst = (mask >> c) & 1 ? a : b;
            dst.insert(dst.end(), comps[c].begin(), comps[c].end());
        }
        if (isomorphic(union_c(sub_cover(ms, a), sub_cover(ms, b)), ms)) return false;
    }
    return true;
}

namespace {

using LiftKey = std::tuple<std::size_t, Int, int, std::vector<std::size_t>, std::vector<std::size_t>>;

std::vector<LiftKey> mapped_lifts(const MultiSection& ms, const std::vector<std::size_t>& f) {
    std::vector<LiftKey> out;
    for (const auto& rl : ms.ray_lifts) {
        std::vector<std::size_t> b, a;
        for (std::size_t s : rl.before) b.push_back(f[s]);
        for (std::size_t s : rl.after) a.push_back(f[s]);
        out.emplace_back(rl.ray, rl.restriction, rl.weight, sorted_unique(b), sorted_unique(a));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<std::size_t>> mapped_vertices(const MultiSection& ms, const std::vector<std::size_t>& f) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& v : ms.vertex_lifts) {
        std::vector<std::size_t> m;
        for (std::size_t s : v) m.push_back(f[s]);
        out.push_back(sorted_unique(m));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

bool isomorphic(const MultiSection& a, const MultiSection& b) {
    if (!(a.fan == b.fan) || a.rank != b.rank) return false;
    if (a.sheets.size() != b.sheets.size() || a.ray_lifts.size() != b.ray_lifts.size() ||
        a.vertex_lifts.size() != b.vertex_lifts.size())
        return false;
    std::vector<std::size_t> identity(b.sheets.size());
    std::iota(identity.begin(), identity.end(), 0);
    const auto target_lifts = mapped_lifts(b, identity);
    const auto target_vertices = mapped_vertices(b, identity);
    std::vector<std::size_t> f(a.sheets.size());
    std::vector<bool> used(b.sheets.size(), false);
    std::function<bool(std::size_t)> assign = [&](std::size_t s) -> bool {
        if (s == a.sheets.size())
            return mapped_lifts(a, f) == target_lifts && mapped_vertices(a, f) == target_vertices;
        for (std::size_t t = 0; t < b.sheets.size(); ++t) {
            if (used[t] || b.sheets[t].cone != a.sheets[s].cone || b.sheets[t].slope != a.sheets[s].slope ||
                b.sheets[t].weight != a.sheets[s].weight)
                continue;
            used[t] = true;
            f[s] = t;
            if (assign(s + 1)) return true;
            used[t] = false;
        }
        return false;
    };
    return assign(0);
}

MultiSection dual(const MultiSection& ms) {
    MultiSection out = ms;
    for (auto& s : out.sheets) s.slope = -s.slope;
    for (auto& l : out.ray_lifts) l.restriction = checked_mul(l.restriction, -1);
    return out;
}

MultiSection disjoint_union(const MultiSection& a, const MultiSection& b) {
    require_same_fan(a, b);
    MultiSection out;
    out.fan = a.fan;
    out.rank = a.rank + b.rank;
    std::vector<std::size_t> fa(a.sheets.size()), fb(b.sheets.size());
    for (std::size_t c = 0; c < a.fan.size(); ++c) {
        for (std::size_t s : a.sheets_on(c)) {
            fa[s] = out.sheets.size();
            out.sheets.push_back(a.sheets[s]);
        }
        for (std::size_t s : b.sheets_on(c)) {
            fb[s] = out.sheets.size();
            out.sheets.push_back(b.sheets[s]);
        }
    }
    auto map_lift = [](RayLift l, const std::vector<std::size_t>& f) {
        for (auto& s : l.before) s = f[s];
        for (auto& s : l.after) s = f[s];
        std::sort(l.before.begin(), l.before.end());
        std::sort(l.after.begin(), l.after.end());
        return l;
    };
    for (std::size_t j = 0; j < a.fan.size(); ++j) {
        for (std::size_t l : a.lifts_on(j)) out.ray_lifts.push_back(map_lift(a.ray_lifts[l], fa));
        for (std::size_t l : b.lifts_on(j)) out.ray_lifts.push_back(map_lift(b.ray_lifts[l], fb));
    }
    for (const auto& v : a.vertex_lifts) {
        std::vector<std::size_t> m;
        for (std::size_t s : v) m.push_back(fa[s]);
        out.vertex_lifts.push_back(sorted_unique(m));
    }
    for (const auto& v : b.vertex_lifts) {
        std::vector<std::size_t> m;
        for (std::size_t s : v) m.push_back(fb[s]);
        out.vertex_lifts.push_back(sorted_unique(m));
    }
    return out;
}

MultiSection fiber_product(const MultiSection& a, const MultiSection& b) {
    require_same_fan(a, b);
    MultiSection out;
    out.fan = a.fan;
    out.rank = a.rank * b.rank;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
    for (std::size_t c = 0; c < a.fan.size(); ++c)
        for (std::size_t sa : a.sheets_on(c))
            for (std::size_t sb : b.sheets_on(c)) {
                index[{sa, sb}] = out.sheets.size();
                out.sheets.push_back(
                    Sheet{c, a.sheets[sa].slope + b.sheets[sb].slope, a.sheets[sa].weight * b.sheets[sb].weight});
            }
    for (std::size_t j = 0; j < a.fan.size(); ++j)
        for (std::size_t la : a.lifts_on(j))
            for (std::size_t lb : b.lifts_on(j)) {
                const auto& x = a.ray_lifts[la];
                const auto& y = b.ray_lifts[lb];
                RayLift rl{j, checked_add(x.restriction, y.restriction), x.weight * y.weight, {}, {}};
                for (std::size_t p : x.before)
                    for (std::size_t q : y.before) rl.before.push_back(index.at({p, q}));
                for (std::size_t p : x.after)
                    for (std::size_t q : y.after) rl.after.push_back(index.at({p, q}));
                std::sort(rl.before.begin(), rl.before.end());
                std::sort(rl.after.begin(), rl.after.end());
                out.ray_lifts.push_back(std::move(rl));
            }
    for (const auto& va : a.vertex_lifts)
        for (const auto& vb : b.vertex_lifts) {
            std::vector<std::size_t> v;
            for (std::size_t p : va)
                for (std::size_t q : vb)
                    if (a.sheets[p].cone == b.sheets[q].cone) v.push_back(index.at({p, q}));
            if (!v.empty()) out.vertex_lifts.push_back(sorted_unique(v));
        }
    return out;
}

std::pair<MultiSection, CoverMorphism> canonical_separation(const MultiSection& ms) {
    MultiSection out;
    out.fan = ms.fan;
    out.rank = ms.rank;
    CoverMorphism q;
    q.sheet_map.assign(ms.sheets.size(), 0);
    q.ray_lift_map.assign(ms.ray_lifts.size(), 0);
    for (std::size_t s = 0; s < ms.sheets.size(); ++s) {
        const auto& sh = ms.sheets[s];
        bool merged = false;
        for (std::size_t t = 0; t < out.sheets.size(); ++t)
            if (out.sheets[t].cone == sh.cone && out.sheets[t].slope == sh.slope) {
                out.sheets[t].weight += sh.weight;
                q.sheet_map[s] = t;
                merged = true;
                break;
            }
        if (!merged) {
            q.sheet_map[s] = out.sheets.size();
            out.sheets.push_back(sh);
        }
    }
    for (std::size_t l = 0; l < ms.ray_lifts.size(); ++l) {
        const auto& rl = ms.ray_lifts[l];
        std::size_t t = out.ray_lifts.size();
        for (std::size_t u = 0; u < out.ray_lifts.size(); ++u)
            if (out.ray_lifts[u].ray == rl.ray && out.ray_lifts[u].restriction == rl.restriction) {
                t = u;
                break;
            }
        if (t == out.ray_lifts.size()) out.ray_lifts.push_back(RayLift{rl.ray, rl.restriction, 0, {}, {}});
        auto& target = out.ray_lifts[t];
        target.weight += rl.weight;
        for (std::size_t s : rl.before) target.before.push_back(q.sheet_map[s]);
        for (std::size_t s : rl.after) target.after.push_back(q.sheet_map[s]);
        q.ray_lift_map[l] = t;
    }
    for (auto& rl : out.ray_lifts) {
        rl.before = sorted_unique(rl.before);
        rl.after = sorted_unique(rl.after);
        // Weight is the trace over the merged lifts, already accumulated above.
    }
    if (!out.sheets.empty()) {
        std::vector<std::size_t> all(out.sheets.size());
        std::iota(all.begin(), all.end(), 0);
        out.vertex_lifts = {all};
    }
    q.vertex_map.assign(ms.vertex_lifts.size(), 0);
    q.source = ms;
    q.target = out;
    return {std::move(out), std::move(q)};
}

MultiSection union_c(const MultiSection& a, const MultiSection& b) {
    return canonical_separation(disjoint_union(a, b)).first;
}

MultiSection product_c(const MultiSection& a, const MultiSection& b) {
    return canonical_separation(fiber_product(a, b)).first;
}

MultiSection sub_cover(const MultiSection& ms, const std::vector<std::size_t>& sheets) {
    const auto chosen = sorted_unique(sheets);
    std::vector<std::size_t> f(ms.sheets.size(), SIZE_MAX);
    MultiSection out;
    out.fan = ms.fan;
    for (std::size_t c = 0; c < ms.fan.size(); ++c)
        for (std::size_t s : ms.sheets_on(c))
            if (std::binary_search(chosen.begin(), chosen.end(), s)) {
                f[s] = out.sheets.size();
                out.sheets.push_back(ms.sheets[s]);
            }
    for (const auto& rl : ms.ray_lifts) {
        std::size_t in = 0, total = rl.before.size() + rl.after.size();
        for (std::size_t s : rl.before) in += f[s] != SIZE_MAX;
        for (std::size_t s : rl.after) in += f[s] != SIZE_MAX;
        if (in == 0) continue;
        if (in != total) throw DegenerateInputError("sheet set is not closed under ray-lift adjacency");
        RayLift m = rl;
        for (auto& s : m.before) s = f[s];
        for (auto& s : m.after) s = f[s];
        out.ray_lifts.push_back(std::move(m));
    }
    int r = 0;
    for (const auto& s : out.sheets)
        if (s.cone == 0) r += s.weight;
    out.rank = r;
    if (!out.sheets.empty()) {
        std::vector<std::size_t> all(out.sheets.size());
        std::iota(all.begin(), all.end(), 0);
        out.vertex_lifts = {all};
    }
    return out;
}

MultiSection relabel(const MultiSection& ms, const std::vector<std::vector<std::size_t>>& perm) {
    if (perm.size() != ms.fan.size()) throw SizeMismatchError("need one permutation per cone");
    MultiSection out;
    out.fan = ms.fan;
    out.rank = ms.rank;
    std::vector<std::size_t> f(ms.sheets.size());
    for (std::size_t c = 0; c < ms.fan.size(); ++c) {
        const auto on = ms.sheets_on(c);
        if (perm[c].size() != on.size()) throw SizeMismatchError("permutation size differs from sheet count");
        std::vector<bool> hit(on.size(), false);
        for (std::size_t old : perm[c]) {
            if (old >= on.size() || hit[old]) throw DegenerateInputError("relabeling is not a permutation");
            hit[old] = true;
            f[on[old]] = out.sheets.size();
            out.sheets.push_back(ms.sheets[on[old]]);
        }
    }
    for (auto rl : ms.ray_lifts) {
        for (auto& s : rl.before) s = f[s];
        for (auto& s : rl.after) s = f[s];
        std::sort(rl.before.begin(), rl.before.end());
        std::sort(rl.after.begin(), rl.after.end());
        out.ray_lifts.push_back(std::move(rl));
    }
    for (const auto& v : ms.vertex_lifts) {
        std::vector<std::size_t> m;
        for (std::size_t s : v) m.push_back(f[s]);
        out.vertex_lifts.push_back(sorted_unique(m));
    }
    return out;
}

CoverMorphism identity_morphism(const MultiSection& ms) {
    CoverMorphism f{ms, ms, {}, {}, {}};
    f.sheet_map.resize(ms.sheets.size());
    f.ray_lift_map.resize(ms.ray_lifts.size());
    f.vertex_map.resize(ms.vertex_lifts.size());
    std::iota(f.sheet_map.begin(), f.sheet_map.end(), 0);
    std::iota(f.ray_lift_map.begin(), f.ray_lift_map.end(), 0);
    std::iota(f.vertex_map.begin(), f.vertex_map.end(), 0);
    return f;
}

std::vector<Diagnostic> check_cover_morphism(const CoverMorphism& f) {
    std::vector<Diagnostic> out;
    const auto& src = f.source;
    const auto& tgt = f.target;
    if (!(src.fan == tgt.fan)) return {{"morphism", "source and target live over different fans"}};
    if (f.sheet_map.size() != src.sheets.size() || f.ray_lift_map.size() != src.ray_lifts.size() ||
        f.vertex_map.size() != src.vertex_lifts.size())
        return {{"morphism", "cell maps do not cover the source"}};
    for (std::size_t s = 0; s < src.sheets.size(); ++s) {
        const std::size_t t = f.sheet_map[s];
        const std::string where = "sheet #" + std::to_string(s + 1);
        if (t >= tgt.sheets.size()) return {{where, "image out of range"}};
        if (src.sheets[s].cone != tgt.sheets[t].cone) out.push_back({where, "projection not preserved"});
        if (src.sheets[s].slope != tgt.sheets[t].slope) out.push_back({where, "slope not preserved"});
    }
    for (std::size_t l = 0; l < src.ray_lifts.size(); ++l) {
        const std::size_t t = f.ray_lift_map[l];
        const std::string where = "ray lift #" + std::to_string(l + 1);
        if (t >= tgt.ray_lifts.size()) return {{where, "image out of range"}};
        const auto& a = src.ray_lifts[l];
        const auto& b = tgt.ray_lifts[t];
        if (a.ray != b.ray) out.push_back({where, "projection not preserved"});
        if (a.restriction != b.restriction) out.push_back({where, "restriction not preserved"});
        for (std::size_t s : a.before)
            if (!contains(b.before, f.sheet_map[s])) out.push_back({where, "incidence not preserved"});
        for (std::size_t s : a.after)
            if (!contains(b.after, f.sheet_map[s])) out.push_back({where, "incidence not preserved"});
    }
    std::vector<int> sheet_trace(tgt.sheets.size(), 0), lift_trace(tgt.ray_lifts.size(), 0);
    for (std::size_t s = 0; s < src.sheets.size(); ++s) sheet_trace[f.sheet_map[s]] += src.sheets[s].weight;
    for (std::size_t l = 0; l < src.ray_lifts.size(); ++l) lift_trace[f.ray_lift_map[l]] += src.ray_lifts[l].weight;
    for (std::size_t t = 0; t < tgt.sheets.size(); ++t)
        if (sheet_trace[t] != tgt.sheets[t].weight)
            out.push_back({"target sheet #" + std::to_string(t + 1), "trace of weights differs from target weight"});
    for (std::size_t t = 0; t < tgt.ray_lifts.size(); ++t)
        if (lift_trace[t] != tgt.ray_lifts[t].weight)
            out.push_back({"target ray lift #" + std::to_string(t + 1), "trace of weights differs from target weight"});
    std::vector<bool> vertex_hit(tgt.vertex_lifts.size(), false);
    for (std::size_t v = 0; v < src.vertex_lifts.size(); ++v) {
        const std::size_t w = f.vertex_map[v];
        if (w >= tgt.vertex_lifts.size()) return {{"vertex lift #" + std::to_string(v + 1), "image out of range"}};
        vertex_hit[w] = true;
        for (std::size_t s : src.vertex_lifts[v])
            if (!contains(tgt.vertex_lifts[w], f.sheet_map[s]))
                out.push_back({"vertex lift #" + std::to_string(v + 1), "incidence not preserved"});
    }
    for (std::size_t w = 0; w < vertex_hit.size(); ++w)
        if (!vertex_hit[w]) out.push_back({"target vertex lift #" + std::to_string(w + 1), "not in the image"});
    return out;
}

bool verify_cover_morphism(const CoverMorphism& f) { return check_cover_morphism(f).empty(); }

}  // namespace tlms
