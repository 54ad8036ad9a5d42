#include "tlms/wallcross.hpp"

#include <algorithm>
#include <stdexcept>

namespace tlms {

namespace {

void require_weight_one(const MultiSection& ms, const char* what) {
    if (!ms.all_weights_one()) throw UnsupportedError(std::string(what) + " needs all weights equal to 1");
}

std::size_t matched_label(const MultiSection& ms, std::size_t ray, std::size_t label) {
    const std::size_t s = ms.sheet_at(ms.fan.before_cone(ray), label);
    return ms.label(ms.ray_lifts[ms.lift_before(s)].after.front());
}

void require_local_system_shape(const MultiSection& ms, const LocalSystem& ls) {
    if (ls.scalar.size() != ms.fan.size()) throw SizeMismatchError("local system needs one scalar list per ray");
    for (const auto& row : ls.scalar)
        if (row.size() != static_cast<std::size_t>(ms.rank)) throw SizeMismatchError("local system scalar list has the wrong length");
}

Rational constant_coefficient(const LaurentPoly& p) {
    Rational c = 0;
    for (const auto& [e, v] : p.terms()) c += v;
    return c;
}

}  // namespace

Rational LocalSystem::monodromy() const {
    Rational m = 1;
    for (const auto& row : scalar)
        for (const auto& x : row) m *= x;
    return m;
}

RatMatrix semiflat_matrix(const MultiSection& ms, const LocalSystem& ls, std::size_t ray) {
    require_weight_one(ms, "semi-flat data");
    require_local_system_shape(ms, ls);
    const std::size_t r = static_cast<std::size_t>(ms.rank);
    RatMatrix p(r, r);
    for (std::size_t a = 0; a < r; ++a) p(a, matched_label(ms, ray, a)) = ls.scalar[ray][a];
    return p;
}

bool is_cyclically_labeled(const MultiSection& ms) {
    if (!ms.all_weights_one()) return false;
    const std::size_t r = static_cast<std::size_t>(ms.rank);
    for (std::size_t c = 0; c < ms.fan.size(); ++c)
        if (ms.sheets_on(c).size() != r) return false;
    for (std::size_t j = 0; j < ms.fan.size(); ++j)
        for (std::size_t a = 0; a < r; ++a)
            if (matched_label(ms, j, a) != (j == 0 ? (a + 1) % r : a)) return false;
    return true;
}

SemiFlat build_semiflat_cocycle(const MultiSection& ms) {
    require_weight_one(ms, "semi-flat data");
    if (ms.vertex_lifts.size() != 1 || components(ms).size() != 1)
        throw NotIndecomposableError("semi-flat data needs a connected cover with a single vertex lift");
    if (!is_cyclically_labeled(ms)) throw UnsupportedError("sheets are not cyclically labeled; normalize the arrangement first");
    const std::size_t r = static_cast<std::size_t>(ms.rank);
    SemiFlat sf;
    sf.local_system.scalar.assign(ms.fan.size(), std::vector<Rational>(r, Rational(1)));
    sf.local_system.scalar[0][r - 1] = r % 2 == 1 ? 1 : -1;
    for (std::size_t j = 0; j < ms.fan.size(); ++j) sf.coefficient.push_back(semiflat_matrix(ms, sf.local_system, j));
    return sf;
}

std::vector<Diagnostic> wall_support_diagnostics(const MultiSection& ms, const WallFactor& w) {
    std::vector<Diagnostic> out;
    const std::string where = "wall factor on ray " + std::to_string(w.ray + 1) + ", vertex lift " + std::to_string(w.vertex_lift + 1);
    const std::size_t r = static_cast<std::size_t>(ms.rank);
    if (w.ray >= ms.fan.size()) return {{where, "ray index out of range"}};
    if (w.vertex_lift >= ms.vertex_lifts.size()) return {{where, "vertex lift out of range"}};
    if (!w.n.square() || w.n.rows() != r) return {{where, "matrix size differs from rank"}};
    if (!ms.all_weights_one()) return {{where, "wall factors need all weights equal to 1"}};
    const std::size_t cone = ms.fan.before_cone(w.ray);
    const auto& omega = ms.vertex_lifts[w.vertex_lift];
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) {
            if (w.n(a, b) == 0) continue;
            const std::string entry = where + " entry (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
            if (a == b) {
                out.push_back({entry, "(N1) diagonal must vanish"});
                continue;
            }
            const std::size_t sa = ms.sheet_at(cone, a), sb = ms.sheet_at(cone, b);
            if (std::find(omega.begin(), omega.end(), sa) == omega.end() ||
                std::find(omega.begin(), omega.end(), sb) == omega.end())
                out.push_back({entry, "sheet does not contain the vertex lift"});
            else if (pair(ms.sheets[sa].slope - ms.sheets[sb].slope, ms.fan.ray(w.ray)) < 0)
                out.push_back({entry, "(N2) slope difference not in the dual of the ray"});
        }
    return out;
}

bool check_wall_support(const MultiSection& ms, const WallFactor& w) { return wall_support_diagnostics(ms, w).empty(); }

RatMatrix exponentiate(const RatMatrix& n) {
    if (!n.square()) throw SizeMismatchError("exponential of a non-square matrix");
    const std::size_t r = n.rows();
    RatMatrix power = RatMatrix::identity(r);
    for (std::size_t p = 0; p < r; ++p) power = power * n;
    if (!power.is_zero()) throw NilpotencyError("N^r is not zero");
    RatMatrix result = RatMatrix::identity(r);
    RatMatrix term = RatMatrix::identity(r);
    for (std::size_t p = 1; p < r; ++p) {
        term = Rational(1, static_cast<long long>(p)) * (term * n);
        if (term.is_zero()) break;
        result = result + term;
    }
    if (det(result) != 1) throw NilpotencyError("exponential does not have determinant 1");
    return result;
}

RatMatrix theta(const MultiSection& ms, const WallFactorSet& ws, std::size_t ray) {
    std::vector<const WallFactor*> here;
    for (const auto& w : ws.factors)
        if (w.ray == ray) here.push_back(&w);
    std::sort(here.begin(), here.end(), [](auto* a, auto* b) { return a->vertex_lift < b->vertex_lift; });
    std::vector<RatMatrix> exps;
    for (std::size_t i = 0; i < here.size(); ++i) {
        if (i && here[i]->vertex_lift == here[i - 1]->vertex_lift)
            throw DegenerateInputError("two wall factors for the same ray and vertex lift");
        if (auto d = wall_support_diagnostics(ms, *here[i]); !d.empty()) throw SupportError(to_string(d.front()));
        exps.push_back(exponentiate(here[i]->n));
    }
    for (std::size_t i = 0; i < exps.size(); ++i)
        for (std::size_t j = i + 1; j < exps.size(); ++j)
            if (!(exps[i] * exps[j] == exps[j] * exps[i]))
                throw std::logic_error("wall factors of distinct vertex lifts do not commute");
    RatMatrix out = RatMatrix::identity(static_cast<std::size_t>(ms.rank));
    for (const auto& e : exps) out = out * e;
    return out;
}

RatMatrix wall_transition(const MultiSection& ms, const LocalSystem& ls, const WallFactorSet& ws, std::size_t ray) {
    return theta(ms, ws, ray) * semiflat_matrix(ms, ls, ray);
}

RatMatrix compose_loop(const MultiSection& ms, const LocalSystem& ls, const WallFactorSet& ws) {
    const std::size_t k = ms.fan.size();
    RatMatrix loop = RatMatrix::identity(static_cast<std::size_t>(ms.rank));
    for (std::size_t step = 1; step <= k; ++step) loop = loop * wall_transition(ms, ls, ws, step % k);
    return loop;
}

KaneyamaData assemble_bundle(const MultiSection& ms, const LocalSystem& ls, const WallFactorSet& ws) {
    RatMatrix loop = compose_loop(ms, ls, ws);
    if (!loop.is_identity()) throw ObstructionError("wall-crossing factors are not consistent around the origin", loop);
    std::vector<RatMatrix> forward;
    for (std::size_t i = 0; i < ms.fan.size(); ++i) forward.push_back(wall_transition(ms, ls, ws, ms.fan.next(i)));
    return complete_from_adjacent(forward);
}

bool check_restriction_semiflat(const MultiSection& ms, const KaneyamaData& g) {
    const std::size_t k = ms.fan.size();
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = ms.fan.next(i);
        const std::size_t ray = j;
        const Cone c = Cone{{ms.fan.ray(ray)}};
        for (int orient = 0; orient < 2; ++orient) {
            const std::size_t from = orient ? j : i, to = orient ? i : j;
            const LaurentMatrix big = assemble_transition(ms, g, from, to);
            const auto sf = slots(ms, from), st = slots(ms, to);
            RatMatrix constant(big.size(), big.size());
            for (std::size_t a = 0; a < sf.size(); ++a)
                for (std::size_t b = 0; b < st.size(); ++b) {
                    const LaurentPoly p = restrict_to_perp(big(a, b), c);
                    const std::size_t la = orient ? ms.lift_after(sf[a]) : ms.lift_before(sf[a]);
                    const std::size_t lb = orient ? ms.lift_before(st[b]) : ms.lift_after(st[b]);
                    if (la != lb) {
                        if (!p.is_zero()) return false;
                    } else {
                        constant(a, b) = constant_coefficient(p);
                    }
                }
            if (det(constant) == 0) return false;
        }
    }
    return true;
}

LocalSystem extract_local_system(const MultiSection& ms, const KaneyamaData& g) {
    require_weight_one(ms, "local system extraction");
    const std::size_t k = ms.fan.size(), r = static_cast<std::size_t>(ms.rank);
    LocalSystem ls;
    ls.scalar.assign(k, std::vector<Rational>(r));
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t from = ms.fan.before_cone(j), to = ms.fan.after_cone(j);
        const LaurentMatrix big = assemble_transition(ms, g, from, to);
        const Cone c = Cone{{ms.fan.ray(j)}};
        for (std::size_t a = 0; a < r; ++a)
            ls.scalar[j][a] = constant_coefficient(restrict_to_perp(big(a, matched_label(ms, j, a)), c));
    }
    return ls;
}

}  // namespace tlms
