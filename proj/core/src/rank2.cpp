#include "tlms/rank2.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace tlms {

std::string to_string(Tri t) { return t == Tri::Upper ? "U" : "L"; }

namespace {

void require_indecomposable_cover(const MultiSection& ms) {
    if (!ms.all_weights_one()) throw UnsupportedError("arrangement needs all weights equal to 1");
    if (ms.vertex_lifts.size() != 1 || components(ms).size() != 1)
        throw NotIndecomposableError("monodromy does not act transitively on the sheets");
}

// perm[c][new label] = old label for the cyclic walk starting at sheet `start` of cone 0.
std::vector<std::vector<std::size_t>> cyclic_walk(const MultiSection& ms, std::size_t start) {
    const std::size_t k = ms.fan.size(), r = static_cast<std::size_t>(ms.rank);
    std::vector<std::vector<std::size_t>> perm(k);
    std::size_t s = start;
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t c = 0; c < k; ++c) {
            perm[c].push_back(ms.label(s));
            s = ms.ray_lifts[ms.lift_before(s)].after.front();
        }
    return perm;
}

}  // namespace

MultiSection normalize_cyclic(const MultiSection& ms) {
    require_indecomposable_cover(ms);
    const auto base = ms.sheets_on(0);
    std::size_t start = base.front();
    for (std::size_t s : base)
        if (ms.sheets[s].slope < ms.sheets[start].slope) start = s;
    return relabel(ms, cyclic_walk(ms, start));
}

MultiSection normalize_arrangement(const MultiSection& ms) {
    if (ms.rank != 2) throw UnsupportedError("arrangement normalization is for rank 2");
    require_indecomposable_cover(ms);
    const std::size_t k = ms.fan.size();
    for (std::size_t s : ms.sheets_on(0)) {
        MultiSection out = relabel(ms, cyclic_walk(ms, s));
        const Vec d = out.sheets[out.sheet_at(k - 1, 1)].slope - out.sheets[out.sheet_at(k - 1, 0)].slope;
        const Int p = pair(d, out.fan.ray(0));
        if (p == 0) throw SeparabilityError("sheets restrict equally to the closing ray");
        if (p > 0) return out;
    }
    throw std::logic_error("no labeling puts the closing wall in lower form");
}

SlopeMatrix slope_matrix(const MultiSection& ms, std::size_t i, std::size_t j) {
    const auto ray = ms.fan.shared_ray(i, j);
    if (!ray) throw NotAdjacentError("slope matrix needs adjacent cones");
    if (ms.rank != 2 || !ms.all_weights_one()) throw UnsupportedError("slope matrices are for weight-1 rank-2 covers");
    SlopeMatrix m;
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            const Vec d = ms.sheets[ms.sheet_at(i, a)].slope - ms.sheets[ms.sheet_at(j, b)].slope;
            if (pair(d, *ray) >= 0) m.entry[a][b] = d;
        }
    return m;
}

SlopeMatrices slope_matrices(const MultiSection& ms) {
    if (ms.rank != 2 || !is_cyclically_labeled(ms))
        throw UnsupportedError("slope matrices need a normalized rank-2 arrangement");
    const std::size_t k = ms.fan.size();
    SlopeMatrices out;
    for (std::size_t i = 1; i < k; ++i) {
        SlopeMatrix m = slope_matrix(ms, i - 1, i);
        const bool upper = m.entry[0][1].has_value(), lower = m.entry[1][0].has_value();
        if (upper == lower)
            throw SeparabilityError("slope matrix across ray " + to_string(ms.fan.ray(i)) + " is not triangular");
        out.interior.push_back(m);
        out.types.push_back(upper ? Tri::Upper : Tri::Lower);
    }
    out.closing = slope_matrix(ms, k - 1, 0);
    const Vec d = ms.sheets[ms.sheet_at(k - 1, 1)].slope - ms.sheets[ms.sheet_at(k - 1, 0)].slope;
    const Int p = pair(d, ms.fan.ray(0));
    if (p == 0) throw SeparabilityError("sheets restrict equally to the closing ray");
    out.closing_type = p > 0 ? Tri::Lower : Tri::Upper;
    return out;
}

bool slope_condition(const std::vector<Tri>& t) {
    const std::size_t n = t.size();
    if (n == 0) return false;
    if (t[n - 1] == Tri::Upper) {
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (t[i] == Tri::Lower) return true;
        return false;
    }
    for (std::size_t j = 0; j + 1 < n; ++j)
        if (t[j] == Tri::Upper)
            for (std::size_t i = 0; i < j; ++i)
                if (t[i] == Tri::Lower) return true;
    return false;
}

bool check_slope_condition(const MultiSection& ms) {
    return slope_condition(slope_matrices(normalize_arrangement(ms)).types);
}

Rank2Construction construct_kaneyama_rank2(const MultiSection& ms) {
    Rank2Construction out;
    out.normalized = normalize_arrangement(ms);
    const auto& nm = out.normalized;
    const auto sm = slope_matrices(nm);
    out.semiflat = build_semiflat_cocycle(nm);
    const auto& t = sm.types;
    const std::size_t n = t.size();
    if (!slope_condition(t))
        throw ObstructionError("slope condition fails", compose_loop(nm, out.semiflat.local_system, WallFactorSet{}));
    auto factor = [](std::size_t ray, std::size_t a, std::size_t b, int value) {
        RatMatrix m = RatMatrix::zero(2);
        m(a, b) = value;
        return WallFactor{ray, 0, m};
    };
    // Rays 1..k-1 carry the interior walls t[0..n-1]; ray 0 is the closing wall.
    const std::size_t first_lower = static_cast<std::size_t>(std::find(t.begin(), t.end(), Tri::Lower) - t.begin());
    out.walls.factors.push_back(factor(first_lower + 1, 1, 0, 1));
    if (t[n - 1] == Tri::Upper) {
        out.walls.factors.push_back(factor(n, 0, 1, -1));
    } else {
        const std::size_t j = static_cast<std::size_t>(std::find(t.begin() + first_lower, t.end(), Tri::Upper) - t.begin());
        out.walls.factors.push_back(factor(j + 1, 0, 1, -1));
    }
    out.walls.factors.push_back(factor(0, 1, 0, 1));
    out.data = assemble_bundle(nm, out.semiflat.local_system, out.walls);
    if (!validate_kaneyama(nm, out.data).empty()) throw std::logic_error("constructed data fails validation");
    return out;
}

namespace {

// Polynomial over Q in a fixed number of variables.
class MPoly {
public:
    using Exp = std::vector<int>;

    static MPoly constant(std::size_t nv, const Rational& c) {
        MPoly p;
        p.nv_ = nv;
        if (c != 0) p.t_[Exp(nv, 0)] = c;
        return p;
    }
    static MPoly variable(std::size_t nv, std::size_t v) {
        MPoly p;
        p.nv_ = nv;
        Exp e(nv, 0);
        e[v] = 1;
        p.t_[e] = 1;
        return p;
    }

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && is_const_exp(t_.begin()->first)); }
    Rational constant_term() const {
        auto it = t_.find(Exp(nv_, 0));
        return it == t_.end() ? Rational(0) : it->second;
    }
    bool uses(std::size_t v) const {
        for (const auto& [e, c] : t_)
            if (e[v]) return true;
        return false;
    }

    friend MPoly operator+(const MPoly& a, const MPoly& b) {
        MPoly r = a;
        for (const auto& [e, c] : b.t_) r.add(e, c);
        return r;
    }
    friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + b.scaled(-1); }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r = constant(a.nv_, 0);
        for (const auto& [e1, c1] : a.t_)
            for (const auto& [e2, c2] : b.t_) {
                Exp e(a.nv_);
                for (std::size_t i = 0; i < a.nv_; ++i) e[i] = e1[i] + e2[i];
                r.add(e, c1 * c2);
            }
        return r;
    }
    MPoly scaled(const Rational& s) const {
        MPoly r = constant(nv_, 0);
        for (const auto& [e, c] : t_) r.add(e, c * s);
        return r;
    }

    /// p = x_v * a + b with a, b free of x_v; false if x_v occurs with degree > 1.
    bool split_linear(std::size_t v, MPoly& a, MPoly& b) const {
        a = constant(nv_, 0);
        b = constant(nv_, 0);
        for (const auto& [e, c] : t_) {
            if (e[v] > 1) return false;
            Exp f = e;
            f[v] = 0;
            (e[v] ? a : b).add(f, c);
        }
        return true;
    }

    MPoly substitute(std::size_t v, const MPoly& q) const {
        MPoly r = constant(nv_, 0);
        for (const auto& [e, c] : t_) {
            Exp f = e;
            f[v] = 0;
            MPoly term = constant(nv_, 0);
            term.add(f, c);
            for (int k = 0; k < e[v]; ++k) term = term * q;
            r = r + term;
        }
        return r;
    }

    Rational evaluate(const std::vector<Rational>& x) const {
        Rational s = 0;
        for (const auto& [e, c] : t_) {
            Rational m = c;
            for (std::size_t i = 0; i < nv_; ++i)
                for (int k = 0; k < e[i]; ++k) m *= x[i];
            s += m;
        }
        return s;
    }

    MPoly derivative(std::size_t v) const {
        MPoly r = constant(nv_, 0);
        for (const auto& [e, c] : t_) {
            if (!e[v]) continue;
            Exp f = e;
            --f[v];
            r.add(f, c * e[v]);
        }
        return r;
    }

private:
    static bool is_const_exp(const Exp& e) {
        return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    }
    void add(const Exp& e, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = t_.try_emplace(e, c);
        if (inserted) return;
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }

    std::size_t nv_ = 0;
    std::map<Exp, Rational> t_;
};

enum class Verdict { Solved, Infeasible, Undecided };

struct Reducer {
    std::size_t nv = 0;
    bool branched = false;
    std::vector<Rational> solution;

    Verdict run(std::vector<MPoly> eqs, std::vector<std::pair<std::size_t, MPoly>> subs, int depth) {
        std::vector<MPoly> live;
        for (auto& e : eqs) {
            if (e.is_zero()) continue;
            if (e.is_constant()) return Verdict::Infeasible;
            live.push_back(std::move(e));
        }
        if (live.empty()) {
            std::vector<Rational> x(nv, Rational(0));
            for (auto it = subs.rbegin(); it != subs.rend(); ++it) x[it->first] = it->second.evaluate(x);
            solution = std::move(x);
            return Verdict::Solved;
        }
        for (const auto& e : live)
            for (std::size_t v = 0; v < nv; ++v) {
                MPoly a, b;
                if (!e.uses(v) || !e.split_linear(v, a, b) || !a.is_constant()) continue;
                const MPoly expr = b.scaled(Rational(-1) / a.constant_term());
                std::vector<MPoly> next;
                for (const auto& f : live) next.push_back(f.substitute(v, expr));
                subs.emplace_back(v, expr);
                return run(std::move(next), std::move(subs), depth);
            }
        if (depth >= 8) return Verdict::Undecided;
        branched = true;
        std::size_t v = 0;
        while (v < nv && std::none_of(live.begin(), live.end(), [&](const MPoly& e) { return e.uses(v); })) ++v;
        for (int value : {0, 1, -1, 2, -2}) {
            const MPoly c = MPoly::constant(nv, value);
            std::vector<MPoly> next;
            for (const auto& f : live) next.push_back(f.substitute(v, c));
            auto s2 = subs;
            s2.emplace_back(v, c);
            if (run(std::move(next), std::move(s2), depth + 1) == Verdict::Solved) return Verdict::Solved;
        }
        return Verdict::Undecided;
    }
};

using IMat = std::vector<std::vector<Int>>;

bool grid_search(const std::vector<SolverVariable>& vars, const std::vector<std::size_t>& walls, std::size_t r,
                 const IMat& target, std::vector<Int>& found) {
    // Variables grouped by wall in loop order.
    std::vector<std::vector<std::size_t>> by_wall(walls.size());
    for (std::size_t v = 0; v < vars.size(); ++v)
        for (std::size_t w = 0; w < walls.size(); ++w)
            if (vars[v].ray == walls[w]) by_wall[w].push_back(v);
    std::vector<Int> x(vars.size(), 0);
    IMat id(r, std::vector<Int>(r, 0));
    for (std::size_t i = 0; i < r; ++i) id[i][i] = 1;
    std::function<bool(std::size_t, const IMat&)> dfs = [&](std::size_t w, const IMat& prefix) -> bool {
        if (w == walls.size()) {
            if (prefix != target) return false;
            found = x;
            return true;
        }
        const auto& vs = by_wall[w];
        const std::size_t combos = [&] {
            std::size_t c = 1;
            for (std::size_t i = 0; i < vs.size(); ++i) c *= 5;
            return c;
        }();
        for (std::size_t code = 0; code < combos; ++code) {
            IMat f = id;
            std::size_t rest = code;
            for (std::size_t v : vs) {
                x[v] = static_cast<Int>(rest % 5) - 2;
                rest /= 5;
                f[vars[v].row][vars[v].col] = x[v];
            }
            IMat next(r, std::vector<Int>(r, 0));
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t k = 0; k < r; ++k)
                    if (prefix[i][k])
                        for (std::size_t j = 0; j < r; ++j) next[i][j] = checked_add(next[i][j], checked_mul(prefix[i][k], f[k][j]));
            if (dfs(w + 1, next)) return true;
        }
        return false;
    };
    return dfs(0, id);
}

}  // namespace

SolverReport brute_force_solver(const MultiSection& ms) {
    const MultiSection nm = ms.rank == 2 ? normalize_arrangement(ms) : normalize_cyclic(ms);
    const std::size_t k = nm.fan.size(), r = static_cast<std::size_t>(nm.rank);
    const RatMatrix target = inverse(build_semiflat_cocycle(nm).coefficient[0]);

    SolverReport rep;
    std::vector<std::size_t> walls;
    for (std::size_t step = 1; step <= k; ++step) walls.push_back(step % k);
    for (std::size_t ray : walls) {
        const std::size_t cone = nm.fan.before_cone(ray);
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b) {
                if (a == b) continue;
                const Vec d = nm.sheets[nm.sheet_at(cone, a)].slope - nm.sheets[nm.sheet_at(cone, b)].slope;
                if (pair(d, nm.fan.ray(ray)) >= 0) rep.variables.push_back({ray, a, b});
            }
    }
    const std::size_t nv = rep.variables.size();

    std::vector<MPoly> prod(r * r, MPoly::constant(nv, 0));
    for (std::size_t i = 0; i < r; ++i) prod[i * r + i] = MPoly::constant(nv, 1);
    for (std::size_t ray : walls) {
        std::vector<MPoly> f(r * r, MPoly::constant(nv, 0));
        for (std::size_t i = 0; i < r; ++i) f[i * r + i] = MPoly::constant(nv, 1);
        for (std::size_t v = 0; v < nv; ++v)
            if (rep.variables[v].ray == ray) f[rep.variables[v].row * r + rep.variables[v].col] = MPoly::variable(nv, v);
        std::vector<MPoly> next(r * r, MPoly::constant(nv, 0));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                for (std::size_t m = 0; m < r; ++m) next[i * r + j] = next[i * r + j] + prod[i * r + m] * f[m * r + j];
        prod = std::move(next);
    }
    std::vector<MPoly> eqs;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) eqs.push_back(prod[i * r + j] - MPoly::constant(nv, target(i, j)));

    Reducer red;
    red.nv = nv;
    const Verdict v = red.run(eqs, {}, 0);
    if (v != Verdict::Undecided) rep.symbolic = v == Verdict::Solved;

    IMat tgt(r, std::vector<Int>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            if (boost::multiprecision::denominator(target(i, j)) != 1) throw std::logic_error("target is not integral");
            tgt[i][j] = static_cast<Int>(boost::multiprecision::numerator(target(i, j)));
        }
    std::vector<Int> grid_solution;
    rep.grid = grid_search(rep.variables, walls, r, tgt, grid_solution);

    if (rep.symbolic.has_value()) {
        rep.solvable = *rep.symbolic;
        rep.method = red.branched ? "elimination+branching" : "elimination";
    } else {
        rep.solvable = rep.grid;
        rep.method = "grid";
    }
    if (rep.solvable) {
        if (rep.symbolic.value_or(false)) {
            rep.solution = red.solution;
        } else {
            for (Int x : grid_solution) rep.solution.emplace_back(x);
        }
        for (const auto& e : eqs)
            if (e.evaluate(rep.solution) != 0) throw std::logic_error("solver produced a non-solution");
        RatMatrix jac(eqs.size(), nv);
        for (std::size_t i = 0; i < eqs.size(); ++i)
            for (std::size_t x = 0; x < nv; ++x) jac(i, x) = eqs[i].derivative(x).evaluate(rep.solution);
        rep.free_parameter_count = nv - rank(jac);
    } else {
        RatMatrix d(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) d(i, j) = eqs[i * r + j].constant_term();
        rep.defect = d;
    }
    return rep;
}

DimensionBound moduli_dim_bound(const MultiSection& ms) {
    const Int r = ms.rank, k = static_cast<Int>(ms.fan.size());
    DimensionBound b{r * (r - 1) / 2 * k, std::nullopt};
    if (r == 2) b.rank2 = k - 1;
    return b;
}

}  // namespace tlms
