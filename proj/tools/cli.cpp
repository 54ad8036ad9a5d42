#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "tlms/format.hpp"
#include "tlms/generator.hpp"
#include "tlms/rank2.hpp"

namespace tlms::cli {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::vector<std::string> inputs;
    std::uint64_t seed = 1;
    std::string corpus;
    std::string format = "text";
    std::size_t k = 0;
    std::size_t count = 0;
};

Document load(const std::string& path) {
    try {
        return read_document(path);
    } catch (const ParseError& e) {
        throw UsageError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.detail());
    }
}

Document single(const Options& o) {
    if (o.inputs.size() != 1) throw UsageError("this command takes exactly one --input");
    return load(o.inputs.front());
}

const MultiSection& need_ms(const Document& d) {
    if (!d.multisection) throw UsageError("input has no [multisection] block");
    require_valid(*d.multisection);
    return *d.multisection;
}

const char* yes(bool b) { return b ? "yes" : "no"; }

int verdict(bool b) { return b ? Affirmative : Negative; }

void print_diagnostics(std::ostream& out, const std::string& block, const std::vector<Diagnostic>& ds) {
    if (ds.empty()) out << block << ": valid\n";
    for (const auto& d : ds) out << block << ": " << to_string(d) << '\n';
}

int cmd_validate(const Options& o, std::ostream& out) {
    const Document d = single(o);
    if (!d.multisection) throw UsageError("input has no [multisection] block");
    const auto ms_diag = validate(*d.multisection);
    print_diagnostics(out, "multisection", ms_diag);
    bool ok = ms_diag.empty();
    if (ok && !d.kaneyama.empty()) {
        const auto kd = validate_kaneyama(*d.multisection, kaneyama_data(d));
        print_diagnostics(out, "kaneyama", kd);
        ok = ok && kd.empty();
    }
    if (ok && d.wall) {
        std::vector<Diagnostic> wd;
        for (const auto& w : d.wall->factors) {
            const auto part = wall_support_diagnostics(*d.multisection, w);
            wd.insert(wd.end(), part.begin(), part.end());
        }
        print_diagnostics(out, "wall", wd);
        ok = ok && wd.empty();
    }
    return verdict(ok);
}

int cmd_separable(const Options& o, std::ostream& out) {
    const Document d = single(o);
    const MultiSection& ms = need_ms(d);
    const bool s1 = check_separable(ms, 1), s2 = check_separable(ms, 2);
    const bool v = ms.vertex_lifts.size() <= 1;
    out << "1-separable: " << yes(s1) << "\n2-separable: " << yes(s2) << "\nvertex lifts: " << ms.vertex_lifts.size()
        << "\nseparable: " << yes(s1 && s2 && v) << '\n';
    return verdict(s1 && s2 && v);
}

int cmd_indecomposable(const Options& o, std::ostream& out) {
    const Document d = single(o);
    const bool b = is_indecomposable_dim2(need_ms(d));
    out << "indecomposable: " << yes(b) << '\n';
    return verdict(b);
}

std::string types_text(const std::vector<Tri>& types) {
    std::string s = "[";
    for (std::size_t i = 0; i < types.size(); ++i) s += (i ? ", " : "") + to_string(types[i]);
    return s + "]";
}

const MultiSection& need_rank2(const Document& d) {
    const MultiSection& ms = need_ms(d);
    if (ms.rank != 2) throw UsageError("this command needs a rank-2 multi-section");
    return ms;
}

int cmd_slope_condition(const Options& o, std::ostream& out) {
    const Document d = single(o);
    const MultiSection nm = normalize_arrangement(need_rank2(d));
    const SlopeMatrices sm = slope_matrices(nm);
    const bool ok = slope_condition(sm.types);
    out << "types: " << types_text(sm.types) << "\nclosing: " << to_string(sm.closing_type)
        << "\nslope condition: " << (ok ? "holds" : "fails") << '\n';
    return verdict(ok);
}

int solve_one(const MultiSection& ms, std::ostream& out, bool print_data) {
    const SolverReport rep = brute_force_solver(ms);
    out << "verdict: " << (rep.solvable ? "unobstructed" : "obstructed") << "\nmethod: " << rep.method
        << "\nvariables: " << rep.variables.size();
    if (rep.solvable) out << "\nfree parameters: " << rep.free_parameter_count;
    if (rep.defect) out << "\ndefect: " << to_string(*rep.defect);
    out << '\n';
    if (rep.solvable && print_data) {
        const Rank2Construction c = construct_kaneyama_rank2(ms);
        Document doc;
        doc.fan = ms.fan;
        doc.multisection = c.normalized;
        set_kaneyama(doc, c.data);
        doc.wall = c.walls;
        out << '\n' << emit_document(doc);
    }
    return verdict(rep.solvable);
}

std::vector<fs::path> corpus_files(const std::string& dir) {
    std::vector<fs::path> files;
    std::error_code ec;
    for (const auto& e : fs::directory_iterator(dir, ec))
        if (e.is_regular_file() && e.path().extension() == ".tlms") files.push_back(e.path());
    if (ec) throw UsageError("cannot read corpus directory '" + dir + "'");
    std::sort(files.begin(), files.end());
    return files;
}

int cmd_solve(const Options& o, std::ostream& out) {
    if (!o.corpus.empty()) {
        bool all = true;
        for (const auto& f : corpus_files(o.corpus)) {
            const Document d = load(f.string());
            if (!d.multisection || d.multisection->rank != 2) continue;
            out << f.filename().string() << ": ";
            try {
                require_valid(*d.multisection);
                const SolverReport rep = brute_force_solver(*d.multisection);
                out << (rep.solvable ? "unobstructed" : "obstructed") << '\n';
                all = all && rep.solvable;
            } catch (const Error& e) {
                out << "skipped (" << e.what() << ")\n";
            }
        }
        return verdict(all);
    }
    if (o.inputs.empty() && o.count > 0) {
        const auto corpus = rank2_corpus(o.seed, o.count);
        std::size_t holds = 0, solvable = 0, agree = 0;
        for (const auto& ms : corpus) {
            const bool sc = check_slope_condition(ms);
            const bool bf = brute_force_solver(ms).solvable;
            holds += sc;
            solvable += bf;
            agree += sc == bf;
        }
        out << "instances: " << corpus.size() << "\nslope condition holds: " << holds << "\nsolver solvable: " << solvable
            << "\nagreement: " << agree << "/" << corpus.size() << '\n';
        return verdict(agree == corpus.size());
    }
    const Document d = single(o);
    return solve_one(need_rank2(d), out, true);
}

int cmd_verify_kaneyama(const Options& o, std::ostream& out) {
    const Document d = single(o);
    const MultiSection& ms = need_ms(d);
    if (d.kaneyama.empty()) throw UsageError("input has no [kaneyama] block");
    const auto diag = validate_kaneyama(ms, kaneyama_data(d));
    print_diagnostics(out, "kaneyama", diag);
    return verdict(diag.empty());
}

int cmd_compose_loop(const Options& o, std::ostream& out) {
    const Document d = single(o);
    const MultiSection& ms = need_ms(d);
    if (!d.wall) throw UsageError("input has no [wall] block");
    const SemiFlat sf = build_semiflat_cocycle(ms);
    const RatMatrix loop = compose_loop(ms, sf.local_system, *d.wall);
    out << "loop: " << to_string(loop) << "\nconsistent: " << yes(loop.is_identity()) << '\n';
    return verdict(loop.is_identity());
}

int cmd_bound(const Options& o, std::ostream& out) {
    const Document d = single(o);
    const DimensionBound b = moduli_dim_bound(need_ms(d));
    out << "general: " << b.general;
    if (b.rank2) out << ", rank2: " << *b.rank2;
    out << '\n';
    return Affirmative;
}

int emit_ms(std::ostream& out, const MultiSection& ms) {
    Document doc;
    doc.fan = ms.fan;
    doc.multisection = ms;
    out << emit_document(doc);
    return Affirmative;
}

int cmd_binary(const Options& o, std::ostream& out, MultiSection (*op)(const MultiSection&, const MultiSection&)) {
    if (o.inputs.size() != 2) throw UsageError("this command takes exactly two --input files");
    const Document a = load(o.inputs[0]), b = load(o.inputs[1]);
    return emit_ms(out, op(need_ms(a), need_ms(b)));
}

int cmd_dual(const Options& o, std::ostream& out) { return emit_ms(out, dual(need_ms(single(o)))); }

int cmd_separate(const Options& o, std::ostream& out) {
    return emit_ms(out, canonical_separation(need_ms(single(o))).first);
}

int cmd_generate(const Options& o, std::ostream& out) {
    const std::size_t count = o.count == 0 ? 1 : o.count;
    if (o.k != 0 && o.k < 3) throw UsageError("--k must be at least 3");
    const auto corpus = o.k == 0 ? rank2_corpus(o.seed, count) : rank2_corpus(o.seed, count, o.k, o.k);
    if (o.corpus.empty()) {
        if (count != 1) throw UsageError("--count above 1 needs --corpus DIR");
        return emit_ms(out, corpus.front());
    }
    fs::create_directories(o.corpus);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "rank2_%04zu.tlms", i);
        std::ofstream f(fs::path(o.corpus) / name, std::ios::binary);
        emit_ms(f, corpus[i]);
        if (!f) throw UsageError("cannot write into '" + o.corpus + "'");
    }
    out << "wrote " << corpus.size() << " files\n";
    return Affirmative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tropical Lagrangian multi-sections and toric vector bundles", "tlms"};
    app.require_subcommand(1);
    Options o;
    using Handler = std::function<int(const Options&, std::ostream&)>;
    const std::vector<std::pair<std::string, std::pair<std::string, Handler>>> commands{
        {"validate", {"check a multi-section and any Kaneyama or wall data", cmd_validate}},
        {"separable", {"report 1-, 2- and full separability", cmd_separable}},
        {"indecomposable", {"decide indecomposability of a 2-d multi-section", cmd_indecomposable}},
        {"slope-condition", {"triangularity types and the slope condition (rank 2)", cmd_slope_condition}},
        {"solve", {"brute-force consistency solver; prints Kaneyama data when solvable", cmd_solve}},
        {"verify-kaneyama", {"check the Kaneyama block", cmd_verify_kaneyama}},
        {"compose-loop", {"compose the wall transitions once around the origin", cmd_compose_loop}},
        {"bound", {"moduli dimension bounds", cmd_bound}},
        {"union", {"combinatorial union of two inputs", [](const Options& op, std::ostream& os) { return cmd_binary(op, os, union_c); }}},
        {"product", {"combinatorial fiber product of two inputs", [](const Options& op, std::ostream& os) { return cmd_binary(op, os, product_c); }}},
        {"dual", {"dual multi-section", cmd_dual}},
        {"separate", {"canonical separation", cmd_separate}},
        {"generate", {"seeded random rank-2 indecomposable multi-sections", cmd_generate}},
    };
    Handler chosen;
    for (const auto& [name, entry] : commands) {
        CLI::App* sub = app.add_subcommand(name, entry.first);
        sub->add_option("--input", o.inputs, "input file in tlms-v1 format")->take_all();
        sub->add_option("--seed", o.seed, "seed for generated corpora");
        sub->add_option("--corpus", o.corpus, "directory of .tlms files");
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text"}));
        sub->add_option("--k", o.k, "number of rays for generated fans");
        sub->add_option("--count", o.count, "number of generated instances");
        const Handler h = entry.second;
        sub->callback([&chosen, h] { chosen = h; });
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Affirmative : InputError;
    }
    try {
        return chosen(o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
    }
    return InputError;
}

}  // namespace tlms::cli
