#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "fixtures.hpp"

using namespace tlms;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string corpus(const char* name) { return fixtures::corpus_path(name); }

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "tlms_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p);
    f << text;
}

}  // namespace

TEST_CASE("solve prints Kaneyama data for the tangent bundle") {
    const Result r = run({"solve", "--input", corpus("tangent_p2.tlms")});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("verdict: unobstructed\n", 0) == 0);
    const auto at = r.out.find("tlms-v1");
    REQUIRE(at != std::string::npos);
    const Document d = parse_document(r.out.substr(at));
    const KaneyamaData g = kaneyama_data(d);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t b = 0; b < 2; ++b) {
                    const Rational& x = g.at(i, j)(a, b);
                    CHECK((x == 0 || x == 1 || x == -1));
                }
    CHECK(validate_kaneyama(*d.multisection, g).empty());

    const auto file = scratch("solved.tlms");
    write(file, r.out.substr(at));
    CHECK(run({"verify-kaneyama", "--input", file.string()}).code == 0);
    CHECK(run({"validate", "--input", file.string()}).code == 0);
    const Result loop = run({"compose-loop", "--input", file.string()});
    CHECK(loop.code == 0);
    CHECK(loop.out == "loop: 1 0 ; 0 1\nconsistent: yes\n");
}

TEST_CASE("obstructed instance") {
    const Result s = run({"slope-condition", "--input", corpus("obstructed_p2_uu.tlms")});
    CHECK(s.code == 1);
    CHECK(s.out == "types: [U, U]\nclosing: L\nslope condition: fails\n");
    const Result v = run({"solve", "--input", corpus("obstructed_p2_uu.tlms")});
    CHECK(v.code == 1);
    CHECK(v.out.find("verdict: obstructed") != std::string::npos);
    CHECK(v.out.find("defect: ") != std::string::npos);
}

TEST_CASE("bound") {
    const Result r = run({"bound", "--input", corpus("tangent_p2.tlms")});
    CHECK(r.code == 0);
    CHECK(r.out == "general: 3, rank2: 2\n");
    CHECK(run({"bound", "--input", corpus("zero_p2.tlms")}).out == "general: 0\n");
}

TEST_CASE("separability and indecomposability verdicts") {
    CHECK(run({"separable", "--input", corpus("decomposable_union.tlms")}).code == 0);
    CHECK(run({"indecomposable", "--input", corpus("decomposable_union.tlms")}).code == 1);
    CHECK(run({"indecomposable", "--input", corpus("tangent_p2.tlms")}).code == 0);
}

TEST_CASE("operations emit documents") {
    const Result u = run({"union", "--input", corpus("line_d0.tlms"), corpus("line_d1.tlms")});
    CHECK(u.code == 0);
    CHECK(isomorphic(*parse_document(u.out).multisection, union_c(fixtures::line_d0(), fixtures::line_d1())));
    const Result p = run({"product", "--input", corpus("line_d1.tlms"), corpus("tangent_p2.tlms")});
    CHECK(p.code == 0);
    CHECK(parse_document(p.out).multisection->rank == 2);
    const Result d = run({"dual", "--input", corpus("line_d1.tlms")});
    CHECK(*parse_document(d.out).multisection == dual(fixtures::line_d1()));
    const Result s = run({"separate", "--input", corpus("tangent_p2.tlms")});
    CHECK(s.code == 0);
    CHECK(isomorphic(*parse_document(s.out).multisection, fixtures::tangent_p2()));
}

TEST_CASE("input errors exit with 2") {
    CHECK(run({"verify-kaneyama", "--input", corpus("tangent_p2.tlms")}).code == 2);
    CHECK(run({"compose-loop", "--input", corpus("tangent_p2.tlms")}).code == 2);
    CHECK(run({"solve", "--input", "/nonexistent/file.tlms"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"bound", "--input", corpus("tangent_p2.tlms"), "--format", "json"}).code == 2);
    CHECK(run({"union", "--input", corpus("line_d0.tlms")}).code == 2);
    CHECK(run({"slope-condition", "--input", corpus("decomposable_union.tlms")}).code == 2);

    const auto bad = scratch("bad.tlms");
    write(bad, "tlms-v1\n[fan]\nrays = (1,0) (0,1) (-1,-1)\n\n[kaneyama]\n");
    const Result r = run({"validate", "--input", bad.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find(bad.string() + ":5:1:") != std::string::npos);

    const auto broken = scratch("broken.tlms");
    write(broken, "tlms-v1\n[fan]\nrays = (1,0) (0,1) (-1,-1)\n[multisection]\nfrom = cells\nsheets.1 = (0,0)\nsheets.2 = (0,0)\n"
                  "sheets.3 = (1,0)\nraylifts.1 = 1>1\nraylifts.2 = 1>1\nraylifts.3 = 1>1\n");
    const Result v = run({"validate", "--input", broken.string()});
    CHECK(v.code == 1);
    CHECK(v.out.find("continuity") != std::string::npos);
}

TEST_CASE("corpus and generated runs are deterministic") {
    const Result c = run({"solve", "--corpus", TLMS_CORPUS_DIR});
    CHECK(c.code == 1);
    CHECK(c.out.find("tangent_p2.tlms: unobstructed\n") != std::string::npos);
    CHECK(c.out.find("obstructed_p2_uu.tlms: obstructed\n") != std::string::npos);
    CHECK(c.out.find("decomposable_union.tlms: skipped") != std::string::npos);

    const Result a = run({"solve", "--seed", "9", "--count", "40"});
    CHECK(a.code == 0);
    CHECK(a.out.find("agreement: 40/40") != std::string::npos);
    CHECK(run({"solve", "--seed", "9", "--count", "40"}).out == a.out);

    const Result g1 = run({"generate", "--seed", "5", "--k", "6"});
    CHECK(g1.code == 0);
    CHECK(run({"generate", "--seed", "5", "--k", "6"}).out == g1.out);
    const Document d = parse_document(g1.out);
    CHECK(d.fan.size() == 6);
    CHECK(is_indecomposable_dim2(*d.multisection));

    const auto dir = scratch("generated");
    std::filesystem::remove_all(dir);
    const Result g2 = run({"generate", "--seed", "5", "--count", "12", "--corpus", dir.string()});
    CHECK(g2.code == 0);
    CHECK(g2.out == "wrote 12 files\n");
    CHECK(run({"generate", "--count", "3"}).code == 2);
}
