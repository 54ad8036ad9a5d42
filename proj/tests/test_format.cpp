#include <doctest.h>

#include "fixtures.hpp"
#include "tlms/rank2.hpp"

using namespace tlms;

namespace {

void check_error(const std::string& text, std::size_t line, std::size_t column, const std::string& fragment) {
    try {
        parse_document(text);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == line);
        CHECK(e.column() == column);
        CHECK(e.detail().find(fragment) != std::string::npos);
    }
}

const std::string kP2 = "tlms-v1\n\n[fan]\nrays = (1,0) (0,1) (-1,-1)\n";

}  // namespace

TEST_CASE("zero section document") {
    const Document d = parse_document(kP2 + "\n[multisection]\nfrom = bundle\nsheets.1 = (0,0)\nsheets.2 = (0,0)\nsheets.3 = (0,0)\n");
    REQUIRE(d.multisection.has_value());
    CHECK(d.multisection->rank == 1);
    CHECK(isomorphic(*d.multisection, zero_section(fixtures::p2())));
}

TEST_CASE("corpus documents") {
    const Document t = read_document(fixtures::corpus_path("tangent_p2.tlms"));
    CHECK(t.multisection->rank == 2);
    CHECK(*t.multisection == fixtures::tangent_p2());
    for (const char* name : {"line_d0.tlms", "line_d1.tlms", "line_d2.tlms", "zero_p2.tlms", "obstructed_p2_uu.tlms",
                             "decomposable_union.tlms"}) {
        const Document d = read_document(fixtures::corpus_path(name));
        CHECK(validate(*d.multisection).empty());
    }
    CHECK(isomorphic(fixtures::corpus_ms("line_d1.tlms"), fixtures::line_d1()));
    CHECK(isomorphic(fixtures::corpus_ms("line_d0.tlms"), fixtures::line_d0()));
    CHECK(isomorphic(fixtures::corpus_ms("line_d2.tlms"), fixtures::line_d2()));
}

TEST_CASE("canonical documents round-trip byte for byte") {
    const auto c = construct_kaneyama_rank2(fixtures::tangent_p2());
    Document d;
    d.fan = c.normalized.fan;
    d.multisection = c.normalized;
    set_kaneyama(d, c.data);
    d.wall = c.walls;
    const std::string text = emit_document(d);
    const Document back = parse_document(text);
    CHECK(emit_document(back) == text);
    CHECK(*back.multisection == c.normalized);
    CHECK(kaneyama_data(back) == c.data);
    CHECK(back.wall->factors.size() == c.walls.factors.size());
    CHECK(text.find("g.1.2 = 1 0 ; 1 1") != std::string::npos);
    CHECK(text.find("\n\n[kaneyama]\n") != std::string::npos);

    const MultiSection weighted = union_c(zero_section(fixtures::p2()), zero_section(fixtures::p2()));
    Document w;
    w.fan = weighted.fan;
    w.multisection = weighted;
    const std::string wt = emit_document(w);
    CHECK(wt.find("weights.1 = 2") != std::string::npos);
    CHECK(emit_document(parse_document(wt)) == wt);
    CHECK(*parse_document(wt).multisection == weighted);
}

TEST_CASE("forward pairs are completed") {
    const auto c = construct_kaneyama_rank2(fixtures::tangent_p2());
    Document d;
    d.fan = c.normalized.fan;
    d.multisection = c.normalized;
    for (std::size_t i = 0; i < 3; ++i) d.kaneyama[{i, (i + 1) % 3}] = c.data.at(i, (i + 1) % 3);
    CHECK(kaneyama_data(d) == c.data);
    d.kaneyama.erase({2, 0});
    CHECK_THROWS_AS(kaneyama_data(d), InvalidInputError);
}

TEST_CASE("positioned errors") {
    check_error("tlms-v2\n", 1, 1, "header");
    check_error("", 1, 1, "missing header");
    check_error(kP2 + "[bogus]\n", 5, 2, "unknown section");
    check_error("tlms-v1\n[fan]\nrays = (1,0) (0,1 (-1,-1)\n", 3, 19, "expected ')'");
    check_error("tlms-v1\n[fan]\nrays = (1,0) (0,1) (-1,99999999999999999999)\n", 3, 24, "overflow");
    check_error("tlms-v1\n[fan]\nrays = (0,1) (1,0) (-1,-1)\n", 3, 7, "anticlockwise");
    check_error("tlms-v1\n[fan]\nrays = (2,0) (0,1) (-1,-1)\n", 3, 7, "not primitive");
    check_error(kP2 + "rays = (1,0)\n", 5, 1, "duplicate key");
    check_error(kP2 + "\n[multisection]\nfrom = bundle\nsheets.1 = (0,0)\nsheets.2 = (0,0)\nsheets.3 = (0,0)\n\n[kaneyama]\ng.1.2 = 1/0\n",
                13, 9, "malformed rational");
    check_error(kP2 + "\n[multisection]\nfrom = bundle\nsheets.1 = (0,0)\nsheets.4 = (0,0)\n", 9, 1, "out of range");
    check_error(kP2 + "\n[multisection]\nsheets.1 = (0,0)\nsheets.2 = (0,0)\nsheets.3 = (0,0)\nmatch.1 = 1\nmatch.2 = 2\n", 11, 11,
                "label out of range");
    check_error(kP2 + "\n[multisection]\nfrom = cells\nsheets.1 = (0,0)\nsheets.2 = (0,0)\nsheets.3 = (0,0)\nraylifts.1 = 1>1\n"
                      "raylifts.2 = 1-1\n",
                12, 15, "expected '>'");
}

TEST_CASE("cells are parsed without validation") {
    const Document d = parse_document(kP2 + "\n[multisection]\nfrom = cells\nsheets.1 = (0,0)\nsheets.2 = (0,0)\nsheets.3 = (1,0)\n"
                                            "raylifts.1 = 1>1\nraylifts.2 = 1>1\nraylifts.3 = 1>1\n");
    CHECK_FALSE(validate(*d.multisection).empty());
}

TEST_CASE("comments and blank lines are ignored") {
    const std::string text = "# leading comment\ntlms-v1\n  # indented comment\n[fan]\n\nrays = (1,0) (0,1) (-1,-1)\r\n";
    CHECK(parse_document(text).fan == fixtures::p2());
    CHECK(emit_document(parse_document(text)) == kP2);
}
