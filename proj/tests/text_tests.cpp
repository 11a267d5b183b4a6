#include "doctest.h"

#include "poslog/corpus.hpp"
#include "poslog/enumerate.hpp"

#include <functional>
#include <random>

using namespace poslog;

namespace {

SignaturePtr gsig() { return corpus().t_graph.sig; }

} // namespace

TEST_CASE("corpus documents round-trip through the printer") {
    for (const char* file : {"t_graph.plt", "t_lo.plt", "t_unary.plt", "graphs3.pls",
                             "graphs4.pls", "chains3.pls", "unary2.pls"}) {
        ParsedDocument d1 = parse_document(read_file(corpus_dir() + "/" + std::string(file)));
        std::string printed = serialize_document(d1);
        ParsedDocument d2 = parse_document(printed);
        CHECK(serialize_document(d2) == printed);
    }
}

TEST_CASE("formula syntax: precedence and associativity") {
    auto rt = [&](const std::string& in) {
        return serialize(parse_formula(in, gsig()), *gsig());
    };
    // & binds tighter than |, ! tighter than &, quantifier bodies extend right
    CHECK(rt("E(x,y) & x=y | E(y,x)") == rt("(E(x,y) & x=y) | E(y,x)"));
    CHECK(rt("!E(x,y) & x=y") == rt("(!E(x,y)) & x=y"));
    CHECK(rt("exists z: E(x,z) & E(z,y)") == rt("exists z: (E(x,z) & E(z,y))"));
    CHECK(rt("E(x,y) -> E(y,x)") == "E(x,y) -> E(y,x)");
}

TEST_CASE("parse of a printed formula is the identity on canonical forms") {
    for (const auto& f : enumerate_fo(*gsig(), {{"V", 0}, {"V", 1}}, 1))
        CHECK(parse_formula(serialize(f, *gsig()), gsig()) == f);
}

TEST_CASE("random formulas survive a print/parse round trip") {
    std::mt19937 rng(20240817);
    auto atoms = atoms0(*gsig(), {{"V", 0}, {"V", 1}, {"V", 2}});
    auto pick = [&](std::size_t n) { return rng() % n; };

    std::function<Formula(int)> gen = [&](int d) -> Formula {
        if (d == 0) return atoms[pick(atoms.size())];
        switch (pick(5)) {
        case 0: return Formula::and_({gen(d - 1), gen(d - 1)});
        case 1: return Formula::or_({gen(d - 1), gen(d - 1)});
        case 2: return Formula::not_(gen(d - 1));
        case 3: return Formula::exists({"V", static_cast<int>(pick(3))}, gen(d - 1));
        default: return Formula::forall({"V", static_cast<int>(pick(3))}, gen(d - 1));
        }
    };
    for (int i = 0; i < 200; ++i) {
        Formula f = canonicalize(gen(3));
        CHECK(parse_formula(serialize(f, *gsig()), gsig()) == f);
    }
}

TEST_CASE("diagnostics carry position and severity") {
    try {
        parse_formula("E(x,", gsig());
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        REQUIRE(!e.diagnostics.empty());
        CHECK(e.diagnostics.front().severity == "error");
        CHECK(e.diagnostics.front().line == 1);
        CHECK(e.diagnostics.front().column > 1);
    }
}

TEST_CASE("undeclared symbols are rejected") {
    CHECK_THROWS(parse_formula("R(x,y)", gsig()));
    CHECK_THROWS(parse_document("#poslog v1 theory\nsignature L;\nsort V;\n"
                                "theory T h-inductive { axiom exists x: x=x & Q(x); }\n"));
}

TEST_CASE("structures with stray elements are rejected") {
    CHECK_THROWS(parse_document("#poslog v1 structure\nsignature L;\nsort V;\nrel E(V,V);\n"
                                "structure bad over L { V = {a}; E = {(a,b)}; }\n"));
}

TEST_CASE("theory kind is enforced at parse time") {
    CHECK_THROWS(parse_document("#poslog v1 theory\nsignature L;\nsort V;\nrel E(V,V);\n"
                                "theory T h-universal { axiom forall x: E(x,x) -> E(x,x); }\n"));
}
