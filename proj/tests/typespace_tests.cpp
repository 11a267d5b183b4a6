#include "doctest.h"

#include "poslog/corpus.hpp"
#include "poslog/typespace.hpp"

using namespace poslog;

namespace {

std::vector<SortedVar> xy() { return {{"V", 0}, {"V", 1}}; }

BoundedTypeSpace chains_space(int d, std::vector<SortedVar> vars = xy()) {
    const Corpus& k = corpus();
    return type_space(k.t_lo, k.chains3, std::move(vars), d);
}

} // namespace

TEST_CASE("bounded type of a tuple in the triangle") {
    const Corpus& k = corpus();
    auto k3 = k.graphs3->members[static_cast<std::size_t>(k.graphs3->index_of("k3"))];
    BoundedPositiveType t = tp_pos(*k3, {{"V", 0}}, {0}, 1);
    auto sig = k.graphs3->sig;
    CHECK(t.contains(parse_formula("exists y: E(x,y)", sig)));
    CHECK(t.contains(parse_formula("x=x", sig)));
    CHECK(!t.contains(parse_formula("E(x,x)", sig)));
    for (const auto& f : t.formulas) CHECK(classify(f).positive);
}

TEST_CASE("pair types over the chains at depth zero") {
    // the three order relations a tuple can exhibit: =, <, >
    BoundedTypeSpace s = chains_space(0);
    CHECK(s.types.size() == 3);
    CHECK(s.pec == std::vector<int>{2});
}

TEST_CASE("pair types over the chains at depth one") {
    // position in the chain becomes visible: all nine ordered pairs separate
    BoundedTypeSpace s = chains_space(1);
    CHECK(s.types.size() == 9);
    for (const auto& t : s.types) CHECK(!t.realizations.empty());
}

TEST_CASE("basic sets respect satisfaction tables") {
    BoundedTypeSpace s = chains_space(1);
    Formula lt = parse_formula("x<y", s.cls->sig);
    Bitvec b = s.basic(lt);
    for (std::size_t t = 0; t < s.types.size(); ++t)
        CHECK(b.test(t) == s.types[t].sat.test(static_cast<std::size_t>(s.supply_index(lt))));
}

TEST_CASE("resultant of the order atom contains both exclusions") {
    BoundedTypeSpace s = chains_space(1);
    auto res = resultant_set(s, parse_formula("x<y", s.cls->sig));
    auto has = [&](const std::string& f) {
        Formula g = parse_formula(f, s.cls->sig);
        for (const auto& m : res)
            if (m == g) return true;
        return false;
    };
    CHECK(has("x=y"));
    CHECK(has("y<x"));
    CHECK(!has("x<y"));
    // resultants never share a realization with the formula, anywhere in the class
    Bitvec phi_pts = s.point_sat[static_cast<std::size_t>(
        s.supply_index(parse_formula("x<y", s.cls->sig)))];
    for (const auto& m : res)
        CHECK(!phi_pts.intersects(s.point_sat[static_cast<std::size_t>(s.supply_index(m))]));
}

TEST_CASE("spectral complements are exactly covered at depth one") {
    BoundedTypeSpace s = chains_space(1);
    for (const char* f : {"x<y", "y<x", "x=y"}) {
        CoverReport r = spectral_complement_cover(s, parse_formula(f, s.cls->sig));
        CHECK(r.covered);
        CHECK(r.uncovered_types.empty());
    }
}

TEST_CASE("hausdorff witnesses separate every type pair") {
    BoundedTypeSpace s = chains_space(1);
    for (std::size_t p = 0; p < s.types.size(); ++p)
        for (std::size_t q = p + 1; q < s.types.size(); ++q) {
            Formula w = hausdorff_witness(s, static_cast<int>(p), static_cast<int>(q));
            std::size_t i = static_cast<std::size_t>(s.supply_index(w));
            CHECK(s.types[p].sat.test(i) != s.types[q].sat.test(i));
        }
}

TEST_CASE("the strict linear orders are positively model complete at depth one") {
    BoundedTypeSpace s = chains_space(1);
    PmcResult r = pmc_check(s, 0);
    CHECK(r.failures.empty());
    bool golden = false;
    for (const auto& [phi, psi] : r.complements)
        if (serialize(phi, *s.cls->sig) == "x<y")
            golden = serialize(psi, *s.cls->sig) == "Or[x=y, y<x]";
    CHECK(golden);
}

TEST_CASE("constructible evaluation is complementary on negations") {
    BoundedTypeSpace s = chains_space(1);
    Formula lt = parse_formula("x<y", s.cls->sig);
    ConstructibleSet pos = constructible_eval(s, lt);
    ConstructibleSet neg = constructible_eval(s, Formula::not_(lt));
    CHECK(pos.disagreements.empty());
    CHECK(neg.disagreements.empty());
    for (std::size_t t = 0; t < s.types.size(); ++t)
        CHECK(pos.extension.test(t) != neg.extension.test(t));
}

TEST_CASE("constructible resultants escalate with depth") {
    const Corpus& k = corpus();
    BoundedTypeSpace s = type_space(k.t_lo, k.chains3, {{"V", 0}}, 2);
    Formula chi = parse_formula("exists z: z<x", s.cls->sig);
    ConstructibleResultant shallow = constructible_resultant(s, chi, 1);
    ConstructibleResultant deep = constructible_resultant(s, chi, 2);
    CHECK(!shallow.cover.covered);
    CHECK(deep.cover.covered);
    CHECK(deep.head_case == "positive");
}

TEST_CASE("an empty positive class is rejected") {
    const Corpus& k = corpus();
    auto empty = std::make_shared<UniverseClass>();
    empty->name = "none";
    empty->sig = k.graphs3->sig;
    CHECK_THROWS_AS(type_space(k.t_graph, empty, xy(), 1), EmptyPositiveClass);
}
