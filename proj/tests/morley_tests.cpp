#include "doctest.h"

#include "poslog/corpus.hpp"
#include "poslog/morley.hpp"

using namespace poslog;

namespace {

StructurePtr member(const UniverseClassPtr& c, const std::string& name) {
    return c->members[static_cast<std::size_t>(c->index_of(name))];
}

Theory empty_graph_theory() {
    Theory t;
    t.name = "T0";
    t.sig = corpus().t_graph.sig;
    t.kind = TheoryKind::HInductive;
    return t;
}

} // namespace

TEST_CASE("fragment closure adds subformulas and negations") {
    auto sig = corpus().t_graph.sig;
    Fragment f = close_fragment(sig, {parse_formula("E(x,y)", sig)});
    REQUIRE(f.members.size() == 2);
    CHECK(f.index_of(parse_formula("E(x,y)", sig)) >= 0);
    CHECK(f.index_of(parse_formula("!E(x,y)", sig)) >= 0);

    Fragment g = close_fragment(sig, {parse_formula("exists y: E(x,y)", sig)});
    CHECK(g.index_of(parse_formula("E(x,y)", sig)) >= 0);
    CHECK(g.index_of(parse_formula("exists y: E(x,y)", sig)) >= 0);
    CHECK(g.index_of(parse_formula("!(exists y: E(x,y))", sig)) >= 0);
}

TEST_CASE("closure rewrites implication and universals away") {
    auto sig = corpus().t_graph.sig;
    Fragment f = close_fragment(sig, {parse_formula("forall x: E(x,x) -> false", sig)});
    for (const auto& m : f.members) {
        CHECK(m.kind() != FKind::Implies);
        CHECK(m.kind() != FKind::Forall);
    }
}

TEST_CASE("atomic fragment yields the four tracking axioms") {
    auto sig = corpus().t_graph.sig;
    Theory t = empty_graph_theory();
    Fragment f = close_fragment(sig, {parse_formula("E(x,y)", sig)});
    MorleyizedTheory g = morleyize(t, f);

    REQUIRE(g.axioms.size() == 4);
    int i = 0, iii = 0;
    for (const auto& ax : g.axioms) {
        if (ax.clause == "i") ++i;
        if (ax.clause == "iii") ++iii;
        CHECK(classify(ax.sentence).g_inductive_basic);
    }
    CHECK(i == 2);
    CHECK(iii == 2);
    CHECK(g.theory().kind == TheoryKind::GInductive);
}

TEST_CASE("fragment coverage is enforced") {
    auto sig = corpus().t_graph.sig;
    Fragment tiny = close_fragment(sig, {parse_formula("E(x,y)", sig)});
    CHECK_THROWS_AS(morleyize(corpus().t_graph, tiny), FragmentCoverage);
}

TEST_CASE("expansion satisfies every axiom and reduct-checks") {
    const Corpus& k = corpus();
    Fragment f = close_fragment(k.t_graph.sig, k.t_graph.sentences);
    MorleyizedTheory g = morleyize(k.t_graph, f);

    for (const char* name : {"e1", "k2", "p3", "k3"}) {
        StructurePtr n = expand(member(k.graphs3, name), g);
        ReductReport r = reduct_check(n, g);
        CHECK(r.ok);
        CHECK(r.violations.empty());
    }
}

TEST_CASE("table mutations are caught by the reduct check") {
    const Corpus& k = corpus();
    Fragment f = close_fragment(k.t_graph.sig, k.t_graph.sentences);
    MorleyizedTheory g = morleyize(k.t_graph, f);
    StructurePtr n = expand(member(k.graphs3, "k3"), g);

    // enlarge one tracking table
    auto grown = std::make_shared<FiniteStructure>(*n);
    Formula e = parse_formula("E(x,y)", k.t_graph.sig);
    std::string re = g.rel_names[static_cast<std::size_t>(g.fragment.index_of(e))];
    grown->relations[re].insert({0, 0});
    CHECK(!reduct_check(grown, g).ok);

    // shrink it
    auto shrunk = std::make_shared<FiniteStructure>(*n);
    shrunk->relations[re].erase({0, 1});
    CHECK(!reduct_check(shrunk, g).ok);
}

TEST_CASE("tracking tables equal their formulas' extensions") {
    const Corpus& k = corpus();
    auto sig = k.t_graph.sig;
    Fragment f = close_fragment(sig, {parse_formula("exists y: E(x,y)", sig)});
    Theory t = empty_graph_theory();
    MorleyizedTheory g = morleyize(t, f);

    StructurePtr M = member(k.graphs3, "p3");
    StructurePtr n = expand(M, g);
    int idx = g.fragment.index_of(parse_formula("exists y: E(x,y)", sig));
    const auto& table = n->relations.at(g.rel_names[static_cast<std::size_t>(idx)]);
    // in the path every vertex has a neighbor
    CHECK(table.size() == 3);
}

TEST_CASE("homomorphism of expansions coincides with fragment preservation") {
    const Corpus& k = corpus();
    Fragment f = close_fragment(k.t_graph.sig, k.t_graph.sentences);
    MorleyizedTheory g = morleyize(k.t_graph, f);

    auto p3 = member(k.graphs3, "p3");
    auto k3 = member(k.graphs3, "k3");
    for (const auto& h : homomorphisms(p3, k3)) {
        FunctorVerdict v = functor_check(h.map, p3, k3, g);
        CHECK(v.agree);
        CHECK(v.lg_homomorphism == v.fragment_elementary);
    }
    // a non-homomorphic sorted map must fail on both sides equally
    FunctorVerdict bad = functor_check({{"V", {0, 0, 0}}}, p3, p3, g);
    CHECK(bad.agree);
    CHECK(!bad.lg_homomorphism);
}
