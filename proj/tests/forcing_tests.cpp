#include "doctest.h"

#include "poslog/corpus.hpp"
#include "poslog/forcing.hpp"

using namespace poslog;

namespace {

StructurePtr member(const UniverseClassPtr& c, const std::string& name) {
    return c->members[static_cast<std::size_t>(c->index_of(name))];
}

std::vector<SortedVar> xy() { return {{"V", 0}, {"V", 1}}; }

ForcingContext graph_ctx(int d) {
    const Corpus& k = corpus();
    return ForcingContext(k.t_graph, k.graphs3, xy(), d, {}, k.graphs3->index_of("k3"));
}

} // namespace

TEST_CASE("forcing positive formulas on the triangle") {
    const Corpus& k = corpus();
    ForcingContext ctx = graph_ctx(1);
    Formula e = parse_formula("E(x,y)", k.graphs3->sig);

    auto k3 = member(k.graphs3, "k3");
    CHECK(forces(*k3, e, {0, 1}, ctx));
    CHECK(!forces(*k3, e, {0, 0}, ctx));

    // an isolated pair keeps the edgeless extension open, so nothing is forced
    auto e2 = member(k.graphs3, "e2");
    CHECK(!forces(*e2, e, {0, 1}, ctx));
    CHECK(!forces(*e2, Formula::not_(e), {0, 1}, ctx));
}

TEST_CASE("forcing monotone under continuation into the pec member") {
    const Corpus& k = corpus();
    ForcingContext ctx = graph_ctx(1);
    auto p3 = member(k.graphs3, "p3");
    auto k3 = member(k.graphs3, "k3");
    for (const auto& f : ctx.space().supply)
        for (const auto& h : homomorphisms(p3, k3))
            for (auto& t : all_tuples(*p3, xy()))
                if (forces(*p3, f, t, ctx))
                    CHECK(forces(*k3, f, h.apply_tuple(xy(), t), ctx));
}

TEST_CASE("non-positive subsets need a designated member") {
    const Corpus& k = corpus();
    ForcingContext blind(k.t_graph, k.graphs3, xy(), 1);
    Formula ne = Formula::not_(parse_formula("E(x,y)", k.graphs3->sig));
    CHECK_THROWS(blind.subset(ne));
    CHECK(graph_ctx(1).subset(ne).size() == graph_ctx(1).space().types.size());
}

TEST_CASE("genericity of the triangle, and its failure off it") {
    const Corpus& k = corpus();
    ForcingContext ctx = graph_ctx(1);

    GenericVerdict good = is_generic(member(k.graphs3, "k3"), ctx, 1);
    CHECK(good.generic);
    for (const auto& [head, tally] : good.per_connective) {
        CHECK(tally.failed == 0);
        CHECK(tally.checked > 0);
    }

    // satisfaction of !E on the isolated pair outruns forcing
    GenericVerdict bad = is_generic(member(k.graphs3, "e2"), ctx, 1);
    CHECK(!bad.generic);
    REQUIRE(bad.failing.has_value());
}

TEST_CASE("existential members of the graph class") {
    const Corpus& k = corpus();
    ExistentialVerdict good = is_existential(member(k.graphs3, "k3"), *k.graphs3, 1);
    CHECK(good.existential);

    ExistentialVerdict bad = is_existential(member(k.graphs3, "e2"), *k.graphs3, 1);
    CHECK(!bad.existential);
    CHECK(!bad.pi.empty());
    CHECK(!bad.continuation.empty());
}

TEST_CASE("back and forth agrees with isomorphism on small graphs") {
    const Corpus& k = corpus();
    CHECK(back_and_forth(member(k.graphs3, "k3"), member(k.graphs3, "k3")).equivalent);
    CHECK(back_and_forth(member(k.graphs3, "e3"), member(k.graphs3, "e3")).equivalent);

    BackAndForthSystem s =
        back_and_forth(member(k.graphs3, "p3"), member(k.graphs3, "k2k1"));
    CHECK(!s.equivalent);
    REQUIRE(s.failure.has_value());
    CHECK((s.failure_direction == "forth" || s.failure_direction == "back"));

    CHECK(!back_and_forth(member(k.graphs3, "k2"), member(k.graphs3, "e2")).equivalent);
}

TEST_CASE("surviving pairs agree on every bounded formula") {
    const Corpus& k = corpus();
    auto k3 = member(k.graphs3, "k3");
    BackAndForthSystem s = back_and_forth(k3, k3);
    REQUIRE(s.equivalent);
    // some surviving singleton pair
    for (const auto& p : s.pairs) {
        if (p.a.size() != 1) continue;
        AgreementReport r = infinitary_agreement(k3, k3, p.a, p.b, 1);
        CHECK(r.agree);
        CHECK(r.checked > 0);
        break;
    }
}

TEST_CASE("agreement check rejects pairs outside the system") {
    const Corpus& k = corpus();
    auto k2 = member(k.graphs3, "k2");
    auto e2 = member(k.graphs3, "e2");
    CHECK_THROWS(infinitary_agreement(k2, e2, {{"V", 0}}, {{"V", 0}}, 1));
}
