#include "doctest.h"

#include "poslog/corpus.hpp"
#include "poslog/geometric.hpp"

using namespace poslog;

namespace {

std::vector<SortedVar> xy() { return {{"V", 0}, {"V", 1}}; }

BoundedTypeSpace graph_space(int d) {
    const Corpus& k = corpus();
    return type_space(k.t_graph, k.graphs3, xy(), d);
}

bool same_extension(const Formula& f, const Formula& g, const UniverseClass& c,
                    const std::vector<SortedVar>& vars) {
    for (const auto& m : c.members)
        for (auto& t : all_tuples(*m, vars)) {
            Assignment a(vars, t);
            if (eval(*m, f, a) != eval(*m, g, a)) return false;
        }
    return true;
}

} // namespace

TEST_CASE("dnf splits a conjunction of cases into p.p. disjuncts") {
    const Corpus& k = corpus();
    auto sig = k.t_graph.sig;
    Formula f = parse_formula("E(x,y) & (x=y | exists z: E(y,z))", sig);
    NormalGeometricFormula n = dnf(f);
    CHECK(n.disjuncts.size() == 2);
    for (const auto& d : n.disjuncts) CHECK(is_positive_primitive(d));
    CHECK(same_extension(f, n.to_formula(), *k.graphs4, xy()));
}

TEST_CASE("dnf renames quantifier prefixes apart from free variables") {
    // the bound x inside the first disjunct must not capture the free x
    const Corpus& k = corpus();
    auto sig = k.t_graph.sig;
    Formula f = parse_formula("(true | exists x: true) & (false | exists y: E(x,y))", sig);
    CHECK(same_extension(f, dnf(f).to_formula(), *k.graphs4, {{"V", 0}}));
}

TEST_CASE("dnf absorbs falsity and rejects non-geometric input") {
    auto sig = corpus().t_graph.sig;
    NormalGeometricFormula n = dnf(parse_formula("false | E(x,y)", sig));
    REQUIRE(n.disjuncts.size() == 1);
    CHECK(serialize(n.disjuncts[0], *sig) == "E(x,y)");

    CHECK_THROWS_AS(dnf(parse_formula("!E(x,y)", sig)), NonGeometric);
    CHECK_THROWS_AS(dnf(parse_formula("forall x: E(x,x)", sig)), NonGeometric);
}

TEST_CASE("dnf respects its disjunct ceiling") {
    auto sig = corpus().t_graph.sig;
    Formula wide = parse_formula("(E(x,x) | x=y) & (E(x,y) | E(y,x)) & (E(y,y) | x=x)", sig);
    CHECK_THROWS_AS(dnf(wide, 3), ResourceCeiling);
}

TEST_CASE("star images are normal types meeting their positive type") {
    BoundedTypeSpace s = graph_space(1);
    std::vector<Formula> pps = pp_supply(s);
    for (std::size_t t = 0; t < s.types.size(); ++t) {
        GeometricType g = star_map(s, static_cast<int>(t));
        CHECK(g.normal);
        Bitvec in = star_pp_set(s, static_cast<int>(t));
        for (const auto& m : g.members) {
            // each member is a disjunction with at least one disjunct in the type
            std::vector<Formula> kids =
                m.kind() == FKind::Or ? m.node().kids : std::vector<Formula>{m};
            bool meets = false;
            for (const auto& d : kids)
                for (std::size_t i = 0; i < pps.size(); ++i)
                    if (pps[i] == d && in.test(i)) meets = true;
            CHECK(meets);
        }
    }
}

TEST_CASE("star images are pairwise distinct on the graph pair space") {
    BoundedTypeSpace s = graph_space(1);
    for (std::size_t p = 0; p < s.types.size(); ++p)
        for (std::size_t q = p + 1; q < s.types.size(); ++q)
            CHECK(star_pp_set(s, static_cast<int>(p)) != star_pp_set(s, static_cast<int>(q)));
}

TEST_CASE("geometric complements are disjoint and covering on pec members") {
    BoundedTypeSpace s = graph_space(1);
    for (const char* m : {"E(x,y)", "E(x,y) | x=y", "exists z: E(x,z) & E(z,y)"}) {
        GeometricType pi;
        pi.vars = xy();
        pi.members.push_back(parse_formula(m, s.cls->sig));
        GeometricType co = geo_complement(pi, s);
        ComplementCheck r = check_complement(pi, co, s);
        CHECK(r.disjoint);
        CHECK(r.covering);
    }
}

TEST_CASE("type disjunction multiplies choice sets") {
    BoundedTypeSpace s = graph_space(1);
    GeometricType a, b;
    a.vars = b.vars = xy();
    a.members = {parse_formula("E(x,y)", s.cls->sig), parse_formula("x=y", s.cls->sig)};
    b.members = {parse_formula("E(y,x)", s.cls->sig)};
    GeometricType d = geo_type_disjunction({a, b});
    REQUIRE(d.members.size() == 2);
    for (const auto& m : d.members) CHECK(m.kind() == FKind::Or);
    CHECK_THROWS_AS(geo_type_disjunction({a, a, a}, 4), ResourceCeiling);
}

TEST_CASE("subsets of the space round-trip through geometric types") {
    BoundedTypeSpace s = graph_space(1);
    Formula e = parse_formula("E(x,y)", s.cls->sig);
    Bitvec x = s.basic(e);
    GeometricType g = subset_to_type(s, x);
    CHECK(basic_of_type(s, g) == x);

    Bitvec all(s.types.size());
    for (std::size_t t = 0; t < s.types.size(); ++t) all.set(t);
    CHECK(subset_to_type(s, all).members == std::vector<Formula>{Formula::truth()});
    CHECK(subset_to_type(s, Bitvec(s.types.size())).members ==
          std::vector<Formula>{Formula::falsity()});
}

TEST_CASE("negations compile to geometric types pointwise") {
    BoundedTypeSpace s = graph_space(1);
    int k3 = s.cls->index_of("k3");
    Formula ne = Formula::not_(parse_formula("E(x,y)", s.cls->sig));
    InfinitaryCompilation c = infinitary_to_geometric(ne, s, k3);
    CHECK(c.pointwise_ok);
    Bitvec want = s.basic(parse_formula("E(x,y)", s.cls->sig));
    for (std::size_t t = 0; t < s.types.size(); ++t)
        CHECK(c.subset.test(t) != want.test(t));
}
