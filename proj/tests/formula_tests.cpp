#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "poslog/corpus.hpp"
#include "poslog/enumerate.hpp"

#include <algorithm>
#include <set>

using namespace poslog;

namespace {

SignaturePtr gsig() { return corpus().t_graph.sig; }

std::vector<SortedVar> xs(int n) {
    std::vector<SortedVar> v;
    for (int i = 0; i < n; ++i) v.push_back({"V", i});
    return v;
}

std::set<std::string> rendered(const std::vector<Formula>& fs) {
    std::set<std::string> out;
    for (const auto& f : fs) out.insert(serialize(f, *gsig()));
    return out;
}

} // namespace

TEST_CASE("depth-0 atoms over one graph variable") {
    auto a = atoms0(*gsig(), xs(1));
    CHECK(rendered(a) == std::set<std::string>{"true", "false", "x=x", "E(x,x)"});
}

TEST_CASE("depth-0 atoms over two graph variables") {
    auto a = atoms0(*gsig(), xs(2));
    // truth, falsity, three equalities, four relation atoms
    CHECK(a.size() == 9);
    CHECK(rendered(a).count("E(y,x)") == 1);
    CHECK(rendered(a).count("x=y") == 1);
}

TEST_CASE("positive enumeration is canonical, stratified and monotone") {
    auto d1 = enumerate_positive(*gsig(), xs(1), 1);
    auto d2 = enumerate_positive(*gsig(), xs(1), 2);
    auto strata = enumerate_positive_strata(*gsig(), xs(1), 2);

    std::size_t total = 0;
    for (const auto& s : strata) total += s.size();
    CHECK(total == d2.size());

    std::set<Formula, FormulaLess> seen(d2.begin(), d2.end());
    CHECK(seen.size() == d2.size());          // duplicate-free
    for (const auto& f : d1) CHECK(seen.count(f) == 1);
    for (const auto& f : d2) {
        CHECK(f == canonicalize(f));
        CHECK(f.depth() <= 2);
        CHECK(classify(f).positive);
    }
}

TEST_CASE("p.p. supply sits inside the positive supply") {
    auto pos = enumerate_positive(*gsig(), xs(2), 1);
    auto pp = enumerate_pp(*gsig(), xs(2), 1);
    std::set<Formula, FormulaLess> seen(pos.begin(), pos.end());
    for (const auto& f : pp) {
        CHECK(is_positive_primitive(f));
        CHECK(seen.count(f) == 1);
    }
}

TEST_CASE("enumeration ceiling is enforced") {
    EnumOpts o;
    o.ceiling = 10;
    CHECK_THROWS_AS(enumerate_positive(*gsig(), xs(2), 2, o), ResourceCeiling);
}

TEST_CASE("canonicalize flattens, deduplicates and is idempotent") {
    Formula e = parse_formula("E(x,y)", gsig());
    Formula dup = Formula::or_({e, e, Formula::or_({e, parse_formula("x=y", gsig())})});
    Formula c = canonicalize(dup);
    CHECK(serialize(c, *gsig()) == "Or[x=y, E(x,y)]");
    CHECK(canonicalize(c) == c);

    Formula dn = Formula::not_(Formula::not_(e));
    CHECK(canonicalize(dn) == e);
}

TEST_CASE("canonicalize preserves evaluation") {
    const Corpus& k = corpus();
    auto p3 = k.graphs3->members[static_cast<std::size_t>(k.graphs3->index_of("p3"))];
    for (const auto& f : enumerate_fo(*gsig(), xs(2), 1)) {
        Formula wrapped = Formula::and_({f, Formula::truth(), f});
        Formula c = canonicalize(wrapped);
        for (auto& t : all_tuples(*p3, xs(2))) {
            Assignment a(xs(2), t);
            CHECK(eval(*p3, wrapped, a) == eval(*p3, c, a));
        }
    }
}

TEST_CASE("substitution avoids capture") {
    // x := y under a binder on y must rename the binder, not capture
    Formula f = parse_formula("exists y: E(x,y)", gsig());
    Formula g = substitute(f, {{{"V", 0}, Term::var({"V", 1})}});
    CHECK(g.free_vars() == std::vector<SortedVar>{{"V", 1}});

    const Corpus& k = corpus();
    auto p3 = k.graphs3->members[static_cast<std::size_t>(k.graphs3->index_of("p3"))];
    for (int e = 0; e < 3; ++e) {
        Assignment a;
        a.push({"V", 1}, e);
        Assignment b;
        b.push({"V", 0}, e);
        CHECK(eval(*p3, g, a) == eval(*p3, f, b));
    }
}

TEST_CASE("fragment classification on hand cases") {
    auto v = [&](const std::string& s) { return classify(parse_formula(s, gsig())); };

    CHECK(is_positive_primitive(parse_formula("exists z: E(x,z) & E(z,y)", gsig())));
    CHECK(!is_positive_primitive(parse_formula("E(x,y) | x=y", gsig())));

    CHECK(v("E(x,y) | x=y").positive);
    CHECK(v("forall x: E(x,x) -> false").h_universal_basic);
    CHECK(v("forall x: forall y: E(x,y) -> E(y,x)").h_inductive_basic);
    CHECK(!v("!E(x,y)").positive);
    CHECK(v("!E(x,y)").constructible);
    CHECK(v("!E(x,y)").first_order);
    CHECK(!v("forall y: E(x,y)").constructible);
}

TEST_CASE("structural order is strict and total on a supply") {
    auto fs = enumerate_positive(*gsig(), xs(2), 1);
    for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
        CHECK(Formula::cmp(fs[i], fs[i + 1]) < 0);
        CHECK(Formula::cmp(fs[i + 1], fs[i]) > 0);
        CHECK(Formula::cmp(fs[i], fs[i]) == 0);
    }
}
