#include "doctest.h"

#include "poslog/corpus.hpp"

using namespace poslog;

namespace {

StructurePtr member(const UniverseClassPtr& c, const std::string& name) {
    return c->members[static_cast<std::size_t>(c->index_of(name))];
}

} // namespace

TEST_CASE("homomorphism counts on complete graphs") {
    const Corpus& k = corpus();
    auto k2 = member(k.graphs3, "k2");
    auto k3 = member(k.graphs3, "k3");
    // injective edge-preserving maps: 3 choices then 2
    CHECK(homomorphisms(k2, k3).size() == 6);
    // k3 needs three pairwise adjacent images in a two-clique
    CHECK(homomorphisms(k3, k2).empty());
    // every self-map of k3 avoiding the diagonal: the 6 permutations
    CHECK(homomorphisms(k3, k3).size() == 6);
}

TEST_CASE("homomorphisms are exhaustive and duplicate-free") {
    const Corpus& k = corpus();
    auto p3 = member(k.graphs3, "p3");
    auto k3 = member(k.graphs3, "k3");
    auto hs = homomorphisms(p3, k3);
    for (std::size_t i = 0; i + 1 < hs.size(); ++i) CHECK(hs[i] < hs[i + 1]);
    // oracle: middle vertex anywhere (3), neighbors anywhere off it (2 each)
    CHECK(hs.size() == 12);
    for (const auto& h : hs) CHECK(is_homomorphism(*p3, *k3, h.map));
}

TEST_CASE("identity and composition") {
    const Corpus& k = corpus();
    auto k3 = member(k.graphs3, "k3");
    Homomorphism id = identity_hom(k3);
    CHECK(id.is_identity());
    auto hs = homomorphisms(k3, k3);
    for (const auto& h : hs) {
        CHECK(compose(id, h) == h);
        CHECK(compose(h, id) == h);
    }
}

TEST_CASE("immersion via the retraction criterion") {
    const Corpus& k = corpus();
    auto e1 = member(k.graphs3, "e1");
    auto k2 = member(k.graphs3, "k2");
    auto k3 = member(k.graphs3, "k3");

    // identity on a pec member is an immersion
    ImmersionVerdict idv = is_immersion(identity_hom(k3));
    CHECK(idv.immersion);
    REQUIRE(idv.retraction.has_value());
    CHECK(idv.retraction->is_identity());

    // the single vertex gains a neighbor inside k2: not reflected
    auto into = homomorphisms(e1, k2);
    REQUIRE(!into.empty());
    ImmersionVerdict v = is_immersion(into.front());
    CHECK(!v.immersion);
    REQUIRE(v.witness.has_value());
    CHECK(serialize(*v.witness, *k.graphs3->sig) == "exists y: E(x,y)");
}

TEST_CASE("pec members of the shipped classes") {
    const Corpus& k = corpus();
    auto names = [&](const UniverseClassPtr& c) {
        std::vector<std::string> out;
        for (int i : pec_members(*c))
            out.push_back(c->members[static_cast<std::size_t>(i)]->name);
        return out;
    };
    CHECK(names(k.graphs3) == std::vector<std::string>{"k3"});
    CHECK(names(k.graphs4) == std::vector<std::string>{"k4"});
    CHECK(names(k.chains3) == std::vector<std::string>{"chain3"});
    CHECK(names(k.unary2) == std::vector<std::string>{"u1"});
}

TEST_CASE("pec verdicts carry witnesses") {
    const Corpus& k = corpus();
    PecVerdict good = is_pec(member(k.graphs3, "k3"), *k.graphs3);
    CHECK(good.pec);
    CHECK(!good.counterexample.has_value());

    PecVerdict bad = is_pec(member(k.graphs3, "k2"), *k.graphs3);
    CHECK(!bad.pec);
    REQUIRE(bad.counterexample.has_value());
    REQUIRE(bad.witness.has_value());
    CHECK(classify(*bad.witness).positive);
}

TEST_CASE("continuation into a pec member") {
    const Corpus& k = corpus();
    Homomorphism c = continue_to_pec(member(k.graphs3, "e2"), *k.graphs3);
    CHECK(c.target->name == "k3");
    Homomorphism self = continue_to_pec(member(k.graphs3, "k3"), *k.graphs3);
    CHECK(self.is_identity());
}

TEST_CASE("colimit of a finite chain is its final stage") {
    const Corpus& k = corpus();
    auto e1 = member(k.graphs3, "e1");
    auto k2 = member(k.graphs3, "k2");
    auto k3 = member(k.graphs3, "k3");
    Homomorphism f = homomorphisms(e1, k2).front();
    Homomorphism g = homomorphisms(k2, k3).front();
    Colimit c = directed_colimit({f, g});
    CHECK(c.structure->name == "k3");
    CHECK(c.composite == compose(f, g));
}

TEST_CASE("joint continuation identifies the designated tuples") {
    const Corpus& k = corpus();
    auto k2 = member(k.graphs3, "k2");
    auto k3 = member(k.graphs3, "k3");
    std::vector<SortedVar> v{{"V", 0}};
    auto j = joint_continuation(k2, k3, *k.graphs3, v, {0}, {0});
    REQUIRE(j.has_value());
    CHECK(j->f.apply("V", 0) == j->g.apply("V", 0));
    // tuples of different bounded types cannot be identified
    CHECK_THROWS(joint_continuation(member(k.graphs3, "e1"), k2, *k.graphs3, v, {0}, {0}));
}
