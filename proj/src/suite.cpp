#include "poslog/suite.hpp"

#include "poslog/corpus.hpp"
#include "poslog/forcing.hpp"
#include "poslog/geometric.hpp"
#include "poslog/morley.hpp"

#include <algorithm>
#include <sstream>

namespace poslog {

namespace {

std::vector<SortedVar> var_x() { return {{"V", 0}}; }
std::vector<SortedVar> var_xy() { return {{"V", 0}, {"V", 1}}; }

// the spaces criteria 3, 6 and 7 quantify over
struct Spaces {
    std::vector<std::pair<std::string, BoundedTypeSpace>> all;

    Spaces() {
        const Corpus& k = corpus();
        all.emplace_back("graphs3/x/d2", type_space(k.t_graph, k.graphs3, var_x(), 2));
        all.emplace_back("graphs3/xy/d1", type_space(k.t_graph, k.graphs3, var_xy(), 1));
        all.emplace_back("graphs3/xy/d2", type_space(k.t_graph, k.graphs3, var_xy(), 2));
        all.emplace_back("chains3/x/d1", type_space(k.t_lo, k.chains3, var_x(), 1));
        all.emplace_back("chains3/x/d2", type_space(k.t_lo, k.chains3, var_x(), 2));
        all.emplace_back("chains3/xy/d1", type_space(k.t_lo, k.chains3, var_xy(), 1));
        all.emplace_back("unary2/x/d1", type_space(k.t_unary, k.unary2, var_x(), 1));
    }
};

const Spaces& spaces() {
    static const Spaces s;
    return s;
}

CriterionResult c1_dnf_soundness() {
    CriterionResult r{1, "dnf soundness", true, ""};
    const Corpus& k = corpus();
    EnumOpts opts;
    opts.ceiling = 50000000;
    long long formulas = 0, points = 0;
    auto check = [&](const std::vector<SortedVar>& vars, int d) {
        for (const auto& f : enumerate_positive(*k.graphs4->sig, vars, d, opts)) {
            Formula g = dnf(f).to_formula();
            ++formulas;
            for (const auto& M : k.graphs4->members) {
                for (auto& tup : all_tuples(*M, vars)) {
                    Assignment a(vars, tup);
                    ++points;
                    if (eval(*M, f, a) != eval(*M, g, a)) {
                        r.pass = false;
                        if (r.detail.empty())
                            r.detail = "mismatch: " + serialize(f, *k.graphs4->sig) +
                                       " on " + M->name;
                        return;
                    }
                }
            }
        }
    };
    check(var_x(), 3);
    if (r.pass) check(var_xy(), 2);
    if (r.pass)
        r.detail = std::to_string(formulas) + " geometric formulas, " +
                   std::to_string(points) + " evaluation points";
    return r;
}

CriterionResult c2_spectral_complement() {
    CriterionResult r{2, "spectral complement cover", true, ""};
    const Corpus& k = corpus();
    BoundedTypeSpace S = type_space(k.t_lo, k.chains3, var_xy(), 1);
    int checked = 0;
    std::size_t max_cover = 0;
    for (const auto& phi : S.supply) {
        if (phi.depth() > 0) continue;
        CoverReport c = spectral_complement_cover(S, phi);
        ++checked;
        max_cover = std::max(max_cover, c.cover_size);
        if (!c.covered) {
            r.pass = false;
            r.detail = "uncovered complement for " + serialize(phi, *S.cls->sig);
            return r;
        }
    }
    r.detail = std::to_string(checked) + " basic formulas, largest resultant cover " +
               std::to_string(max_cover);
    return r;
}

CriterionResult c3_hausdorff() {
    CriterionResult r{3, "hausdorff separation", true, ""};
    long long pairs = 0;
    for (const auto& [name, S] : spaces().all) {
        for (std::size_t p = 0; p < S.types.size(); ++p) {
            for (std::size_t q = p + 1; q < S.types.size(); ++q) {
                ++pairs;
                try {
                    hausdorff_witness(S, static_cast<int>(p), static_cast<int>(q));
                } catch (const IndistinguishableAtDepth&) {
                    r.pass = false;
                    r.detail = "no witness in " + name + " for types " +
                               std::to_string(p) + "," + std::to_string(q);
                    return r;
                }
            }
        }
    }
    r.detail = std::to_string(pairs) + " type pairs over " +
               std::to_string(spaces().all.size()) + " spaces";
    return r;
}

CriterionResult c4_pmc() {
    CriterionResult r{4, "positive model completeness", true, ""};
    const Corpus& k = corpus();
    BoundedTypeSpace S = type_space(k.t_lo, k.chains3, var_xy(), 1);
    PmcResult pm = pmc_check(S, 0);
    if (!pm.failures.empty()) {
        r.pass = false;
        r.detail = "no complement for " + serialize(pm.failures.front(), *S.cls->sig);
        return r;
    }
    bool golden = false;
    for (const auto& [phi, psi] : pm.complements) {
        // brute-force oracle: joint unrealizability over the class, exact
        // complement over the pec realizations
        for (const auto& M : k.chains3->members)
            for (auto& tup : all_tuples(*M, S.vars)) {
                Assignment a(S.vars, tup);
                if (eval(*M, phi, a) && eval(*M, psi, a)) {
                    r.pass = false;
                    r.detail = "complement not disjoint: " + serialize(phi, *S.cls->sig);
                    return r;
                }
            }
        for (const auto& t : S.types)
            for (const auto& [mi, tup] : t.realizations) {
                Assignment a(S.vars, tup);
                const auto& M = *k.chains3->members[static_cast<std::size_t>(mi)];
                if (!eval(M, phi, a) && !eval(M, psi, a)) {
                    r.pass = false;
                    r.detail = "complement not total: " + serialize(phi, *S.cls->sig);
                    return r;
                }
            }
        if (serialize(phi, *S.cls->sig) == "x<y" &&
            serialize(psi, *S.cls->sig) == "Or[x=y, y<x]")
            golden = true;
    }
    if (!golden) {
        r.pass = false;
        r.detail = "golden entry x<y -> Or[x=y, y<x] missing";
        return r;
    }
    r.detail = std::to_string(pm.complements.size()) +
               " complements, golden entry x<y -> Or[x=y, y<x] present";
    return r;
}

CriterionResult c5_constructible_resultant() {
    CriterionResult r{5, "constructible resultant induction", true, ""};
    const Corpus& k = corpus();
    BoundedTypeSpace S = type_space(k.t_lo, k.chains3, var_x(), 2);
    const auto& sig = *S.cls->sig;

    // tuple-level extension over pec points and type-level extension
    auto profiles = [&](const std::vector<Formula>& fs) {
        std::vector<std::pair<Bitvec, Bitvec>> out;   // (pec tuples, types)
        out.reserve(fs.size());
        for (const auto& f : fs) {
            Bitvec pv(S.pec_point.size());
            for (std::size_t i = 0; i < S.pec_point.size(); ++i)
                if (S.eval_at(f, S.pec_point[i])) pv.set(i);
            Bitvec tv(S.types.size());
            for (std::size_t t = 0; t < S.types.size(); ++t) {
                const auto& [mi, tup] = S.types[t].realizations.front();
                Assignment a(S.vars, tup);
                tv.set(t, eval(*S.cls->members[static_cast<std::size_t>(mi)], f, a));
            }
            out.emplace_back(std::move(pv), std::move(tv));
        }
        return out;
    };
    std::vector<Formula> chis = enumerate_constructible(sig, var_x(), 2);
    auto chi_prof = profiles(chis);
    std::vector<Formula> theta1 = enumerate_constructible(sig, var_x(), 1);
    std::vector<Formula> theta2 = chis;   // depth <= 2 candidates
    auto t1_prof = profiles(theta1);
    const auto& t2_prof = chi_prof;

    auto covered_at = [&](std::size_t ci, const std::vector<std::pair<Bitvec, Bitvec>>& tp) {
        Bitvec cover(S.types.size());
        for (const auto& [pv, tv] : tp)
            if (!chi_prof[ci].first.intersects(pv)) cover |= tv;
        Bitvec want = ~chi_prof[ci].second;
        return want.subset_of(cover);
    };

    std::map<std::string, int> by_case;
    long long escalated = 0;
    for (std::size_t ci = 0; ci < chis.size(); ++ci) {
        const Formula& chi = chis[ci];
        std::string head = classify(chi).positive ? "positive"
                           : chi.kind() == FKind::Not ? "not"
                           : chi.kind() == FKind::Or  ? "or"
                           : chi.kind() == FKind::And ? "and" : "other";
        ++by_case[head];
        if (!covered_at(ci, t1_prof)) {
            ++escalated;
            if (!covered_at(ci, t2_prof)) {
                r.pass = false;
                r.detail = "uncovered after escalation: " + serialize(chi, sig);
                return r;
            }
        }
    }
    if (escalated == 0) {
        r.pass = false;
        r.detail = "no instance exercised the depth escalation";
        return r;
    }
    // exercise the operation itself on the shipped escalation instance
    Formula inst = parse_formula("exists z: z<x", S.cls->sig);
    ConstructibleResultant cr1 = constructible_resultant(S, inst, 1);
    ConstructibleResultant cr2 = constructible_resultant(S, inst, 2);
    if (cr1.cover.covered || !cr2.cover.covered) {
        r.pass = false;
        r.detail = "escalation instance exists z: z<x behaved unexpectedly";
        return r;
    }
    std::ostringstream d;
    d << chis.size() << " constructible formulas (";
    bool first = true;
    for (const auto& [h, n] : by_case) {
        d << (first ? "" : ", ") << h << " " << n;
        first = false;
    }
    d << "), " << escalated << " escalated to depth 2";
    r.detail = d.str();
    return r;
}

CriterionResult c6_typgeo() {
    CriterionResult r{6, "star map bijection", true, ""};
    long long types_seen = 0;
    for (const auto& [name, S] : spaces().all) {
        std::vector<Bitvec> pp;
        for (std::size_t t = 0; t < S.types.size(); ++t)
            pp.push_back(star_pp_set(S, static_cast<int>(t)));
        types_seen += static_cast<long long>(pp.size());
        for (std::size_t p = 0; p < pp.size(); ++p)
            for (std::size_t q = p + 1; q < pp.size(); ++q)
                if (pp[p] == pp[q]) {
                    r.pass = false;
                    r.detail = "star map not injective on " + name;
                    return r;
                }
        // every point of the class realizes a normal type below some star
        // image, and every maximal realized p.p. set IS a star image
        std::vector<Formula> pps = pp_supply(S);
        std::vector<Bitvec> realized;
        for (std::size_t pi = 0; pi < S.points.size(); ++pi) {
            Bitvec v(pps.size());
            for (std::size_t i = 0; i < pps.size(); ++i)
                if (S.eval_at(pps[i], static_cast<int>(pi))) v.set(i);
            bool below = false;
            for (const auto& t : pp)
                if (v.subset_of(t)) { below = true; break; }
            if (!below) {
                r.pass = false;
                r.detail = "point outside every star image in " + name;
                return r;
            }
            realized.push_back(std::move(v));
        }
        for (std::size_t i = 0; i < realized.size(); ++i) {
            bool maximal = true;
            for (std::size_t j = 0; j < realized.size(); ++j)
                if (realized[i] != realized[j] && realized[i].subset_of(realized[j])) {
                    maximal = false;
                    break;
                }
            if (!maximal) continue;
            bool hit = false;
            for (const auto& t : pp)
                if (t == realized[i]) { hit = true; break; }
            if (!hit) {
                r.pass = false;
                r.detail = "maximal realized p.p. set missed by the star map in " + name;
                return r;
            }
        }
    }
    // count oracle for the materialized star image on the smallest space
    const BoundedTypeSpace& S0 = spaces().all[1].second;   // graphs3/xy/d1
    std::vector<Formula> pps = pp_supply(S0);
    auto binom = [](long long n, long long s) {
        if (s < 0 || s > n) return 0ll;
        long long b = 1;
        for (long long i = 0; i < s; ++i) b = b * (n - i) / (i + 1);
        return b;
    };
    for (std::size_t t = 0; t < S0.types.size(); ++t) {
        GeometricType g = star_map(S0, static_cast<int>(t));
        long long P = static_cast<long long>(pps.size());
        long long K = static_cast<long long>(star_pp_set(S0, static_cast<int>(t)).count());
        long long want = 0;
        for (int s = 1; s <= S0.opts.width; ++s) want += binom(P, s) - binom(P - K, s);
        if (static_cast<long long>(g.members.size()) != want) {
            r.pass = false;
            r.detail = "star image size mismatch on graphs3/xy/d1 type " + std::to_string(t);
            return r;
        }
    }
    r.detail = std::to_string(types_seen) + " types over " +
               std::to_string(spaces().all.size()) + " spaces, maximal sets covered";
    return r;
}

CriterionResult c7_geo_complement() {
    CriterionResult r{7, "geometric complement", true, ""};
    const Corpus& k = corpus();
    const BoundedTypeSpace& Sg = spaces().all[1].second;   // graphs3/xy/d1
    const BoundedTypeSpace& So = spaces().all[5].second;   // chains3/xy/d1

    auto gt = [](const BoundedTypeSpace& S, std::vector<std::string> ms) {
        GeometricType g;
        g.vars = S.vars;
        for (const auto& m : ms) g.members.push_back(parse_formula(m, S.cls->sig));
        return g;
    };
    std::vector<std::pair<const BoundedTypeSpace*, GeometricType>> shipped;
    shipped.emplace_back(&Sg, gt(Sg, {"E(x,y)"}));
    shipped.emplace_back(&Sg, gt(Sg, {"E(x,y) | x=y"}));
    shipped.emplace_back(&Sg, gt(Sg, {"exists z: E(x,z) & E(z,y)"}));
    shipped.emplace_back(&Sg, gt(Sg, {"E(x,y)", "exists z: E(x,z)"}));
    shipped.emplace_back(&So, gt(So, {"x<y"}));
    shipped.emplace_back(&So, gt(So, {"x<y | x=y"}));
    shipped.emplace_back(&So, gt(So, {"true"}));
    shipped.emplace_back(&So, gt(So, {"false"}));

    for (const auto& [S, pi] : shipped) {
        GeometricType co = geo_complement(pi, *S);
        ComplementCheck c = check_complement(pi, co, *S);
        if (!c.disjoint || !c.covering) {
            r.pass = false;
            r.detail = std::string(c.disjoint ? "non-covering" : "non-disjoint") +
                       " complement on " + c.member;
            return r;
        }
    }
    (void)k;
    r.detail = std::to_string(shipped.size()) + " shipped types, complements exact on pec members";
    return r;
}

struct MorleySetup {
    Fragment fragment;
    MorleyizedTheory g;
    MorleySetup() {
        const Corpus& k = corpus();
        std::vector<Formula> seed = k.t_graph.sentences;
        seed.push_back(parse_formula("E(x,y)", k.t_graph.sig));
        seed.push_back(parse_formula("exists y: E(x,y)", k.t_graph.sig));
        fragment = close_fragment(k.t_graph.sig, seed);
        g = morleyize(k.t_graph, fragment);
    }
};

const MorleySetup& morley_setup() {
    static const MorleySetup m;
    return m;
}

CriterionResult c8_morley_round_trip() {
    CriterionResult r{8, "morleyisation round trip", true, ""};
    const Corpus& k = corpus();
    const MorleyizedTheory& G = morley_setup().g;
    for (const auto& ax : G.axioms)
        if (!classify(ax.sentence).g_inductive_basic) {
            r.pass = false;
            r.detail = "axiom not g-inductive: clause (" + ax.clause + ")";
            return r;
        }
    int models = 0;
    for (const auto& M : k.graphs4->members) {
        StructurePtr E = expand(M, G);
        ReductReport rep = reduct_check(E, G);
        ++models;
        if (!rep.ok) {
            r.pass = false;
            r.detail = M->name + ": " + rep.violations.front();
            return r;
        }
    }
    // mutations on the k3 expansion must each be caught
    StructurePtr k3 = k.graphs4->members[static_cast<std::size_t>(k.graphs4->index_of("k3"))];
    StructurePtr E = expand(k3, G);
    int eidx = morley_setup().fragment.index_of(parse_formula("E(x,y)", k.t_graph.sig));
    int nidx = morley_setup().fragment.index_of(parse_formula("!E(x,y)", k.t_graph.sig));
    auto enlarged = std::make_shared<FiniteStructure>(*E);
    enlarged->relations[G.rel_names[static_cast<std::size_t>(eidx)]].insert({0, 0});
    auto shrunk = std::make_shared<FiniteStructure>(*E);
    shrunk->relations[G.rel_names[static_cast<std::size_t>(nidx)]].erase({0, 0});
    if (reduct_check(enlarged, G).ok || reduct_check(shrunk, G).ok) {
        r.pass = false;
        r.detail = "a mutated tracking table went unnoticed";
        return r;
    }
    r.detail = std::to_string(models) + " models round-tripped, " +
               std::to_string(G.axioms.size()) + " axioms, both mutations caught";
    return r;
}

CriterionResult c9_functor() {
    CriterionResult r{9, "functor correspondence", true, ""};
    const Corpus& k = corpus();
    std::vector<Formula> seed{
        parse_formula("E(x,y)", k.t_graph.sig),
        parse_formula("E(x,x)", k.t_graph.sig),
        parse_formula("x=y", k.t_graph.sig),
        parse_formula("exists y: E(x,y)", k.t_graph.sig),
        parse_formula("exists z: E(x,z) & E(z,y)", k.t_graph.sig),
    };
    Fragment F = close_fragment(k.t_graph.sig, seed);
    Theory empty;
    empty.name = "T_empty";
    empty.sig = k.t_graph.sig;
    MorleyizedTheory G = morleyize(empty, F);

    long long maps = 0;
    for (const auto& M : k.graphs3->members) {
        for (const auto& N : k.graphs3->members) {
            int m = M->carrier_size("V"), n = N->carrier_size("V");
            std::vector<int> img(static_cast<std::size_t>(m), 0);
            while (true) {
                FunctorVerdict v = functor_check({{"V", img}}, M, N, G);
                ++maps;
                if (!v.agree) {
                    r.pass = false;
                    r.detail = "disagreement on a map " + M->name + " -> " + N->name;
                    return r;
                }
                int i = m - 1;
                while (i >= 0 && img[static_cast<std::size_t>(i)] == n - 1)
                    img[static_cast<std::size_t>(i--)] = 0;
                if (i < 0) break;
                ++img[static_cast<std::size_t>(i)];
            }
        }
    }
    r.detail = std::to_string(maps) + " sorted maps, fragment of " +
               std::to_string(F.members.size()) + " members";
    return r;
}

CriterionResult c10_forcing_genericity() {
    CriterionResult r{10, "forcing and genericity", true, ""};
    const Corpus& k = corpus();
    int e = k.graphs3->index_of("k3");
    ForcingContext ctx(k.t_graph, k.graphs3, var_xy(), 2, {}, e);
    const BoundedTypeSpace& S = ctx.space();

    // existential <=> generic per member
    std::vector<std::string> existential;
    for (const auto& M : k.graphs3->members) {
        bool ex = is_existential(M, *k.graphs3, 2).existential;
        GenericVerdict gv = is_generic(M, ctx, 2);
        if (ex != gv.generic) {
            r.pass = false;
            r.detail = M->name + ": existential=" + std::to_string(ex) +
                       " generic=" + std::to_string(gv.generic);
            return r;
        }
        if (ex) existential.push_back(M->name);
    }
    if (existential.empty()) {
        r.pass = false;
        r.detail = "no existential member in graphs3";
        return r;
    }

    // per-connective report on the existential member
    GenericVerdict gv = is_generic(
        k.graphs3->members[static_cast<std::size_t>(e)], ctx, 2);
    for (const char* must : {"atomic", "and", "not"}) {
        auto it = gv.per_connective.find(must);
        if (it == gv.per_connective.end() || it->second.failed != 0) {
            r.pass = false;
            r.detail = std::string("connective ") + must + " failed on k3";
            return r;
        }
    }
    long long exists_failed = gv.per_connective.count("exists")
                                  ? gv.per_connective["exists"].failed : 0;

    // forced bits per (member, tuple) for the full supply, then PECTE
    // totality on pec members and stability along every hom
    std::vector<Formula> supply = enumerate_fo(*k.graphs3->sig, S.vars, 2, S.opts);
    struct Pt {
        const FiniteStructure* M;
        std::vector<int> tup;
        Bitvec exts;   // types extending tp+
    };
    std::vector<Pt> pts;
    std::map<std::pair<int, std::vector<int>>, int> pt_index;
    for (std::size_t mi = 0; mi < k.graphs3->members.size(); ++mi) {
        const auto& M = *k.graphs3->members[mi];
        for (auto& tup : all_tuples(M, S.vars)) {
            const Bitvec& tp = ctx.tp_plus(M, tup);
            Bitvec ex(S.types.size());
            for (std::size_t t = 0; t < S.types.size(); ++t)
                ex.set(t, tp.subset_of(S.types[t].sat));
            pt_index[{static_cast<int>(mi), tup}] = static_cast<int>(pts.size());
            pts.push_back({&M, tup, std::move(ex)});
        }
    }
    std::vector<std::tuple<int, int, Homomorphism>> homs;
    for (std::size_t a = 0; a < k.graphs3->members.size(); ++a)
        for (std::size_t b = 0; b < k.graphs3->members.size(); ++b)
            for (auto& h : homomorphisms(k.graphs3->members[a], k.graphs3->members[b]))
                homs.emplace_back(static_cast<int>(a), static_cast<int>(b), h);

    int pec = k.graphs3->index_of("k3");
    long long stability_checks = 0, pecte_checks = 0;
    for (const auto& f : supply) {
        const Bitvec& in = ctx.subset(f);
        Bitvec notin = ctx.subset(Formula::not_(f));
        std::vector<char> forced(pts.size()), forced_neg(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            forced[i] = pts[i].exts.subset_of(in);
            forced_neg[i] = pts[i].exts.subset_of(notin);
        }
        for (const auto& [ai, bi, h] : homs) {
            const auto& A = *k.graphs3->members[static_cast<std::size_t>(ai)];
            for (auto& tup : all_tuples(A, S.vars)) {
                ++stability_checks;
                int ia = pt_index[{ai, tup}];
                int ib = pt_index[{bi, h.apply_tuple(S.vars, tup)}];
                if (forced[static_cast<std::size_t>(ia)] &&
                    !forced[static_cast<std::size_t>(ib)]) {
                    r.pass = false;
                    r.detail = "forcing unstable along " + A.name + " -> " +
                               k.graphs3->members[static_cast<std::size_t>(bi)]->name +
                               " at " + serialize(f, *k.graphs3->sig);
                    return r;
                }
            }
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (pts[i].M != k.graphs3->members[static_cast<std::size_t>(pec)].get())
                continue;
            ++pecte_checks;
            bool pos = forced[i], neg = forced_neg[i];
            if (pos == neg) {
                r.pass = false;
                r.detail = std::string("pecte ") + (pos ? "both" : "neither") +
                           " forced at " + serialize(f, *k.graphs3->sig);
                return r;
            }
        }
    }
    std::ostringstream d;
    d << "existential = generic = {";
    for (std::size_t i = 0; i < existential.size(); ++i)
        d << (i ? "," : "") << existential[i];
    d << "}, exists-case failures " << exists_failed << ", " << pecte_checks
      << " pecte checks, " << stability_checks << " stability checks";
    r.detail = d.str();
    return r;
}

bool brute_force_isomorphic(const FiniteStructure& A, const FiniteStructure& B) {
    for (const auto& s : A.sig->sorts)
        if (A.carrier_size(s) != B.carrier_size(s)) return false;
    // single-sorted corpus: permute the one carrier
    const std::string& s = A.sig->sorts.front();
    std::vector<int> perm(static_cast<std::size_t>(A.carrier_size(s)));
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    do {
        bool ok = true;
        for (const auto& [rel, rows] : A.relations) {
            const auto& brows = B.relations.at(rel);
            if (rows.size() != brows.size()) { ok = false; break; }
            for (const auto& row : rows) {
                std::vector<int> img(row.size());
                for (std::size_t i = 0; i < row.size(); ++i)
                    img[i] = perm[static_cast<std::size_t>(row[i])];
                if (!brows.count(img)) { ok = false; break; }
            }
            if (!ok) break;
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

CriterionResult c11_karp() {
    CriterionResult r{11, "karp back-and-forth", true, ""};
    const Corpus& k = corpus();
    long long pairs = 0;
    for (std::size_t i = 0; i < k.graphs4->members.size(); ++i) {
        for (std::size_t j = i; j < k.graphs4->members.size(); ++j) {
            StructurePtr M = k.graphs4->members[i], N = k.graphs4->members[j];
            bool iso = brute_force_isomorphic(*M, *N);
            BackAndForthSystem bf = back_and_forth(M, N, 1);
            ++pairs;
            if (bf.equivalent != iso) {
                r.pass = false;
                r.detail = M->name + " vs " + N->name + ": karp=" +
                           std::to_string(bf.equivalent) + " iso=" + std::to_string(iso);
                return r;
            }
        }
    }
    r.detail = std::to_string(pairs) + " structure pairs, verdicts match isomorphism";
    return r;
}

} // namespace

std::vector<CriterionResult> run_suite() {
    std::vector<CriterionResult> out;
    out.push_back(c1_dnf_soundness());
    out.push_back(c2_spectral_complement());
    out.push_back(c3_hausdorff());
    out.push_back(c4_pmc());
    out.push_back(c5_constructible_resultant());
    out.push_back(c6_typgeo());
    out.push_back(c7_geo_complement());
    out.push_back(c8_morley_round_trip());
    out.push_back(c9_functor());
    out.push_back(c10_forcing_genericity());
    out.push_back(c11_karp());
    return out;
}

std::string render_suite(const std::vector<CriterionResult>& results) {
    std::ostringstream out;
    for (const auto& r : results)
        out << "criterion " << (r.number < 10 ? " " : "") << r.number << ": "
            << (r.pass ? "PASS" : "FAIL") << "  " << r.name << " — " << r.detail << "\n";
    return out.str();
}

} // namespace poslog
