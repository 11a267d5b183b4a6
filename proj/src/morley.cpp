#include "poslog/morley.hpp"

#include "poslog/hom.hpp"

#include <algorithm>
#include <set>

namespace poslog {

namespace {

// eliminate -> and forall so every member has a clause (forall through the
// not/exists pair, as in the reduct induction)
Formula rewrite(const Formula& f) {
    const FNode& n = f.node();
    switch (n.kind) {
    case FKind::Truth:
    case FKind::Falsity:
    case FKind::Atom:
    case FKind::Eq:
        return f;
    case FKind::And: {
        std::vector<Formula> ks;
        for (const auto& k : n.kids) ks.push_back(rewrite(k));
        return Formula::and_(std::move(ks));
    }
    case FKind::Or: {
        std::vector<Formula> ks;
        for (const auto& k : n.kids) ks.push_back(rewrite(k));
        return Formula::or_(std::move(ks));
    }
    case FKind::Not:
        return Formula::not_(rewrite(n.kids[0]));
    case FKind::Implies:
        return Formula::or_({Formula::not_(rewrite(n.kids[0])), rewrite(n.kids[1])});
    case FKind::Exists:
        return Formula::exists(n.var, rewrite(n.kids[0]));
    case FKind::Forall:
        return Formula::not_(Formula::exists(n.var, Formula::not_(rewrite(n.kids[0]))));
    }
    throw PoslogError("rewrite: unreachable");
}

// recursion stays on canonical forms so member kids index back into the set
void subformulas(const Formula& f, std::set<Formula, FormulaLess>& out) {
    Formula c = canonicalize(f);
    if (!out.insert(c).second) return;
    for (const auto& k : c.node().kids) subformulas(k, out);
}

Formula universal_closure(Formula f) {
    std::vector<SortedVar> vs = f.free_vars();
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) f = Formula::forall(*it, f);
    return canonicalize(f);
}

bool is_atomic(const Formula& f) {
    FKind k = f.kind();
    return k == FKind::Truth || k == FKind::Falsity || k == FKind::Atom || k == FKind::Eq;
}

} // namespace

int Fragment::index_of(const Formula& f) const {
    auto it = std::lower_bound(members.begin(), members.end(), f, FormulaLess{});
    if (it == members.end() || !(*it == f)) return -1;
    return static_cast<int>(it - members.begin());
}

Fragment close_fragment(SignaturePtr sig, const std::vector<Formula>& seed,
                        long long ceiling) {
    std::set<Formula, FormulaLess> closure;
    for (const auto& f : seed) subformulas(canonicalize(rewrite(canonicalize(f))), closure);
    std::set<Formula, FormulaLess> all = closure;
    for (const auto& f : closure) all.insert(canonicalize(Formula::not_(f)));
    if (static_cast<long long>(all.size()) > ceiling)
        throw ResourceCeiling("close_fragment: member ceiling exceeded");
    Fragment out;
    out.sig = std::move(sig);
    out.members.assign(all.begin(), all.end());
    return out;
}

Formula MorleyizedTheory::tracking_atom(int member) const {
    std::vector<Term> args;
    for (const auto& v : fragment.members[static_cast<std::size_t>(member)].free_vars())
        args.push_back(Term::var(v));
    return Formula::atom(*ext_sig, rel_names[static_cast<std::size_t>(member)],
                         std::move(args));
}

Theory MorleyizedTheory::theory() const {
    Theory t;
    t.name = source.name + "_G";
    t.sig = ext_sig;
    t.kind = TheoryKind::GInductive;
    for (const auto& a : axioms) t.sentences.push_back(a.sentence);
    return t;
}

MorleyizedTheory morleyize(const Theory& T, const Fragment& F) {
    if (T.sig.get() != F.sig.get() && T.sig->name != F.sig->name)
        throw PoslogError("morleyize: fragment over a different signature");
    MorleyizedTheory G;
    G.source = T;
    G.fragment = F;

    for (const auto& s : T.sentences)
        if (F.index_of(canonicalize(rewrite(s))) < 0)
            throw FragmentCoverage("morleyize: theory sentence outside the fragment");

    auto ext = std::make_shared<Signature>(*F.sig);
    ext->name = F.sig->name + "G";
    for (std::size_t i = 0; i < F.members.size(); ++i) {
        std::string name = "R" + std::to_string(i);
        while (ext->relations.count(name) || ext->functions.count(name) ||
               ext->constants.count(name))
            name += "_";
        std::vector<std::string> sorting;
        for (const auto& v : F.members[i].free_vars()) sorting.push_back(v.sort);
        ext->add_relation(name, std::move(sorting));
        G.rel_names.push_back(name);
    }
    G.ext_sig = ext;

    auto member_index = [&](const Formula& f) {
        int k = F.index_of(canonicalize(f));
        if (k < 0) throw FragmentCoverage("morleyize: fragment is not subformula-closed");
        return k;
    };
    auto emit = [&](int i, const std::string& clause, Formula lhs, Formula rhs) {
        G.axioms.push_back({i, clause,
                            universal_closure(Formula::implies(std::move(lhs), std::move(rhs)))});
    };
    std::set<Formula, FormulaLess> tset;
    for (const auto& s : T.sentences) tset.insert(canonicalize(rewrite(s)));

    for (std::size_t i = 0; i < F.members.size(); ++i) {
        const Formula& phi = F.members[i];
        int ii = static_cast<int>(i);
        Formula R = G.tracking_atom(ii);
        const FNode& n = phi.node();

        if (is_atomic(phi)) {
            emit(ii, "i", phi, R);
            emit(ii, "i", R, phi);
        }
        if (n.kind == FKind::Or) {
            std::vector<Formula> rs;
            for (const auto& k : n.kids)
                rs.push_back(G.tracking_atom(member_index(k)));
            emit(ii, "ii", R, Formula::or_(rs));
            emit(ii, "ii", Formula::or_(rs), R);
        }
        if (n.kind != FKind::Not) {
            int ni = F.index_of(canonicalize(Formula::not_(phi)));
            if (ni >= 0) {
                Formula Rn = G.tracking_atom(ni);
                emit(ii, "iii", Formula::and_({R, Rn}), Formula::falsity());
                emit(ii, "iii", Formula::truth(), Formula::or_({R, Rn}));
            }
        }
        if (n.kind == FKind::And) {
            std::vector<Formula> rn;
            for (const auto& k : n.kids)
                rn.push_back(G.tracking_atom(member_index(Formula::not_(k))));
            emit(ii, "iv", Formula::and_({R, Formula::or_(rn)}), Formula::falsity());
            emit(ii, "iv", Formula::truth(), Formula::or_({R, Formula::or_(rn)}));
        }
        if (n.kind == FKind::Exists) {
            int bi = member_index(n.kids[0]);
            Formula Rb = Formula::exists(n.var, G.tracking_atom(bi));
            emit(ii, "v", R, Rb);
            emit(ii, "v", Rb, R);
        }
        if (phi.free_vars().empty() && tset.count(phi))
            emit(ii, "vi", Formula::truth(), R);
    }
    return G;
}

StructurePtr expand(StructurePtr M, const MorleyizedTheory& G) {
    for (const auto& s : G.source.sentences)
        if (!eval_sentence(*M, s))
            throw PoslogError("expand: " + M->name + " fails a theory sentence");
    auto E = std::make_shared<FiniteStructure>(*M);
    E->sig = G.ext_sig;
    for (std::size_t i = 0; i < G.fragment.members.size(); ++i) {
        const Formula& phi = G.fragment.members[i];
        std::set<std::vector<int>> rows;
        for (auto& tup : all_tuples(*M, phi.free_vars())) {
            Assignment a(phi.free_vars(), tup);
            if (eval(*M, phi, a)) rows.insert(tup);
        }
        E->relations[G.rel_names[i]] = std::move(rows);
    }
    E->validate();
    for (const auto& ax : G.axioms)
        if (!eval_sentence(*E, ax.sentence))
            throw PoslogError("expand: expansion fails clause (" + ax.clause +
                              ") axiom of member " + std::to_string(ax.member));
    return E;
}

ReductReport reduct_check(StructurePtr N, const MorleyizedTheory& G) {
    ReductReport r;
    auto flag = [&](std::string msg) {
        r.ok = false;
        r.violations.push_back(std::move(msg));
    };
    for (const auto& ax : G.axioms)
        if (!eval_sentence(*N, ax.sentence))
            flag("axiom clause (" + ax.clause + ") member " + std::to_string(ax.member));
    for (std::size_t i = 0; i < G.fragment.members.size(); ++i) {
        const Formula& phi = G.fragment.members[i];
        Formula R = G.tracking_atom(static_cast<int>(i));
        for (auto& tup : all_tuples(*N, phi.free_vars())) {
            Assignment a(phi.free_vars(), tup);
            if (eval(*N, R, a) != eval(*N, phi, a)) {
                std::string t;
                for (int e : tup) t += (t.empty() ? "" : ",") + std::to_string(e);
                flag("member " + std::to_string(i) + " disagrees with " +
                     G.rel_names[i] + " at (" + t + ")");
            }
        }
    }
    for (const auto& s : G.source.sentences)
        if (!eval_sentence(*N, s)) flag("reduct fails a source sentence");
    return r;
}

FunctorVerdict functor_check(const std::map<std::string, std::vector<int>>& f,
                             StructurePtr M, StructurePtr N,
                             const MorleyizedTheory& G) {
    FunctorVerdict v;
    StructurePtr ME = expand(M, G), NE = expand(N, G);
    v.lg_homomorphism = is_homomorphism(*ME, *NE, f);

    v.fragment_elementary = true;
    for (const auto& phi : G.fragment.members) {
        const auto& vars = phi.free_vars();
        for (auto& tup : all_tuples(*M, vars)) {
            Assignment a(vars, tup);
            if (!eval(*M, phi, a)) continue;
            std::vector<int> img(tup.size());
            for (std::size_t j = 0; j < tup.size(); ++j)
                img[j] = f.at(vars[j].sort)[static_cast<std::size_t>(tup[j])];
            Assignment b(vars, img);
            if (!eval(*N, phi, b)) { v.fragment_elementary = false; break; }
        }
        if (!v.fragment_elementary) break;
    }
    v.agree = v.lg_homomorphism == v.fragment_elementary;
    return v;
}

} // namespace poslog
