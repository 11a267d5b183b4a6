#include "poslog/hom.hpp"

#include <algorithm>

namespace poslog {

bool Homomorphism::is_identity() const {
    if (source != target) return false;
    for (const auto& [s, m] : map)
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] != static_cast<int>(i)) return false;
    return true;
}

bool is_homomorphism(const FiniteStructure& A, const FiniteStructure& B,
                     const std::map<std::string, std::vector<int>>& m) {
    for (const auto& [c, s] : A.sig->constants) {
        if (m.at(s)[static_cast<std::size_t>(A.constants.at(c))] != B.constants.at(c))
            return false;
    }
    for (const auto& [fn, decl] : A.sig->functions) {
        for (const auto& [args, res] : A.functions.at(fn)) {
            std::vector<int> fargs(args.size());
            for (std::size_t i = 0; i < args.size(); ++i)
                fargs[i] = m.at(decl.arg_sorts[i])[static_cast<std::size_t>(args[i])];
            if (B.functions.at(fn).at(fargs) !=
                m.at(decl.result_sort)[static_cast<std::size_t>(res)])
                return false;
        }
    }
    for (const auto& [r, rows] : A.relations) {
        const auto& sorting = A.sig->relations.at(r);
        auto bt = B.relations.find(r);
        for (const auto& row : rows) {
            std::vector<int> frow(row.size());
            for (std::size_t i = 0; i < row.size(); ++i)
                frow[i] = m.at(sorting[i])[static_cast<std::size_t>(row[i])];
            if (bt == B.relations.end() || !bt->second.count(frow)) return false;
        }
    }
    return true;
}

std::vector<Homomorphism> homomorphisms(StructurePtr A, StructurePtr B) {
    if (A->sig != B->sig && A->sig->name != B->sig->name)
        throw SortError("homomorphisms: signature mismatch");
    // flatten the domain into (sort, element) slots, sig sort order
    std::vector<std::pair<std::string, int>> slots;
    for (const auto& s : A->sig->sorts) {
        int na = A->carrier_size(s);
        if (na > 0 && B->carrier_size(s) == 0) return {};
        for (int i = 0; i < na; ++i) slots.emplace_back(s, i);
    }
    std::vector<Homomorphism> out;
    std::map<std::string, std::vector<int>> m;
    for (const auto& s : A->sig->sorts)
        m[s].assign(static_cast<std::size_t>(A->carrier_size(s)), 0);

    if (slots.empty()) {
        if (is_homomorphism(*A, *B, m)) out.push_back({A, B, m});
        return out;
    }
    while (true) {
        if (is_homomorphism(*A, *B, m)) out.push_back({A, B, m});
        std::size_t i = slots.size();
        while (i > 0) {
            --i;
            auto& cell = m[slots[i].first][static_cast<std::size_t>(slots[i].second)];
            if (++cell < B->carrier_size(slots[i].first)) break;
            cell = 0;
            if (i == 0) return out;
        }
    }
}

Homomorphism identity_hom(StructurePtr M) {
    Homomorphism h{M, M, {}};
    for (const auto& [s, c] : M->carriers) {
        auto& v = h.map[s];
        v.resize(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) v[i] = static_cast<int>(i);
    }
    return h;
}

Homomorphism compose(const Homomorphism& f, const Homomorphism& g) {
    if (f.target != g.source)
        throw SortError("compose: non-matching homomorphisms");
    Homomorphism h{f.source, g.target, {}};
    for (const auto& [s, m] : f.map) {
        auto& v = h.map[s];
        v.resize(m.size());
        for (std::size_t i = 0; i < m.size(); ++i)
            v[i] = g.map.at(s)[static_cast<std::size_t>(m[i])];
    }
    return h;
}

static std::optional<Homomorphism> find_retraction(const Homomorphism& f) {
    for (auto& g : homomorphisms(f.target, f.source)) {
        bool ok = true;
        for (const auto& [s, m] : f.map) {
            for (std::size_t i = 0; i < m.size() && ok; ++i)
                if (g.map.at(s)[static_cast<std::size_t>(m[i])] != static_cast<int>(i))
                    ok = false;
            if (!ok) break;
        }
        if (ok) return g;
    }
    return std::nullopt;
}

// a variable tuple enumerating all of A, with the identity assignment
static std::vector<SortedVar> enumerating_tuple(const FiniteStructure& A) {
    std::vector<SortedVar> vars;
    for (const auto& s : A.sig->sorts)
        for (int i = 0; i < A.carrier_size(s); ++i)
            vars.push_back(SortedVar{s, i});
    return vars;
}

ImmersionVerdict is_immersion(const Homomorphism& f, int max_witness_depth,
                              const EnumOpts& opts) {
    ImmersionVerdict v;
    v.retraction = find_retraction(f);
    v.immersion = v.retraction.has_value();
    if (v.immersion) return v;

    const FiniteStructure& A = *f.source;
    const FiniteStructure& B = *f.target;
    v.witness_vars = enumerating_tuple(A);
    std::vector<int> a, fa;
    for (const auto& sv : v.witness_vars) {
        a.push_back(sv.index);
        fa.push_back(f.apply(sv.sort, sv.index));
    }
    Assignment aa(v.witness_vars, a), ba(v.witness_vars, fa);
    for (int d = 0; d <= max_witness_depth && !v.witness; ++d) {
        std::vector<std::vector<Formula>> strata;
        try {
            strata = enumerate_positive_strata(*A.sig, v.witness_vars, d, opts);
        } catch (const ResourceCeiling&) {
            break;  // no witness within the budget; the verdict stands
        }
        for (const auto& phi : strata[static_cast<std::size_t>(d)]) {
            if (eval(B, phi, ba) && !eval(A, phi, aa)) {
                v.witness = phi;
                break;
            }
        }
    }
    return v;
}

void UniverseClass::validate() const {
    for (const auto& m : members) {
        m->validate();
        if (m->sig->name != sig->name)
            throw SortError("class " + name + ": member over a different signature");
    }
    std::set<std::string> names;
    for (const auto& m : members)
        if (!names.insert(m->name).second)
            throw SortError("class " + name + ": duplicate member " + m->name);
    if (theory) {
        for (const auto& m : members)
            for (const auto& ax : theory->sentences)
                if (!eval_sentence(*m, ax))
                    throw SortError("class " + name + ": member " + m->name +
                                    " violates an axiom of " + theory->name);
    }
}

static bool all_homs_retract(StructurePtr M, const UniverseClass& C,
                             Homomorphism* counterexample) {
    for (const auto& B : C.members) {
        for (auto& h : homomorphisms(M, B)) {
            if (!find_retraction(h)) {
                if (counterexample) *counterexample = h;
                return false;
            }
        }
    }
    return true;
}

PecVerdict is_pec(StructurePtr M, const UniverseClass& C) {
    if (C.index_of(M->name) < 0)
        throw PoslogError("is_pec: " + M->name + " is not a member of " + C.name);
    PecVerdict v;
    Homomorphism ce;
    v.pec = all_homs_retract(M, C, &ce);
    if (!v.pec) {
        auto iv = is_immersion(ce);
        v.counterexample = std::move(ce);
        v.witness = iv.witness;
    }
    return v;
}

std::vector<int> pec_members(const UniverseClass& C) {
    std::vector<int> out;
    for (std::size_t i = 0; i < C.members.size(); ++i)
        if (all_homs_retract(C.members[i], C, nullptr))
            out.push_back(static_cast<int>(i));
    return out;
}

Homomorphism continue_to_pec(StructurePtr M, const UniverseClass& C) {
    auto pecs = pec_members(C);
    for (int i : pecs)
        if (C.members[static_cast<std::size_t>(i)] == M) return identity_hom(M);
    for (int i : pecs) {
        auto hs = homomorphisms(M, C.members[static_cast<std::size_t>(i)]);
        if (!hs.empty()) return hs.front();
    }
    throw NotContinuable("no homomorphism from " + M->name +
                         " into any pec member of " + C.name);
}

std::optional<JointContinuation> joint_continuation(
    StructurePtr M, StructurePtr N, const UniverseClass& C,
    const std::vector<SortedVar>& vars,
    const std::vector<int>& a, const std::vector<int>& b, int type_depth,
    const EnumOpts& opts) {
    if (vars.size() != a.size() || vars.size() != b.size())
        throw SortError("joint_continuation: tuple length mismatch");
    // precondition: equal bounded positive types at the configured depth
    Assignment aa(vars, a), bb(vars, b);
    for (const auto& phi : enumerate_positive(*M->sig, vars, type_depth, opts))
        if (eval(*M, phi, aa) != eval(*N, phi, bb))
            throw PoslogError("joint_continuation: bounded positive types differ at depth " +
                              std::to_string(type_depth));
    for (const auto& P : C.members) {
        auto fs = homomorphisms(M, P);
        auto gs = homomorphisms(N, P);
        for (const auto& f : fs) {
            auto fa = f.apply_tuple(vars, a);
            for (const auto& g : gs)
                if (g.apply_tuple(vars, b) == fa)
                    return JointContinuation{P, f, g};
        }
    }
    return std::nullopt;
}

Colimit directed_colimit(const std::vector<Homomorphism>& chain) {
    if (chain.empty()) throw PoslogError("directed_colimit: empty chain");
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        if (chain[i].target != chain[i + 1].source)
            throw PoslogError("directed_colimit: chain is not composable");
    Homomorphism comp = chain.front();
    for (std::size_t i = 1; i < chain.size(); ++i)
        comp = compose(comp, chain[i]);
    return Colimit{chain.back().target, std::move(comp)};
}

} // namespace poslog
