#include "poslog/geometric.hpp"

#include <algorithm>
#include <set>

namespace poslog {

namespace {

void sort_unique(std::vector<Formula>& v) {
    std::sort(v.begin(), v.end(), FormulaLess{});
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// conjunction of two p.p. formulas, both prefixes renamed apart from every
// free variable (canonical prefixes reuse low indices, so they can capture)
Formula merge_pp(const Formula& a, const Formula& b) {
    PpParts pa = pp_parts(a);
    PpParts pb = pp_parts(b);

    std::map<std::string, int> next;   // per-sort first safe index
    auto claim = [&](const SortedVar& v) {
        auto& n = next[v.sort];
        n = std::max(n, v.index + 1);
    };
    for (const auto& v : pa.prefix) claim(v);
    for (const auto& v : pb.prefix) claim(v);
    for (const auto& v : a.free_vars()) claim(v);
    for (const auto& v : b.free_vars()) claim(v);

    std::vector<SortedVar> fresh;
    auto renamed_atoms = [&](const PpParts& p) {
        std::map<SortedVar, Term> ren;
        for (const auto& v : p.prefix) {
            SortedVar u{v.sort, next[v.sort]++};
            ren.emplace(v, Term::var(u));
            fresh.push_back(u);
        }
        return pp_parts(substitute(Formula::and_(p.atoms), ren)).atoms;
    };
    std::vector<Formula> atoms = renamed_atoms(pa);
    for (const auto& at : renamed_atoms(pb)) atoms.push_back(at);

    Formula out = Formula::and_(atoms);
    for (auto it = fresh.rbegin(); it != fresh.rend(); ++it)
        out = Formula::exists(*it, out);
    return canonicalize(out);
}

std::vector<Formula> dnf_rec(const Formula& f, long long ceiling, long long& produced) {
    auto bump = [&](std::size_t n) {
        produced += static_cast<long long>(n);
        if (produced > ceiling)
            throw ResourceCeiling("dnf: disjunct ceiling exceeded");
    };
    switch (f.kind()) {
    case FKind::Truth:
    case FKind::Falsity:
    case FKind::Atom:
    case FKind::Eq:
        bump(1);
        return {canonicalize(f)};
    case FKind::Or: {
        std::vector<Formula> out;
        for (const auto& k : f.node().kids) {
            auto d = dnf_rec(k, ceiling, produced);
            out.insert(out.end(), d.begin(), d.end());
        }
        sort_unique(out);
        return out;
    }
    case FKind::And: {
        std::vector<Formula> acc{Formula::truth()};
        for (const auto& k : f.node().kids) {
            auto d = dnf_rec(k, ceiling, produced);
            std::vector<Formula> nx;
            bump(acc.size() * d.size());
            for (const auto& x : acc)
                for (const auto& y : d) nx.push_back(merge_pp(x, y));
            sort_unique(nx);
            acc = std::move(nx);
        }
        return acc;
    }
    case FKind::Exists: {
        auto d = dnf_rec(f.node().kids[0], ceiling, produced);
        std::vector<Formula> out;
        for (const auto& x : d)
            out.push_back(canonicalize(Formula::exists(f.node().var, x)));
        sort_unique(out);
        return out;
    }
    default:
        throw NonGeometric("dnf: formula is not geometric");
    }
}

} // namespace

NormalGeometricFormula dnf(const Formula& f, long long disjunct_ceiling) {
    long long produced = 0;
    NormalGeometricFormula n;
    n.disjuncts = dnf_rec(canonicalize(f), disjunct_ceiling, produced);
    // falsity is absorbed unless it is the whole formula
    if (n.disjuncts.size() > 1) {
        std::erase_if(n.disjuncts, [](const Formula& d) { return d.kind() == FKind::Falsity; });
        if (n.disjuncts.empty()) n.disjuncts.push_back(Formula::falsity());
    }
    return n;
}

std::vector<std::vector<int>> GeometricType::extension(const FiniteStructure& M) const {
    std::vector<std::vector<int>> out;
    for (auto& tup : all_tuples(M, vars)) {
        Assignment a(vars, tup);
        bool all = true;
        for (const auto& m : members)
            if (!eval(M, m, a)) { all = false; break; }
        if (all) out.push_back(tup);
    }
    return out;
}

std::vector<Formula> pp_supply(const BoundedTypeSpace& S) {
    std::vector<Formula> out;
    for (const auto& f : S.supply)
        if (is_positive_primitive(f)) out.push_back(f);
    return out;
}

Bitvec star_pp_set(const BoundedTypeSpace& S, int type_index) {
    const auto& sat = S.types[static_cast<std::size_t>(type_index)].sat;
    std::vector<std::size_t> pp;
    for (std::size_t fi = 0; fi < S.supply.size(); ++fi)
        if (is_positive_primitive(S.supply[fi])) pp.push_back(fi);
    Bitvec out(pp.size());
    for (std::size_t i = 0; i < pp.size(); ++i) out.set(i, sat.test(pp[i]));
    return out;
}

GeometricType star_map(const BoundedTypeSpace& S, int type_index) {
    GeometricType g;
    g.vars = S.vars;
    g.normal = true;
    std::vector<Formula> pp = pp_supply(S);
    Bitvec in = star_pp_set(S, type_index);

    // subsets of size 1..width meeting the type
    int w = S.opts.width;
    std::vector<int> idx;
    std::set<Formula, FormulaLess> out;
    auto rec = [&](auto&& self, std::size_t from, bool meets) -> void {
        if (!idx.empty() && meets) {
            std::vector<Formula> kids;
            for (int i : idx) kids.push_back(pp[static_cast<std::size_t>(i)]);
            out.insert(canonicalize(Formula::or_(kids)));
        }
        if (static_cast<int>(idx.size()) == w) return;
        for (std::size_t i = from; i < pp.size(); ++i) {
            idx.push_back(static_cast<int>(i));
            self(self, i + 1, meets || in.test(i));
            idx.pop_back();
        }
    };
    rec(rec, 0, false);
    g.members.assign(out.begin(), out.end());
    return g;
}

GeometricType geo_type_disjunction(const std::vector<GeometricType>& types,
                                   long long ceiling) {
    if (types.empty()) throw PoslogError("geo_type_disjunction: no operands");
    GeometricType g;
    g.vars = types.front().vars;
    long long combos = 1;
    for (const auto& t : types) {
        if (t.members.empty())
            throw PoslogError("geo_type_disjunction: empty operand type");
        combos *= static_cast<long long>(t.members.size());
        if (combos > ceiling)
            throw ResourceCeiling("geo_type_disjunction: choice-set ceiling exceeded");
    }
    // one disjunction per choice of member from each operand
    std::set<Formula, FormulaLess> out;
    std::vector<std::size_t> pick(types.size(), 0);
    bool done = false;
    while (!done) {
        std::vector<Formula> kids;
        for (std::size_t i = 0; i < types.size(); ++i)
            kids.push_back(types[i].members[pick[i]]);
        out.insert(canonicalize(Formula::or_(kids)));
        done = true;
        for (std::size_t k = types.size(); k-- > 0;) {
            if (++pick[k] < types[k].members.size()) { done = false; break; }
            pick[k] = 0;
        }
    }
    g.members.assign(out.begin(), out.end());
    return g;
}

GeometricType geo_complement(const GeometricType& pi, const BoundedTypeSpace& S) {
    std::vector<GeometricType> member_complements;
    for (const auto& m : pi.members) {
        NormalGeometricFormula n = dnf(m);
        GeometricType cm;
        cm.vars = pi.vars;
        // one member per disjunct: the disjunction of its resultant
        for (const auto& phi : n.disjuncts) {
            std::vector<Formula> res = resultant_set(S, phi);
            cm.members.push_back(canonicalize(Formula::or_(res)));
        }
        if (cm.members.empty()) cm.members.push_back(Formula::truth());
        sort_unique(cm.members);
        member_complements.push_back(std::move(cm));
    }
    if (member_complements.empty()) {
        // complement of the empty (whole-space) type
        GeometricType g;
        g.vars = pi.vars;
        g.members.push_back(Formula::falsity());
        return g;
    }
    return geo_type_disjunction(member_complements);
}

ComplementCheck check_complement(const GeometricType& pi, const GeometricType& co,
                                 const BoundedTypeSpace& S) {
    ComplementCheck r;
    for (int mi : S.pec) {
        const auto& M = *S.cls->members[static_cast<std::size_t>(mi)];
        for (auto& tup : all_tuples(M, S.vars)) {
            Assignment a(S.vars, tup);
            auto holds = [&](const GeometricType& g) {
                for (const auto& m : g.members)
                    if (!eval(M, m, a)) return false;
                return true;
            };
            bool p = holds(pi), c = holds(co);
            if (p && c) { r.disjoint = false; r.member = M.name; return r; }
            if (!p && !c) { r.covering = false; r.member = M.name; return r; }
        }
    }
    return r;
}

Bitvec basic_of_type(const BoundedTypeSpace& S, const GeometricType& pi) {
    Bitvec out(S.types.size());
    for (std::size_t t = 0; t < S.types.size(); ++t) {
        bool all = true;
        for (const auto& m : pi.members)
            if (!S.basic(m).test(t)) { all = false; break; }
        out.set(t, all);
    }
    return out;
}

GeometricType subset_to_type(const BoundedTypeSpace& S, const Bitvec& X) {
    if (X.size() != S.types.size())
        throw PoslogError("subset_to_type: subset indexed over a different space");
    GeometricType g;
    g.vars = S.vars;
    if (X.count() == S.types.size()) {
        g.members.push_back(Formula::truth());
        return g;
    }
    if (X.none()) {
        g.members.push_back(Formula::falsity());
        return g;
    }
    // one member per excluded type: the union of the resultants of everything
    // the type satisfies
    for (std::size_t t = 0; t < S.types.size(); ++t) {
        if (X.test(t)) continue;
        const auto& sat = S.types[t].sat;
        Bitvec res(S.supply.size());
        for (std::size_t fi = 0; fi < S.supply.size(); ++fi) {
            if (!sat.test(fi)) continue;
            const Bitvec& pv = S.point_sat[fi];
            for (std::size_t gi = 0; gi < S.supply.size(); ++gi)
                if (!pv.intersects(S.point_sat[gi])) res.set(gi);
        }
        std::vector<Formula> kids;
        for (std::size_t gi = 0; gi < S.supply.size(); ++gi)
            if (res.test(gi)) kids.push_back(S.supply[gi]);
        g.members.push_back(canonicalize(Formula::or_(kids)));
    }
    sort_unique(g.members);
    return g;
}

InfinitaryCompilation infinitary_to_geometric(const Formula& f,
                                              const BoundedTypeSpace& S, int E) {
    InfinitaryCompilation out;
    const auto& M = *S.cls->members[static_cast<std::size_t>(E)];
    out.subset = Bitvec(S.types.size());
    for (std::size_t t = 0; t < S.types.size(); ++t) {
        const auto& reals = S.types[t].realizations;
        auto it = std::find_if(reals.begin(), reals.end(),
                               [&](const auto& r) { return r.first == E; });
        if (it == reals.end())
            throw PoslogError("infinitary_to_geometric: type " + std::to_string(t) +
                              " has no realization in the designated member " + M.name);
        Assignment a(S.vars, it->second);
        out.subset.set(t, eval(M, f, a));
    }
    out.type = subset_to_type(S, out.subset);

    for (auto& tup : all_tuples(M, S.vars)) {
        Assignment a(S.vars, tup);
        bool lhs = eval(M, f, a);
        bool rhs = true;
        for (const auto& m : out.type.members)
            if (!eval(M, m, a)) { rhs = false; break; }
        if (lhs != rhs) { out.pointwise_ok = false; break; }
    }
    return out;
}

} // namespace poslog
