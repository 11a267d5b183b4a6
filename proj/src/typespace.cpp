#include "poslog/typespace.hpp"

#include <algorithm>

namespace poslog {

int BoundedTypeSpace::supply_index(const Formula& f) const {
    auto it = std::lower_bound(supply.begin(), supply.end(), f, FormulaLess{});
    if (it == supply.end() || !(*it == f)) return -1;
    return static_cast<int>(it - supply.begin());
}

bool BoundedTypeSpace::eval_at(const Formula& f, int point) const {
    const auto& [mi, tuple] = points[static_cast<std::size_t>(point)];
    Assignment a(vars, tuple);
    return eval(*cls->members[static_cast<std::size_t>(mi)], f, a);
}

Bitvec BoundedTypeSpace::basic(const Formula& f) const {
    Bitvec out(types.size());
    int si = supply_index(f);
    for (std::size_t t = 0; t < types.size(); ++t) {
        if (si >= 0) {
            out.set(t, types[t].sat.test(static_cast<std::size_t>(si)));
        } else {
            const auto& [mi, tuple] = types[t].realizations.front();
            Assignment a(vars, tuple);
            out.set(t, eval(*cls->members[static_cast<std::size_t>(mi)], f, a));
        }
    }
    return out;
}

std::vector<Formula> BoundedTypeSpace::type_formulas(int t) const {
    std::vector<Formula> out;
    const auto& sat = types[static_cast<std::size_t>(t)].sat;
    for (std::size_t i = 0; i < supply.size(); ++i)
        if (sat.test(i)) out.push_back(supply[i]);
    return out;
}

BoundedPositiveType tp_pos(const FiniteStructure& M, const std::vector<SortedVar>& vars,
                           const std::vector<int>& tuple, int d, const EnumOpts& opts) {
    BoundedPositiveType t;
    t.vars = vars;
    t.depth = d;
    t.witness_structure = M.name;
    t.witness_tuple = tuple;
    Assignment a(vars, tuple);
    for (const auto& phi : enumerate_positive(*M.sig, vars, d, opts))
        if (eval(M, phi, a)) t.formulas.push_back(phi);
    return t;
}

BoundedTypeSpace type_space(const Theory& T, UniverseClassPtr C,
                            const std::vector<SortedVar>& vars, int d,
                            const EnumOpts& opts) {
    BoundedTypeSpace S;
    S.theory = T;
    S.cls = C;
    S.vars = vars;
    S.depth = d;
    S.opts = opts;
    S.supply = enumerate_positive(*C->sig, vars, d, opts);
    S.pec = pec_members(*C);
    if (S.pec.empty())
        throw EmptyPositiveClass("class " + C->name + " has no pec member");

    std::set<int> pecset(S.pec.begin(), S.pec.end());
    for (std::size_t mi = 0; mi < C->members.size(); ++mi) {
        for (auto& tup : all_tuples(*C->members[mi], vars)) {
            if (pecset.count(static_cast<int>(mi)))
                S.pec_point.push_back(static_cast<int>(S.points.size()));
            S.points.emplace_back(static_cast<int>(mi), tup);
        }
    }
    S.point_sat.assign(S.supply.size(), Bitvec(S.points.size()));
    for (std::size_t fi = 0; fi < S.supply.size(); ++fi) {
        for (std::size_t pi = 0; pi < S.points.size(); ++pi) {
            const auto& [mi, tup] = S.points[pi];
            Assignment a(vars, tup);
            if (eval(*C->members[static_cast<std::size_t>(mi)], S.supply[fi], a))
                S.point_sat[fi].set(pi);
        }
    }

    // group pec points by their satisfied-supply signature
    std::map<Bitvec, int> seen;
    for (int pi : S.pec_point) {
        Bitvec sig(S.supply.size());
        for (std::size_t fi = 0; fi < S.supply.size(); ++fi)
            if (S.point_sat[fi].test(static_cast<std::size_t>(pi))) sig.set(fi);
        auto it = seen.find(sig);
        if (it == seen.end()) {
            it = seen.emplace(sig, static_cast<int>(S.types.size())).first;
            S.types.push_back({sig, {}});
        }
        S.types[static_cast<std::size_t>(it->second)].realizations.push_back(
            S.points[static_cast<std::size_t>(pi)]);
    }
    return S;
}

// the point-satisfaction vector of an arbitrary evaluable formula
static Bitvec point_vec(const BoundedTypeSpace& S, const Formula& f) {
    int si = S.supply_index(f);
    if (si >= 0) return S.point_sat[static_cast<std::size_t>(si)];
    Bitvec v(S.points.size());
    for (std::size_t pi = 0; pi < S.points.size(); ++pi)
        if (S.eval_at(f, static_cast<int>(pi))) v.set(pi);
    return v;
}

std::vector<Formula> resultant_set(const BoundedTypeSpace& S, const Formula& phi) {
    if (!classify(phi).positive)
        throw PoslogError("resultant: input is not positive");
    Bitvec pv = point_vec(S, phi);
    std::vector<Formula> out;
    for (std::size_t fi = 0; fi < S.supply.size(); ++fi)
        if (!pv.intersects(S.point_sat[fi])) out.push_back(S.supply[fi]);
    return out;
}

CoverReport spectral_complement_cover(const BoundedTypeSpace& S, const Formula& phi) {
    CoverReport r;
    Bitvec in = S.basic(phi);
    Bitvec covered(S.types.size());
    for (const auto& psi : resultant_set(S, phi)) {
        covered |= S.basic(psi);
        ++r.cover_size;
    }
    // resultant members never meet [phi] (no false positives)
    for (std::size_t t = 0; t < S.types.size(); ++t) {
        bool inphi = in.test(t);
        if (!inphi && !covered.test(t)) {
            r.covered = false;
            r.uncovered_types.push_back(static_cast<int>(t));
        }
        if (inphi && covered.test(t))
            throw PoslogError("spectral cover: resultant met [phi], supply inconsistent");
    }
    return r;
}

Formula hausdorff_witness(const BoundedTypeSpace& S, int p, int q) {
    const auto& sp = S.types[static_cast<std::size_t>(p)].sat;
    const auto& sq = S.types[static_cast<std::size_t>(q)].sat;
    int best = -1;
    for (std::size_t fi = 0; fi < S.supply.size(); ++fi) {
        if (sp.test(fi) == sq.test(fi)) continue;
        if (best < 0 || S.supply[fi].depth() < S.supply[static_cast<std::size_t>(best)].depth())
            best = static_cast<int>(fi);
    }
    if (best < 0)
        throw IndistinguishableAtDepth("types are equal at depth " + std::to_string(S.depth));
    return S.supply[static_cast<std::size_t>(best)];
}

PmcResult pmc_check(const BoundedTypeSpace& S, int phi_depth) {
    PmcResult r;
    for (std::size_t fi = 0; fi < S.supply.size(); ++fi) {
        const Formula& phi = S.supply[fi];
        if (phi.depth() > phi_depth) continue;
        Bitvec in = S.basic(phi);
        Bitvec want = ~in;
        const Bitvec& pv = S.point_sat[fi];
        bool found = false;
        for (std::size_t gi = 0; gi < S.supply.size(); ++gi) {
            if (pv.intersects(S.point_sat[gi])) continue;   // jointly realizable
            if (S.basic(S.supply[gi]) == want) {
                r.complements.emplace_back(phi, S.supply[gi]);
                found = true;
                break;
            }
        }
        if (!found) r.failures.push_back(phi);
    }
    return r;
}

ConstructibleSet constructible_eval(const BoundedTypeSpace& S, const Formula& chi) {
    if (!classify(chi).constructible)
        throw PoslogError("constructible_eval: input is not constructible");
    ConstructibleSet out;
    out.chi = chi;
    out.extension = Bitvec(S.types.size());
    for (std::size_t t = 0; t < S.types.size(); ++t) {
        bool first = true, value = false, agree = true;
        for (const auto& [mi, tup] : S.types[t].realizations) {
            Assignment a(S.vars, tup);
            bool v = eval(*S.cls->members[static_cast<std::size_t>(mi)], chi, a);
            if (first) { value = v; first = false; }
            else if (v != value) agree = false;
        }
        out.extension.set(t, value);
        if (!agree) out.disagreements.push_back(static_cast<int>(t));
    }
    return out;
}

// extension of a formula over the pec points (tuple level)
static Bitvec pec_point_vec(const BoundedTypeSpace& S, const Formula& f) {
    Bitvec v(S.pec_point.size());
    int si = S.supply_index(f);
    for (std::size_t i = 0; i < S.pec_point.size(); ++i) {
        int pi = S.pec_point[i];
        bool val = si >= 0 ? S.point_sat[static_cast<std::size_t>(si)].test(
                                 static_cast<std::size_t>(pi))
                           : S.eval_at(f, pi);
        v.set(i, val);
    }
    return v;
}

ConstructibleResultant constructible_resultant(const BoundedTypeSpace& S,
                                               const Formula& chi, int d) {
    if (!classify(chi).constructible)
        throw PoslogError("constructible_resultant: input is not constructible");
    ConstructibleResultant r;
    r.chi = chi;
    if (classify(chi).positive) r.head_case = "positive";
    else if (chi.kind() == FKind::Not) r.head_case = "not";
    else if (chi.kind() == FKind::Or) r.head_case = "or";
    else if (chi.kind() == FKind::And) r.head_case = "and";
    else r.head_case = "other";

    Bitvec chi_pec = pec_point_vec(S, chi);
    Bitvec in = constructible_eval(S, chi).extension;
    Bitvec covered(S.types.size());

    for (const auto& theta :
         enumerate_constructible(*S.cls->sig, S.vars, d, S.opts)) {
        if (chi_pec.intersects(pec_point_vec(S, theta))) continue;
        r.members.push_back(theta);
        covered |= constructible_eval(S, theta).extension;
    }
    for (std::size_t t = 0; t < S.types.size(); ++t) {
        if (!in.test(t) && !covered.test(t)) {
            r.cover.covered = false;
            r.cover.uncovered_types.push_back(static_cast<int>(t));
        }
    }
    r.cover.cover_size = r.members.size();
    return r;
}

} // namespace poslog
