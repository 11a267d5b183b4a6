#include "poslog/forcing.hpp"

#include <algorithm>
#include <set>

namespace poslog {

ForcingContext::ForcingContext(const Theory& T, UniverseClassPtr C,
                               std::vector<SortedVar> vars, int d,
                               const EnumOpts& opts, int existential_member)
    : space_(type_space(T, std::move(C), vars, d, opts)), emember_(existential_member) {}

const Bitvec& ForcingContext::subset(const Formula& f) const {
    auto it = memo_.find(f);
    if (it != memo_.end()) return it->second;
    Bitvec v(space_.types.size());
    if (classify(f).positive) {
        v = space_.basic(f);
    } else {
        if (emember_ < 0)
            throw PoslogError("forcing: non-positive formula needs a designated "
                              "existential member");
        const auto& M = *space_.cls->members[static_cast<std::size_t>(emember_)];
        for (std::size_t t = 0; t < space_.types.size(); ++t) {
            const auto& reals = space_.types[t].realizations;
            auto rit = std::find_if(reals.begin(), reals.end(),
                                    [&](const auto& r) { return r.first == emember_; });
            if (rit == reals.end())
                throw PoslogError("forcing: type " + std::to_string(t) +
                                  " unrealized in the existential member " + M.name);
            Assignment a(space_.vars, rit->second);
            v.set(t, eval(M, f, a));
        }
    }
    return memo_.emplace(f, std::move(v)).first->second;
}

const Bitvec& ForcingContext::tp_plus(const FiniteStructure& A,
                                      const std::vector<int>& a) const {
    auto key = std::make_pair(&A, a);
    auto it = tp_memo_.find(key);
    if (it != tp_memo_.end()) return it->second;
    Assignment asg(space_.vars, a);
    Bitvec tp(space_.supply.size());
    for (std::size_t fi = 0; fi < space_.supply.size(); ++fi)
        if (eval(A, space_.supply[fi], asg)) tp.set(fi);
    return tp_memo_.emplace(std::move(key), std::move(tp)).first->second;
}

bool forces(const FiniteStructure& A, const Formula& f, const std::vector<int>& a,
            const ForcingContext& ctx) {
    const BoundedTypeSpace& S = ctx.space();
    const Bitvec& tp = ctx.tp_plus(A, a);
    const Bitvec& in = ctx.subset(f);
    for (std::size_t t = 0; t < S.types.size(); ++t)
        if (tp.subset_of(S.types[t].sat) && !in.test(t)) return false;
    return true;
}

ExistentialVerdict is_existential(StructurePtr M, const UniverseClass& C, int d,
                                  const EnumOpts& opts) {
    ExistentialVerdict v;
    for (const auto& sort : C.sig->sorts) {
        if (M->carrier_size(sort) == 0) continue;
        std::vector<SortedVar> xs{{sort, 0}};
        std::vector<SortedVar> ys{{sort, 1}, {sort, 2}};
        std::vector<SortedVar> all{xs[0], ys[0], ys[1]};
        std::vector<Formula> supply = enumerate_positive(*C.sig, all, d, opts);

        std::vector<std::vector<int>> bs = all_tuples(*M, ys);
        for (const auto& P : C.members) {
            for (const auto& h : homomorphisms(M, P)) {
                for (const auto& b : bs) {
                    std::vector<int> hb = h.apply_tuple(ys, b);
                    for (int a = 0; a < P->carrier_size(sort); ++a) {
                        // the full positive type of (a, hb) in the continuation
                        Bitvec pi(supply.size());
                        Assignment pa(all, {a, hb[0], hb[1]});
                        for (std::size_t fi = 0; fi < supply.size(); ++fi)
                            if (eval(*P, supply[fi], pa)) pi.set(fi);
                        bool realized = false;
                        for (int m = 0; m < M->carrier_size(sort) && !realized; ++m) {
                            Assignment ma(all, {m, b[0], b[1]});
                            realized = true;
                            for (std::size_t fi = 0; fi < supply.size() && realized; ++fi)
                                if (pi.test(fi) && !eval(*M, supply[fi], ma))
                                    realized = false;
                        }
                        if (!realized) {
                            v.existential = false;
                            for (std::size_t fi = 0; fi < supply.size(); ++fi)
                                if (pi.test(fi)) v.pi.push_back(supply[fi]);
                            v.b = b;
                            v.continuation = P->name;
                            return v;
                        }
                    }
                }
            }
        }
    }
    return v;
}

static std::string head_label(const Formula& f) {
    switch (f.kind()) {
    case FKind::Truth:
    case FKind::Falsity:
    case FKind::Atom:
    case FKind::Eq:      return "atomic";
    case FKind::And:     return "and";
    case FKind::Or:      return "or";
    case FKind::Not:     return "not";
    case FKind::Implies: return "implies";
    case FKind::Exists:  return "exists";
    case FKind::Forall:  return "forall";
    }
    return "?";
}

GenericVerdict is_generic(StructurePtr M, const ForcingContext& ctx, int d) {
    GenericVerdict v;
    const BoundedTypeSpace& S = ctx.space();
    std::vector<Formula> supply = enumerate_fo(*S.cls->sig, S.vars, d, S.opts);
    std::vector<std::vector<int>> tuples = all_tuples(*M, S.vars);
    for (const auto& f : supply) {
        auto& tally = v.per_connective[head_label(f)];
        for (const auto& tup : tuples) {
            Assignment a(S.vars, tup);
            ++tally.checked;
            if (eval(*M, f, a) != forces(*M, f, tup, ctx)) {
                ++tally.failed;
                if (v.generic) {
                    v.generic = false;
                    v.failing = f;
                    v.failing_tuple = tup;
                }
            }
        }
    }
    return v;
}

namespace {

// injective tuples of elements, all sorts mixed, length <= cap, deterministic
void injective_tuples(const FiniteStructure& M, int cap,
                      std::vector<std::vector<Elem>>& out) {
    std::vector<Elem> universe;
    for (const auto& sort : M.sig->sorts)
        for (int e = 0; e < M.carrier_size(sort); ++e) universe.emplace_back(sort, e);
    std::vector<Elem> cur;
    auto rec = [&](auto&& self) -> void {
        out.push_back(cur);
        if (static_cast<int>(cur.size()) == cap) return;
        for (const auto& el : universe) {
            if (std::find(cur.begin(), cur.end(), el) != cur.end()) continue;
            cur.push_back(el);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
}

std::vector<SortedVar> tuple_vars(const std::vector<Elem>& t) {
    std::vector<SortedVar> vs;
    for (std::size_t i = 0; i < t.size(); ++i)
        vs.push_back({t[i].first, static_cast<int>(i)});
    return vs;
}

Bitvec tuple_type(const FiniteStructure& M, const std::vector<Elem>& t,
                  const std::vector<Formula>& supply) {
    Assignment a;
    for (std::size_t i = 0; i < t.size(); ++i)
        a.push({t[i].first, static_cast<int>(i)}, t[i].second);
    Bitvec v(supply.size());
    for (std::size_t fi = 0; fi < supply.size(); ++fi)
        if (eval(M, supply[fi], a)) v.set(fi);
    return v;
}

bool same_sorts(const std::vector<Elem>& a, const std::vector<Elem>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].first != b[i].first) return false;
    return true;
}

} // namespace

BackAndForthSystem back_and_forth(StructurePtr M, StructurePtr N, int d,
                                  const EnumOpts& opts) {
    BackAndForthSystem sys;
    int cap = std::min(M->total_size(), N->total_size());
    std::vector<std::vector<Elem>> ta, tb;
    injective_tuples(*M, cap, ta);
    injective_tuples(*N, cap, tb);

    // bounded positive types, per tuple, supply shared per sort profile
    std::map<std::vector<SortedVar>, std::vector<Formula>> supplies;
    auto type_of = [&](const FiniteStructure& S, const std::vector<Elem>& t) {
        auto vs = tuple_vars(t);
        auto it = supplies.find(vs);
        if (it == supplies.end())
            it = supplies.emplace(vs, enumerate_positive(*S.sig, vs, d, opts)).first;
        return tuple_type(S, t, it->second);
    };
    std::vector<Bitvec> tya, tyb;
    tya.reserve(ta.size());
    for (const auto& t : ta) tya.push_back(type_of(*M, t));
    tyb.reserve(tb.size());
    for (const auto& t : tb) tyb.push_back(type_of(*N, t));

    std::set<std::pair<std::vector<Elem>, std::vector<Elem>>> S;
    for (std::size_t i = 0; i < ta.size(); ++i)
        for (std::size_t j = 0; j < tb.size(); ++j)
            if (same_sorts(ta[i], tb[j]) && tya[i] == tyb[j])
                S.emplace(ta[i], tb[j]);

    std::vector<Elem> universe_m, universe_n;
    for (const auto& sort : M->sig->sorts) {
        for (int e = 0; e < M->carrier_size(sort); ++e) universe_m.emplace_back(sort, e);
        for (int e = 0; e < N->carrier_size(sort); ++e) universe_n.emplace_back(sort, e);
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = S.begin(); it != S.end();) {
            const auto& [a, b] = *it;
            bool ok = true;
            Elem bad{};
            std::string dir;
            for (const auto& m : universe_m) {
                if (std::find(a.begin(), a.end(), m) != a.end()) continue;
                if (static_cast<int>(a.size()) == cap) { ok = false; bad = m; dir = "forth"; break; }
                bool found = false;
                for (const auto& n : universe_n) {
                    if (n.first != m.first) continue;
                    if (std::find(b.begin(), b.end(), n) != b.end()) continue;
                    auto ea = a; ea.push_back(m);
                    auto eb = b; eb.push_back(n);
                    if (S.count({ea, eb})) { found = true; break; }
                }
                if (!found) { ok = false; bad = m; dir = "forth"; break; }
            }
            if (ok) {
                for (const auto& n : universe_n) {
                    if (std::find(b.begin(), b.end(), n) != b.end()) continue;
                    if (static_cast<int>(b.size()) == cap) { ok = false; bad = n; dir = "back"; break; }
                    bool found = false;
                    for (const auto& m : universe_m) {
                        if (m.first != n.first) continue;
                        if (std::find(a.begin(), a.end(), m) != a.end()) continue;
                        auto ea = a; ea.push_back(m);
                        auto eb = b; eb.push_back(n);
                        if (S.count({ea, eb})) { found = true; break; }
                    }
                    if (!found) { ok = false; bad = n; dir = "back"; break; }
                }
            }
            if (!ok) {
                if (!sys.failure) {
                    sys.failure = TuplePair{a, b};
                    sys.failure_element = bad;
                    sys.failure_direction = dir;
                }
                it = S.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    for (const auto& [a, b] : S) sys.pairs.push_back({a, b});
    sys.equivalent = S.count({{}, {}}) > 0;
    return sys;
}

AgreementReport infinitary_agreement(StructurePtr M, StructurePtr N,
                                     const std::vector<Elem>& a,
                                     const std::vector<Elem>& b, int d,
                                     const EnumOpts& opts) {
    BackAndForthSystem sys = back_and_forth(M, N, d, opts);
    if (!sys.equivalent)
        throw PoslogError("infinitary_agreement: no back-and-forth system");
    bool member = false;
    for (const auto& p : sys.pairs)
        if (p.a == a && p.b == b) { member = true; break; }
    if (!member)
        throw PoslogError("infinitary_agreement: pair outside the system");

    AgreementReport r;
    auto vs = tuple_vars(a);
    Assignment am, an;
    for (std::size_t i = 0; i < a.size(); ++i) {
        am.push(vs[i], a[i].second);
        an.push(vs[i], b[i].second);
    }
    for (const auto& f : enumerate_fo(*M->sig, vs, d, opts)) {
        ++r.checked;
        if (eval(*M, f, am) != eval(*N, f, an)) {
            r.agree = false;
            if (!r.disagreement) r.disagreement = f;
        }
    }
    return r;
}

} // namespace poslog
