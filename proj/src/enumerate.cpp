#include "poslog/enumerate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace poslog {

std::vector<Formula> atoms0(const Signature& sig, const std::vector<SortedVar>& vars) {
    std::map<std::string, std::vector<Term>> terms;  // per sort, deterministic
    for (const auto& s : sig.sorts) terms[s];
    {
        std::set<SortedVar> vs(vars.begin(), vars.end());
        for (const auto& v : vs) terms[v.sort].push_back(Term::var(v));
    }
    for (const auto& [name, sort] : sig.constants)
        terms[sort].push_back(Term::constant_unchecked(name, sort));

    std::vector<Formula> out;
    out.push_back(Formula::truth());
    out.push_back(Formula::falsity());

    for (const auto& [rel, sorting] : sig.relations) {
        std::vector<Term> tuple(sorting.size());
        // product over argument positions
        std::vector<std::size_t> idx(sorting.size(), 0);
        bool feasible = true;
        for (const auto& s : sorting)
            if (terms[s].empty()) { feasible = false; break; }
        if (!feasible && !sorting.empty()) continue;
        while (true) {
            for (std::size_t i = 0; i < sorting.size(); ++i)
                tuple[i] = terms[sorting[i]][idx[i]];
            out.push_back(Formula::atom_unchecked(rel, tuple));
            std::size_t i = 0;
            for (; i < sorting.size(); ++i) {
                if (++idx[i] < terms[sorting[i]].size()) break;
                idx[i] = 0;
            }
            if (i == sorting.size()) break;
            if (sorting.empty()) break;
        }
    }

    for (const auto& s : sig.sorts) {
        const auto& ts = terms[s];
        for (std::size_t i = 0; i < ts.size(); ++i)
            for (std::size_t j = i; j < ts.size(); ++j)
                out.push_back(Formula::eq(ts[i], ts[j]));
    }

    std::sort(out.begin(), out.end(), FormulaLess{});
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Formula& a, const Formula& b) { return a == b; }),
              out.end());
    return out;
}

namespace {

enum class Mode { Positive, Fo };

struct Enumerator {
    const Signature& sig;
    EnumOpts opts;
    Mode mode;
    long long produced = 0;

    // memo keyed by the variable *set* and depth
    std::map<std::pair<std::vector<SortedVar>, int>, std::vector<std::vector<Formula>>> memo;

    void bump(long long n = 1) {
        produced += n;
        if (produced > opts.ceiling)
            throw ResourceCeiling("formula enumeration exceeded ceiling");
    }

    static std::vector<SortedVar> key_of(const std::vector<SortedVar>& vars) {
        std::set<SortedVar> s(vars.begin(), vars.end());
        return {s.begin(), s.end()};
    }

    const std::vector<std::vector<Formula>>& strata(const std::vector<SortedVar>& vars, int d) {
        auto key = std::make_pair(key_of(vars), d);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;

        std::vector<std::vector<Formula>> st(static_cast<std::size_t>(d) + 1);
        st[0] = atoms0(sig, key.first);
        bump(static_cast<long long>(st[0].size()));

        for (int k = 1; k <= d; ++k) {
            std::set<Formula, FormulaLess> layer;
            // combined lower supply with exact-depth marker
            std::vector<Formula> lower;
            for (int j = 0; j < k; ++j)
                lower.insert(lower.end(), st[j].begin(), st[j].end());
            std::sort(lower.begin(), lower.end(), FormulaLess{});

            add_connective(FKind::And, lower, k, layer);
            add_connective(FKind::Or, lower, k, layer);
            if (mode == Mode::Fo) {
                for (const auto& g : st[static_cast<std::size_t>(k) - 1]) {
                    if (g.kind() == FKind::Not) continue;  // double negation collapses
                    layer.insert(Formula::not_(g));
                }
            }
            // quantifiers over one fresh variable per sort
            for (const auto& s : sig.sorts) {
                int next = 0;
                for (const auto& v : key.first)
                    if (v.sort == s) next = std::max(next, v.index + 1);
                SortedVar u{s, next};
                std::vector<SortedVar> ext(key.first);
                ext.push_back(u);
                const auto& sub = strata(ext, k - 1);
                for (const auto& body : sub[static_cast<std::size_t>(k) - 1]) {
                    layer.insert(canonicalize(Formula::exists(u, body)));
                    if (mode == Mode::Fo)
                        layer.insert(canonicalize(Formula::forall(u, body)));
                }
            }
            // keep only exact depth k and drop anything already produced lower
            std::vector<Formula>& out = st[k];
            for (const auto& f : layer)
                if (f.depth() == k) out.push_back(f);
            bump(static_cast<long long>(out.size()));
        }

        return memo.emplace(std::move(key), std::move(st)).first->second;
    }

    // width-capped subsets of `lower` with at least one element of depth k-1,
    // skipping children of the same kind (those arise flattened)
    void add_connective(FKind kind, const std::vector<Formula>& lower, int k,
                        std::set<Formula, FormulaLess>& layer) {
        std::vector<Formula> pool;
        for (const auto& f : lower)
            if (f.kind() != kind) pool.push_back(f);
        std::vector<Formula> pick;
        choose(kind, pool, 0, k, false, pick, layer);
    }

    void choose(FKind kind, const std::vector<Formula>& pool, std::size_t from, int k,
                bool has_deep, std::vector<Formula>& pick,
                std::set<Formula, FormulaLess>& layer) {
        if (static_cast<int>(pick.size()) >= 2 && has_deep) {
            layer.insert(kind == FKind::And ? Formula::and_(pick) : Formula::or_(pick));
        }
        if (static_cast<int>(pick.size()) == opts.width) return;
        for (std::size_t i = from; i < pool.size(); ++i) {
            pick.push_back(pool[i]);
            choose(kind, pool, i + 1, k, has_deep || pool[i].depth() == k - 1, pick, layer);
            pick.pop_back();
        }
    }
};

std::vector<Formula> flat(const std::vector<std::vector<Formula>>& st) {
    std::vector<Formula> out;
    for (const auto& s : st) out.insert(out.end(), s.begin(), s.end());
    std::sort(out.begin(), out.end(), FormulaLess{});
    return out;
}

} // namespace

std::vector<std::vector<Formula>> enumerate_positive_strata(
    const Signature& sig, const std::vector<SortedVar>& vars, int d, const EnumOpts& opts) {
    Enumerator e{sig, opts, Mode::Positive};
    return e.strata(vars, d);
}

std::vector<Formula> enumerate_positive(const Signature& sig,
                                        const std::vector<SortedVar>& vars, int d,
                                        const EnumOpts& opts) {
    return flat(enumerate_positive_strata(sig, vars, d, opts));
}

std::vector<Formula> enumerate_pp(const Signature& sig,
                                  const std::vector<SortedVar>& vars, int d,
                                  const EnumOpts& opts) {
    auto all = enumerate_positive(sig, vars, d, opts);
    std::vector<Formula> out;
    for (const auto& f : all)
        if (is_positive_primitive(f)) out.push_back(f);
    return out;
}

std::vector<Formula> enumerate_fo(const Signature& sig,
                                  const std::vector<SortedVar>& vars, int d,
                                  const EnumOpts& opts) {
    Enumerator e{sig, opts, Mode::Fo};
    return flat(e.strata(vars, d));
}

std::vector<std::vector<Formula>> enumerate_constructible_strata(
    const Signature& sig, const std::vector<SortedVar>& vars, int d, const EnumOpts& opts) {
    int leaf_d = std::min(d, opts.constructible_positive_depth);
    auto pos = enumerate_positive_strata(sig, vars, leaf_d, opts);

    std::vector<std::vector<Formula>> st(static_cast<std::size_t>(d) + 1);
    std::set<Formula, FormulaLess> seen;
    for (int j = 0; j <= leaf_d; ++j)
        for (const auto& f : pos[j])
            if (seen.insert(f).second) st[j].push_back(f);

    long long produced = 0;
    auto bump = [&](long long n) {
        produced += n;
        if (produced > opts.ceiling)
            throw ResourceCeiling("constructible enumeration exceeded ceiling");
    };
    for (const auto& s : st) bump(static_cast<long long>(s.size()));

    for (int k = 1; k <= d; ++k) {
        std::set<Formula, FormulaLess> layer;
        std::vector<Formula> lower;
        for (int j = 0; j < k; ++j)
            lower.insert(lower.end(), st[j].begin(), st[j].end());
        std::sort(lower.begin(), lower.end(), FormulaLess{});

        for (const auto& g : lower) {
            if (g.depth() != k - 1) continue;
            if (g.kind() == FKind::Not) continue;
            layer.insert(Formula::not_(g));
        }
        for (FKind kind : {FKind::And, FKind::Or}) {
            std::vector<Formula> pool;
            for (const auto& f : lower)
                if (f.kind() != kind) pool.push_back(f);
            std::vector<std::size_t> pick;
            // width-2..opts.width subsets with a depth-(k-1) element
            struct Rec {
                FKind kind; int k, width;
                const std::vector<Formula>& pool;
                std::set<Formula, FormulaLess>& layer;
                std::vector<Formula> cur;
                void go(std::size_t from, bool deep) {
                    if (cur.size() >= 2 && deep)
                        layer.insert(kind == FKind::And ? Formula::and_(cur)
                                                        : Formula::or_(cur));
                    if (static_cast<int>(cur.size()) == width) return;
                    for (std::size_t i = from; i < pool.size(); ++i) {
                        cur.push_back(pool[i]);
                        go(i + 1, deep || pool[i].depth() == k - 1);
                        cur.pop_back();
                    }
                }
            } rec{kind, k, opts.width, pool, layer, {}};
            rec.go(0, false);
        }
        for (const auto& f : layer)
            if (f.depth() == k && seen.insert(f).second) st[k].push_back(f);
        std::sort(st[k].begin(), st[k].end(), FormulaLess{});
        bump(static_cast<long long>(st[k].size()));
    }
    return st;
}

std::vector<Formula> enumerate_constructible(const Signature& sig,
                                             const std::vector<SortedVar>& vars, int d,
                                             const EnumOpts& opts) {
    return flat(enumerate_constructible_strata(sig, vars, d, opts));
}

} // namespace poslog
