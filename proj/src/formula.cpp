#include "poslog/formula.hpp"

#include <algorithm>
#include <set>

namespace poslog {

// ---------------------------------------------------------------------------
// Terms

static std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

static std::uint64_t str_hash(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) { h ^= c; h *= 1099511628211ull; }
    return h;
}

Term Term::var(SortedVar v) {
    auto n = std::make_shared<TermNode>();
    n->kind = TKind::Var;
    n->sort = v.sort;
    n->var = std::move(v);
    return Term(std::move(n));
}

Term Term::constant(const Signature& sig, const std::string& name) {
    auto it = sig.constants.find(name);
    if (it == sig.constants.end()) throw SortError("undeclared constant: " + name);
    return constant_unchecked(name, it->second);
}

Term Term::constant_unchecked(const std::string& name, const std::string& sort) {
    auto n = std::make_shared<TermNode>();
    n->kind = TKind::Const;
    n->name = name;
    n->sort = sort;
    return Term(std::move(n));
}

Term Term::app(const Signature& sig, const std::string& fn, std::vector<Term> args) {
    auto it = sig.functions.find(fn);
    if (it == sig.functions.end()) throw SortError("undeclared function: " + fn);
    const auto& decl = it->second;
    if (decl.arg_sorts.size() != args.size())
        throw SortError("arity mismatch for " + fn);
    for (std::size_t i = 0; i < args.size(); ++i)
        if (args[i].sort() != decl.arg_sorts[i])
            throw SortError("argument sort mismatch for " + fn);
    return app_unchecked(fn, std::move(args), decl.result_sort);
}

Term Term::app_unchecked(const std::string& fn, std::vector<Term> args,
                         const std::string& result_sort) {
    auto n = std::make_shared<TermNode>();
    n->kind = TKind::App;
    n->name = fn;
    n->args = std::move(args);
    n->sort = result_sort;
    return Term(std::move(n));
}

int Term::cmp(const Term& a, const Term& b) {
    const auto& x = a.node();
    const auto& y = b.node();
    if (x.kind != y.kind) return x.kind < y.kind ? -1 : 1;
    switch (x.kind) {
    case TKind::Var:
        if (x.var != y.var) return x.var < y.var ? -1 : 1;
        return 0;
    case TKind::Const: {
        int c = x.name.compare(y.name);
        return c < 0 ? -1 : (c == 0 ? 0 : 1);
    }
    case TKind::App: {
        if (int c = x.name.compare(y.name)) return c < 0 ? -1 : 1;
        if (x.args.size() != y.args.size()) return x.args.size() < y.args.size() ? -1 : 1;
        for (std::size_t i = 0; i < x.args.size(); ++i)
            if (int c = cmp(x.args[i], y.args[i])) return c;
        return 0;
    }
    }
    return 0;
}

void collect_vars(const Term& t, std::vector<SortedVar>& out) {
    switch (t.kind()) {
    case TKind::Var: out.push_back(t.node().var); break;
    case TKind::Const: break;
    case TKind::App:
        for (const auto& a : t.node().args) collect_vars(a, out);
        break;
    }
}

static std::uint64_t term_hash(const Term& t) {
    std::uint64_t h = mix(0, static_cast<std::uint64_t>(t.kind()));
    switch (t.kind()) {
    case TKind::Var:
        h = mix(h, str_hash(t.node().var.sort));
        h = mix(h, static_cast<std::uint64_t>(t.node().var.index));
        break;
    case TKind::Const:
        h = mix(h, str_hash(t.node().name));
        break;
    case TKind::App:
        h = mix(h, str_hash(t.node().name));
        for (const auto& a : t.node().args) h = mix(h, term_hash(a));
        break;
    }
    return h;
}

static Term subst_term(const Term& t, const std::map<SortedVar, Term>& b) {
    switch (t.kind()) {
    case TKind::Var: {
        auto it = b.find(t.node().var);
        return it == b.end() ? t : it->second;
    }
    case TKind::Const:
        return t;
    case TKind::App: {
        std::vector<Term> args;
        args.reserve(t.node().args.size());
        for (const auto& a : t.node().args) args.push_back(subst_term(a, b));
        return Term::app_unchecked(t.node().name, std::move(args), t.sort());
    }
    }
    return t;
}

// ---------------------------------------------------------------------------
// Formula construction

Formula Formula::make(FNode n) {
    std::uint64_t h = mix(0xf0e1d2c3, static_cast<std::uint64_t>(n.kind));
    h = mix(h, str_hash(n.rel));
    for (const auto& t : n.terms) h = mix(h, term_hash(t));
    for (const auto& k : n.kids) h = mix(h, k.hash());
    if (n.kind == FKind::Exists || n.kind == FKind::Forall) {
        h = mix(h, str_hash(n.var.sort));
        h = mix(h, static_cast<std::uint64_t>(n.var.index));
    }
    n.hash = h;

    int d = 0;
    for (const auto& k : n.kids) d = std::max(d, k.depth());
    switch (n.kind) {
    case FKind::Truth: case FKind::Falsity: case FKind::Atom: case FKind::Eq:
        n.depth = 0;
        break;
    default:
        n.depth = d + 1;
        break;
    }

    std::set<SortedVar> fv;
    for (const auto& t : n.terms) {
        std::vector<SortedVar> vs;
        collect_vars(t, vs);
        fv.insert(vs.begin(), vs.end());
    }
    for (const auto& k : n.kids) fv.insert(k.free_vars().begin(), k.free_vars().end());
    if (n.kind == FKind::Exists || n.kind == FKind::Forall) fv.erase(n.var);
    n.free.assign(fv.begin(), fv.end());

    return Formula(std::make_shared<const FNode>(std::move(n)));
}

Formula Formula::truth() {
    FNode n; n.kind = FKind::Truth;
    return make(std::move(n));
}

Formula Formula::falsity() {
    FNode n; n.kind = FKind::Falsity;
    return make(std::move(n));
}

Formula Formula::atom(const Signature& sig, const std::string& rel, std::vector<Term> args) {
    if (rel == "true" && args.empty()) return truth();
    if (rel == "false" && args.empty()) return falsity();
    auto it = sig.relations.find(rel);
    if (it == sig.relations.end()) throw SortError("undeclared relation: " + rel);
    const auto& sorting = it->second;
    if (sorting.size() != args.size()) throw SortError("arity mismatch for " + rel);
    for (std::size_t i = 0; i < args.size(); ++i)
        if (args[i].sort() != sorting[i])
            throw SortError("argument sort mismatch for " + rel);
    return atom_unchecked(rel, std::move(args));
}

Formula Formula::atom_unchecked(const std::string& rel, std::vector<Term> args) {
    FNode n;
    n.kind = FKind::Atom;
    n.rel = rel;
    n.terms = std::move(args);
    return make(std::move(n));
}

Formula Formula::eq(const Term& a, const Term& b) {
    if (a.sort() != b.sort()) throw SortError("equality between different sorts");
    FNode n;
    n.kind = FKind::Eq;
    if (Term::cmp(a, b) <= 0) n.terms = {a, b};
    else n.terms = {b, a};
    return make(std::move(n));
}

static std::vector<Formula> dedup_sort(std::vector<Formula> kids) {
    std::sort(kids.begin(), kids.end(), FormulaLess{});
    kids.erase(std::unique(kids.begin(), kids.end(),
                           [](const Formula& a, const Formula& b) { return a == b; }),
               kids.end());
    return kids;
}

Formula Formula::and_(std::vector<Formula> kids) {
    kids = dedup_sort(std::move(kids));
    if (kids.empty()) return truth();
    if (kids.size() == 1) return kids[0];
    FNode n;
    n.kind = FKind::And;
    n.kids = std::move(kids);
    return make(std::move(n));
}

Formula Formula::or_(std::vector<Formula> kids) {
    kids = dedup_sort(std::move(kids));
    if (kids.empty()) return falsity();
    if (kids.size() == 1) return kids[0];
    FNode n;
    n.kind = FKind::Or;
    n.kids = std::move(kids);
    return make(std::move(n));
}

Formula Formula::not_(Formula f) {
    FNode n;
    n.kind = FKind::Not;
    n.kids = {std::move(f)};
    return make(std::move(n));
}

Formula Formula::implies(Formula a, Formula b) {
    FNode n;
    n.kind = FKind::Implies;
    n.kids = {std::move(a), std::move(b)};
    return make(std::move(n));
}

Formula Formula::exists(SortedVar v, Formula body) {
    FNode n;
    n.kind = FKind::Exists;
    n.var = std::move(v);
    n.kids = {std::move(body)};
    return make(std::move(n));
}

Formula Formula::forall(SortedVar v, Formula body) {
    FNode n;
    n.kind = FKind::Forall;
    n.var = std::move(v);
    n.kids = {std::move(body)};
    return make(std::move(n));
}

int Formula::cmp(const Formula& a, const Formula& b) {
    if (a.p_ == b.p_) return 0;
    if (!a.p_ || !b.p_) return a.p_ ? 1 : -1;
    const FNode& x = *a.p_;
    const FNode& y = *b.p_;
    if (x.kind != y.kind) return x.kind < y.kind ? -1 : 1;
    if (int c = x.rel.compare(y.rel)) return c < 0 ? -1 : 1;
    if (x.terms.size() != y.terms.size()) return x.terms.size() < y.terms.size() ? -1 : 1;
    for (std::size_t i = 0; i < x.terms.size(); ++i)
        if (int c = Term::cmp(x.terms[i], y.terms[i])) return c;
    if (x.kind == FKind::Exists || x.kind == FKind::Forall) {
        if (x.var != y.var) return x.var < y.var ? -1 : 1;
    }
    if (x.kids.size() != y.kids.size()) return x.kids.size() < y.kids.size() ? -1 : 1;
    for (std::size_t i = 0; i < x.kids.size(); ++i)
        if (int c = cmp(x.kids[i], y.kids[i])) return c;
    return 0;
}

bool Formula::operator==(const Formula& o) const {
    if (p_ == o.p_) return true;
    if (!p_ || !o.p_) return false;
    if (p_->hash != o.p_->hash) return false;
    return cmp(*this, o) == 0;
}

// ---------------------------------------------------------------------------
// Substitution

Formula substitute(const Formula& f, const std::map<SortedVar, Term>& binding) {
    for (const auto& [v, t] : binding)
        if (v.sort != t.sort()) throw SortError("substitution sort mismatch");
    if (binding.empty()) return f;
    const FNode& n = f.node();
    switch (n.kind) {
    case FKind::Truth: case FKind::Falsity:
        return f;
    case FKind::Atom: {
        std::vector<Term> args;
        args.reserve(n.terms.size());
        for (const auto& t : n.terms) args.push_back(subst_term(t, binding));
        return Formula::atom_unchecked(n.rel, std::move(args));
    }
    case FKind::Eq:
        return Formula::eq(subst_term(n.terms[0], binding), subst_term(n.terms[1], binding));
    case FKind::And: case FKind::Or: {
        std::vector<Formula> kids;
        kids.reserve(n.kids.size());
        for (const auto& k : n.kids) kids.push_back(substitute(k, binding));
        return n.kind == FKind::And ? Formula::and_(std::move(kids))
                                    : Formula::or_(std::move(kids));
    }
    case FKind::Not:
        return Formula::not_(substitute(n.kids[0], binding));
    case FKind::Implies:
        return Formula::implies(substitute(n.kids[0], binding),
                                substitute(n.kids[1], binding));
    case FKind::Exists: case FKind::Forall: {
        std::map<SortedVar, Term> inner(binding);
        inner.erase(n.var);
        if (inner.empty()) return f;
        // drop entries for variables not free in the body
        for (auto it = inner.begin(); it != inner.end();) {
            if (!std::binary_search(n.kids[0].free_vars().begin(),
                                    n.kids[0].free_vars().end(), it->first))
                it = inner.erase(it);
            else
                ++it;
        }
        if (inner.empty()) return f;
        // capture check: does any replacement term mention the bound variable?
        bool captured = false;
        int max_idx = n.var.index;
        for (const auto& v : n.kids[0].free_vars())
            if (v.sort == n.var.sort) max_idx = std::max(max_idx, v.index);
        for (const auto& [v, t] : inner) {
            std::vector<SortedVar> vs;
            collect_vars(t, vs);
            for (const auto& w : vs) {
                if (w == n.var) captured = true;
                if (w.sort == n.var.sort) max_idx = std::max(max_idx, w.index);
            }
        }
        SortedVar bound = n.var;
        Formula body = n.kids[0];
        if (captured) {
            SortedVar fresh{n.var.sort, max_idx + 1};
            body = substitute(body, {{n.var, Term::var(fresh)}});
            bound = fresh;
        }
        body = substitute(body, inner);
        return n.kind == FKind::Exists ? Formula::exists(bound, std::move(body))
                                       : Formula::forall(bound, std::move(body));
    }
    }
    return f;
}

// ---------------------------------------------------------------------------
// Canonical form

static Formula canon(const Formula& f, const std::map<SortedVar, SortedVar>& env);

static void flatten_into(FKind kind, const Formula& f, std::vector<Formula>& out) {
    if (f.kind() == kind) {
        for (const auto& k : f.node().kids) flatten_into(kind, k, out);
    } else {
        out.push_back(f);
    }
}

static Formula canon(const Formula& f, const std::map<SortedVar, SortedVar>& env) {
    const FNode& n = f.node();
    switch (n.kind) {
    case FKind::Truth: case FKind::Falsity:
        return f;
    case FKind::Atom: {
        std::map<SortedVar, Term> b;
        for (const auto& [v, w] : env) b.emplace(v, Term::var(w));
        std::vector<Term> args;
        args.reserve(n.terms.size());
        for (const auto& t : n.terms) args.push_back(subst_term(t, b));
        return Formula::atom_unchecked(n.rel, std::move(args));
    }
    case FKind::Eq: {
        std::map<SortedVar, Term> b;
        for (const auto& [v, w] : env) b.emplace(v, Term::var(w));
        return Formula::eq(subst_term(n.terms[0], b), subst_term(n.terms[1], b));
    }
    case FKind::And: case FKind::Or: {
        std::vector<Formula> kids;
        for (const auto& k : n.kids) {
            Formula ck = canon(k, env);
            flatten_into(n.kind, ck, kids);
        }
        return n.kind == FKind::And ? Formula::and_(std::move(kids))
                                    : Formula::or_(std::move(kids));
    }
    case FKind::Not: {
        Formula c = canon(n.kids[0], env);
        if (c.kind() == FKind::Not) return c.node().kids[0];
        return Formula::not_(std::move(c));
    }
    case FKind::Implies:
        return Formula::implies(canon(n.kids[0], env), canon(n.kids[1], env));
    case FKind::Exists: case FKind::Forall: {
        // the bound variable becomes the least index unused by the (renamed)
        // free variables of the body
        std::set<int> used;
        for (const auto& u : n.kids[0].free_vars()) {
            if (u == n.var) continue;
            auto it = env.find(u);
            const SortedVar& w = (it == env.end()) ? u : it->second;
            if (w.sort == n.var.sort) used.insert(w.index);
        }
        int k = 0;
        while (used.count(k)) ++k;
        std::map<SortedVar, SortedVar> inner(env);
        inner[n.var] = SortedVar{n.var.sort, k};
        Formula body = canon(n.kids[0], inner);
        return n.kind == FKind::Exists
                   ? Formula::exists(SortedVar{n.var.sort, k}, std::move(body))
                   : Formula::forall(SortedVar{n.var.sort, k}, std::move(body));
    }
    }
    return f;
}

Formula canonicalize(const Formula& f) {
    return canon(f, {});
}

// ---------------------------------------------------------------------------
// Classification

static bool positive_rec(const FNode& n) {
    switch (n.kind) {
    case FKind::Truth: case FKind::Falsity: case FKind::Atom: case FKind::Eq:
        return true;
    case FKind::And: case FKind::Or:
        for (const auto& k : n.kids) if (!positive_rec(k.node())) return false;
        return true;
    case FKind::Exists:
        return positive_rec(n.kids[0].node());
    default:
        return false;
    }
}

static bool constructible_rec(const FNode& n) {
    if (positive_rec(n)) return true;
    switch (n.kind) {
    case FKind::Not:
        return constructible_rec(n.kids[0].node());
    case FKind::And: case FKind::Or:
        for (const auto& k : n.kids) if (!constructible_rec(k.node())) return false;
        return true;
    case FKind::Implies:
        return constructible_rec(n.kids[0].node()) && constructible_rec(n.kids[1].node());
    default:
        return false;
    }
}

bool is_positive_primitive(const Formula& f) {
    const FNode* n = &f.node();
    while (n->kind == FKind::Exists) n = &n->kids[0].node();
    struct R {
        static bool conj(const FNode& n) {
            switch (n.kind) {
            case FKind::Truth: case FKind::Falsity: case FKind::Atom: case FKind::Eq:
                return true;
            case FKind::And:
                for (const auto& k : n.kids) if (!conj(k.node())) return false;
                return true;
            default:
                return false;
            }
        }
    };
    return R::conj(*n);
}

static bool normal_geometric_rec(const Formula& f) {
    if (is_positive_primitive(f)) return true;
    if (f.kind() == FKind::Or) {
        for (const auto& k : f.node().kids)
            if (!is_positive_primitive(k)) return false;
        return true;
    }
    return false;
}

FragmentVerdict classify(const Formula& f) {
    FragmentVerdict v;
    const FNode& n = f.node();
    v.positive = positive_rec(n);
    // at desk scale every conjunction/disjunction is finite, so the positive
    // and geometric fragments coincide
    v.geometric = v.positive;
    v.normal_geometric = normal_geometric_rec(f);
    v.constructible = constructible_rec(n);
    // every desk-scale formula is finitary
    v.first_order = true;

    const FNode* m = &n;
    while (m->kind == FKind::Forall) m = &m->kids[0].node();
    if (m->kind == FKind::Implies) {
        bool lp = positive_rec(m->kids[0].node());
        bool rp = positive_rec(m->kids[1].node());
        v.h_inductive_basic = lp && rp;
        v.h_universal_basic = lp && m->kids[1].node().kind == FKind::Falsity;
        v.g_inductive_basic = lp && rp;  // geometric = positive here
    }
    return v;
}

PpParts pp_parts(const Formula& f) {
    PpParts out;
    Formula matrix = f;
    while (matrix.kind() == FKind::Exists) {
        out.prefix.push_back(matrix.node().var);
        matrix = matrix.node().kids[0];
    }
    struct R {
        static void atoms(const Formula& f, std::vector<Formula>& out) {
            if (f.kind() == FKind::And) {
                for (const auto& k : f.node().kids) atoms(k, out);
            } else {
                out.push_back(f);
            }
        }
    };
    R::atoms(matrix, out.atoms);
    return out;
}

} // namespace poslog
