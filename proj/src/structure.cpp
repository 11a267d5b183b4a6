#include "poslog/structure.hpp"

#include <algorithm>

namespace poslog {

int FiniteStructure::element(const std::string& sort, const std::string& elem_name) const {
    auto it = carriers.find(sort);
    if (it == carriers.end()) throw SortError("no carrier for sort " + sort);
    for (std::size_t i = 0; i < it->second.size(); ++i)
        if (it->second[i] == elem_name) return static_cast<int>(i);
    throw SortError("unknown element " + elem_name + " of sort " + sort);
}

void FiniteStructure::validate() const {
    if (!sig) throw SortError("structure " + name + " has no signature");
    for (const auto& s : sig->sorts)
        if (!carriers.count(s))
            throw SortError(name + ": missing carrier for sort " + s);
    for (const auto& [s, c] : carriers) {
        sig->require_sort(s);
        std::set<std::string> seen(c.begin(), c.end());
        if (seen.size() != c.size())
            throw SortError(name + ": duplicate element name in sort " + s);
    }
    for (const auto& [r, rows] : relations) {
        auto it = sig->relations.find(r);
        if (it == sig->relations.end()) throw SortError(name + ": undeclared relation " + r);
        for (const auto& row : rows) {
            if (row.size() != it->second.size())
                throw SortError(name + ": arity mismatch in table of " + r);
            for (std::size_t i = 0; i < row.size(); ++i)
                if (row[i] < 0 || row[i] >= carrier_size(it->second[i]))
                    throw SortError(name + ": out-of-range element in table of " + r);
        }
    }
    for (const auto& [f, decl] : sig->functions) {
        auto it = functions.find(f);
        if (it == functions.end()) throw SortError(name + ": missing table for function " + f);
        // totality
        std::size_t expect = 1;
        for (const auto& s : decl.arg_sorts)
            expect *= static_cast<std::size_t>(carrier_size(s));
        if (it->second.size() != expect)
            throw SortError(name + ": function " + f + " is not total");
        for (const auto& [args, res] : it->second) {
            if (args.size() != decl.arg_sorts.size())
                throw SortError(name + ": arity mismatch in table of " + f);
            for (std::size_t i = 0; i < args.size(); ++i)
                if (args[i] < 0 || args[i] >= carrier_size(decl.arg_sorts[i]))
                    throw SortError(name + ": out-of-range argument in table of " + f);
            if (res < 0 || res >= carrier_size(decl.result_sort))
                throw SortError(name + ": out-of-range result in table of " + f);
        }
    }
    for (const auto& [c, s] : sig->constants) {
        auto it = constants.find(c);
        if (it == constants.end()) throw SortError(name + ": missing constant " + c);
        if (it->second < 0 || it->second >= carrier_size(s))
            throw SortError(name + ": out-of-range constant " + c);
    }
}

int eval_term(const FiniteStructure& M, const Term& t, const Assignment& a) {
    switch (t.kind()) {
    case TKind::Var:
        return a.lookup(t.node().var);
    case TKind::Const: {
        auto it = M.constants.find(t.node().name);
        if (it == M.constants.end()) throw SortError("uninterpreted constant " + t.node().name);
        return it->second;
    }
    case TKind::App: {
        std::vector<int> args;
        args.reserve(t.node().args.size());
        for (const auto& u : t.node().args) args.push_back(eval_term(M, u, a));
        auto it = M.functions.find(t.node().name);
        if (it == M.functions.end()) throw SortError("uninterpreted function " + t.node().name);
        auto jt = it->second.find(args);
        if (jt == it->second.end()) throw SortError("partial function table " + t.node().name);
        return jt->second;
    }
    }
    return -1;
}

static bool eval_rec(const FiniteStructure& M, const Formula& f, Assignment& a) {
    const FNode& n = f.node();
    switch (n.kind) {
    case FKind::Truth: return true;
    case FKind::Falsity: return false;
    case FKind::Atom: {
        std::vector<int> args;
        args.reserve(n.terms.size());
        for (const auto& t : n.terms) args.push_back(eval_term(M, t, a));
        auto it = M.relations.find(n.rel);
        return it != M.relations.end() && it->second.count(args) > 0;
    }
    case FKind::Eq:
        return eval_term(M, n.terms[0], a) == eval_term(M, n.terms[1], a);
    case FKind::And:
        for (const auto& k : n.kids) if (!eval_rec(M, k, a)) return false;
        return true;
    case FKind::Or:
        for (const auto& k : n.kids) if (eval_rec(M, k, a)) return true;
        return false;
    case FKind::Not:
        return !eval_rec(M, n.kids[0], a);
    case FKind::Implies:
        return !eval_rec(M, n.kids[0], a) || eval_rec(M, n.kids[1], a);
    case FKind::Exists: {
        int sz = M.carrier_size(n.var.sort);
        for (int e = 0; e < sz; ++e) {
            a.push(n.var, e);
            bool ok = eval_rec(M, n.kids[0], a);
            a.pop();
            if (ok) return true;
        }
        return false;
    }
    case FKind::Forall: {
        int sz = M.carrier_size(n.var.sort);
        for (int e = 0; e < sz; ++e) {
            a.push(n.var, e);
            bool ok = eval_rec(M, n.kids[0], a);
            a.pop();
            if (!ok) return false;
        }
        return true;
    }
    }
    return false;
}

bool eval(const FiniteStructure& M, const Formula& f, const Assignment& a) {
    Assignment local(a);
    return eval_rec(M, f, local);
}

bool eval_sentence(const FiniteStructure& M, const Formula& f) {
    Assignment a;
    return eval_rec(M, f, a);
}

std::vector<std::vector<int>> all_tuples(const FiniteStructure& M,
                                         const std::vector<SortedVar>& vars) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(vars.size(), 0);
    for (const auto& v : vars)
        if (M.carrier_size(v.sort) == 0) return out;
    while (true) {
        out.push_back(cur);
        std::size_t i = vars.size();
        while (i > 0) {
            --i;
            if (++cur[i] < M.carrier_size(vars[i].sort)) break;
            cur[i] = 0;
            if (i == 0) return out;
        }
        if (vars.empty()) return out;
    }
}

} // namespace poslog
