#include "poslog/text.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace poslog {

namespace {

// ---------------------------------------------------------------------------
// Lexer

struct Token {
    enum Type { Ident, Punct, End } type = End;
    std::string text;
    int line = 1;
    int col = 1;
};

[[noreturn]] void fail(int line, int col, const std::string& msg, const std::string& hint = "") {
    throw ParseError({ParseDiagnostic{"error", line, col, msg, hint}});
}

std::vector<Token> lex(const std::string& text, int first_line) {
    std::vector<Token> toks;
    int line = first_line, col = 1;
    std::size_t i = 0;
    auto step = [&](char c) {
        if (c == '\n') { ++line; col = 1; }
        else ++col;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {  // line comment
            while (i < text.size() && text[i] != '\n') { step(text[i]); ++i; }
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) { step(c); ++i; continue; }
        int tl = line, tc = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string s;
            while (i < text.size()) {
                char d = text[i];
                bool ok = std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'';
                // '-' continues an identifier only before a letter (kind names)
                if (!ok && d == '-' && i + 1 < text.size() &&
                    std::isalpha(static_cast<unsigned char>(text[i + 1])))
                    ok = true;
                if (!ok) break;
                s += d;
                step(d);
                ++i;
            }
            toks.push_back({Token::Ident, s, tl, tc});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string s;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                s += text[i];
                step(text[i]);
                ++i;
            }
            toks.push_back({Token::Ident, s, tl, tc});
            continue;
        }
        if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            toks.push_back({Token::Punct, "->", tl, tc});
            step('-'); step('>');
            i += 2;
            continue;
        }
        static const std::string singles = ";,:(){}[]=<>&|!@";
        if (singles.find(c) != std::string::npos) {
            toks.push_back({Token::Punct, std::string(1, c), tl, tc});
            step(c);
            ++i;
            continue;
        }
        fail(line, col, std::string("unexpected character '") + c + "'");
    }
    toks.push_back({Token::End, "", line, col});
    return toks;
}

// ---------------------------------------------------------------------------
// Raw formula tree (pre sort-resolution)

struct RawTerm {
    std::string name;
    std::vector<RawTerm> args;
    bool applied = false;
    int line = 0, col = 0;
    int entity = -1;   // filled during resolution for variables
};

struct RawF {
    enum K { True, False, AndSet, OrSet, Imp, Not, Exists, Forall, Atom, Eq } k = True;
    std::vector<RawF> kids;
    std::vector<std::pair<std::string, std::string>> qvars;  // name, sort or ""
    std::vector<int> qents;  // entity per quantified variable (resolution)
    std::string rel;
    std::vector<RawTerm> terms;
    int line = 0, col = 0;
};

bool is_keyword(const std::string& s) {
    static const std::set<std::string> kw = {
        "sort", "rel", "fun", "const", "theory", "axiom", "structure", "over",
        "class", "fragment", "signature", "formula", "forall", "exists",
        "true", "false", "And", "Or"};
    return kw.count(s) > 0;
}

const std::string kVarNames[6] = {"x", "y", "z", "w", "u", "v"};

std::string var_base_name(int index) {
    if (index >= 0 && index < 6) return kVarNames[index];
    return "x" + std::to_string(index);
}

int var_index_of_name(const std::string& n) {
    for (int i = 0; i < 6; ++i)
        if (n == kVarNames[i]) return i;
    if (n.size() > 1 && n[0] == 'x') {
        bool digits = true;
        for (std::size_t i = 1; i < n.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(n[i]))) digits = false;
        if (digits) {
            int v = std::stoi(n.substr(1));
            if (v >= 6) return v;
        }
    }
    return -1;
}

// ---------------------------------------------------------------------------
// Parser

struct Parser {
    std::vector<Token> toks;
    std::size_t pos = 0;
    SignaturePtr context;

    const Token& peek(int ahead = 0) const {
        std::size_t i = pos + static_cast<std::size_t>(ahead);
        return i < toks.size() ? toks[i] : toks.back();
    }
    const Token& next() { return toks[pos < toks.size() - 1 ? pos++ : pos]; }
    bool at(const std::string& t) const {
        return peek().text == t && peek().type != Token::End;
    }
    bool accept(const std::string& t) {
        if (at(t)) { ++pos; return true; }
        return false;
    }
    void expect(const std::string& t, const std::string& what) {
        if (!accept(t))
            fail(peek().line, peek().col,
                 "expected '" + t + "' " + what + ", found '" + peek().text + "'");
    }
    std::string ident(const std::string& what) {
        if (peek().type != Token::Ident)
            fail(peek().line, peek().col, "expected " + what + ", found '" + peek().text + "'");
        return next().text;
    }

    // ---- declarations ----------------------------------------------------

    std::string sig_name = "L";
    std::shared_ptr<Signature> own_sig;

    bool at_decl() const {
        return at("sort") || at("rel") || at("fun") || at("const") || at("signature");
    }

    void parse_decls() {
        while (at_decl()) {
            if (!own_sig) own_sig = std::make_shared<Signature>();
            if (accept("signature")) {
                sig_name = ident("signature name");
                own_sig->name = sig_name;
                expect(";", "after signature declaration");
            } else if (accept("sort")) {
                own_sig->add_sort(ident("sort name"));
                expect(";", "after sort declaration");
            } else if (accept("rel")) {
                std::string r = rel_name();
                expect("(", "after relation name");
                std::vector<std::string> sorting;
                if (!at(")")) {
                    sorting.push_back(ident("sort name"));
                    while (accept(",")) sorting.push_back(ident("sort name"));
                }
                expect(")", "after relation sorting");
                expect(";", "after relation declaration");
                own_sig->add_relation(r, std::move(sorting));
            } else if (accept("fun")) {
                std::string f = ident("function name");
                expect("(", "after function name");
                std::vector<std::string> args;
                if (!at(")")) {
                    args.push_back(ident("sort name"));
                    while (accept(",")) args.push_back(ident("sort name"));
                }
                expect(")", "after function arity");
                expect(":", "before result sort");
                std::string res = ident("result sort");
                expect(";", "after function declaration");
                own_sig->add_function(f, std::move(args), std::move(res));
            } else if (accept("const")) {
                std::string c = ident("constant name");
                expect(":", "before constant sort");
                std::string s = ident("constant sort");
                expect(";", "after constant declaration");
                own_sig->add_constant(c, std::move(s));
            }
        }
    }

    std::string rel_name() {
        // relation names may be symbolic punctuation like '<'
        if (peek().type == Token::Punct && (peek().text == "<" || peek().text == ">"))
            return next().text;
        return ident("relation name");
    }

    SignaturePtr sig() {
        if (own_sig) return own_sig;
        if (context) return context;
        fail(peek().line, peek().col, "no signature declared and no context given",
             "add sort/rel declarations before this point");
    }

    // ---- formulas ----------------------------------------------------------

    bool is_relation(const std::string& n) const {
        auto s = own_sig ? SignaturePtr(own_sig) : context;
        return s && s->relations.count(n) > 0;
    }

    RawF parse_formula_raw() { return parse_imp(); }

    RawF parse_imp() {
        if (at("forall") || at("exists")) return parse_quant();
        RawF lhs = parse_or();
        if (accept("->")) {
            RawF rhs = parse_imp();
            RawF f;
            f.k = RawF::Imp;
            f.line = lhs.line; f.col = lhs.col;
            f.kids = {std::move(lhs), std::move(rhs)};
            return f;
        }
        return lhs;
    }

    RawF parse_quant() {
        RawF f;
        f.line = peek().line; f.col = peek().col;
        f.k = accept("forall") ? RawF::Forall : (expect("exists", "quantifier"), RawF::Exists);
        f.qvars.push_back(qvar());
        while (accept(",")) f.qvars.push_back(qvar());
        expect(":", "after quantified variables");
        f.kids.push_back(parse_imp());
        return f;
    }

    std::pair<std::string, std::string> qvar() {
        std::string n = ident("variable name");
        std::string s;
        // ':' introduces the body unless a declared sort name follows
        if (at(":") && peek(1).type == Token::Ident && is_sort(peek(1).text)) {
            next();
            s = ident("sort name");
        }
        return {n, s};
    }

    bool is_sort(const std::string& n) const {
        auto s = own_sig ? SignaturePtr(own_sig) : context;
        return s && s->has_sort(n);
    }

    RawF parse_or() {
        RawF lhs = parse_and();
        while (at("|")) {
            next();
            RawF rhs = parse_and();
            RawF f;
            f.k = RawF::OrSet;
            f.line = lhs.line; f.col = lhs.col;
            f.kids = {std::move(lhs), std::move(rhs)};
            lhs = std::move(f);
        }
        return lhs;
    }

    RawF parse_and() {
        RawF lhs = parse_unary();
        while (at("&")) {
            next();
            RawF rhs = parse_unary();
            RawF f;
            f.k = RawF::AndSet;
            f.line = lhs.line; f.col = lhs.col;
            f.kids = {std::move(lhs), std::move(rhs)};
            lhs = std::move(f);
        }
        return lhs;
    }

    RawF parse_unary() {
        if (at("!")) {
            RawF f;
            f.line = peek().line; f.col = peek().col;
            next();
            f.k = RawF::Not;
            f.kids.push_back(parse_unary());
            return f;
        }
        if (at("forall") || at("exists")) return parse_quant();
        return parse_primary();
    }

    RawF parse_primary() {
        RawF f;
        f.line = peek().line; f.col = peek().col;
        if (accept("true")) { f.k = RawF::True; return f; }
        if (accept("false")) { f.k = RawF::False; return f; }
        if (at("And") || at("Or")) {
            f.k = accept("And") ? RawF::AndSet : (next(), RawF::OrSet);
            expect("[", "after set connective");
            if (!at("]")) {
                f.kids.push_back(parse_formula_raw());
                while (accept(",")) f.kids.push_back(parse_formula_raw());
            }
            expect("]", "after set connective children");
            return f;
        }
        if (accept("(")) {
            f = parse_formula_raw();
            expect(")", "after parenthesized formula");
            return f;
        }
        // relation atom with parenthesized arguments?
        if (peek().type == Token::Ident && is_relation(peek().text) &&
            peek(1).text == "(") {
            f.k = RawF::Atom;
            f.rel = next().text;
            expect("(", "after relation name");
            if (!at(")")) {
                f.terms.push_back(parse_term());
                while (accept(",")) f.terms.push_back(parse_term());
            }
            expect(")", "after relation arguments");
            return f;
        }
        // nullary relation atom
        if (peek().type == Token::Ident && is_relation(peek().text) &&
            sig()->relations.at(peek().text).empty()) {
            f.k = RawF::Atom;
            f.rel = next().text;
            return f;
        }
        // term followed by '=', '<', '>' or a declared infix relation
        RawTerm t = parse_term();
        if (accept("=")) {
            f.k = RawF::Eq;
            f.terms = {std::move(t), parse_term()};
            return f;
        }
        if (peek().type == Token::Punct && is_relation(peek().text)) {
            f.k = RawF::Atom;
            f.rel = next().text;
            f.terms = {std::move(t), parse_term()};
            return f;
        }
        fail(peek().line, peek().col,
             "expected a formula, found '" + peek().text + "'",
             "a bare term is not a formula");
    }

    RawTerm parse_term() {
        RawTerm t;
        t.line = peek().line; t.col = peek().col;
        if (peek().type != Token::Ident || is_keyword(peek().text))
            fail(peek().line, peek().col, "expected a term, found '" + peek().text + "'");
        t.name = next().text;
        if (at("(")) {
            t.applied = true;
            next();
            if (!at(")")) {
                t.args.push_back(parse_term());
                while (accept(",")) t.args.push_back(parse_term());
            }
            expect(")", "after function arguments");
        }
        return t;
    }

    // ---- sort resolution ---------------------------------------------------

    struct Entities {
        std::vector<int> parent;
        std::vector<std::string> sort;
        std::vector<std::string> name;
        std::vector<int> line, col;
        int make(const std::string& n, int l, int c) {
            parent.push_back(static_cast<int>(parent.size()));
            sort.emplace_back();
            name.push_back(n);
            line.push_back(l);
            col.push_back(c);
            return static_cast<int>(parent.size()) - 1;
        }
        int find(int e) {
            while (parent[e] != e) e = parent[e] = parent[parent[e]];
            return e;
        }
        void constrain(int e, const std::string& s) {
            e = find(e);
            if (sort[e].empty()) sort[e] = s;
            else if (sort[e] != s)
                fail(line[e], col[e],
                     "variable " + name[e] + " used with sorts " + sort[e] + " and " + s);
        }
    };

    Entities ents;
    std::vector<std::pair<int, int>> sort_links;  // equal-sort constraints
    std::map<std::string, int> free_entities;  // by name, in appearance order
    std::vector<std::string> free_order;

    // scope maps variable names to entity ids
    void resolve(RawF& f, std::vector<std::map<std::string, int>>& scopes) {
        const Signature& S = *sig();
        switch (f.k) {
        case RawF::True: case RawF::False:
            return;
        case RawF::Atom: {
            auto it = S.relations.find(f.rel);
            if (it == S.relations.end())
                fail(f.line, f.col, "undeclared relation " + f.rel);
            if (it->second.size() != f.terms.size())
                fail(f.line, f.col, "relation " + f.rel + " expects " +
                                        std::to_string(it->second.size()) + " arguments");
            for (std::size_t i = 0; i < f.terms.size(); ++i)
                resolve_term(f.terms[i], it->second[i], scopes);
            return;
        }
        case RawF::Eq: {
            std::string s0 = term_sort(f.terms[0]);
            std::string s1 = term_sort(f.terms[1]);
            resolve_term(f.terms[0], s1, scopes);
            resolve_term(f.terms[1], s0.empty() ? term_sort(f.terms[0]) : s0, scopes);
            // both variables: their sorts agree (identity stays distinct)
            if (f.terms[0].entity >= 0 && f.terms[1].entity >= 0)
                sort_links.emplace_back(f.terms[0].entity, f.terms[1].entity);
            return;
        }
        case RawF::AndSet: case RawF::OrSet: case RawF::Imp: case RawF::Not:
            for (auto& k : f.kids) resolve(k, scopes);
            return;
        case RawF::Exists: case RawF::Forall: {
            scopes.emplace_back();
            for (auto& [n, s] : f.qvars) {
                int e = ents.make(n, f.line, f.col);
                if (!s.empty()) {
                    if (!S.has_sort(s)) fail(f.line, f.col, "undeclared sort " + s);
                    ents.constrain(e, s);
                }
                scopes.back()[n] = e;
                f.qents.push_back(e);
            }
            resolve(f.kids[0], scopes);
            scopes.pop_back();
            return;
        }
        }
    }

    // sort of a term if independently known (constant/function), else ""
    std::string term_sort(const RawTerm& t) {
        const Signature& S = *sig();
        if (t.applied) {
            auto it = S.functions.find(t.name);
            return it == S.functions.end() ? std::string() : it->second.result_sort;
        }
        auto it = S.constants.find(t.name);
        return it == S.constants.end() ? std::string() : it->second;
    }

    void resolve_term(RawTerm& t, const std::string& want,
                      std::vector<std::map<std::string, int>>& scopes) {
        const Signature& S = *sig();
        if (t.applied) {
            auto it = S.functions.find(t.name);
            if (it == S.functions.end())
                fail(t.line, t.col, "undeclared function " + t.name);
            if (it->second.arg_sorts.size() != t.args.size())
                fail(t.line, t.col, "function " + t.name + " expects " +
                                        std::to_string(it->second.arg_sorts.size()) +
                                        " arguments");
            for (std::size_t i = 0; i < t.args.size(); ++i)
                resolve_term(t.args[i], it->second.arg_sorts[i], scopes);
            return;
        }
        if (S.constants.count(t.name)) return;
        // a variable: find in scope or register free
        for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
            auto jt = it->find(t.name);
            if (jt != it->end()) {
                t.entity = jt->second;
                if (!want.empty()) ents.constrain(t.entity, want);
                return;
            }
        }
        auto jt = free_entities.find(t.name);
        if (jt == free_entities.end()) {
            int e = ents.make(t.name, t.line, t.col);
            free_entities.emplace(t.name, e);
            free_order.push_back(t.name);
            t.entity = e;
        } else {
            t.entity = jt->second;
        }
        if (!want.empty()) ents.constrain(t.entity, want);
    }

    void default_sorts() {
        const Signature& S = *sig();
        // propagate equal-sort constraints to a fixpoint
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& [a, b] : sort_links) {
                auto& sa = ents.sort[static_cast<std::size_t>(a)];
                auto& sb = ents.sort[static_cast<std::size_t>(b)];
                if (!sa.empty() && !sb.empty() && sa != sb)
                    fail(ents.line[static_cast<std::size_t>(b)],
                         ents.col[static_cast<std::size_t>(b)],
                         "equality between different sorts");
                if (!sa.empty() && sb.empty()) { sb = sa; changed = true; }
                if (sa.empty() && !sb.empty()) { sa = sb; changed = true; }
            }
        }
        for (std::size_t e = 0; e < ents.parent.size(); ++e) {
            int r = ents.find(static_cast<int>(e));
            if (ents.sort[static_cast<std::size_t>(r)].empty()) {
                if (S.sorts.size() == 1)
                    ents.sort[static_cast<std::size_t>(r)] = S.sorts[0];
                else
                    fail(ents.line[static_cast<std::size_t>(r)],
                         ents.col[static_cast<std::size_t>(r)],
                         "cannot infer the sort of variable " + ents.name[static_cast<std::size_t>(r)],
                         "annotate as name:Sort at its quantifier or use it in an atom");
            }
        }
    }

    // free-variable indices: canonical names map back to their indices,
    // anything else takes the least unclaimed index of its sort
    std::map<int, SortedVar> assign_free_vars() {
        const Signature& S = *sig();
        std::map<int, SortedVar> out;
        std::map<std::string, std::set<int>> claimed;
        std::vector<std::pair<std::string, int>> later;
        for (const auto& n : free_order) {
            int e = ents.find(free_entities.at(n));
            std::string base = n;
            // strip a _Sort suffix used for disambiguation in multi-sort output
            for (const auto& s : S.sorts) {
                if (base.size() > s.size() + 1 &&
                    base.compare(base.size() - s.size() - 1, s.size() + 1, "_" + s) == 0)
                    base = base.substr(0, base.size() - s.size() - 1);
            }
            int idx = var_index_of_name(base);
            if (idx >= 0 && !claimed[ents.sort[static_cast<std::size_t>(e)]].count(idx)) {
                out[e] = SortedVar{ents.sort[static_cast<std::size_t>(e)], idx};
                claimed[ents.sort[static_cast<std::size_t>(e)]].insert(idx);
            } else {
                later.emplace_back(n, e);
            }
        }
        for (const auto& [n, e] : later) {
            if (out.count(e)) continue;
            const std::string& s = ents.sort[static_cast<std::size_t>(e)];
            int idx = 0;
            while (claimed[s].count(idx)) ++idx;
            claimed[s].insert(idx);
            out[e] = SortedVar{s, idx};
        }
        return out;
    }

    // ---- building ------------------------------------------------------------

    int bound_counter = 1000;  // canonicalize renames these

    Term build_term(const RawTerm& t, const std::map<int, SortedVar>& vars) {
        const Signature& S = *sig();
        if (t.applied) {
            std::vector<Term> args;
            for (const auto& a : t.args) args.push_back(build_term(a, vars));
            return Term::app(S, t.name, std::move(args));
        }
        if (S.constants.count(t.name)) return Term::constant(S, t.name);
        auto it = vars.find(ents.find(t.entity));
        if (it == vars.end()) fail(t.line, t.col, "unresolved variable " + t.name);
        return Term::var(it->second);
    }

    Formula build(const RawF& f, std::map<int, SortedVar> vars) {
        const Signature& S = *sig();
        switch (f.k) {
        case RawF::True: return Formula::truth();
        case RawF::False: return Formula::falsity();
        case RawF::Atom: {
            std::vector<Term> args;
            for (const auto& t : f.terms) args.push_back(build_term(t, vars));
            return Formula::atom(S, f.rel, std::move(args));
        }
        case RawF::Eq:
            return Formula::eq(build_term(f.terms[0], vars), build_term(f.terms[1], vars));
        case RawF::AndSet: case RawF::OrSet: {
            std::vector<Formula> kids;
            for (const auto& k : f.kids) kids.push_back(build(k, vars));
            return f.k == RawF::AndSet ? Formula::and_(std::move(kids))
                                       : Formula::or_(std::move(kids));
        }
        case RawF::Imp:
            return Formula::implies(build(f.kids[0], vars), build(f.kids[1], vars));
        case RawF::Not:
            return Formula::not_(build(f.kids[0], vars));
        case RawF::Exists: case RawF::Forall: {
            std::vector<std::pair<int, SortedVar>> bound;
            for (int e : f.qents) {
                int r = ents.find(e);
                SortedVar v{ents.sort[static_cast<std::size_t>(r)], bound_counter++};
                bound.emplace_back(r, v);
            }
            for (const auto& [e, v] : bound) vars[e] = v;
            Formula body = build(f.kids[0], vars);
            for (auto it = bound.rbegin(); it != bound.rend(); ++it)
                body = f.k == RawF::Exists ? Formula::exists(it->second, std::move(body))
                                           : Formula::forall(it->second, std::move(body));
            return body;
        }
        }
        return Formula::truth();
    }

    Formula parse_and_build_formula() {
        RawF raw = parse_formula_raw();
        std::vector<std::map<std::string, int>> scopes;
        resolve(raw, scopes);
        default_sorts();
        auto vars = assign_free_vars();
        Formula f = build(raw, vars);
        // reset per-formula free-variable bookkeeping? free vars persist per
        // document so that axioms in one theory share nothing; reset here
        free_entities.clear();
        free_order.clear();
        return canonicalize(f);
    }

    // ---- structures ------------------------------------------------------------

    StructurePtr parse_structure_body(SignaturePtr S) {
        auto M = std::make_shared<FiniteStructure>();
        M->sig = S;
        M->name = ident("structure name");
        expect("over", "after structure name");
        std::string over = ident("signature name");
        if (over != S->name)
            fail(peek().line, peek().col,
                 "structure declared over " + over + " but the signature is " + S->name);
        expect("{", "to open the structure body");
        while (!at("}")) {
            std::string sym =
                (peek().type == Token::Punct && (at("<") || at(">"))) ? next().text
                                                                      : ident("symbol name");
            expect("=", "after symbol name");
            if (S->has_sort(sym)) {
                expect("{", "to open a carrier");
                auto& c = M->carriers[sym];
                if (!at("}")) {
                    c.push_back(ident("element name"));
                    while (accept(",")) c.push_back(ident("element name"));
                }
                expect("}", "after carrier");
            } else if (S->relations.count(sym)) {
                const auto& sorting = S->relations.at(sym);
                expect("{", "to open a relation table");
                auto& rows = M->relations[sym];
                while (!at("}")) {
                    rows.insert(parse_row(*M, sorting));
                    if (!accept(",")) break;
                }
                expect("}", "after relation table");
            } else if (S->functions.count(sym)) {
                const auto& decl = S->functions.at(sym);
                expect("{", "to open a function table");
                auto& table = M->functions[sym];
                while (!at("}")) {
                    std::vector<int> args = parse_row(*M, decl.arg_sorts);
                    expect(":", "before function value");
                    table[args] = element_of(*M, decl.result_sort);
                    if (!accept(",")) break;
                }
                expect("}", "after function table");
            } else if (S->constants.count(sym)) {
                M->constants[sym] = element_of(*M, S->constants.at(sym));
            } else {
                fail(peek().line, peek().col, "undeclared symbol " + sym);
            }
            expect(";", "after interpretation");
        }
        expect("}", "to close the structure body");
        for (const auto& s : S->sorts) M->carriers[s];
        for (const auto& [r, srt] : S->relations) M->relations[r];
        M->validate();
        return M;
    }

    std::vector<int> parse_row(const FiniteStructure& M,
                               const std::vector<std::string>& sorting) {
        std::vector<int> row;
        if (sorting.size() == 1 && !at("(")) {
            row.push_back(element_of(M, sorting[0]));
            return row;
        }
        expect("(", "to open a tuple");
        for (std::size_t i = 0; i < sorting.size(); ++i) {
            if (i) expect(",", "between tuple entries");
            row.push_back(element_of(M, sorting[i]));
        }
        expect(")", "after tuple");
        return row;
    }

    int element_of(const FiniteStructure& M, const std::string& sort) {
        int l = peek().line, c = peek().col;
        std::string n = ident("element name");
        try {
            return M.element(sort, n);
        } catch (const SortError& e) {
            fail(l, c, e.what());
        }
    }
};

std::string header_kind(const std::string& text, std::size_t& body_start, int& first_line) {
    // first non-empty line must be "#poslog v1 <kind>"
    std::size_t i = 0;
    first_line = 1;
    std::size_t line_end = text.find('\n');
    std::string line = text.substr(0, line_end == std::string::npos ? text.size() : line_end);
    std::istringstream ss(line);
    std::string hash, ver, kind;
    ss >> hash >> ver >> kind;
    if (hash != "#poslog" || ver != "v1" || kind.empty())
        fail(1, 1, "missing or malformed header line", "expected '#poslog v1 <kind>'");
    body_start = line_end == std::string::npos ? text.size() : line_end + 1;
    first_line = 2;
    (void)i;
    return kind;
}

} // namespace

ParsedDocument parse_document(const std::string& text, SignaturePtr context) {
    std::size_t body_start = 0;
    int first_line = 1;
    std::string kind = header_kind(text, body_start, first_line);

    ParsedDocument doc;
    if (kind == "signature") doc.kind = DocKind::Signature;
    else if (kind == "theory") doc.kind = DocKind::Theory;
    else if (kind == "structure") doc.kind = DocKind::Structure;
    else if (kind == "class") doc.kind = DocKind::Class;
    else if (kind == "formula") doc.kind = DocKind::Formula;
    else if (kind == "fragment") doc.kind = DocKind::Fragment;
    else fail(1, 12, "unknown document kind '" + kind + "'");

    Parser p;
    p.toks = lex(text.substr(body_start), first_line);
    p.context = context;
    p.parse_decls();
    doc.sig = p.sig();

    switch (doc.kind) {
    case DocKind::Signature:
        break;
    case DocKind::Theory: {
        Theory t;
        t.sig = doc.sig;
        p.expect("theory", "to open the theory");
        t.name = p.ident("theory name");
        std::string kw;
        if (p.peek().type == Token::Ident && !p.at("{")) kw = p.ident("theory kind");
        p.expect("{", "to open the theory body");
        while (!p.at("}")) {
            p.expect("axiom", "before each axiom");
            t.sentences.push_back(p.parse_and_build_formula());
            p.expect(";", "after axiom");
        }
        p.expect("}", "to close the theory");
        std::sort(t.sentences.begin(), t.sentences.end(), FormulaLess{});
        t.sentences.erase(std::unique(t.sentences.begin(), t.sentences.end()),
                          t.sentences.end());
        if (!kw.empty()) t.kind = theory_kind_from(kw);
        else {
            // most specific kind the axioms admit
            bool hu = true, hi = true;
            for (const auto& s : t.sentences) {
                auto v = classify(s);
                hu = hu && v.h_universal_basic;
                hi = hi && (v.h_inductive_basic || v.positive);
            }
            t.kind = hu ? TheoryKind::HUniversal
                        : (hi ? TheoryKind::HInductive : TheoryKind::Unrestricted);
        }
        t.validate();
        doc.theory = std::move(t);
        break;
    }
    case DocKind::Structure: {
        p.expect("structure", "to open the structure");
        doc.structure = p.parse_structure_body(doc.sig);
        break;
    }
    case DocKind::Class: {
        auto C = std::make_shared<UniverseClass>();
        C->sig = doc.sig;
        p.expect("class", "to open the class");
        C->name = p.ident("class name");
        p.expect("{", "to open the class body");
        while (!p.at("}")) {
            p.expect("structure", "before each member");
            C->members.push_back(p.parse_structure_body(doc.sig));
        }
        p.expect("}", "to close the class");
        C->validate();
        doc.universe = C;
        break;
    }
    case DocKind::Formula: {
        p.expect("formula", "to open the formula");
        doc.formula = p.parse_and_build_formula();
        p.expect(";", "after formula");
        break;
    }
    case DocKind::Fragment: {
        p.expect("fragment", "to open the fragment");
        doc.fragment_name = p.ident("fragment name");
        p.expect("{", "to open the fragment body");
        while (!p.at("}")) {
            doc.fragment_seed.push_back(p.parse_and_build_formula());
            p.expect(";", "after fragment member");
        }
        p.expect("}", "to close the fragment");
        break;
    }
    }
    if (p.peek().type != Token::End)
        fail(p.peek().line, p.peek().col, "trailing input '" + p.peek().text + "'");
    return doc;
}

Formula parse_formula(const std::string& text, SignaturePtr sig) {
    Parser p;
    p.toks = lex(text, 1);
    p.context = std::move(sig);
    Formula f = p.parse_and_build_formula();
    if (p.peek().type != Token::End)
        fail(p.peek().line, p.peek().col, "trailing input '" + p.peek().text + "'");
    return f;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

bool symbolic(const std::string& rel) {
    for (char c : rel)
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') return false;
    return true;
}

struct Printer {
    const Signature& sig;
    bool multi_sort;

    std::string var_name(const SortedVar& v) const {
        std::string base = var_base_name(v.index);
        return multi_sort ? base + "_" + v.sort : base;
    }

    std::string term(const Term& t) const {
        switch (t.kind()) {
        case TKind::Var: return var_name(t.node().var);
        case TKind::Const: return t.node().name;
        case TKind::App: {
            std::string s = t.node().name + "(";
            for (std::size_t i = 0; i < t.node().args.size(); ++i) {
                if (i) s += ",";
                s += term(t.node().args[i]);
            }
            return s + ")";
        }
        }
        return "?";
    }

    // tight: the context binds tighter than a trailing-scope construct
    std::string print(const Formula& f, bool tight) const {
        const FNode& n = f.node();
        switch (n.kind) {
        case FKind::Truth: return "true";
        case FKind::Falsity: return "false";
        case FKind::Atom: {
            if (symbolic(n.rel) && n.terms.size() == 2)
                return term(n.terms[0]) + n.rel + term(n.terms[1]);
            if (n.terms.empty()) return n.rel;
            std::string s = n.rel + "(";
            for (std::size_t i = 0; i < n.terms.size(); ++i) {
                if (i) s += ",";
                s += term(n.terms[i]);
            }
            return s + ")";
        }
        case FKind::Eq:
            return term(n.terms[0]) + "=" + term(n.terms[1]);
        case FKind::And: case FKind::Or: {
            std::string s = n.kind == FKind::And ? "And[" : "Or[";
            for (std::size_t i = 0; i < n.kids.size(); ++i) {
                if (i) s += ", ";
                s += print(n.kids[i], false);
            }
            return s + "]";
        }
        case FKind::Not:
            return "!" + print(n.kids[0], true);
        case FKind::Implies: {
            std::string s = print(n.kids[0], true) + " -> " + print(n.kids[1], false);
            return tight ? "(" + s + ")" : s;
        }
        case FKind::Exists: case FKind::Forall: {
            std::string s = (n.kind == FKind::Exists ? "exists " : "forall ");
            s += var_name(n.var);
            if (multi_sort) s += ":" + n.var.sort;
            s += ": " + print(n.kids[0], false);
            return tight ? "(" + s + ")" : s;
        }
        }
        return "?";
    }
};

std::string print_formula(const Formula& f, const Signature& sig) {
    Printer pr{sig, sig.sorts.size() > 1};
    return pr.print(f, false);
}

} // namespace

std::string serialize(const Formula& f, const Signature& sig) {
    return print_formula(f, sig);
}

std::string serialize_signature(const Signature& sig) {
    std::ostringstream os;
    os << "signature " << sig.name << ";\n";
    for (const auto& s : sig.sorts) os << "sort " << s << ";\n";
    for (const auto& [r, sorting] : sig.relations) {
        os << "rel " << r << "(";
        for (std::size_t i = 0; i < sorting.size(); ++i) {
            if (i) os << ",";
            os << sorting[i];
        }
        os << ");\n";
    }
    for (const auto& [f, decl] : sig.functions) {
        os << "fun " << f << "(";
        for (std::size_t i = 0; i < decl.arg_sorts.size(); ++i) {
            if (i) os << ",";
            os << decl.arg_sorts[i];
        }
        os << "):" << decl.result_sort << ";\n";
    }
    for (const auto& [c, s] : sig.constants) os << "const " << c << ":" << s << ";\n";
    return os.str();
}

std::string serialize_theory(const Theory& t) {
    std::ostringstream os;
    os << "#poslog v1 theory\n";
    os << serialize_signature(*t.sig);
    os << "theory " << t.name << " " << theory_kind_name(t.kind) << " {\n";
    for (const auto& s : t.sentences)
        os << "  axiom " << print_formula(s, *t.sig) << ";\n";
    os << "}\n";
    return os.str();
}

static void structure_body(std::ostringstream& os, const FiniteStructure& M,
                           const std::string& indent) {
    os << indent << "structure " << M.name << " over " << M.sig->name << " {\n";
    for (const auto& s : M.sig->sorts) {
        os << indent << "  " << s << " = {";
        const auto& c = M.carriers.at(s);
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) os << ", ";
            os << c[i];
        }
        os << "};\n";
    }
    for (const auto& [r, sorting] : M.sig->relations) {
        os << indent << "  " << r << " = {";
        bool first = true;
        auto it = M.relations.find(r);
        if (it != M.relations.end()) {
            for (const auto& row : it->second) {
                if (!first) os << ", ";
                first = false;
                os << "(";
                for (std::size_t i = 0; i < row.size(); ++i) {
                    if (i) os << ",";
                    os << M.carriers.at(sorting[i])[static_cast<std::size_t>(row[i])];
                }
                os << ")";
            }
        }
        os << "};\n";
    }
    for (const auto& [fn, decl] : M.sig->functions) {
        os << indent << "  " << fn << " = {";
        bool first = true;
        for (const auto& [args, res] : M.functions.at(fn)) {
            if (!first) os << ", ";
            first = false;
            os << "(";
            for (std::size_t i = 0; i < args.size(); ++i) {
                if (i) os << ",";
                os << M.carriers.at(decl.arg_sorts[i])[static_cast<std::size_t>(args[i])];
            }
            os << "): " << M.carriers.at(decl.result_sort)[static_cast<std::size_t>(res)];
        }
        os << "};\n";
    }
    for (const auto& [c, s] : M.sig->constants)
        os << indent << "  " << c << " = "
           << M.carriers.at(s)[static_cast<std::size_t>(M.constants.at(c))] << ";\n";
    os << indent << "}\n";
}

std::string serialize_structure(const FiniteStructure& M) {
    std::ostringstream os;
    os << "#poslog v1 structure\n";
    os << serialize_signature(*M.sig);
    structure_body(os, M, "");
    return os.str();
}

std::string serialize_class(const UniverseClass& C) {
    std::ostringstream os;
    os << "#poslog v1 class\n";
    os << serialize_signature(*C.sig);
    os << "class " << C.name << " {\n";
    for (const auto& m : C.members) structure_body(os, *m, "  ");
    os << "}\n";
    return os.str();
}

std::string serialize_fragment(const std::string& name, const std::vector<Formula>& members,
                               const Signature& sig) {
    std::ostringstream os;
    os << "#poslog v1 fragment\n";
    os << serialize_signature(sig);
    os << "fragment " << name << " {\n";
    for (const auto& f : members) os << "  " << print_formula(f, sig) << ";\n";
    os << "}\n";
    return os.str();
}

std::string serialize_document(const ParsedDocument& d) {
    switch (d.kind) {
    case DocKind::Signature:
        return "#poslog v1 signature\n" + serialize_signature(*d.sig);
    case DocKind::Theory:
        return serialize_theory(*d.theory);
    case DocKind::Structure:
        return serialize_structure(*d.structure);
    case DocKind::Class:
        return serialize_class(*d.universe);
    case DocKind::Formula:
        return "#poslog v1 formula\n" + serialize_signature(*d.sig) + "formula " +
               serialize(*d.formula, *d.sig) + ";\n";
    case DocKind::Fragment:
        return serialize_fragment(d.fragment_name, d.fragment_seed, *d.sig);
    }
    return "";
}

std::string serialize_gtype(const std::vector<Formula>& members, const Signature& sig) {
    std::string s = "GType[";
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) s += ", ";
        s += serialize(members[i], sig);
    }
    return s + "]";
}

} // namespace poslog
