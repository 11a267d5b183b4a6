#pragma once

#include "signature.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace poslog {

struct SortedVar {
    std::string sort;
    int index = 0;

    bool operator==(const SortedVar& o) const { return sort == o.sort && index == o.index; }
    bool operator!=(const SortedVar& o) const { return !(*this == o); }
    bool operator<(const SortedVar& o) const {
        if (sort != o.sort) return sort < o.sort;
        return index < o.index;
    }
};

// ---------------------------------------------------------------------------
// Terms

enum class TKind { Var, Const, App };

class Term;
struct TermNode {
    TKind kind;
    SortedVar var;                 // Var
    std::string name;              // Const / App
    std::vector<Term> args;        // App
    std::string sort;              // result sort, always set
};

class Term {
public:
    Term() = default;

    static Term var(SortedVar v);
    static Term constant(const Signature& sig, const std::string& name);
    static Term app(const Signature& sig, const std::string& fn, std::vector<Term> args);
    // rebuild with already-validated sorts (substitution/renaming paths)
    static Term app_unchecked(const std::string& fn, std::vector<Term> args,
                              const std::string& result_sort);
    static Term constant_unchecked(const std::string& name, const std::string& sort);

    const TermNode& node() const { return *p_; }
    TKind kind() const { return p_->kind; }
    const std::string& sort() const { return p_->sort; }
    bool valid() const { return p_ != nullptr; }

    static int cmp(const Term& a, const Term& b);
    bool operator==(const Term& o) const { return cmp(*this, o) == 0; }
    bool operator<(const Term& o) const { return cmp(*this, o) < 0; }

private:
    explicit Term(std::shared_ptr<const TermNode> p) : p_(std::move(p)) {}
    std::shared_ptr<const TermNode> p_;
};

void collect_vars(const Term& t, std::vector<SortedVar>& out);

// ---------------------------------------------------------------------------
// Formulas

enum class FKind { Truth, Falsity, Eq, Atom, And, Or, Not, Implies, Exists, Forall };

class Formula;
struct FNode {
    FKind kind;
    std::string rel;               // Atom
    std::vector<Term> terms;       // Atom args, or the two Eq sides
    std::vector<Formula> kids;     // And/Or children, Not child, Implies {lhs,rhs}, quantifier body
    SortedVar var;                 // Exists/Forall
    int depth = 0;
    std::uint64_t hash = 0;
    std::vector<SortedVar> free;   // sorted, duplicate-free
};

// Immutable syntax tree.  and/or children are deduplicated and ordered at
// construction and singletons collapse to the child; nested same-kind children
// are allowed until canonicalize() flattens them.
class Formula {
public:
    Formula() = default;

    static Formula truth();
    static Formula falsity();
    static Formula atom(const Signature& sig, const std::string& rel, std::vector<Term> args);
    static Formula atom_unchecked(const std::string& rel, std::vector<Term> args);
    static Formula eq(const Term& a, const Term& b);
    static Formula and_(std::vector<Formula> kids);
    static Formula or_(std::vector<Formula> kids);
    static Formula not_(Formula f);
    static Formula implies(Formula a, Formula b);
    static Formula exists(SortedVar v, Formula body);
    static Formula forall(SortedVar v, Formula body);

    bool valid() const { return p_ != nullptr; }
    const FNode& node() const { return *p_; }
    FKind kind() const { return p_->kind; }
    int depth() const { return p_->depth; }
    const std::vector<SortedVar>& free_vars() const { return p_->free; }
    std::uint64_t hash() const { return p_->hash; }

    static int cmp(const Formula& a, const Formula& b);
    bool operator==(const Formula& o) const;
    bool operator!=(const Formula& o) const { return !(*this == o); }
    bool operator<(const Formula& o) const { return cmp(*this, o) < 0; }

private:
    explicit Formula(std::shared_ptr<const FNode> p) : p_(std::move(p)) {}
    static Formula make(FNode n);
    std::shared_ptr<const FNode> p_;
};

struct FormulaLess {
    bool operator()(const Formula& a, const Formula& b) const { return Formula::cmp(a, b) < 0; }
};
struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return static_cast<std::size_t>(f.hash()); }
};
struct FormulaEq {
    bool operator()(const Formula& a, const Formula& b) const { return a == b; }
};

// Capture-avoiding substitution; sorts of keys must match term sorts.
Formula substitute(const Formula& f, const std::map<SortedVar, Term>& binding);

// Flatten nested and/or, deduplicate, collapse singletons, drop double
// negations, order equality operands, and rename bound variables to the least
// free index per sort.  Idempotent; semantics-preserving.
Formula canonicalize(const Formula& f);

// ---------------------------------------------------------------------------
// Fragment classification

struct FragmentVerdict {
    bool positive = false;
    bool geometric = false;
    bool normal_geometric = false;
    bool constructible = false;
    bool h_universal_basic = false;
    bool h_inductive_basic = false;
    bool g_inductive_basic = false;
    bool first_order = false;
};

FragmentVerdict classify(const Formula& f);

bool is_positive_primitive(const Formula& f);

// Splits a p.p. formula into its existential prefix and conjunction of atoms.
struct PpParts {
    std::vector<SortedVar> prefix;
    std::vector<Formula> atoms;
};
PpParts pp_parts(const Formula& f);

} // namespace poslog
