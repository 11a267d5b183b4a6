#pragma once

#include "typespace.hpp"

namespace poslog {

struct NonGeometric : PoslogError {
    using PoslogError::PoslogError;
};

struct NormalGeometricFormula {
    std::vector<Formula> disjuncts;   // positive-primitive, canonical order

    Formula to_formula() const { return Formula::or_(disjuncts); }
};

// Disjunctive normal form of a geometric formula: conjunction distributes
// over disjunct products (with prefix renaming), exists pushes into the
// disjuncts, disjunction unions the disjunct sets.
NormalGeometricFormula dnf(const Formula& f, long long disjunct_ceiling = 100000);

struct GeometricType {
    std::vector<SortedVar> vars;
    std::vector<Formula> members;     // canonical order
    bool normal = false;

    // tuples of M satisfying every member
    std::vector<std::vector<int>> extension(const FiniteStructure& M) const;
};

// All width-capped normal formulas over the space's p.p. supply satisfied by
// the type: or{Phi} with Phi meeting the p.p. part of the type.
GeometricType star_map(const BoundedTypeSpace& S, int type_index);

// p.p. members of the supply, and the satisfied subset of a type, as a bitvec
std::vector<Formula> pp_supply(const BoundedTypeSpace& S);
Bitvec star_pp_set(const BoundedTypeSpace& S, int type_index);

GeometricType geo_type_disjunction(const std::vector<GeometricType>& types,
                                   long long ceiling = 100000);

// Uniform complement: each normal member's disjuncts are negated through the
// bounded resultant and the member complements are disjoined.
GeometricType geo_complement(const GeometricType& pi, const BoundedTypeSpace& S);

struct ComplementCheck {
    bool disjoint = true;
    bool covering = true;
    std::string member;               // first violating pec member, if any
};

ComplementCheck check_complement(const GeometricType& pi, const GeometricType& co,
                                 const BoundedTypeSpace& S);

// Geometric type with [result] = X inside the space; excluded singletons are
// complemented through resultants.
GeometricType subset_to_type(const BoundedTypeSpace& S, const Bitvec& X);

Bitvec basic_of_type(const BoundedTypeSpace& S, const GeometricType& pi);

struct InfinitaryCompilation {
    GeometricType type;
    Bitvec subset;                    // [f] over types, read off in E
    bool pointwise_ok = true;         // f <-> type on every tuple of E
};

// Compile an arbitrary formula to a geometric type using a designated
// existential member E (class index).
InfinitaryCompilation infinitary_to_geometric(const Formula& f,
                                              const BoundedTypeSpace& S, int E);

} // namespace poslog
