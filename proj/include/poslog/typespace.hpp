#pragma once

#include "bitvec.hpp"
#include "hom.hpp"

namespace poslog {

struct EmptyPositiveClass : PoslogError {
    using PoslogError::PoslogError;
};
struct IndistinguishableAtDepth : PoslogError {
    using PoslogError::PoslogError;
};

struct BoundedPositiveType {
    std::vector<SortedVar> vars;
    int depth = 0;
    std::vector<Formula> formulas;          // canonical order
    std::string witness_structure;
    std::vector<int> witness_tuple;

    bool contains(const Formula& f) const {
        return std::binary_search(formulas.begin(), formulas.end(), f, FormulaLess{});
    }
};

// The positive types of depth <= d realized in pec members of C, together
// with satisfaction tables over every member of C (for resultants, which are
// computed against the whole class).
struct BoundedTypeSpace {
    Theory theory;
    UniverseClassPtr cls;
    std::vector<SortedVar> vars;
    int depth = 0;
    EnumOpts opts;

    std::vector<Formula> supply;            // canonical order
    std::vector<int> pec;                   // member indices, class order

    // all (member, tuple) evaluation points, class order then lexicographic
    std::vector<std::pair<int, std::vector<int>>> points;
    std::vector<Bitvec> point_sat;          // per supply formula
    std::vector<int> pec_point;             // indices into points at pec members

    struct TypeEntry {
        Bitvec sat;                                          // over supply
        std::vector<std::pair<int, std::vector<int>>> realizations;  // pec only
    };
    std::vector<TypeEntry> types;           // first-occurrence order

    int supply_index(const Formula& f) const;
    // [f] over types; f must evaluate over the variable tuple
    Bitvec basic(const Formula& f) const;
    std::vector<Formula> type_formulas(int t) const;
    // evaluate an arbitrary formula at a point
    bool eval_at(const Formula& f, int point) const;
};

BoundedPositiveType tp_pos(const FiniteStructure& M, const std::vector<SortedVar>& vars,
                           const std::vector<int>& tuple, int d, const EnumOpts& opts = {});

BoundedTypeSpace type_space(const Theory& T, UniverseClassPtr C,
                            const std::vector<SortedVar>& vars, int d,
                            const EnumOpts& opts = {});

// Res_T(phi) within the bounded supply: no joint realization anywhere in C.
std::vector<Formula> resultant_set(const BoundedTypeSpace& S, const Formula& phi);

struct CoverReport {
    bool covered = true;
    std::vector<int> uncovered_types;
    std::size_t cover_size = 0;   // resultant members contributing
};

// S_x - [phi] vs the union of [psi] over the bounded resultant.
CoverReport spectral_complement_cover(const BoundedTypeSpace& S, const Formula& phi);

// minimal-depth separating formula, canonical tie-break
Formula hausdorff_witness(const BoundedTypeSpace& S, int p, int q);

struct PmcResult {
    std::vector<std::pair<Formula, Formula>> complements;   // phi -> psi
    std::vector<Formula> failures;                          // no single psi
};

// For each positive phi of depth <= phi_depth, the first psi in the space
// supply with [psi] = [phi]^c and no joint realization in C.
PmcResult pmc_check(const BoundedTypeSpace& S, int phi_depth);

struct ConstructibleSet {
    Formula chi;
    Bitvec extension;                 // over types
    std::vector<int> disagreements;   // types whose pec realizations disagree
};

ConstructibleSet constructible_eval(const BoundedTypeSpace& S, const Formula& chi);

struct ConstructibleResultant {
    Formula chi;
    std::string head_case;            // positive | not | or | and
    std::vector<Formula> members;
    CoverReport cover;
};

// Constructible theta of depth <= d, extension-disjoint from chi over pec
// members only; cover of [chi]^c reported.
ConstructibleResultant constructible_resultant(const BoundedTypeSpace& S,
                                               const Formula& chi, int d);

} // namespace poslog
