#pragma once

#include "typespace.hpp"

namespace poslog {

// Type space plus the designated existential member used to read off [f] for
// non-positive f; [f] results are memoized.
class ForcingContext {
public:
    ForcingContext(const Theory& T, UniverseClassPtr C, std::vector<SortedVar> vars,
                   int d, const EnumOpts& opts = {}, int existential_member = -1);

    const BoundedTypeSpace& space() const { return space_; }
    int existential_member() const { return emember_; }

    // [f] over the space's types
    const Bitvec& subset(const Formula& f) const;
    // tp+(a) in A over the space supply, cached
    const Bitvec& tp_plus(const FiniteStructure& A, const std::vector<int>& a) const;

private:
    BoundedTypeSpace space_;
    int emember_;
    mutable std::map<Formula, Bitvec, FormulaLess> memo_;
    mutable std::map<std::pair<const FiniteStructure*, std::vector<int>>, Bitvec> tp_memo_;
};

// A forces f(a) iff every space type extending tp+(a) lies in [f].
bool forces(const FiniteStructure& A, const Formula& f, const std::vector<int>& a,
            const ForcingContext& ctx);

struct ExistentialVerdict {
    bool existential = true;
    std::vector<Formula> pi;        // unrealized partial type (counterexample)
    std::vector<int> b;             // its parameters in M
    std::string continuation;       // member realizing it
};

// Partial positive types in (x, y) with |x| = 1, |y| = 2 per sort, depth <= d,
// restricted to types realized in actual continuations of M within C.
ExistentialVerdict is_existential(StructurePtr M, const UniverseClass& C, int d,
                                  const EnumOpts& opts = {});

struct ConnectiveTally {
    long long checked = 0;
    long long failed = 0;
};

struct GenericVerdict {
    bool generic = true;
    std::map<std::string, ConnectiveTally> per_connective;   // by head
    std::optional<Formula> failing;
    std::vector<int> failing_tuple;
};

// Satisfaction = forcing over the full first-order supply of depth <= d.
GenericVerdict is_generic(StructurePtr M, const ForcingContext& ctx, int d);

using Elem = std::pair<std::string, int>;   // (sort, element)

struct TuplePair {
    std::vector<Elem> a, b;
};

struct BackAndForthSystem {
    bool equivalent = false;        // the empty pair survives
    std::vector<TuplePair> pairs;   // surviving system, deterministic order
    std::optional<TuplePair> failure;   // first pruned pair
    Elem failure_element{};
    std::string failure_direction;      // forth | back
};

// Greatest fixpoint over injective same-sorted tuple pairs with equal bounded
// positive types; forth/back extension pruned to a fixpoint.
BackAndForthSystem back_and_forth(StructurePtr M, StructurePtr N, int d = 1,
                                  const EnumOpts& opts = {});

struct AgreementReport {
    bool agree = true;
    long long checked = 0;
    std::optional<Formula> disagreement;
};

// Agreement of M,a and N,b on every enumerated formula of depth <= d;
// requires (a,b) to belong to a successful back-and-forth system.
AgreementReport infinitary_agreement(StructurePtr M, StructurePtr N,
                                     const std::vector<Elem>& a,
                                     const std::vector<Elem>& b, int d,
                                     const EnumOpts& opts = {});

} // namespace poslog
