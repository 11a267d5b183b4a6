#pragma once

#include "enumerate.hpp"
#include "structure.hpp"
#include "theory.hpp"

#include <optional>

namespace poslog {

// Sorted map between structures over one signature; atomic truth preservation
// is checked at construction time by the factory functions below.
struct Homomorphism {
    StructurePtr source;
    StructurePtr target;
    std::map<std::string, std::vector<int>> map;   // sort -> image per element

    int apply(const std::string& sort, int e) const { return map.at(sort)[e]; }
    std::vector<int> apply_tuple(const std::vector<SortedVar>& vars,
                                 const std::vector<int>& tuple) const {
        std::vector<int> out(tuple.size());
        for (std::size_t i = 0; i < tuple.size(); ++i)
            out[i] = apply(vars[i].sort, tuple[i]);
        return out;
    }
    bool is_identity() const;
    bool operator<(const Homomorphism& o) const { return map < o.map; }
    bool operator==(const Homomorphism& o) const { return map == o.map; }
};

bool is_homomorphism(const FiniteStructure& A, const FiniteStructure& B,
                     const std::map<std::string, std::vector<int>>& m);

// Exhaustive, duplicate-free, lexicographic by per-sort map.
std::vector<Homomorphism> homomorphisms(StructurePtr A, StructurePtr B);

Homomorphism identity_hom(StructurePtr M);
Homomorphism compose(const Homomorphism& f, const Homomorphism& g);  // g after f

struct ImmersionVerdict {
    bool immersion = false;
    std::optional<Homomorphism> retraction;      // on success
    std::optional<Formula> witness;              // minimal-depth positive failure
    std::vector<SortedVar> witness_vars;         // a tuple enumerating the source
};

// Retraction criterion: f is an immersion iff some g: target -> source has
// g(f(x)) = x.  On failure searches for a positive formula separating the
// image tuple from the source tuple, lowest depth first.
ImmersionVerdict is_immersion(const Homomorphism& f, int max_witness_depth = 3,
                              const EnumOpts& opts = {});

// The explicit finite class all semantic notions are computed against.
struct UniverseClass {
    std::string name;
    SignaturePtr sig;
    std::vector<StructurePtr> members;
    std::optional<Theory> theory;

    int index_of(const std::string& member_name) const {
        for (std::size_t i = 0; i < members.size(); ++i)
            if (members[i]->name == member_name) return static_cast<int>(i);
        return -1;
    }
    void validate() const;
};

using UniverseClassPtr = std::shared_ptr<const UniverseClass>;

struct PecVerdict {
    bool pec = false;
    std::optional<Homomorphism> counterexample;
    std::optional<Formula> witness;
};

// M must be a member of C.
PecVerdict is_pec(StructurePtr M, const UniverseClass& C);

// Indices of pec members, in class order (cached per call site by callers).
std::vector<int> pec_members(const UniverseClass& C);

struct NotContinuable : PoslogError {
    using PoslogError::PoslogError;
};

// First hom (class order, then lexicographic) from M into a pec member; a pec
// M yields its identity.
Homomorphism continue_to_pec(StructurePtr M, const UniverseClass& C);

struct JointContinuation {
    StructurePtr target;
    Homomorphism f;   // from M
    Homomorphism g;   // from N
};

// First (P, f, g) with f(a) = g(b); nullopt (class-adequacy warning) if none.
std::optional<JointContinuation> joint_continuation(
    StructurePtr M, StructurePtr N, const UniverseClass& C,
    const std::vector<SortedVar>& vars,
    const std::vector<int>& a, const std::vector<int>& b, int type_depth = 1,
    const EnumOpts& opts = {});

struct Colimit {
    StructurePtr structure;
    Homomorphism composite;   // first source -> colimit
};

// Colimit of a finite composable chain is its final structure.
Colimit directed_colimit(const std::vector<Homomorphism>& chain);

} // namespace poslog
