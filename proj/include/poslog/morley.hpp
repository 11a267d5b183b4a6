#pragma once

#include "structure.hpp"
#include "theory.hpp"

namespace poslog {

struct FragmentCoverage : PoslogError {
    using PoslogError::PoslogError;
};

// Finite subformula-closed formula set with canonical indexing; the index
// names the tracking relations.
struct Fragment {
    SignaturePtr sig;
    std::vector<Formula> members;   // canonical order

    int index_of(const Formula& f) const;
};

// Least subformula-closed superset of the seed, rewritten (-> and forall are
// eliminated) and closed under the negations the clause axioms reference.
Fragment close_fragment(SignaturePtr sig, const std::vector<Formula>& seed,
                        long long ceiling = 100000);

struct MorleyizedTheory {
    Theory source;
    Fragment fragment;
    SignaturePtr ext_sig;                 // base plus one R per member
    std::vector<std::string> rel_names;   // parallel to fragment.members

    struct Axiom {
        int member = 0;                   // fragment index
        std::string clause;               // "i".."vi"
        Formula sentence;
    };
    std::vector<Axiom> axioms;            // member index, then clause order

    Theory theory() const;                // g-inductive
    Formula tracking_atom(int member) const;
};

// Every sentence of T must be a fragment member (fragment-coverage error
// otherwise); emits the applicable clause axioms per head connective.
MorleyizedTheory morleyize(const Theory& T, const Fragment& F);

// Canonical expansion: each tracking relation is its formula's extension.
// Throws if M fails a T-sentence in the fragment or the expansion fails an
// emitted axiom.
StructurePtr expand(StructurePtr M, const MorleyizedTheory& G);

struct ReductReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// N over the extended signature: checks every axiom, then pointwise
// R_phi <-> phi for every member and tuple, then the source sentences.
ReductReport reduct_check(StructurePtr N, const MorleyizedTheory& G);

struct FunctorVerdict {
    bool lg_homomorphism = false;       // between the expansions
    bool fragment_elementary = false;   // preserves every member's truth
    bool agree = false;
};

FunctorVerdict functor_check(const std::map<std::string, std::vector<int>>& f,
                             StructurePtr M, StructurePtr N,
                             const MorleyizedTheory& G);

} // namespace poslog
