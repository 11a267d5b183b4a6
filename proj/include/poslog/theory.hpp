#pragma once

#include "formula.hpp"

namespace poslog {

enum class TheoryKind { HInductive, HUniversal, GInductive, Unrestricted };

struct Theory {
    std::string name;
    SignaturePtr sig;
    std::vector<Formula> sentences;   // canonical, sorted, closed
    TheoryKind kind = TheoryKind::Unrestricted;

    // every sentence closed and compatible with the declared kind
    void validate() const {
        for (const auto& s : sentences) {
            if (!s.free_vars().empty())
                throw SortError("theory " + name + ": axiom with free variables");
            FragmentVerdict v = classify(s);
            bool ok = true;
            switch (kind) {
            case TheoryKind::HInductive: ok = v.h_inductive_basic || v.positive; break;
            case TheoryKind::HUniversal: ok = v.h_universal_basic; break;
            case TheoryKind::GInductive: ok = v.g_inductive_basic || v.positive; break;
            case TheoryKind::Unrestricted: break;
            }
            if (!ok)
                throw SortError("theory " + name + ": axiom outside declared kind");
        }
    }
};

inline const char* theory_kind_name(TheoryKind k) {
    switch (k) {
    case TheoryKind::HInductive: return "h-inductive";
    case TheoryKind::HUniversal: return "h-universal";
    case TheoryKind::GInductive: return "g-inductive";
    case TheoryKind::Unrestricted: return "unrestricted";
    }
    return "unrestricted";
}

inline TheoryKind theory_kind_from(const std::string& s) {
    if (s == "h-inductive") return TheoryKind::HInductive;
    if (s == "h-universal") return TheoryKind::HUniversal;
    if (s == "g-inductive") return TheoryKind::GInductive;
    if (s == "unrestricted") return TheoryKind::Unrestricted;
    throw SortError("unknown theory kind: " + s);
}

} // namespace poslog
