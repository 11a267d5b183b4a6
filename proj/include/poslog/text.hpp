#pragma once

#include "hom.hpp"
#include "theory.hpp"

#include <optional>
#include <string>
#include <vector>

namespace poslog {

struct ParseDiagnostic {
    std::string severity = "error";
    int line = 0;
    int column = 0;
    std::string message;
    std::string hint;
};

struct ParseError : PoslogError {
    std::vector<ParseDiagnostic> diagnostics;
    explicit ParseError(std::vector<ParseDiagnostic> ds)
        : PoslogError(ds.empty() ? "parse error"
                                 : ds.front().message + " at line " +
                                       std::to_string(ds.front().line) + ":" +
                                       std::to_string(ds.front().column)),
          diagnostics(std::move(ds)) {}
};

enum class DocKind { Signature, Theory, Structure, Class, Formula, Fragment };

struct ParsedDocument {
    DocKind kind;
    SignaturePtr sig;
    std::optional<Theory> theory;
    StructurePtr structure;
    UniverseClassPtr universe;
    std::optional<Formula> formula;
    std::string fragment_name;
    std::vector<Formula> fragment_seed;
};

// Parses a `.plt`/`.pls` document.  `context` supplies the signature when the
// document declares none of its own.
ParsedDocument parse_document(const std::string& text, SignaturePtr context = nullptr);

// Inline formula text (no header line), canonicalized.
Formula parse_formula(const std::string& text, SignaturePtr sig);

std::string serialize(const Formula& f, const Signature& sig);
std::string serialize_signature(const Signature& sig);
std::string serialize_theory(const Theory& t);
std::string serialize_structure(const FiniteStructure& m);
std::string serialize_class(const UniverseClass& c);
std::string serialize_fragment(const std::string& name, const std::vector<Formula>& members,
                               const Signature& sig);
std::string serialize_document(const ParsedDocument& d);

// output-only block form for geometric types
std::string serialize_gtype(const std::vector<Formula>& members, const Signature& sig);

} // namespace poslog
