#pragma once

#include "formula.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace poslog {

// Finite many-sorted structure.  Elements are indices into per-sort carriers;
// element names are kept for parsing/printing.
class FiniteStructure {
public:
    std::string name;
    SignaturePtr sig;
    std::map<std::string, std::vector<std::string>> carriers;      // sort -> names
    std::map<std::string, std::set<std::vector<int>>> relations;   // rel -> tuples
    std::map<std::string, std::map<std::vector<int>, int>> functions;
    std::map<std::string, int> constants;

    int carrier_size(const std::string& sort) const {
        auto it = carriers.find(sort);
        return it == carriers.end() ? 0 : static_cast<int>(it->second.size());
    }
    int total_size() const {
        int n = 0;
        for (const auto& [s, c] : carriers) n += static_cast<int>(c.size());
        return n;
    }
    int element(const std::string& sort, const std::string& elem_name) const;

    // totality + range checks against the signature
    void validate() const;
};

using StructurePtr = std::shared_ptr<const FiniteStructure>;

// Assignment of carrier indices to variables; tuples are tiny, linear scan.
class Assignment {
public:
    Assignment() = default;
    Assignment(const std::vector<SortedVar>& vars, const std::vector<int>& values) {
        for (std::size_t i = 0; i < vars.size(); ++i) push(vars[i], values[i]);
    }
    void push(const SortedVar& v, int e) { slots_.emplace_back(v, e); }
    void pop() { slots_.pop_back(); }
    int lookup(const SortedVar& v) const {
        for (auto it = slots_.rbegin(); it != slots_.rend(); ++it)
            if (it->first == v) return it->second;
        throw SortError("unassigned variable " + v.sort + "#" + std::to_string(v.index));
    }

private:
    std::vector<std::pair<SortedVar, int>> slots_;
};

int eval_term(const FiniteStructure& M, const Term& t, const Assignment& a);
bool eval(const FiniteStructure& M, const Formula& f, const Assignment& a);
bool eval_sentence(const FiniteStructure& M, const Formula& f);

// All tuples of carrier indices matching the sorts of vars, in lexicographic
// order.
std::vector<std::vector<int>> all_tuples(const FiniteStructure& M,
                                         const std::vector<SortedVar>& vars);

} // namespace poslog
