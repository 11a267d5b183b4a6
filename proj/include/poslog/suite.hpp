#pragma once

#include <string>
#include <vector>

namespace poslog {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool pass = false;
    std::string detail;   // deterministic summary, failures first
};

// The full invariant suite over the shipped corpus, in criterion order.
// Criterion 12 (determinism) is checked by rendering the suite twice.
std::vector<CriterionResult> run_suite();

std::string render_suite(const std::vector<CriterionResult>& results);

} // namespace poslog
