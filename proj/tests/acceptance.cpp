// Acceptance gate: the full invariant suite over the shipped corpus, run
// twice for the determinism criterion.  One line per criterion; nonzero exit
// on any failure.

#include "poslog/suite.hpp"

#include <cstdio>
#include <iostream>

int main() {
    using namespace poslog;
    try {
        auto results = run_suite();
        std::string first = render_suite(results);
        std::string second = render_suite(run_suite());
        bool deterministic = first == second;

        std::cout << first;
        std::printf("criterion %2d: %s  %s — %s\n", 12, deterministic ? "PASS" : "FAIL",
                    "determinism",
                    deterministic ? "reports byte-identical" : "reports differ");

        bool all = deterministic;
        for (const auto& r : results) all = all && r.pass;
        return all ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "acceptance suite aborted: " << e.what() << "\n";
        return 1;
    }
}
