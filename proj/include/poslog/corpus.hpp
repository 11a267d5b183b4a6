#pragma once

#include "text.hpp"

namespace poslog {

// The shipped theories and universe classes, loaded once per process.
struct Corpus {
    Theory t_graph, t_lo, t_unary;
    UniverseClassPtr graphs3, graphs4, chains3, unary2;
};

const Corpus& corpus();

std::string corpus_dir();
std::string read_file(const std::string& path);

} // namespace poslog
