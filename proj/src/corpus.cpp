#include "poslog/corpus.hpp"

#include <fstream>
#include <sstream>

namespace poslog {

std::string corpus_dir() {
#ifdef POSLOG_CORPUS_DIR
    return POSLOG_CORPUS_DIR;
#else
    return "corpus";
#endif
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PoslogError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

Theory load_theory(const std::string& file) {
    auto doc = parse_document(read_file(corpus_dir() + "/" + file));
    if (doc.kind != DocKind::Theory) throw PoslogError(file + ": not a theory");
    return *doc.theory;
}

UniverseClassPtr load_class(const std::string& file, const Theory& t) {
    auto doc = parse_document(read_file(corpus_dir() + "/" + file));
    if (doc.kind != DocKind::Class) throw PoslogError(file + ": not a class");
    auto c = std::make_shared<UniverseClass>(*doc.universe);
    c->theory = t;
    c->validate();
    return c;
}

} // namespace

const Corpus& corpus() {
    static const Corpus c = [] {
        Corpus k;
        k.t_graph = load_theory("t_graph.plt");
        k.t_lo = load_theory("t_lo.plt");
        k.t_unary = load_theory("t_unary.plt");
        k.graphs3 = load_class("graphs3.pls", k.t_graph);
        k.graphs4 = load_class("graphs4.pls", k.t_graph);
        k.chains3 = load_class("chains3.pls", k.t_lo);
        k.unary2 = load_class("unary2.pls", k.t_unary);
        return k;
    }();
    return c;
}

} // namespace poslog
