#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace poslog {

struct PoslogError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an enumeration or search exceeds its configured count ceiling.
struct ResourceCeiling : PoslogError {
    using PoslogError::PoslogError;
};

struct SortError : PoslogError {
    using PoslogError::PoslogError;
};

struct FunctionDecl {
    std::vector<std::string> arg_sorts;
    std::string result_sort;
};

// Many-sorted signature.  The nullary relations "true" and "false" are logical
// constants, not table entries, so they are not stored here.
class Signature {
public:
    std::string name = "L";
    std::vector<std::string> sorts;                          // declaration order
    std::map<std::string, std::vector<std::string>> relations;
    std::map<std::string, FunctionDecl> functions;
    std::map<std::string, std::string> constants;            // name -> sort

    bool has_sort(const std::string& s) const {
        for (auto& t : sorts) if (t == s) return true;
        return false;
    }

    void add_sort(const std::string& s) {
        if (has_sort(s)) throw SortError("duplicate sort: " + s);
        sorts.push_back(s);
    }

    void add_relation(const std::string& r, std::vector<std::string> sorting) {
        check_fresh(r);
        for (auto& s : sorting) require_sort(s);
        relations.emplace(r, std::move(sorting));
    }

    void add_function(const std::string& f, std::vector<std::string> args, std::string result) {
        check_fresh(f);
        for (auto& s : args) require_sort(s);
        require_sort(result);
        functions.emplace(f, FunctionDecl{std::move(args), std::move(result)});
    }

    void add_constant(const std::string& c, std::string sort) {
        check_fresh(c);
        require_sort(sort);
        constants.emplace(c, std::move(sort));
    }

    void require_sort(const std::string& s) const {
        if (!has_sort(s)) throw SortError("undeclared sort: " + s);
    }

private:
    void check_fresh(const std::string& n) const {
        if (n == "true" || n == "false")
            throw SortError("cannot redeclare built-in " + n);
        if (relations.count(n) || functions.count(n) || constants.count(n))
            throw SortError("duplicate symbol: " + n);
    }
};

using SignaturePtr = std::shared_ptr<const Signature>;

} // namespace poslog
