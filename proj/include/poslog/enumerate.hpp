#pragma once

#include "formula.hpp"

namespace poslog {

struct EnumOpts {
    int width = 2;                   // max arity of generated and/or nodes
    long long ceiling = 2000000;     // total formula count ceiling
    int constructible_positive_depth = 2;  // positive-leaf depth cap for the
                                           // constructible supply
};

// Depth-0 atoms over the variable tuple: truth, falsity, relation atoms and
// equalities over variables and constants (no nested function terms).
std::vector<Formula> atoms0(const Signature& sig, const std::vector<SortedVar>& vars);

// All canonical positive formulas of depth <= d with free variables among
// vars, and/or arity capped at opts.width, in canonical structural order.
std::vector<Formula> enumerate_positive(const Signature& sig,
                                        const std::vector<SortedVar>& vars, int d,
                                        const EnumOpts& opts = {});

// Positive-primitive sub-supply of enumerate_positive.
std::vector<Formula> enumerate_pp(const Signature& sig,
                                  const std::vector<SortedVar>& vars, int d,
                                  const EnumOpts& opts = {});

// First-order supply: adds not and forall on top of the positive grammar.
std::vector<Formula> enumerate_fo(const Signature& sig,
                                  const std::vector<SortedVar>& vars, int d,
                                  const EnumOpts& opts = {});

// Boolean combinations (and/or/not) over positive leaves of depth
// <= min(d, opts.constructible_positive_depth), total depth <= d.
std::vector<Formula> enumerate_constructible(const Signature& sig,
                                             const std::vector<SortedVar>& vars, int d,
                                             const EnumOpts& opts = {});

// Same as the enumerators above but stratified by exact depth.
std::vector<std::vector<Formula>> enumerate_positive_strata(
    const Signature& sig, const std::vector<SortedVar>& vars, int d,
    const EnumOpts& opts = {});
std::vector<std::vector<Formula>> enumerate_constructible_strata(
    const Signature& sig, const std::vector<SortedVar>& vars, int d,
    const EnumOpts& opts = {});

} // namespace poslog
