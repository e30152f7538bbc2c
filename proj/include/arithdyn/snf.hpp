#pragma once

#include "arithdyn/ratmat.hpp"

namespace arithdyn {

/// Smith normal form: u * m * v = d with d diagonal, d1 | d2 | ..., u and v
/// unimodular. Diagonal entries are nonnegative.
struct SnfResult {
    IntMatrix u, d, v;
    std::size_t rank = 0;
};

SnfResult smith_normal_form(const IntMatrix& m);

} // namespace arithdyn
