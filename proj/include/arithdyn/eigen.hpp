#pragma once

#include <vector>

#include "arithdyn/poly.hpp"
#include "arithdyn/ratmat.hpp"

namespace arithdyn {

struct RationalEigenvalue {
    Rat value;
    int multiplicity = 0;                // algebraic
    std::vector<RatVec> eigenspace;      // exact kernel basis of (m - value I)
};

struct EigenReport {
    std::vector<RationalEigenvalue> rational;  // ascending by value
    bool has_irrational_part = false;
    int irrational_degree = 0;                 // degree of the rational-root-free cofactor
    std::vector<double> numeric_moduli;        // all complex root moduli, descending
    double tolerance = 1e-9;
};

/// Exact rational eigen-decomposition plus numeric moduli of every root.
EigenReport rational_eigen(const RatMatrix& m, int max_iterations = 200);

/// Max modulus over all complex eigenvalues. Exact when all eigenvalues are rational.
double spectral_radius(const RatMatrix& m);

/// True iff the rational eigenspace dimensions sum to the full dimension.
bool is_diagonalizable_rational(const RatMatrix& m);

} // namespace arithdyn
