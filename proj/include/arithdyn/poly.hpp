#pragma once

#include <vector>

#include "arithdyn/rat.hpp"
#include "arithdyn/ratmat.hpp"

namespace arithdyn {

/// Polynomial with exact rational coefficients, ascending degree.
/// Leading coefficient is nonzero unless the polynomial is zero.
struct RatPoly {
    RatVec coeffs;

    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return coeffs.empty() ? -1 : static_cast<int>(coeffs.size()) - 1; }
    Rat eval(const Rat& x) const;
    void trim();
    bool operator==(const RatPoly& other) const = default;
};

/// Monic characteristic polynomial det(xI - m), computed exactly.
RatPoly char_poly(const RatMatrix& m);

/// All rational roots with multiplicity, via the rational root test on the
/// integer-scaled polynomial. Second member is the fully deflated cofactor
/// (the factor with no rational roots).
std::pair<std::vector<std::pair<Rat, int>>, RatPoly> rational_roots(const RatPoly& p);

/// Moduli of all complex roots, found numerically from the companion matrix.
std::vector<double> numeric_root_moduli(const RatPoly& p, int max_iterations = 200);

} // namespace arithdyn
