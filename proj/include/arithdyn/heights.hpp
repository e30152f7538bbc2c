#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "arithdyn/rat.hpp"

namespace arithdyn {

/// Point on a product of projective spaces: one integer coordinate vector per
/// factor, gcd-normalized with the first nonzero coordinate positive.
struct ProjPoint {
    std::vector<IntVec> factors;
};

/// Normalizes and validates (each factor nonzero).
ProjPoint make_proj_point(std::vector<IntVec> factors);

/// Self-map of P^1 by a pair of degree-d integer binary forms with nonzero
/// resultant. Coefficient i multiplies x^i y^(d-i); d = coeffs.size() - 1.
struct P1MapFactor {
    IntVec f, g;
};

/// Coordinate power map x_i -> x_i^exponent on P^dim.
struct PowerFactor {
    std::size_t dim = 1;
    unsigned exponent = 1;
};

using DynFactor = std::variant<P1MapFactor, PowerFactor>;

struct DynSystem {
    std::vector<DynFactor> factors;
};

/// Resultant of two binary forms of formal degree max(|f|,|g|)-1, via the
/// Sylvester determinant.
Int binary_form_resultant(const IntVec& f, const IntVec& g);

/// Throws ValidationError on degree < 1, arity mismatch or zero resultant.
void validate_system(const DynSystem& sys);

/// Factor dimensions of the system's product space.
std::vector<std::size_t> system_dims(const DynSystem& sys);

struct WeilHeight {
    double value = 0.0;  // sum over factors of ln(max |coordinate|)
    Int exact_max = 1;   // product over factors of the per-factor max |coordinate|
};

WeilHeight weil_height(const ProjPoint& p);

/// One exact iteration step; output is normalized.
ProjPoint apply(const DynSystem& sys, const ProjPoint& p);

struct AlphaEstimate {
    unsigned iterations = 0;       // iterations actually performed
    std::vector<double> heights;   // h_0 .. h_iterations
    std::vector<double> ratios;    // h_{k+1}/h_k wherever h_k > 0
    std::vector<double> roots;     // h_k^{1/k} for k >= 1 with h_k > 0
    double estimate = 1.0;         // last ratio, or 1 when no ratio is defined
    bool height_collapsed = false; // final height is exactly 0
    bool budget_exceeded = false;  // digit budget hit; sequences are partial
};

/// Iterates exactly and estimates the arithmetic degree. Needs n >= 3.
AlphaEstimate alpha_estimate(const DynSystem& sys, const ProjPoint& p, unsigned n);

/// Max decimal digits per coordinate before iteration aborts; defaults to
/// 10^6, overridable via ARITHDYN_DIGIT_BUDGET.
std::size_t digit_budget();

/// ln of a positive big integer, stable for huge values.
double log_int(const Int& n);

} // namespace arithdyn
