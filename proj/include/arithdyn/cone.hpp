#pragma once

#include <cstddef>
#include <vector>

#include "arithdyn/rat.hpp"
#include "arithdyn/ratmat.hpp"

namespace arithdyn {

/// Homogeneous linear constraint coeffs . x  (kind)  0.
struct LinearConstraint {
    enum class Kind { Ge, Gt, Eq };
    RatVec coeffs;
    Kind kind = Kind::Ge;
};

/// Exact Fourier-Motzkin feasibility for a homogeneous system.
bool feasible(std::vector<LinearConstraint> constraints, std::size_t nvars);

/// H-representation of a rational polyhedral cone:
/// { x : ineq . x >= 0 for all ineqs, eq . x = 0 for all eqs }.
struct HRep {
    std::size_t dim = 0;
    std::vector<IntVec> inequalities;
    std::vector<IntVec> equalities;
};

/// Double description output. Rays are primitive, sign-normalized and sorted.
/// A nonempty lineality basis means the cone is not pointed.
struct DDResult {
    std::vector<IntVec> rays;
    std::vector<IntVec> lineality;
};

DDResult extreme_rays(const HRep& h);

/// H-representation of cone(generators): facet inequalities plus span equalities.
HRep cone_h_rep(const std::vector<IntVec>& generators, std::size_t dim);

bool cone_contains(const HRep& h, const RatVec& point);
bool cone_contains(const HRep& h, const IntVec& point);

/// Extreme rays of cone(gens1) intersected with cone(gens2).
std::vector<IntVec> cone_intersection(const std::vector<IntVec>& gens1,
                                      const std::vector<IntVec>& gens2, std::size_t dim);

/// True iff cone(subset) is a face of cone(generators): some supporting
/// functional vanishes exactly on the subset. Exact strict feasibility.
bool is_face_of(const std::vector<IntVec>& subset, const std::vector<IntVec>& generators,
                std::size_t dim);

} // namespace arithdyn
