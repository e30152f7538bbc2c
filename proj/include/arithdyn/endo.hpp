#pragma once

#include <optional>
#include <vector>

#include "arithdyn/fan.hpp"
#include "arithdyn/ratmat.hpp"

namespace arithdyn {

/// Integer lattice endomorphism acting on a fan. The matrix must be
/// nonsingular and map every cone of the fan into some cone.
struct LatticeEndo {
    IntMatrix matrix;
    Fan fan;
};

struct CompatibilityResult {
    bool compatible = false;
    // First max cone whose image lies in no single cone, when incompatible.
    std::optional<std::size_t> failing_cone;
};

CompatibilityResult check_compatible(const IntMatrix& phi, const Fan& fan);

struct RayPermutation {
    std::vector<std::size_t> image;  // ray i maps onto ray image[i]
    IntVec scales;                   // positive integer scale factors
};

/// phi must send every ray to a positive multiple of a ray; otherwise throws
/// (the input is outside the surjective-equivariant hypotheses).
RayPermutation ray_permutation(const LatticeEndo& endo);

/// Least m >= 1 with phi^m fixing every ray; the order of the ray permutation.
unsigned stabilizing_power(const LatticeEndo& endo);

struct DecompositionFactor {
    Int eigenvalue;                    // positive integer scale of phi^m on this block
    std::vector<IntVec> basis;         // basis of the saturated sublattice E_i cap N
    Fan fan;                           // factor fan in that basis
    std::vector<std::size_t> ray_indices;  // source rays belonging to this factor
};

struct Decomposition {
    unsigned stabilizing_power = 1;
    std::vector<DecompositionFactor> factors;  // sorted by eigenvalue
    Int lattice_index = 1;  // [N : direct sum of factor sublattices]
};

/// Splits a complete simplicial fan along the eigenspaces of a stabilized
/// compatible endomorphism, recovering the product structure.
Decomposition eigen_fan_decomposition(const LatticeEndo& endo);

struct SimplicityResult {
    bool simple = true;
    // Ray-index bipartition witnessing decomposability, when present.
    std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> witness;
};

/// Exhaustive bipartition search; fans capped at 16 rays.
SimplicityResult is_simple(const Fan& fan);

/// The endomorphism acting as n1 on the first factor's sublattice and n2 on
/// the rest, expressed in the source lattice basis.
LatticeEndo nonpolarized_witness(const Fan& fan, const Decomposition& decomposition,
                                 const Int& n1, const Int& n2);

} // namespace arithdyn
