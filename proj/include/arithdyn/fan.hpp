#pragma once

#include <string>
#include <vector>

#include "arithdyn/cone.hpp"
#include "arithdyn/rat.hpp"

namespace arithdyn {

/// Rational polyhedral fan, stored as primitive ray generators plus maximal
/// cones as ray-index sets. Faces are derived on demand.
struct Fan {
    std::size_t dim = 0;
    std::vector<IntVec> rays;
    std::vector<std::vector<std::size_t>> max_cones;  // each sorted ascending

    std::vector<IntVec> cone_generators(const std::vector<std::size_t>& cone) const;
};

/// Cone of a fan, identified by its ray-index set (empty = the zero cone).
struct ConeRef {
    std::vector<std::size_t> ray_indices;
};

struct ValidationIssue {
    std::string what;
    std::vector<std::size_t> cone_indices;  // offending max cones, when applicable
};

struct ValidationReport {
    bool valid = true;
    bool simplicial = true;
    std::vector<ValidationIssue> issues;
};

ValidationReport validate(const Fan& fan);

bool is_simplicial(const Fan& fan);

/// True iff every facet of every maximal cone is shared by exactly two
/// maximal cones and the fan is facet-connected. Requires a pure
/// full-dimensional fan.
bool is_complete(const Fan& fan);

Fan product(const Fan& f1, const Fan& f2);

struct StarFan {
    Fan fan;
    // Ray count minus dimension, reported for both fans rather than asserted
    // equal (the equality needs completeness and simpliciality).
    long source_rho = 0;
    long star_rho = 0;
};

/// Fan of the orbit closure V(tau): project onto the quotient lattice
/// N / (span(tau) cap N) and re-primitivize the rays of cones containing tau.
StarFan star_fan(const Fan& fan, const ConeRef& tau);

/// True iff tau's index set names a face of some maximal cone.
bool has_cone(const Fan& fan, const ConeRef& tau);

/// Canonical P^n and Hirzebruch fans used throughout tests and the CLI.
Fan projective_space_fan(std::size_t n);
Fan hirzebruch_fan(long r);

} // namespace arithdyn
