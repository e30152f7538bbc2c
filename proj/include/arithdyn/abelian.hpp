#pragma once

#include <string>
#include <vector>

#include "arithdyn/eigen.hpp"
#include "arithdyn/ratmat.hpp"

namespace arithdyn {

// The rank-3 space of symmetric 2x2 classes carries the pullback action
// alpha -> f^T alpha f of an isogeny f with transpose involution. Basis
// order everywhere: E11, E22, E12+E21.

/// 2x2 symmetric class from coordinates in the (E11, E22, E12+E21) basis.
RatMatrix sym_class(const Rat& c11, const Rat& c22, const Rat& c_mixed);

/// Nef: both eigenvalues nonnegative, decided exactly by trace/determinant signs.
bool is_nef_class(const RatMatrix& alpha);
/// Ample: both eigenvalues positive.
bool is_ample_class(const RatMatrix& alpha);

struct EigenClassFlag {
    Rat eigenvalue;
    RatVec eigenvector;  // coordinates in the symmetric basis
    bool nef = false;    // of the eigenvector or its negative
    bool ample = false;
};

struct ThetaAction {
    RatMatrix matrix;  // 3x3, exact
    EigenReport eigen;
    std::vector<EigenClassFlag> flags;
};

/// Matrix of alpha -> f^T alpha f on the symmetric basis. f must be nonsingular.
ThetaAction theta_matrix(const RatMatrix& f);

struct DegreeLabel {
    Rat value;
    bool realizable = false;
    std::string justification;
};

struct CounterexampleReport {
    Int a, b;
    ThetaAction theta;
    std::vector<DegreeLabel> labels;   // eigenvalues > 1, descending
    std::vector<Rat> realizable;       // includes 1
    std::vector<Rat> non_realizable;
};

/// Eigenstructure and realizability labels for f = diag(a, b) on a simple
/// abelian variety with 2x2 rational matrix endomorphism algebra. Needs a > b >= 1.
CounterexampleReport counterexample_report(const Int& a, const Int& b);

struct IsogenyReport {
    ThetaAction theta;
    double lambda1 = 1.0;  // spectral radius of theta
    bool simple_hypothesis = false;
    std::vector<DegreeLabel> labels;  // potential degrees, descending
};

/// Eigenstructure of theta_f for an arbitrary integer isogeny matrix. With the
/// simplicity hypothesis, only the top eigenvalue (and 1) is realizable.
IsogenyReport general_isogeny_report(const RatMatrix& f, bool simple_hypothesis);

} // namespace arithdyn
