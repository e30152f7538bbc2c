#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arithdyn/eigen.hpp"
#include "arithdyn/endo.hpp"
#include "arithdyn/fan.hpp"
#include "arithdyn/ratmat.hpp"

namespace arithdyn {

/// Torus-invariant divisor sum a_rho D_rho, coefficients indexed like fan.rays.
struct TDivisor {
    RatVec coeffs;
};

/// Local linear data of the support function: one covector m_sigma per max
/// cone with <m_sigma, v_rho> = -a_rho on the rays of sigma. Needs a
/// simplicial fan with full-dimensional max cones.
struct CartierData {
    std::vector<RatVec> covectors;  // indexed like fan.max_cones
};

CartierData cartier_data(const Fan& fan, const TDivisor& d);

/// Value of the support function at v; v must lie in the fan's support.
Rat support_value(const Fan& fan, const CartierData& data, const RatVec& v);
Rat support_value(const Fan& fan, const TDivisor& d, const RatVec& v);

/// Pullback along the lattice map phi: a'_rho = -psi_D(phi v_rho), computed
/// on the source fan's rays against the target fan's support function.
TDivisor pullback_divisor(const IntMatrix& phi, const Fan& source, const Fan& target,
                          const TDivisor& d);

/// Divisor class group as the cokernel of the ray-pairing matrix, in Smith
/// normal form. Class coordinates live in Z^rank (+ torsion, reported only).
struct ClassGroup {
    Fan fan;
    std::size_t rank = 0;          // free rank
    std::vector<Int> torsion;      // invariant factors > 1
    RatMatrix projection;          // rank x #rays: divisor coeffs -> free class coords
    std::vector<TDivisor> sections;  // rank divisors with projection(sections[j]) = e_j
};

ClassGroup class_group(const Fan& fan);

/// Free class coordinates of a divisor.
RatVec class_coords(const ClassGroup& cg, const TDivisor& d);

/// Inequality matrix W of the nef cone in free class coordinates:
/// a class c is nef iff W c >= 0 entrywise. Rows are indexed by
/// (max cone sigma, ray rho not in sigma) pairs.
RatMatrix nef_inequalities(const ClassGroup& cg);

bool is_nef(const Fan& fan, const TDivisor& d);

/// Extreme rays of the nef cone in free class coordinates. Capped at
/// class rank 6 (throws CapacityError beyond).
std::vector<IntVec> nef_cone_rays(const ClassGroup& cg);

struct NefEigenFlag {
    Rat eigenvalue;
    bool has_nef_eigendivisor = false;
};

/// Pullback action on the free part of the class group.
struct PullbackAction {
    RatMatrix matrix;  // rank x rank, columns = classes of pulled-back sections
    bool integral = true;
    EigenReport eigen;
    std::vector<NefEigenFlag> nef_flags;  // for each rational eigenvalue
};

PullbackAction pullback_matrix(const IntMatrix& phi, const ClassGroup& cg);

/// Same analysis for a directly supplied action matrix on class coordinates.
PullbackAction analyze_class_action(const RatMatrix& action, const ClassGroup& cg);

struct PotentialDegree {
    double modulus = 1.0;
    std::optional<Rat> exact;  // set when the eigenvalue is rational
    std::optional<bool> nef;   // nef-eigendivisor existence; unset for irrational moduli
};

/// Candidate arithmetic degrees: eigenvalue moduli > 1 of the class action,
/// descending, each with nef-eigendivisor status when decidable.
std::vector<PotentialDegree> potential_arithmetic_degrees(const PullbackAction& action);

struct EquivariantWitness {
    Int eigenvalue;
    // Affine torus coordinates per decomposition factor: all "2" on the
    // witness factor, all "1" elsewhere.
    std::vector<std::vector<std::string>> point_coords;
    std::size_t factor_index = 0;
};

struct EquivariantRealizability {
    Decomposition decomposition;
    std::vector<EquivariantWitness> witnesses;  // one per factor eigenvalue > 1
    bool product_of_projective_spaces = false;  // numeric verification supported
    std::vector<std::size_t> projective_dims;   // factor dims when supported
};

/// Splits the fan along the endomorphism's eigenspaces and produces one
/// witness torus point per realized degree. When every factor fan is a
/// projective space, numeric height verification is possible downstream.
EquivariantRealizability realizability_report_equivariant(const LatticeEndo& endo);

} // namespace arithdyn
