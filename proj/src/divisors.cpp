#include "arithdyn/divisors.hpp"

#include <algorithm>
#include <cmath>

#include "arithdyn/errors.hpp"
#include "arithdyn/snf.hpp"

namespace arithdyn {

namespace {

void require_coeff_count(const Fan& fan, const TDivisor& d) {
    if (d.coeffs.size() != fan.rays.size())
        throw ValidationError("divisor needs one coefficient per fan ray");
}

RatVec to_rat_vec(const IntVec& v) {
    RatVec out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

CartierData cartier_data(const Fan& fan, const TDivisor& d) {
    require_coeff_count(fan, d);
    CartierData data;
    for (const auto& cone : fan.max_cones) {
        if (cone.size() != fan.dim)
            throw ValidationError("Cartier data needs simplicial full-dimensional max cones");
        RatMatrix m(fan.dim, fan.dim);
        RatVec rhs(fan.dim);
        for (std::size_t i = 0; i < cone.size(); ++i) {
            for (std::size_t j = 0; j < fan.dim; ++j) m.at(i, j) = Rat(fan.rays[cone[i]][j]);
            rhs[i] = -d.coeffs[cone[i]];
        }
        data.covectors.push_back(solve(m, rhs));
    }
    return data;
}

Rat support_value(const Fan& fan, const CartierData& data, const RatVec& v) {
    bool found = false;
    Rat value = 0;
    for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
        HRep h = cone_h_rep(fan.cone_generators(fan.max_cones[c]), fan.dim);
        if (!cone_contains(h, v)) continue;
        Rat here = dot(data.covectors[c], v);
        if (found && here != value)
            throw ValidationError("support function is inconsistent across cones");
        value = here;
        found = true;
    }
    if (!found) throw ValidationError("point lies outside the fan's support");
    return value;
}

Rat support_value(const Fan& fan, const TDivisor& d, const RatVec& v) {
    return support_value(fan, cartier_data(fan, d), v);
}

TDivisor pullback_divisor(const IntMatrix& phi, const Fan& source, const Fan& target,
                          const TDivisor& d) {
    if (phi.rows() != target.dim || phi.cols() != source.dim)
        throw ValidationError("lattice map shape does not match the fans");
    CartierData data = cartier_data(target, d);
    TDivisor out;
    for (const auto& ray : source.rays) {
        IntVec image = phi * ray;
        out.coeffs.push_back(-support_value(target, data, to_rat_vec(image)));
    }
    return out;
}

ClassGroup class_group(const Fan& fan) {
    std::size_t nrays = fan.rays.size();
    if (nrays == 0) throw ValidationError("class group needs at least one ray");
    IntMatrix pairing(nrays, fan.dim);
    for (std::size_t r = 0; r < nrays; ++r)
        for (std::size_t j = 0; j < fan.dim; ++j) pairing.at(r, j) = fan.rays[r][j];

    SnfResult snf = smith_normal_form(pairing);
    ClassGroup cg;
    cg.fan = fan;
    cg.rank = nrays - snf.rank;
    for (std::size_t k = 0; k < snf.rank; ++k)
        if (snf.d.at(k, k) > 1) cg.torsion.push_back(snf.d.at(k, k));

    if (cg.rank == 0) return cg;  // torsion-only cokernel: no free coordinates

    cg.projection = RatMatrix(cg.rank, nrays);
    for (std::size_t i = 0; i < cg.rank; ++i)
        for (std::size_t j = 0; j < nrays; ++j)
            cg.projection.at(i, j) = Rat(snf.u.at(snf.rank + i, j));

    RatMatrix uinv = inverse(snf.u.to_rat());
    for (std::size_t j = 0; j < cg.rank; ++j) {
        TDivisor section;
        for (std::size_t i = 0; i < nrays; ++i)
            section.coeffs.push_back(uinv.at(i, snf.rank + j));
        cg.sections.push_back(std::move(section));
    }
    return cg;
}

RatVec class_coords(const ClassGroup& cg, const TDivisor& d) {
    require_coeff_count(cg.fan, d);
    if (cg.rank == 0) return {};
    return cg.projection * d.coeffs;
}

RatMatrix nef_inequalities(const ClassGroup& cg) {
    const Fan& fan = cg.fan;
    std::vector<CartierData> section_data;
    for (const auto& s : cg.sections) section_data.push_back(cartier_data(fan, s));

    std::vector<RatVec> rows;
    for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
        const auto& cone = fan.max_cones[c];
        for (std::size_t rho = 0; rho < fan.rays.size(); ++rho) {
            if (std::binary_search(cone.begin(), cone.end(), rho)) continue;
            RatVec row(cg.rank);
            RatVec ray = to_rat_vec(fan.rays[rho]);
            for (std::size_t j = 0; j < cg.rank; ++j)
                row[j] = dot(section_data[j].covectors[c], ray) + cg.sections[j].coeffs[rho];
            rows.push_back(std::move(row));
        }
    }
    RatMatrix w(rows.size(), cg.rank);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cg.rank; ++j) w.at(i, j) = rows[i][j];
    return w;
}

bool is_nef(const Fan& fan, const TDivisor& d) {
    require_coeff_count(fan, d);
    CartierData data = cartier_data(fan, d);
    for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
        const auto& cone = fan.max_cones[c];
        for (std::size_t rho = 0; rho < fan.rays.size(); ++rho) {
            if (std::binary_search(cone.begin(), cone.end(), rho)) continue;
            Rat slack = dot(data.covectors[c], to_rat_vec(fan.rays[rho])) + d.coeffs[rho];
            if (sgn(slack) < 0) return false;
        }
    }
    return true;
}

namespace {

std::vector<IntVec> integral_rows(const RatMatrix& m) {
    std::vector<IntVec> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        RatVec row(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m.at(i, j);
        rows.push_back(clear_denominators(row));
    }
    return rows;
}

} // namespace

std::vector<IntVec> nef_cone_rays(const ClassGroup& cg) {
    if (cg.rank > 6)
        throw CapacityError("nef cone enumeration is capped at class rank 6");
    HRep h;
    h.dim = cg.rank;
    h.inequalities = integral_rows(nef_inequalities(cg));
    DDResult dd = extreme_rays(h);
    if (!dd.lineality.empty())
        throw ValidationError("nef cone is not pointed");
    return dd.rays;
}

namespace {

bool has_nef_eigendivisor(const RatMatrix& nef_ineqs, const std::vector<RatVec>& eigenspace,
                          std::size_t rank) {
    if (eigenspace.empty()) return false;
    HRep h;
    h.dim = rank;
    h.inequalities = integral_rows(nef_ineqs);
    // c must lie in the eigenspace: kill the span's orthogonal complement.
    RatMatrix span(eigenspace.size(), rank);
    for (std::size_t i = 0; i < eigenspace.size(); ++i)
        for (std::size_t j = 0; j < rank; ++j) span.at(i, j) = eigenspace[i][j];
    for (const auto& comp : kernel_basis(span)) {
        RatVec row(comp.begin(), comp.end());
        h.equalities.push_back(clear_denominators(row));
    }
    DDResult dd = extreme_rays(h);
    return !dd.rays.empty() || !dd.lineality.empty();
}

PullbackAction analyze(const RatMatrix& action, const ClassGroup& cg) {
    PullbackAction result;
    result.matrix = action;
    result.integral = action.is_integral();
    result.eigen = rational_eigen(action);
    RatMatrix w = nef_inequalities(cg);
    for (const auto& ev : result.eigen.rational) {
        NefEigenFlag flag;
        flag.eigenvalue = ev.value;
        flag.has_nef_eigendivisor = has_nef_eigendivisor(w, ev.eigenspace, cg.rank);
        result.nef_flags.push_back(flag);
    }
    return result;
}

} // namespace

PullbackAction pullback_matrix(const IntMatrix& phi, const ClassGroup& cg) {
    const Fan& fan = cg.fan;
    if (!phi.square() || phi.rows() != fan.dim)
        throw ValidationError("endomorphism matrix must be square of the fan's dimension");
    if (det(phi) == 0)
        throw ValidationError("endomorphism matrix must be nonsingular");
    // Pullback is well-defined on classes: principal divisors must map to
    // class zero.
    for (std::size_t i = 0; i < fan.dim; ++i) {
        TDivisor principal;
        for (const auto& ray : fan.rays) principal.coeffs.emplace_back(ray[i]);
        RatVec cls = class_coords(cg, pullback_divisor(phi, fan, fan, principal));
        for (const auto& c : cls)
            if (c != 0) throw ValidationError("pullback is not well-defined on classes");
    }

    RatMatrix m(cg.rank, cg.rank);
    for (std::size_t j = 0; j < cg.rank; ++j) {
        RatVec col = class_coords(cg, pullback_divisor(phi, fan, fan, cg.sections[j]));
        for (std::size_t i = 0; i < cg.rank; ++i) m.at(i, j) = col[i];
    }
    return analyze(m, cg);
}

PullbackAction analyze_class_action(const RatMatrix& action, const ClassGroup& cg) {
    if (action.rows() != cg.rank || action.cols() != cg.rank)
        throw ValidationError("class action shape does not match the class rank");
    return analyze(action, cg);
}

std::vector<PotentialDegree> potential_arithmetic_degrees(const PullbackAction& action) {
    std::vector<PotentialDegree> degrees;

    // Rational eigenvalues first, folded by modulus.
    std::vector<Rat> moduli;
    for (const auto& ev : action.eigen.rational) {
        Rat mod = ev.value >= 0 ? ev.value : Rat(-ev.value);
        if (mod > 1) moduli.push_back(mod);
    }
    std::sort(moduli.begin(), moduli.end(), std::greater<Rat>());
    moduli.erase(std::unique(moduli.begin(), moduli.end()), moduli.end());
    for (const auto& mod : moduli) {
        PotentialDegree pd;
        pd.modulus = to_double(mod);
        pd.exact = mod;
        bool nef = false;
        for (const auto& flag : action.nef_flags) {
            Rat fmod = flag.eigenvalue >= 0 ? flag.eigenvalue : Rat(-flag.eigenvalue);
            if (fmod == mod && flag.has_nef_eigendivisor) nef = true;
        }
        pd.nef = nef;
        degrees.push_back(pd);
    }

    // Remaining numeric moduli come from the irrational cofactor.
    std::vector<double> leftovers = action.eigen.numeric_moduli;
    for (const auto& ev : action.eigen.rational) {
        double mod = std::abs(to_double(ev.value));
        for (int k = 0; k < ev.multiplicity; ++k) {
            auto it = std::find(leftovers.begin(), leftovers.end(), mod);
            if (it != leftovers.end()) leftovers.erase(it);
        }
    }
    for (double mod : leftovers) {
        if (mod <= 1.0 + action.eigen.tolerance) continue;
        bool dup = false;
        for (const auto& pd : degrees)
            if (!pd.exact && std::abs(pd.modulus - mod) <= action.eigen.tolerance) dup = true;
        if (dup) continue;
        PotentialDegree pd;
        pd.modulus = mod;
        degrees.push_back(pd);
    }

    std::sort(degrees.begin(), degrees.end(),
              [](const PotentialDegree& a, const PotentialDegree& b) {
                  return a.modulus > b.modulus;
              });
    return degrees;
}

namespace {

bool is_projective_space(const Fan& fan) {
    if (fan.rays.size() != fan.dim + 1) return false;
    IntVec sum(fan.dim, 0);
    for (const auto& ray : fan.rays)
        for (std::size_t j = 0; j < fan.dim; ++j) sum[j] += ray[j];
    for (const auto& s : sum)
        if (s != 0) return false;
    // Every dim-subset of rays must be a lattice basis.
    for (std::size_t skip = 0; skip < fan.rays.size(); ++skip) {
        IntMatrix m(fan.dim, fan.dim);
        std::size_t row = 0;
        for (std::size_t r = 0; r < fan.rays.size(); ++r) {
            if (r == skip) continue;
            for (std::size_t j = 0; j < fan.dim; ++j) m.at(row, j) = fan.rays[r][j];
            ++row;
        }
        Int d = det(m);
        if (d != 1 && d != -1) return false;
    }
    return true;
}

} // namespace

EquivariantRealizability realizability_report_equivariant(const LatticeEndo& endo) {
    EquivariantRealizability report;
    report.decomposition = eigen_fan_decomposition(endo);

    report.product_of_projective_spaces = true;
    for (const auto& factor : report.decomposition.factors) {
        if (!is_projective_space(factor.fan)) {
            report.product_of_projective_spaces = false;
            break;
        }
    }
    if (report.product_of_projective_spaces)
        for (const auto& factor : report.decomposition.factors)
            report.projective_dims.push_back(factor.fan.dim);

    for (std::size_t i = 0; i < report.decomposition.factors.size(); ++i) {
        const auto& factor = report.decomposition.factors[i];
        if (factor.eigenvalue <= 1) continue;
        EquivariantWitness witness;
        witness.eigenvalue = factor.eigenvalue;
        witness.factor_index = i;
        for (std::size_t j = 0; j < report.decomposition.factors.size(); ++j) {
            std::size_t fdim = report.decomposition.factors[j].fan.dim;
            witness.point_coords.emplace_back(fdim, j == i ? "2" : "1");
        }
        report.witnesses.push_back(std::move(witness));
    }
    return report;
}

} // namespace arithdyn
