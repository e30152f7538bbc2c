#include "arithdyn/endo.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "arithdyn/errors.hpp"
#include "arithdyn/snf.hpp"

namespace arithdyn {

namespace {

void require_nonsingular(const IntMatrix& phi, const Fan& fan) {
    if (!phi.square() || phi.rows() != fan.dim)
        throw ValidationError("endomorphism matrix must be square of the fan dimension");
    if (fan.dim > 0 && det(phi) == 0)
        throw ValidationError("endomorphism matrix is singular");
}

// Basis of the saturated sublattice span(vectors) cap Z^n, via SNF.
std::vector<IntVec> saturation_basis(const std::vector<IntVec>& vectors, std::size_t n) {
    IntMatrix a(n, vectors.size());
    for (std::size_t j = 0; j < vectors.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) a.at(i, j) = vectors[j][i];
    SnfResult snf = smith_normal_form(a);
    // Columns of U^-1 indexed by the nonzero diagonal span the saturation.
    RatMatrix uinv = inverse(snf.u.to_rat());
    std::vector<IntVec> basis;
    for (std::size_t j = 0; j < snf.rank; ++j) {
        IntVec col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = uinv.at(i, j).get_num();
        basis.push_back(std::move(col));
    }
    return basis;
}

} // namespace

CompatibilityResult check_compatible(const IntMatrix& phi, const Fan& fan) {
    require_nonsingular(phi, fan);
    std::vector<HRep> hreps;
    hreps.reserve(fan.max_cones.size());
    for (const auto& cone : fan.max_cones)
        hreps.push_back(cone_h_rep(fan.cone_generators(cone), fan.dim));

    for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
        std::vector<IntVec> images;
        for (std::size_t idx : fan.max_cones[c]) images.push_back(phi * fan.rays[idx]);
        bool housed = false;
        for (const HRep& h : hreps) {
            bool all_in = std::all_of(images.begin(), images.end(),
                                      [&](const IntVec& v) { return cone_contains(h, v); });
            if (all_in) { housed = true; break; }
        }
        if (!housed) return {false, c};
    }
    return {true, std::nullopt};
}

RayPermutation ray_permutation(const LatticeEndo& endo) {
    require_nonsingular(endo.matrix, endo.fan);
    RayPermutation out;
    out.image.resize(endo.fan.rays.size());
    out.scales.resize(endo.fan.rays.size());
    for (std::size_t i = 0; i < endo.fan.rays.size(); ++i) {
        IntVec image = endo.matrix * endo.fan.rays[i];
        IntVec prim = image;
        primitivize(prim);
        std::size_t target = static_cast<std::size_t>(-1);
        for (std::size_t j = 0; j < endo.fan.rays.size(); ++j)
            if (endo.fan.rays[j] == prim) { target = j; break; }
        if (target == static_cast<std::size_t>(-1))
            throw ValidationError("not ray-to-ray: image of ray " + std::to_string(i) +
                                  " is not a positive multiple of a ray");
        // Scale factor: image = scale * rays[target].
        Int scale = 0;
        for (std::size_t k = 0; k < endo.fan.dim; ++k)
            if (endo.fan.rays[target][k] != 0) {
                scale = image[k] / endo.fan.rays[target][k];
                break;
            }
        if (scale <= 0)
            throw ValidationError("not ray-to-ray: nonpositive scale on ray " +
                                  std::to_string(i));
        out.image[i] = target;
        out.scales[i] = scale;
    }
    return out;
}

unsigned stabilizing_power(const LatticeEndo& endo) {
    RayPermutation perm = ray_permutation(endo);
    // lcm of cycle lengths.
    std::vector<bool> seen(perm.image.size(), false);
    Int order = 1;
    for (std::size_t i = 0; i < perm.image.size(); ++i) {
        if (seen[i]) continue;
        unsigned len = 0;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = perm.image[j];
            ++len;
        }
        order = lcm(order, Int(len));
    }
    if (!order.fits_uint_p()) throw CapacityError("stabilizing power overflow");
    return static_cast<unsigned>(order.get_ui());
}

Decomposition eigen_fan_decomposition(const LatticeEndo& endo) {
    const Fan& fan = endo.fan;
    if (!is_simplicial(fan)) throw ValidationError("decomposition needs a simplicial fan");
    if (!is_complete(fan)) throw ValidationError("decomposition needs a complete fan");
    CompatibilityResult compat = check_compatible(endo.matrix, fan);
    if (!compat.compatible)
        throw ValidationError("endomorphism is not compatible with the fan");

    Decomposition out;
    out.stabilizing_power = stabilizing_power(endo);
    IntMatrix stabilized = endo.matrix.power(out.stabilizing_power);
    RayPermutation perm = ray_permutation({stabilized, fan});

    // Group rays by their integer scale factor.
    std::map<Int, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < fan.rays.size(); ++i) groups[perm.scales[i]].push_back(i);

    std::size_t total_dim = 0;
    for (auto& [eigenvalue, ray_indices] : groups) {
        DecompositionFactor factor;
        factor.eigenvalue = eigenvalue;
        factor.ray_indices = ray_indices;
        std::vector<IntVec> group_rays;
        for (std::size_t idx : ray_indices) group_rays.push_back(fan.rays[idx]);
        factor.basis = saturation_basis(group_rays, fan.dim);
        total_dim += factor.basis.size();
        out.factors.push_back(std::move(factor));
    }
    if (total_dim != fan.dim)
        throw ValidationError("eigenspaces do not span the lattice");

    // Build each factor fan in its sublattice basis.
    for (auto& factor : out.factors) {
        std::size_t k = factor.basis.size();
        Fan ffan;
        ffan.dim = k;
        RatMatrix b(fan.dim, k);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < fan.dim; ++i) b.at(i, j) = Rat(factor.basis[j][i]);
        std::map<std::size_t, std::size_t> local_index;  // source ray -> factor ray
        for (std::size_t idx : factor.ray_indices) {
            RatVec rhs(fan.dim);
            for (std::size_t i = 0; i < fan.dim; ++i) rhs[i] = Rat(fan.rays[idx][i]);
            RatVec coords = solve(b, rhs);
            IntVec ray(k);
            for (std::size_t j = 0; j < k; ++j) {
                if (coords[j].get_den() != 1)
                    throw ValidationError("factor ray not integral in sublattice basis");
                ray[j] = coords[j].get_num();
            }
            local_index[idx] = ffan.rays.size();
            ffan.rays.push_back(std::move(ray));
        }
        std::set<std::vector<std::size_t>> factor_cones;
        for (const auto& max_cone : fan.max_cones) {
            std::vector<std::size_t> restricted;
            for (std::size_t idx : max_cone)
                if (local_index.count(idx)) restricted.push_back(local_index[idx]);
            std::sort(restricted.begin(), restricted.end());
            if (restricted.size() != k)
                throw ValidationError("product property fails: cone restriction not full");
            factor_cones.insert(std::move(restricted));
        }
        ffan.max_cones.assign(factor_cones.begin(), factor_cones.end());
        factor.fan = std::move(ffan);
    }

    // Product property: source max cones are exactly the joins of one max
    // cone per factor.
    {
        std::set<std::vector<std::size_t>> source;
        for (auto cone : fan.max_cones) {
            std::sort(cone.begin(), cone.end());
            source.insert(cone);
        }
        std::vector<std::vector<std::size_t>> joins{{}};
        for (const auto& factor : out.factors) {
            std::vector<std::vector<std::size_t>> next;
            for (const auto& partial : joins)
                for (const auto& fcone : factor.fan.max_cones) {
                    auto join = partial;
                    for (std::size_t local : fcone) join.push_back(factor.ray_indices[local]);
                    next.push_back(std::move(join));
                }
            joins = std::move(next);
        }
        std::set<std::vector<std::size_t>> expected;
        for (auto& join : joins) {
            std::sort(join.begin(), join.end());
            expected.insert(join);
        }
        if (expected != source)
            throw ValidationError("product property fails: cone sets do not match");
    }

    // [N : sum of factor sublattices] as a determinant.
    IntMatrix full(fan.dim, fan.dim);
    std::size_t col = 0;
    for (const auto& factor : out.factors)
        for (const IntVec& bvec : factor.basis) {
            for (std::size_t i = 0; i < fan.dim; ++i) full.at(i, col) = bvec[i];
            ++col;
        }
    out.lattice_index = abs(det(full));
    return out;
}

SimplicityResult is_simple(const Fan& fan) {
    std::size_t d = fan.rays.size();
    if (d > 16) throw CapacityError("simplicity search capped at 16 rays");
    if (d == 0 || fan.dim == 0) return {true, std::nullopt};

    auto span_rank = [&](const std::vector<std::size_t>& idx) -> std::size_t {
        if (idx.empty()) return 0;
        RatMatrix m(idx.size(), fan.dim);
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < fan.dim; ++j) m.at(i, j) = Rat(fan.rays[idx[i]][j]);
        return rank(m);
    };

    for (unsigned mask = 1; mask + 1 < (1u << d); ++mask) {
        if (!(mask & 1u)) continue;  // fix ray 0 in the first part
        std::vector<std::size_t> r1, r2;
        for (std::size_t i = 0; i < d; ++i)
            ((mask >> i) & 1u ? r1 : r2).push_back(i);

        std::size_t rank1 = span_rank(r1), rank2 = span_rank(r2);
        if (rank1 + rank2 != fan.dim || rank1 == 0 || rank2 == 0) continue;

        // Lattice must split as the direct sum of the saturations.
        std::vector<IntVec> rays1, rays2;
        for (std::size_t i : r1) rays1.push_back(fan.rays[i]);
        for (std::size_t i : r2) rays2.push_back(fan.rays[i]);
        auto b1 = saturation_basis(rays1, fan.dim);
        auto b2 = saturation_basis(rays2, fan.dim);
        IntMatrix full(fan.dim, fan.dim);
        std::size_t col = 0;
        for (const auto& basis : {b1, b2})
            for (const IntVec& v : basis) {
                for (std::size_t i = 0; i < fan.dim; ++i) full.at(i, col) = v[i];
                ++col;
            }
        Int index = abs(det(full));
        if (index != 1) continue;

        // Cone set must be the product of the induced restrictions.
        std::set<std::vector<std::size_t>> c1, c2, source, expected;
        bool restriction_ok = true;
        for (auto cone : fan.max_cones) {
            std::sort(cone.begin(), cone.end());
            source.insert(cone);
            std::vector<std::size_t> p1, p2;
            for (std::size_t idx : cone)
                ((mask >> idx) & 1u ? p1 : p2).push_back(idx);
            if (span_rank(p1) != rank1 || span_rank(p2) != rank2) {
                restriction_ok = false;
                break;
            }
            c1.insert(p1);
            c2.insert(p2);
        }
        if (!restriction_ok) continue;
        for (const auto& a : c1)
            for (const auto& b : c2) {
                auto join = a;
                join.insert(join.end(), b.begin(), b.end());
                std::sort(join.begin(), join.end());
                expected.insert(join);
            }
        if (expected == source) return {false, std::make_pair(r1, r2)};
    }
    return {true, std::nullopt};
}

LatticeEndo nonpolarized_witness(const Fan& fan, const Decomposition& decomposition,
                                 const Int& n1, const Int& n2) {
    if (decomposition.factors.size() < 2)
        throw ValidationError("nonpolarized witness needs at least two factors");
    if (n1 <= 0 || n2 <= 0 || n1 == n2)
        throw ValidationError("witness scales must be distinct positive integers");

    std::size_t n = fan.dim;
    RatMatrix basis(n, n);
    RatMatrix diag(n, n);
    std::size_t col = 0;
    for (std::size_t f = 0; f < decomposition.factors.size(); ++f) {
        const Int& scale = (f == 0) ? n1 : n2;
        for (const IntVec& bvec : decomposition.factors[f].basis) {
            for (std::size_t i = 0; i < n; ++i) basis.at(i, col) = Rat(bvec[i]);
            diag.at(col, col) = Rat(scale);
            ++col;
        }
    }
    RatMatrix phi_rat = basis * diag * inverse(basis);
    if (!phi_rat.is_integral())
        throw ValidationError("witness endomorphism is not integral; sublattices do not split");
    IntMatrix phi = IntMatrix::from_rat(phi_rat);
    CompatibilityResult compat = check_compatible(phi, fan);
    if (!compat.compatible)
        throw ValidationError("witness endomorphism is not compatible with the fan");
    return {phi, fan};
}

} // namespace arithdyn
