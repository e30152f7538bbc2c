#include "arithdyn/fan.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "arithdyn/errors.hpp"
#include "arithdyn/ratmat.hpp"
#include "arithdyn/snf.hpp"

namespace arithdyn {

std::vector<IntVec> Fan::cone_generators(const std::vector<std::size_t>& cone) const {
    std::vector<IntVec> gens;
    gens.reserve(cone.size());
    for (std::size_t idx : cone) {
        if (idx >= rays.size()) throw ValidationError("ray index out of range");
        gens.push_back(rays[idx]);
    }
    return gens;
}

namespace {

std::size_t cone_rank(const Fan& fan, const std::vector<std::size_t>& cone) {
    if (cone.empty() || fan.dim == 0) return 0;
    RatMatrix m(cone.size(), fan.dim);
    for (std::size_t i = 0; i < cone.size(); ++i)
        for (std::size_t j = 0; j < fan.dim; ++j) m.at(i, j) = Rat(fan.rays[cone[i]][j]);
    return rank(m);
}

// Index of the fan ray that v is a positive multiple of, or npos.
std::size_t match_ray(const Fan& fan, const IntVec& v) {
    IntVec p = v;
    primitivize(p);
    for (std::size_t i = 0; i < fan.rays.size(); ++i)
        if (fan.rays[i] == p) return i;
    return static_cast<std::size_t>(-1);
}

} // namespace

ValidationReport validate(const Fan& fan) {
    ValidationReport report;
    auto fail = [&](std::string what, std::vector<std::size_t> cones = {}) {
        report.valid = false;
        report.issues.push_back({std::move(what), std::move(cones)});
    };

    for (std::size_t i = 0; i < fan.rays.size(); ++i) {
        if (fan.rays[i].size() != fan.dim) fail("ray " + std::to_string(i) + " has wrong arity");
        if (vec_gcd(fan.rays[i]) != 1)
            fail("ray " + std::to_string(i) + " is not primitive");
        for (std::size_t j = i + 1; j < fan.rays.size(); ++j)
            if (fan.rays[i] == fan.rays[j])
                fail("rays " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
    }
    for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
        const auto& cone = fan.max_cones[c];
        if (!std::is_sorted(cone.begin(), cone.end()) ||
            std::adjacent_find(cone.begin(), cone.end()) != cone.end())
            fail("max cone " + std::to_string(c) + " indices not sorted/unique", {c});
        for (std::size_t idx : cone)
            if (idx >= fan.rays.size())
                fail("max cone " + std::to_string(c) + " has out-of-range ray index", {c});
    }
    if (!report.valid) return report;

    for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
        const auto& cone = fan.max_cones[c];
        auto gens = fan.cone_generators(cone);
        if (cone_rank(fan, cone) != cone.size()) {
            report.simplicial = false;
            report.issues.push_back(
                {"max cone " + std::to_string(c) + " is not simplicial", {c}});
        }
        if (!cone.empty() && !is_face_of({}, gens, fan.dim))
            fail("max cone " + std::to_string(c) + " is not strongly convex", {c});
        // Every listed generator must be an extreme ray of its cone.
        for (std::size_t k = 0; k < gens.size(); ++k)
            if (!is_face_of({gens[k]}, gens, fan.dim))
                fail("max cone " + std::to_string(c) + " has a non-extreme generator", {c});
    }
    if (!report.valid) return report;

    // Pairwise intersections must be common faces.
    for (std::size_t a = 0; a < fan.max_cones.size(); ++a) {
        for (std::size_t b = a + 1; b < fan.max_cones.size(); ++b) {
            auto ga = fan.cone_generators(fan.max_cones[a]);
            auto gb = fan.cone_generators(fan.max_cones[b]);
            std::vector<IntVec> inter;
            try {
                inter = cone_intersection(ga, gb, fan.dim);
            } catch (const ValidationError&) {
                fail("intersection of max cones " + std::to_string(a) + "," +
                         std::to_string(b) + " is not strongly convex",
                     {a, b});
                continue;
            }
            std::vector<IntVec> shared;
            bool ok = true;
            for (const IntVec& r : inter) {
                std::size_t idx = match_ray(fan, r);
                bool in_a = idx != static_cast<std::size_t>(-1) &&
                            std::binary_search(fan.max_cones[a].begin(),
                                               fan.max_cones[a].end(), idx);
                bool in_b = idx != static_cast<std::size_t>(-1) &&
                            std::binary_search(fan.max_cones[b].begin(),
                                               fan.max_cones[b].end(), idx);
                if (!in_a || !in_b) { ok = false; break; }
                shared.push_back(fan.rays[idx]);
            }
            if (ok) ok = is_face_of(shared, ga, fan.dim) && is_face_of(shared, gb, fan.dim);
            if (!ok)
                fail("max cones " + std::to_string(a) + "," + std::to_string(b) +
                         " do not intersect in a common face",
                     {a, b});
        }
    }
    return report;
}

bool is_simplicial(const Fan& fan) {
    for (const auto& cone : fan.max_cones)
        if (cone_rank(fan, cone) != cone.size()) return false;
    return true;
}

bool is_complete(const Fan& fan) {
    if (fan.dim == 0) return true;
    if (fan.max_cones.empty()) return false;
    for (const auto& cone : fan.max_cones)
        if (cone_rank(fan, cone) != fan.dim)
            throw ValidationError("is_complete requires a pure full-dimensional fan");

    // Facet -> incident max cones, facets identified by their ray-index sets.
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> facet_owners;
    for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
        auto gens = fan.cone_generators(fan.max_cones[c]);
        HRep h = cone_h_rep(gens, fan.dim);
        for (const IntVec& facet_normal : h.inequalities) {
            std::vector<std::size_t> facet;
            for (std::size_t k = 0; k < gens.size(); ++k) {
                Int s = 0;
                for (std::size_t i = 0; i < fan.dim; ++i) s += facet_normal[i] * gens[k][i];
                if (s == 0) facet.push_back(fan.max_cones[c][k]);
            }
            std::sort(facet.begin(), facet.end());
            facet_owners[facet].push_back(c);
        }
    }
    for (const auto& [facet, owners] : facet_owners)
        if (owners.size() != 2) return false;

    // Facet-connectivity of the max-cone graph.
    std::vector<std::set<std::size_t>> adj(fan.max_cones.size());
    for (const auto& [facet, owners] : facet_owners) {
        adj[owners[0]].insert(owners[1]);
        adj[owners[1]].insert(owners[0]);
    }
    std::vector<bool> seen(fan.max_cones.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        std::size_t c = stack.back();
        stack.pop_back();
        for (std::size_t n : adj[c])
            if (!seen[n]) { seen[n] = true; stack.push_back(n); }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

Fan product(const Fan& f1, const Fan& f2) {
    Fan out;
    out.dim = f1.dim + f2.dim;
    for (const IntVec& r : f1.rays) {
        IntVec v(out.dim, Int(0));
        for (std::size_t i = 0; i < f1.dim; ++i) v[i] = r[i];
        out.rays.push_back(std::move(v));
    }
    for (const IntVec& r : f2.rays) {
        IntVec v(out.dim, Int(0));
        for (std::size_t i = 0; i < f2.dim; ++i) v[f1.dim + i] = r[i];
        out.rays.push_back(std::move(v));
    }
    auto cones1 = f1.max_cones.empty() ? std::vector<std::vector<std::size_t>>{{}}
                                       : f1.max_cones;
    auto cones2 = f2.max_cones.empty() ? std::vector<std::vector<std::size_t>>{{}}
                                       : f2.max_cones;
    for (const auto& c1 : cones1)
        for (const auto& c2 : cones2) {
            std::vector<std::size_t> cone = c1;
            for (std::size_t idx : c2) cone.push_back(f1.rays.size() + idx);
            std::sort(cone.begin(), cone.end());
            out.max_cones.push_back(std::move(cone));
        }
    return out;
}

bool has_cone(const Fan& fan, const ConeRef& tau) {
    for (std::size_t idx : tau.ray_indices)
        if (idx >= fan.rays.size()) return false;
    for (const auto& max_cone : fan.max_cones) {
        bool subset = std::includes(max_cone.begin(), max_cone.end(),
                                    tau.ray_indices.begin(), tau.ray_indices.end());
        if (!subset) continue;
        if (is_face_of(fan.cone_generators(tau.ray_indices),
                       fan.cone_generators(max_cone), fan.dim))
            return true;
    }
    return false;
}

StarFan star_fan(const Fan& fan, const ConeRef& tau) {
    std::vector<std::size_t> tau_idx = tau.ray_indices;
    std::sort(tau_idx.begin(), tau_idx.end());
    if (!has_cone(fan, {tau_idx})) throw ValidationError("tau is not a cone of the fan");

    StarFan out;
    out.source_rho = static_cast<long>(fan.rays.size()) - static_cast<long>(fan.dim);
    if (tau_idx.empty()) {
        out.fan = fan;
        out.star_rho = out.source_rho;
        return out;
    }

    // Quotient projection Z^n -> Z^(n-r) with kernel the saturation of
    // span(tau): last rows of the SNF row transform.
    IntMatrix a(fan.dim, tau_idx.size());
    for (std::size_t j = 0; j < tau_idx.size(); ++j)
        for (std::size_t i = 0; i < fan.dim; ++i) a.at(i, j) = fan.rays[tau_idx[j]][i];
    SnfResult snf = smith_normal_form(a);
    std::size_t r = snf.rank;
    std::size_t qdim = fan.dim - r;

    auto project = [&](const IntVec& v) {
        IntVec uv = snf.u * v;
        IntVec out_v(uv.begin() + static_cast<long>(r), uv.end());
        return out_v;
    };

    Fan star;
    star.dim = qdim;
    std::map<IntVec, std::size_t> ray_index;
    for (const auto& max_cone : fan.max_cones) {
        if (!std::includes(max_cone.begin(), max_cone.end(), tau_idx.begin(), tau_idx.end()))
            continue;
        std::vector<std::size_t> image_cone;
        for (std::size_t idx : max_cone) {
            IntVec p = project(fan.rays[idx]);
            primitivize(p);
            if (std::all_of(p.begin(), p.end(), [](const Int& x) { return x == 0; }))
                continue;  // rays of tau vanish in the quotient
            auto [it, inserted] = ray_index.try_emplace(p, ray_index.size());
            image_cone.push_back(it->second);
        }
        std::sort(image_cone.begin(), image_cone.end());
        image_cone.erase(std::unique(image_cone.begin(), image_cone.end()), image_cone.end());
        star.max_cones.push_back(std::move(image_cone));
    }
    star.rays.resize(ray_index.size());
    for (const auto& [ray, idx] : ray_index) star.rays[idx] = ray;
    std::sort(star.max_cones.begin(), star.max_cones.end());
    star.max_cones.erase(std::unique(star.max_cones.begin(), star.max_cones.end()),
                         star.max_cones.end());

    out.fan = std::move(star);
    out.star_rho = static_cast<long>(out.fan.rays.size()) - static_cast<long>(out.fan.dim);
    return out;
}

Fan projective_space_fan(std::size_t n) {
    Fan fan;
    fan.dim = n;
    for (std::size_t i = 0; i < n; ++i) {
        IntVec e(n, Int(0));
        e[i] = 1;
        fan.rays.push_back(std::move(e));
    }
    fan.rays.push_back(IntVec(n, Int(-1)));
    // Max cones: all n-subsets of the n+1 rays.
    for (std::size_t skip = 0; skip <= n; ++skip) {
        std::vector<std::size_t> cone;
        for (std::size_t i = 0; i <= n; ++i)
            if (i != skip) cone.push_back(i);
        fan.max_cones.push_back(std::move(cone));
    }
    return fan;
}

Fan hirzebruch_fan(long r) {
    Fan fan;
    fan.dim = 2;
    fan.rays = {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(r)}, {Int(0), Int(-1)}};
    fan.max_cones = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
    return fan;
}

} // namespace arithdyn
