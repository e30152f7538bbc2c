#include "arithdyn/cone.hpp"

#include <algorithm>
#include <set>

#include "arithdyn/errors.hpp"

namespace arithdyn {

namespace {

using Kind = LinearConstraint::Kind;

bool all_zero(const RatVec& v) {
    for (const Rat& x : v)
        if (x != 0) return false;
    return true;
}

RatVec to_ratvec(const IntVec& v) {
    RatVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
    return out;
}

Rat dot(const RatVec& a, const IntVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

bool feasible(std::vector<LinearConstraint> constraints, std::size_t nvars) {
    // Split equalities into two inequalities up front.
    std::vector<LinearConstraint> work;
    for (auto& c : constraints) {
        if (c.coeffs.size() != nvars) throw ValidationError("constraint arity mismatch");
        if (c.kind == Kind::Eq) {
            LinearConstraint neg = c;
            for (Rat& x : neg.coeffs) x = -x;
            c.kind = neg.kind = Kind::Ge;
            work.push_back(std::move(neg));
        }
        work.push_back(std::move(c));
    }

    for (std::size_t var = 0; var < nvars; ++var) {
        std::vector<LinearConstraint> pos, neg, zero;
        for (auto& c : work) {
            const Rat& a = c.coeffs[var];
            if (a > 0)
                pos.push_back(std::move(c));
            else if (a < 0)
                neg.push_back(std::move(c));
            else
                zero.push_back(std::move(c));
        }
        work = std::move(zero);
        for (const auto& p : pos)
            for (const auto& n : neg) {
                LinearConstraint combined;
                combined.coeffs.resize(nvars, Rat(0));
                const Rat& ap = p.coeffs[var];
                const Rat& an = n.coeffs[var];
                for (std::size_t i = 0; i < nvars; ++i)
                    combined.coeffs[i] = p.coeffs[i] * (-an) + n.coeffs[i] * ap;
                // A positive combination is strictly positive as soon as one
                // summand is strict.
                combined.kind =
                    (p.kind == Kind::Gt || n.kind == Kind::Gt) ? Kind::Gt : Kind::Ge;
                work.push_back(std::move(combined));
            }
        // A strict constraint with a free sign on this variable is always satisfiable,
        // so pos-only or neg-only strict rows impose nothing after elimination.
        std::erase_if(work, [](const LinearConstraint& c) { return all_zero(c.coeffs) && c.kind == Kind::Ge; });
    }

    for (const auto& c : work)
        if (c.kind == Kind::Gt) return false;  // derived 0 > 0
    return true;
}

namespace {

// Incremental double description on { y : rows . y >= 0 } in full dimension,
// assuming the cone is pointed (rank of rows = k). `start` indexes k
// independent rows used for the initial simplicial cone.
std::vector<IntVec> dd_pointed(const std::vector<RatVec>& rows, std::size_t k,
                               const std::vector<std::size_t>& start) {
    RatMatrix b(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) b.at(i, j) = rows[start[i]][j];
    RatMatrix binv = inverse(b);

    struct Ray {
        IntVec v;
        std::set<std::size_t> active;  // constraint indices satisfied with equality
    };
    std::vector<Ray> rays;
    for (std::size_t j = 0; j < k; ++j) {
        RatVec col(k);
        for (std::size_t i = 0; i < k; ++i) col[i] = binv.at(i, j);
        IntVec v = clear_denominators(col);
        primitivize(v);
        rays.push_back({std::move(v), {}});
    }

    std::vector<std::size_t> order = start;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (std::find(start.begin(), start.end(), i) == start.end()) order.push_back(i);

    std::vector<std::size_t> processed;
    for (std::size_t idx : order) {
        const RatVec& a = rows[idx];
        std::vector<Ray> keep, negs;
        for (auto& r : rays) {
            Rat s = dot(a, r.v);
            if (s > 0) {
                keep.push_back(std::move(r));
            } else if (s == 0) {
                r.active.insert(idx);
                keep.push_back(std::move(r));
            } else {
                negs.push_back(std::move(r));
            }
        }
        std::vector<Ray> created;
        for (const auto& p : keep) {
            Rat sp = dot(a, p.v);
            if (sp == 0) continue;
            for (const auto& n : negs) {
                // Adjacency: no other ray's active set contains active(p) & active(n).
                std::set<std::size_t> common;
                std::set_intersection(p.active.begin(), p.active.end(), n.active.begin(),
                                      n.active.end(), std::inserter(common, common.begin()));
                bool adjacent = true;
                auto covers = [&](const Ray& r) {
                    return std::includes(r.active.begin(), r.active.end(), common.begin(),
                                         common.end());
                };
                for (const auto& r : keep)
                    if (&r != &p && covers(r)) { adjacent = false; break; }
                if (adjacent)
                    for (const auto& r : negs)
                        if (&r != &n && covers(r)) { adjacent = false; break; }
                if (!adjacent) continue;

                Rat sn = dot(a, n.v);
                RatVec combo(k);
                for (std::size_t i = 0; i < k; ++i)
                    combo[i] = sp * Rat(n.v[i]) - sn * Rat(p.v[i]);
                IntVec v = clear_denominators(combo);
                primitivize(v);
                Ray nr;
                nr.v = std::move(v);
                for (std::size_t j : processed)
                    if (dot(rows[j], nr.v) == 0) nr.active.insert(j);
                nr.active.insert(idx);
                created.push_back(std::move(nr));
            }
        }
        rays = std::move(keep);
        for (auto& r : created) rays.push_back(std::move(r));
        processed.push_back(idx);
    }

    std::vector<IntVec> out;
    for (auto& r : rays) {
        primitivize(r.v);
        out.push_back(std::move(r.v));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

DDResult extreme_rays(const HRep& h) {
    std::size_t n = h.dim;

    // Substitute out the equalities: x = K y.
    std::vector<RatVec> kbasis;
    if (h.equalities.empty()) {
        for (std::size_t i = 0; i < n; ++i) {
            RatVec e(n, Rat(0));
            e[i] = 1;
            kbasis.push_back(std::move(e));
        }
    } else {
        RatMatrix eqm(h.equalities.size(), n);
        for (std::size_t i = 0; i < h.equalities.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) eqm.at(i, j) = Rat(h.equalities[i][j]);
        kbasis = kernel_basis(eqm);
    }
    std::size_t k = kbasis.size();
    DDResult result;
    if (k == 0) return result;

    // Inequality rows in y coordinates.
    std::vector<RatVec> rows;
    for (const IntVec& ineq : h.inequalities) {
        RatVec row(k, Rat(0));
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < n; ++i) row[j] += Rat(ineq[i]) * kbasis[j][i];
        if (!all_zero(row)) rows.push_back(std::move(row));
    }

    auto lift = [&](const RatVec& y) {
        RatVec x(n, Rat(0));
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < n; ++i) x[i] += y[j] * kbasis[j][i];
        IntVec v = clear_denominators(x);
        primitivize(v);
        return v;
    };

    // Lineality of the y-cone: kernel of the row matrix.
    std::vector<std::size_t> independent;
    {
        RatMatrix rm(std::max<std::size_t>(rows.size(), 1), k);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < k; ++j) rm.at(i, j) = rows[i][j];
        if (rows.empty())
            for (std::size_t j = 0; j < k; ++j) rm.at(0, j) = 0;
        for (const RatVec& l : kernel_basis(rm)) {
            IntVec lv = lift(l);
            sign_normalize(lv);
            result.lineality.push_back(std::move(lv));
        }
        // Greedy independent row selection for the initial cone.
        std::size_t r = 0;
        RatMatrix acc(k, k);
        for (std::size_t i = 0; i < rows.size() && r < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) acc.at(r, j) = rows[i][j];
            RatMatrix sub(r + 1, k);
            for (std::size_t a = 0; a <= r; ++a)
                for (std::size_t j = 0; j < k; ++j) sub.at(a, j) = acc.at(a, j);
            if (rank(sub) == r + 1) {
                independent.push_back(i);
                ++r;
            }
        }
    }

    if (!result.lineality.empty()) {
        // Not pointed: callers that need extreme rays must not reach here.
        return result;
    }

    std::vector<IntVec> yrays = dd_pointed(rows, k, independent);
    for (const IntVec& y : yrays) result.rays.push_back(lift(to_ratvec(y)));
    std::sort(result.rays.begin(), result.rays.end());
    return result;
}

HRep cone_h_rep(const std::vector<IntVec>& generators, std::size_t dim) {
    HRep h;
    h.dim = dim;
    if (generators.empty()) {
        // The zero cone: x = 0.
        for (std::size_t i = 0; i < dim; ++i) {
            IntVec e(dim, Int(0));
            e[i] = 1;
            h.equalities.push_back(std::move(e));
        }
        return h;
    }
    // Span equalities: kernel of the generator matrix (as rows).
    RatMatrix gm(generators.size(), dim);
    for (std::size_t i = 0; i < generators.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j) gm.at(i, j) = Rat(generators[i][j]);
    for (const RatVec& u : kernel_basis(gm)) {
        IntVec e = clear_denominators(u);
        sign_normalize(e);
        h.equalities.push_back(std::move(e));
    }

    // Facets: extreme rays of the dual cone { u : <u, g> >= 0 }, computed
    // inside span(generators).
    HRep dual;
    dual.dim = dim;
    dual.inequalities = generators;
    dual.equalities = h.equalities;
    DDResult dd = extreme_rays(dual);
    if (!dd.lineality.empty())
        throw ValidationError("cone dual has lineality; generators degenerate");
    h.inequalities = dd.rays;
    return h;
}

bool cone_contains(const HRep& h, const RatVec& point) {
    for (const IntVec& eq : h.equalities)
        if (dot(point, eq) != 0) return false;
    for (const IntVec& ineq : h.inequalities)
        if (dot(point, ineq) < 0) return false;
    return true;
}

bool cone_contains(const HRep& h, const IntVec& point) {
    return cone_contains(h, to_ratvec(point));
}

std::vector<IntVec> cone_intersection(const std::vector<IntVec>& gens1,
                                      const std::vector<IntVec>& gens2, std::size_t dim) {
    HRep h1 = cone_h_rep(gens1, dim);
    HRep h2 = cone_h_rep(gens2, dim);
    HRep joint;
    joint.dim = dim;
    joint.inequalities = h1.inequalities;
    joint.inequalities.insert(joint.inequalities.end(), h2.inequalities.begin(),
                              h2.inequalities.end());
    joint.equalities = h1.equalities;
    joint.equalities.insert(joint.equalities.end(), h2.equalities.begin(),
                            h2.equalities.end());
    DDResult dd = extreme_rays(joint);
    if (!dd.lineality.empty())
        throw ValidationError("cone intersection is not strongly convex");
    return dd.rays;
}

bool is_face_of(const std::vector<IntVec>& subset, const std::vector<IntVec>& generators,
                std::size_t dim) {
    std::vector<LinearConstraint> cs;
    for (const IntVec& s : subset) {
        LinearConstraint c;
        c.coeffs = to_ratvec(s);
        c.kind = Kind::Eq;
        cs.push_back(std::move(c));
    }
    for (const IntVec& g : generators) {
        bool in_subset = std::find(subset.begin(), subset.end(), g) != subset.end();
        if (in_subset) continue;
        LinearConstraint c;
        c.coeffs = to_ratvec(g);
        c.kind = Kind::Gt;
        cs.push_back(std::move(c));
    }
    return feasible(std::move(cs), dim);
}

} // namespace arithdyn
