#include "arithdyn/heights.hpp"

#include <cmath>
#include <cstdlib>

#include "arithdyn/errors.hpp"
#include "arithdyn/ratmat.hpp"

namespace arithdyn {

ProjPoint make_proj_point(std::vector<IntVec> factors) {
    if (factors.empty()) throw ValidationError("projective point needs at least one factor");
    for (auto& f : factors) {
        if (f.empty()) throw ValidationError("projective factor needs at least one coordinate");
        bool all_zero = true;
        for (const auto& c : f)
            if (c != 0) all_zero = false;
        if (all_zero) throw ValidationError("projective factor coordinates are all zero");
        sign_normalize(f);
    }
    return ProjPoint{std::move(factors)};
}

Int binary_form_resultant(const IntVec& f, const IntVec& g) {
    if (f.empty() || g.empty()) throw ValidationError("binary form needs coefficients");
    std::size_t d = std::max(f.size(), g.size()) - 1;
    if (d == 0) throw ValidationError("binary form degree must be >= 1");
    std::size_t n = 2 * d;
    IntMatrix s(n, n);
    // Row i < d holds f shifted by i; rows d..2d-1 hold g. Formal degree d for
    // both forms, so missing high coefficients are zeros, as required for the
    // binary-form resultant.
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j <= d; ++j) {
            Int cf = j < f.size() ? f[j] : Int(0);
            Int cg = j < g.size() ? g[j] : Int(0);
            s.at(i, i + d - j) = cf;
            s.at(d + i, i + d - j) = cg;
        }
    }
    return det(s);
}

void validate_system(const DynSystem& sys) {
    if (sys.factors.empty()) throw ValidationError("dynamical system needs at least one factor");
    for (const auto& factor : sys.factors) {
        if (const auto* p1 = std::get_if<P1MapFactor>(&factor)) {
            if (p1->f.size() != p1->g.size())
                throw ValidationError("P^1 map forms must share one degree");
            if (p1->f.size() < 2) throw ValidationError("P^1 map degree must be >= 1");
            if (binary_form_resultant(p1->f, p1->g) == 0)
                throw ValidationError("P^1 map forms have a common root (zero resultant)");
        } else {
            const auto& pw = std::get<PowerFactor>(factor);
            if (pw.dim < 1) throw ValidationError("power map dimension must be >= 1");
            if (pw.exponent < 1) throw ValidationError("power map exponent must be >= 1");
        }
    }
}

std::vector<std::size_t> system_dims(const DynSystem& sys) {
    std::vector<std::size_t> dims;
    for (const auto& factor : sys.factors) {
        if (std::holds_alternative<P1MapFactor>(factor))
            dims.push_back(1);
        else
            dims.push_back(std::get<PowerFactor>(factor).dim);
    }
    return dims;
}

double log_int(const Int& n) {
    if (n <= 0) throw ValidationError("log_int needs a positive integer");
    signed long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

WeilHeight weil_height(const ProjPoint& p) {
    WeilHeight h;
    for (const auto& factor : p.factors) {
        Int best = 0;
        for (const auto& c : factor) {
            Int a = abs(c);
            if (a > best) best = a;
        }
        h.exact_max *= best;
    }
    h.value = log_int(h.exact_max);
    return h;
}

ProjPoint apply(const DynSystem& sys, const ProjPoint& p) {
    auto dims = system_dims(sys);
    if (p.factors.size() != dims.size())
        throw ValidationError("point and system factor counts differ");
    for (std::size_t i = 0; i < dims.size(); ++i)
        if (p.factors[i].size() != dims[i] + 1)
            throw ValidationError("point factor arity does not match the system");

    std::vector<IntVec> out;
    for (std::size_t i = 0; i < sys.factors.size(); ++i) {
        const IntVec& coords = p.factors[i];
        if (const auto* p1 = std::get_if<P1MapFactor>(&sys.factors[i])) {
            std::size_t d = p1->f.size() - 1;
            const Int& x = coords[0];
            const Int& y = coords[1];
            // Monomial basis x^j y^(d-j), j = 0..d.
            IntVec monos(d + 1);
            Int xp = 1, yp = 1;
            IntVec xpow(d + 1), ypow(d + 1);
            for (std::size_t j = 0; j <= d; ++j) {
                xpow[j] = xp;
                ypow[j] = yp;
                xp *= x;
                yp *= y;
            }
            Int fx = 0, gx = 0;
            for (std::size_t j = 0; j <= d; ++j) {
                Int mono = xpow[j] * ypow[d - j];
                fx += p1->f[j] * mono;
                gx += p1->g[j] * mono;
            }
            if (fx == 0 && gx == 0)
                throw ValidationError("system maps the point to zero (invalid system)");
            out.push_back({fx, gx});
        } else {
            unsigned d = std::get<PowerFactor>(sys.factors[i]).exponent;
            IntVec image;
            for (const auto& c : coords) {
                Int v;
                mpz_pow_ui(v.get_mpz_t(), c.get_mpz_t(), d);
                image.push_back(v);
            }
            // Powers of coprime coordinates stay coprime; check it anyway.
            IntVec check = image;
            primitivize(check);
            if (check != image && vec_gcd(coords) == 1)
                throw ValidationError("power map broke gcd normalization");
            out.push_back(std::move(image));
        }
    }
    return make_proj_point(std::move(out));
}

std::size_t digit_budget() {
    if (const char* env = std::getenv("ARITHDYN_DIGIT_BUDGET")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 1000000;
}

namespace {

bool over_budget(const ProjPoint& p, std::size_t budget) {
    for (const auto& factor : p.factors)
        for (const auto& c : factor)
            if (mpz_sizeinbase(c.get_mpz_t(), 10) > budget) return true;
    return false;
}

} // namespace

AlphaEstimate alpha_estimate(const DynSystem& sys, const ProjPoint& p, unsigned n) {
    if (n < 3) throw ValidationError("alpha estimation needs at least 3 iterations");
    validate_system(sys);
    std::size_t budget = digit_budget();

    AlphaEstimate est;
    ProjPoint current = make_proj_point(p.factors);
    est.heights.push_back(weil_height(current).value);
    for (unsigned k = 1; k <= n; ++k) {
        if (over_budget(current, budget)) {
            est.budget_exceeded = true;
            break;
        }
        current = apply(sys, current);
        est.heights.push_back(weil_height(current).value);
        est.iterations = k;
    }

    for (std::size_t k = 0; k + 1 < est.heights.size(); ++k)
        if (est.heights[k] > 0.0) est.ratios.push_back(est.heights[k + 1] / est.heights[k]);
    for (std::size_t k = 1; k < est.heights.size(); ++k)
        if (est.heights[k] > 0.0)
            est.roots.push_back(std::pow(est.heights[k], 1.0 / static_cast<double>(k)));

    est.height_collapsed = est.heights.back() == 0.0;
    est.estimate = (est.height_collapsed || est.ratios.empty()) ? 1.0 : est.ratios.back();
    return est;
}

} // namespace arithdyn
