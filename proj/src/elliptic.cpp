#include "arithdyn/elliptic.hpp"

#include <cmath>

#include "arithdyn/errors.hpp"
#include "arithdyn/heights.hpp"

namespace arithdyn {

void validate_curve(const WeierstrassCurve& curve) {
    Int disc = 4 * curve.a * curve.a * curve.a + 27 * curve.b * curve.b;
    if (disc == 0) throw ValidationError("singular curve: 4a^3 + 27b^2 = 0");
}

bool on_curve(const WeierstrassCurve& curve, const EPoint& p) {
    if (p.infinity) return true;
    Rat lhs = p.y * p.y;
    Rat rhs = p.x * p.x * p.x + Rat(curve.a) * p.x + Rat(curve.b);
    return lhs == rhs;
}

namespace {

void require_on_curve(const WeierstrassCurve& curve, const EPoint& p) {
    validate_curve(curve);
    if (!on_curve(curve, p)) throw ValidationError("point is not on the curve");
}

} // namespace

EPoint ec_neg(const WeierstrassCurve& curve, const EPoint& p) {
    require_on_curve(curve, p);
    if (p.infinity) return p;
    return EPoint::affine(p.x, -p.y);
}

EPoint ec_add(const WeierstrassCurve& curve, const EPoint& p, const EPoint& q) {
    require_on_curve(curve, p);
    require_on_curve(curve, q);
    if (p.infinity) return q;
    if (q.infinity) return p;
    if (p.x == q.x) {
        if (p.y == -q.y) return EPoint::at_infinity();  // includes y = 0
        // p == q with y != 0: tangent line.
        Rat lambda = (3 * p.x * p.x + Rat(curve.a)) / (2 * p.y);
        Rat x3 = lambda * lambda - p.x - q.x;
        Rat y3 = lambda * (p.x - x3) - p.y;
        return EPoint::affine(x3, y3);
    }
    Rat lambda = (q.y - p.y) / (q.x - p.x);
    Rat x3 = lambda * lambda - p.x - q.x;
    Rat y3 = lambda * (p.x - x3) - p.y;
    return EPoint::affine(x3, y3);
}

EPoint ec_double(const WeierstrassCurve& curve, const EPoint& p) { return ec_add(curve, p, p); }

EPoint ec_multiply(const WeierstrassCurve& curve, const EPoint& p, unsigned k) {
    require_on_curve(curve, p);
    EPoint acc = EPoint::at_infinity();
    EPoint base = p;
    while (k > 0) {
        if (k & 1u) acc = ec_add(curve, acc, base);
        k >>= 1u;
        if (k > 0) base = ec_double(curve, base);
    }
    return acc;
}

bool is_torsion(const WeierstrassCurve& curve, const EPoint& p) {
    require_on_curve(curve, p);
    if (p.infinity) return true;
    EPoint acc = p;
    for (unsigned k = 2; k <= 12; ++k) {
        acc = ec_add(curve, acc, p);
        if (acc.infinity) return true;
    }
    return false;
}

namespace {

double x_height(const EPoint& p) {
    if (p.infinity) return 0.0;
    Rat x = p.x;
    x.canonicalize();
    Int num = abs(Int(x.get_num()));
    Int den = abs(Int(x.get_den()));
    Int m = num > den ? num : den;
    if (m <= 1) return 0.0;
    return log_int(m);
}

} // namespace

CanonicalHeight canonical_height(const WeierstrassCurve& curve, const EPoint& p, unsigned depth) {
    require_on_curve(curve, p);
    if (depth > 10) throw CapacityError("canonical height depth is capped at 10");
    CanonicalHeight result;
    result.depth_used = depth;
    if (is_torsion(curve, p)) {
        result.torsion = true;
        return result;
    }

    EPoint r = p;
    double prev_h = x_height(r);
    double prev_term = prev_h;
    double scale = 1.0;
    // |h(2x) - 4 h(x)| is bounded along the orbit; track the worst observed
    // constant to bound the geometric tail honestly.
    double c_est = 0.0;
    for (unsigned n = 1; n <= depth; ++n) {
        r = ec_double(curve, r);
        if (r.infinity) {  // unreachable after the torsion test; belt and braces
            result.torsion = true;
            result.value = 0.0;
            return result;
        }
        scale /= 4.0;
        double h = x_height(r);
        c_est = std::max(c_est, std::abs(h - 4.0 * prev_h));
        prev_h = h;
        prev_term = h * scale;
    }
    result.value = prev_term;
    // Tail of the telescoping series: sum_{n > depth} C/4^n = C / (3 * 4^depth).
    result.error_bound = c_est * scale / 3.0;
    return result;
}

ExeClassification exe_classify(const Int& a, const Int& b, const WeierstrassCurve& curve,
                               const EPoint& p, const EPoint& q, unsigned depth) {
    if (a < 1 || b < 1) throw ValidationError("classifier needs integers a, b >= 1");
    require_on_curve(curve, p);
    require_on_curve(curve, q);

    ExeClassification result;
    result.p_torsion = is_torsion(curve, p);
    result.q_torsion = is_torsion(curve, q);

    // The product map multiplies heights by a^2 on the P slot and b^2 on the
    // Q slot; the growth rate is the largest factor with a nonzero height.
    result.alpha = 1;
    if (!result.p_torsion && a * a > result.alpha) result.alpha = a * a;
    if (!result.q_torsion && b * b > result.alpha) result.alpha = b * b;

    CanonicalHeight hp = canonical_height(curve, p, depth);
    CanonicalHeight hq = canonical_height(curve, q, depth);
    result.height_p = hp.value;
    result.height_q = hq.value;

    const unsigned kSteps = 12;
    double a2 = to_double(Rat(Int(a * a)));
    double b2 = to_double(Rat(Int(b * b)));
    auto seq = [&](unsigned n) {
        return std::pow(a2, n) * result.height_p + std::pow(b2, n) * result.height_q;
    };
    double s_last = seq(kSteps);
    double s_prev = seq(kSteps - 1);
    result.numeric_ratio = s_prev > 0.0 ? s_last / s_prev : 1.0;
    result.crosscheck_ok =
        std::abs(result.numeric_ratio - to_double(Rat(result.alpha))) <= 1e-2;
    return result;
}

} // namespace arithdyn
