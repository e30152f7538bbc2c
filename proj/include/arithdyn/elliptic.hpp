#pragma once

#include "arithdyn/rat.hpp"

namespace arithdyn {

/// Short Weierstrass curve y^2 = x^3 + a x + b over Q, nonsingular.
struct WeierstrassCurve {
    Int a, b;
};

/// Throws ValidationError when 4a^3 + 27b^2 = 0.
void validate_curve(const WeierstrassCurve& curve);

struct EPoint {
    bool infinity = true;
    Rat x, y;

    static EPoint at_infinity() { return {}; }
    static EPoint affine(Rat x, Rat y) { return {false, std::move(x), std::move(y)}; }
    bool operator==(const EPoint& other) const {
        if (infinity || other.infinity) return infinity == other.infinity;
        return x == other.x && y == other.y;
    }
};

bool on_curve(const WeierstrassCurve& curve, const EPoint& p);

EPoint ec_neg(const WeierstrassCurve& curve, const EPoint& p);
EPoint ec_add(const WeierstrassCurve& curve, const EPoint& p, const EPoint& q);
EPoint ec_double(const WeierstrassCurve& curve, const EPoint& p);
EPoint ec_multiply(const WeierstrassCurve& curve, const EPoint& p, unsigned k);

/// True iff kP = infinity for some k <= 12 (the bound for Q-rational torsion).
bool is_torsion(const WeierstrassCurve& curve, const EPoint& p);

struct CanonicalHeight {
    double value = 0.0;
    double error_bound = 0.0;
    bool torsion = false;  // value is then exactly 0
    unsigned depth_used = 0;
};

/// Doubling-limit canonical height: lim 4^{-n} h(x(2^n P)) with
/// h(x) = ln max(|num|, |den|). Error bound is a geometric-tail estimate
/// (ratio 1/4) from the last successive difference. depth <= 10.
CanonicalHeight canonical_height(const WeierstrassCurve& curve, const EPoint& p, unsigned depth);

struct ExeClassification {
    Int alpha = 1;       // exact: a^2, b^2 or 1
    bool p_torsion = true;
    bool q_torsion = true;
    double height_p = 0.0;
    double height_q = 0.0;
    double numeric_ratio = 1.0;  // growth ratio of a^{2n} h(P) + b^{2n} h(Q)
    bool crosscheck_ok = true;   // |numeric_ratio - alpha| <= 1e-2
};

/// Classifier for the product self-map (P,Q) -> (aP, bQ): the height growth
/// rate is the largest of a^2 (P nontorsion), b^2 (Q nontorsion) and 1,
/// decided exactly by torsion tests and cross-checked numerically.
ExeClassification exe_classify(const Int& a, const Int& b, const WeierstrassCurve& curve,
                               const EPoint& p, const EPoint& q, unsigned depth);

} // namespace arithdyn
