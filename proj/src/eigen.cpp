#include "arithdyn/eigen.hpp"

#include <algorithm>
#include <cmath>

#include "arithdyn/errors.hpp"

namespace arithdyn {

EigenReport rational_eigen(const RatMatrix& m, int max_iterations) {
    if (!m.square()) throw ValidationError("rational_eigen needs a square matrix");
    RatPoly cp = char_poly(m);
    auto [roots, cofactor] = rational_roots(cp);

    EigenReport report;
    std::size_t n = m.rows();
    for (const auto& [value, mult] : roots) {
        RationalEigenvalue ev;
        ev.value = value;
        ev.multiplicity = mult;
        RatMatrix shifted = m;
        for (std::size_t i = 0; i < n; ++i) shifted.at(i, i) -= value;
        ev.eigenspace = kernel_basis(shifted);
        report.rational.push_back(std::move(ev));
    }
    report.irrational_degree = std::max(cofactor.degree(), 0);
    report.has_irrational_part = report.irrational_degree > 0;

    // Exact moduli for the rational roots, numeric for the cofactor.
    for (const auto& ev : report.rational) {
        double mod = std::abs(to_double(ev.value));
        for (int k = 0; k < ev.multiplicity; ++k) report.numeric_moduli.push_back(mod);
    }
    if (report.has_irrational_part) {
        auto extra = numeric_root_moduli(cofactor, max_iterations);
        report.numeric_moduli.insert(report.numeric_moduli.end(), extra.begin(), extra.end());
    }
    std::sort(report.numeric_moduli.begin(), report.numeric_moduli.end(),
              std::greater<double>());
    return report;
}

double spectral_radius(const RatMatrix& m) {
    EigenReport report = rational_eigen(m);
    if (!report.has_irrational_part) {
        Rat best = 0;
        for (const auto& ev : report.rational) {
            Rat mod = ev.value >= 0 ? ev.value : -ev.value;
            if (mod > best) best = mod;
        }
        return to_double(best);
    }
    return report.numeric_moduli.empty() ? 0.0 : report.numeric_moduli.front();
}

bool is_diagonalizable_rational(const RatMatrix& m) {
    EigenReport report = rational_eigen(m);
    if (report.has_irrational_part) return false;
    std::size_t geo = 0;
    for (const auto& ev : report.rational) geo += ev.eigenspace.size();
    return geo == m.rows();
}

} // namespace arithdyn
