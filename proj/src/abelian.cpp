#include "arithdyn/abelian.hpp"

#include <algorithm>

#include "arithdyn/errors.hpp"

namespace arithdyn {

RatMatrix sym_class(const Rat& c11, const Rat& c22, const Rat& c_mixed) {
    RatMatrix m(2, 2);
    m.at(0, 0) = c11;
    m.at(1, 1) = c22;
    m.at(0, 1) = c_mixed;
    m.at(1, 0) = c_mixed;
    return m;
}

namespace {

void require_sym2(const RatMatrix& alpha) {
    if (alpha.rows() != 2 || alpha.cols() != 2)
        throw ValidationError("symmetric class must be 2x2");
    if (alpha.at(0, 1) != alpha.at(1, 0))
        throw ValidationError("class matrix is not symmetric");
}

RatVec sym_coords(const RatMatrix& alpha) {
    return {alpha.at(0, 0), alpha.at(1, 1), alpha.at(0, 1)};
}

RatMatrix sym_from_coords(const RatVec& c) {
    return sym_class(c[0], c[1], c[2]);
}

} // namespace

bool is_nef_class(const RatMatrix& alpha) {
    require_sym2(alpha);
    Rat tr = alpha.at(0, 0) + alpha.at(1, 1);
    Rat det = alpha.at(0, 0) * alpha.at(1, 1) - alpha.at(0, 1) * alpha.at(1, 0);
    return sgn(tr) >= 0 && sgn(det) >= 0;
}

bool is_ample_class(const RatMatrix& alpha) {
    require_sym2(alpha);
    Rat tr = alpha.at(0, 0) + alpha.at(1, 1);
    Rat det = alpha.at(0, 0) * alpha.at(1, 1) - alpha.at(0, 1) * alpha.at(1, 0);
    return sgn(tr) > 0 && sgn(det) > 0;
}

ThetaAction theta_matrix(const RatMatrix& f) {
    if (f.rows() != 2 || f.cols() != 2)
        throw ValidationError("isogeny matrix must be 2x2");
    if (det(f) == 0)
        throw ValidationError("isogeny matrix must be nonsingular");

    const RatMatrix ft = f.transposed();
    ThetaAction action;
    action.matrix = RatMatrix(3, 3);
    const std::vector<RatMatrix> basis = {
        sym_class(1, 0, 0), sym_class(0, 1, 0), sym_class(0, 0, 1)};
    for (std::size_t j = 0; j < 3; ++j) {
        RatMatrix image = ft * basis[j] * f;
        RatVec col = sym_coords(image);
        for (std::size_t i = 0; i < 3; ++i) action.matrix.at(i, j) = col[i];
    }

    action.eigen = rational_eigen(action.matrix);
    for (const auto& ev : action.eigen.rational) {
        for (const auto& vecraw : ev.eigenspace) {
            RatVec vec(vecraw.begin(), vecraw.end());
            RatMatrix cls = sym_from_coords(vec);
            EigenClassFlag flag;
            flag.eigenvalue = ev.value;
            flag.eigenvector = vec;
            // A class and its negative span the same eigenline; flag the
            // orientation that has a chance of being nef.
            RatMatrix neg = cls.scaled(Rat(-1));
            if (!is_nef_class(cls) && is_nef_class(neg)) {
                cls = neg;
                for (auto& c : flag.eigenvector) c = -c;
            }
            flag.nef = is_nef_class(cls);
            flag.ample = is_ample_class(cls);
            action.flags.push_back(flag);
        }
    }
    return action;
}

namespace {

std::vector<DegreeLabel> label_degrees(const ThetaAction& theta, bool simple_hypothesis) {
    if (theta.eigen.has_irrational_part)
        throw CapacityError("theta action has irrational eigenvalues; labeling needs exact spectrum");

    std::vector<Rat> values;
    for (const auto& ev : theta.eigen.rational)
        if (ev.value > 1) values.push_back(ev.value);
    std::sort(values.begin(), values.end(), std::greater<Rat>());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    std::vector<DegreeLabel> labels;
    for (std::size_t i = 0; i < values.size(); ++i) {
        DegreeLabel label;
        label.value = values[i];
        if (!simple_hypothesis) {
            label.realizable = true;
            label.justification = "nef-eigendivisor criterion not restricted; no simplicity hypothesis";
        } else if (i == 0) {
            label.realizable = true;
            label.justification = "simple-abelian-dichotomy: nonzero canonical height attains the top eigenvalue";
        } else {
            label.realizable = false;
            label.justification =
                "simple-abelian-dichotomy: degrees strictly between 1 and the top eigenvalue never occur";
        }
        labels.push_back(label);
    }
    return labels;
}

} // namespace

CounterexampleReport counterexample_report(const Int& a, const Int& b) {
    if (!(a > b && b >= 1))
        throw ValidationError("counterexample model needs integers a > b >= 1");

    CounterexampleReport report;
    report.a = a;
    report.b = b;

    RatMatrix f(2, 2);
    f.at(0, 0) = Rat(a);
    f.at(1, 1) = Rat(b);
    report.theta = theta_matrix(f);
    report.labels = label_degrees(report.theta, /*simple_hypothesis=*/true);

    report.realizable = {Rat(Int(a * a)), Rat(1)};
    report.non_realizable = {Rat(Int(a * b))};
    if (b > 1) report.non_realizable.push_back(Rat(Int(b * b)));
    std::sort(report.non_realizable.begin(), report.non_realizable.end(), std::greater<Rat>());
    return report;
}

IsogenyReport general_isogeny_report(const RatMatrix& f, bool simple_hypothesis) {
    IsogenyReport report;
    report.theta = theta_matrix(f);
    report.simple_hypothesis = simple_hypothesis;
    if (report.theta.eigen.has_irrational_part) {
        report.lambda1 = report.theta.eigen.numeric_moduli.empty()
                             ? 1.0
                             : report.theta.eigen.numeric_moduli.front();
        for (const auto& ev : report.theta.eigen.rational)
            report.lambda1 = std::max(report.lambda1, std::abs(to_double(ev.value)));
    } else {
        report.lambda1 = to_double(spectral_radius(report.theta.matrix));
        report.labels = label_degrees(report.theta, simple_hypothesis);
    }
    return report;
}

} // namespace arithdyn
