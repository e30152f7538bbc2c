#include "arithdyn/poly.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

#include "arithdyn/errors.hpp"

namespace arithdyn {

Rat RatPoly::eval(const Rat& x) const {
    Rat acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

void RatPoly::trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

RatPoly char_poly(const RatMatrix& m) {
    if (!m.square()) throw ValidationError("char_poly needs a square matrix");
    // Faddeev-LeVerrier: exact over the rationals.
    std::size_t n = m.rows();
    RatVec c(n + 1, Rat(0));
    c[n] = 1;
    RatMatrix acc = RatMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        acc = m * acc;
        Rat trace = 0;
        for (std::size_t i = 0; i < n; ++i) trace += acc.at(i, i);
        Rat ck = -trace / Rat(static_cast<long>(k));
        c[n - k] = ck;
        for (std::size_t i = 0; i < n; ++i) acc.at(i, i) += ck;
    }
    RatPoly p{c};
    return p;
}

namespace {

// Prime factorization by trial division with a probable-prime fallback.
std::vector<std::pair<Int, unsigned>> factor(Int n) {
    std::vector<std::pair<Int, unsigned>> out;
    if (n < 0) n = -n;
    if (n <= 1) return out;
    for (Int p = 2; p * p <= n && p < 1000000; p = (p == 2 ? Int(3) : p + 2)) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
            out.emplace_back(n, 1);
        } else {
            // Perfect powers of a large prime are still tractable.
            Int root;
            for (unsigned e = 2; e <= 6; ++e) {
                if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e) != 0 &&
                    mpz_probab_prime_p(root.get_mpz_t(), 30) > 0) {
                    out.emplace_back(root, e);
                    return out;
                }
            }
            throw CapacityError("constant term too hard to factor for rational root test");
        }
    }
    return out;
}

std::vector<Int> divisors(const Int& n) {
    std::vector<Int> out{Int(1)};
    for (const auto& [p, e] : factor(n)) {
        std::size_t count = out.size();
        Int pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < count; ++i) out.push_back(out[i] * pk);
        }
    }
    return out;
}

// Synthetic division by (x - r); quotient returned, remainder must be zero.
RatPoly deflate(const RatPoly& p, const Rat& r) {
    RatVec q(p.coeffs.size() - 1, Rat(0));
    Rat carry = 0;
    for (std::size_t i = p.coeffs.size(); i-- > 1;) {
        carry = p.coeffs[i] + carry * r;
        q[i - 1] = carry;
    }
    return RatPoly{q};
}

} // namespace

std::pair<std::vector<std::pair<Rat, int>>, RatPoly> rational_roots(const RatPoly& poly) {
    std::vector<std::pair<Rat, int>> roots;
    RatPoly p = poly;
    p.trim();
    if (p.degree() <= 0) return {roots, p};

    // Peel off x^k.
    int zero_mult = 0;
    while (!p.coeffs.empty() && p.coeffs.front() == 0) {
        p.coeffs.erase(p.coeffs.begin());
        ++zero_mult;
    }
    if (zero_mult > 0) roots.emplace_back(Rat(0), zero_mult);
    if (p.degree() <= 0) return {roots, p};

    IntVec scaled = clear_denominators(p.coeffs);
    primitivize(scaled);
    std::vector<Int> num_divs = divisors(scaled.front());
    std::vector<Int> den_divs = divisors(scaled.back());

    std::vector<Rat> candidates;
    for (const Int& a : num_divs)
        for (const Int& b : den_divs) {
            Rat r(a, b);
            r.canonicalize();
            candidates.push_back(r);
            candidates.push_back(-r);
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (const Rat& r : candidates) {
        int mult = 0;
        while (p.degree() >= 1 && p.eval(r) == 0) {
            p = deflate(p, r);
            ++mult;
        }
        if (mult > 0) roots.emplace_back(r, mult);
        if (p.degree() < 1) break;
    }
    std::sort(roots.begin(), roots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return {roots, p};
}

std::vector<double> numeric_root_moduli(const RatPoly& poly, int max_iterations) {
    RatPoly p = poly;
    p.trim();
    int n = p.degree();
    if (n <= 0) return {};
    std::vector<double> moduli;
    if (n == 1) {
        moduli.push_back(std::abs(to_double(-p.coeffs[0] / p.coeffs[1])));
        return moduli;
    }
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i)
        companion(i, n - 1) = -to_double(p.coeffs[i] / p.coeffs[n]);
    Eigen::EigenSolver<Eigen::MatrixXd> solver;
    solver.setMaxIterations(max_iterations);
    solver.compute(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw CapacityError("companion-matrix iteration did not converge");
    for (int i = 0; i < n; ++i) moduli.push_back(std::abs(solver.eigenvalues()[i]));
    std::sort(moduli.begin(), moduli.end(), std::greater<double>());
    return moduli;
}

} // namespace arithdyn
