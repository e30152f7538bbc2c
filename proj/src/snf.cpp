#include "arithdyn/snf.hpp"

#include "arithdyn/errors.hpp"

namespace arithdyn {

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(a, c), m.at(b, c));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m.at(r, a), m.at(r, b));
}

// row a -= q * row b
void add_row(IntMatrix& m, std::size_t a, std::size_t b, const Int& q) {
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(a, c) -= q * m.at(b, c);
}

void add_col(IntMatrix& m, std::size_t a, std::size_t b, const Int& q) {
    for (std::size_t r = 0; r < m.rows(); ++r) m.at(r, a) -= q * m.at(r, b);
}

void negate_row(IntMatrix& m, std::size_t a) {
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(a, c) = -m.at(a, c);
}

} // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
    SnfResult res;
    res.d = m;
    res.u = IntMatrix::identity(m.rows());
    res.v = IntMatrix::identity(m.cols());
    IntMatrix& d = res.d;
    IntMatrix& u = res.u;
    IntMatrix& v = res.v;

    std::size_t limit = std::min(m.rows(), m.cols());
    for (std::size_t k = 0; k < limit; ++k) {
        // Pick the smallest nonzero pivot in the trailing block.
        std::size_t pr = k, pc = k;
        bool found = false;
        for (std::size_t r = k; r < m.rows(); ++r)
            for (std::size_t c = k; c < m.cols(); ++c) {
                if (d.at(r, c) == 0) continue;
                if (!found || abs(d.at(r, c)) < abs(d.at(pr, pc))) {
                    pr = r;
                    pc = c;
                    found = true;
                }
            }
        if (!found) break;
        if (pr != k) { swap_rows(d, pr, k); swap_rows(u, pr, k); }
        if (pc != k) { swap_cols(d, pc, k); swap_cols(v, pc, k); }

        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t r = k + 1; r < m.rows(); ++r) {
                if (d.at(r, k) == 0) continue;
                Int q = d.at(r, k) / d.at(k, k);
                add_row(d, r, k, q);
                add_row(u, r, k, q);
                if (d.at(r, k) != 0) {
                    // Remainder became the smaller pivot; swap it up.
                    swap_rows(d, r, k);
                    swap_rows(u, r, k);
                    dirty = true;
                }
            }
            for (std::size_t c = k + 1; c < m.cols(); ++c) {
                if (d.at(k, c) == 0) continue;
                Int q = d.at(k, c) / d.at(k, k);
                add_col(d, c, k, q);
                add_col(v, c, k, q);
                if (d.at(k, c) != 0) {
                    swap_cols(d, c, k);
                    swap_cols(v, c, k);
                    dirty = true;
                }
            }
        }
        if (d.at(k, k) < 0) { negate_row(d, k); negate_row(u, k); }
        res.rank = k + 1;

        // Divisibility fix-up: fold any non-multiple into the pivot and redo.
        for (std::size_t r = k + 1; r < m.rows(); ++r)
            for (std::size_t c = k + 1; c < m.cols(); ++c) {
                if (d.at(r, c) % d.at(k, k) != 0) {
                    add_row(d, k, r, Int(-1));
                    add_row(u, k, r, Int(-1));
                    --k;
                    goto next_k;
                }
            }
    next_k:;
    }

    // Exactness check: the factorization must reproduce the input.
    IntMatrix check = u * m * v;
    if (!(check == d)) throw ValidationError("smith normal form verification failed");
    Int du = det(u), dv = det(v);
    if ((du != 1 && du != -1) || (dv != 1 && dv != -1))
        throw ValidationError("smith normal form transforms are not unimodular");
    return res;
}

} // namespace arithdyn
