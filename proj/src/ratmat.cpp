#include "arithdyn/ratmat.hpp"

#include "arithdyn/errors.hpp"

namespace arithdyn {

namespace {

void check_dim(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) throw ValidationError("matrix dimensions must be positive");
    if (rows > kMaxMatrixDim || cols > kMaxMatrixDim)
        throw CapacityError("matrix dimension exceeds cap of 64");
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m.at(p, col) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(p, c), m.at(row, c));
        Rat inv = 1 / m.at(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col) == 0) continue;
            Rat factor = m.at(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                m.at(r, c) -= factor * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    check_dim(rows, cols);
    entries_.assign(rows * cols, Rat(0));
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::operator*(const RatMatrix& other) const {
    if (cols_ != other.rows_) throw ValidationError("matrix product shape mismatch");
    RatMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j)
                out.at(i, j) += a * other.at(k, j);
        }
    return out;
}

RatVec RatMatrix::operator*(const RatVec& v) const {
    if (cols_ != v.size()) throw ValidationError("matrix-vector shape mismatch");
    RatVec out(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
    return out;
}

RatMatrix RatMatrix::operator+(const RatMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw ValidationError("matrix sum shape mismatch");
    RatMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i)
        out.entries_[i] = entries_[i] + other.entries_[i];
    return out;
}

RatMatrix RatMatrix::operator-(const RatMatrix& other) const {
    return *this + other.scaled(Rat(-1));
}

RatMatrix RatMatrix::scaled(const Rat& s) const {
    RatMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] * s;
    return out;
}

RatMatrix RatMatrix::transposed() const {
    RatMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

RatMatrix RatMatrix::power(unsigned k) const {
    if (!square()) throw ValidationError("matrix power needs a square matrix");
    RatMatrix acc = identity(rows_);
    RatMatrix base = *this;
    while (k > 0) {
        if (k & 1u) acc = acc * base;
        k >>= 1u;
        if (k > 0) base = base * base;
    }
    return acc;
}

bool RatMatrix::is_integral() const {
    for (const Rat& e : entries_)
        if (e.get_den() != 1) return false;
    return true;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    check_dim(rows, cols);
    entries_.assign(rows * cols, Int(0));
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
    if (cols_ != other.rows_) throw ValidationError("matrix product shape mismatch");
    IntMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j)
                out.at(i, j) += a * other.at(k, j);
        }
    return out;
}

IntVec IntMatrix::operator*(const IntVec& v) const {
    if (cols_ != v.size()) throw ValidationError("matrix-vector shape mismatch");
    IntVec out(rows_, Int(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
    return out;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

IntMatrix IntMatrix::power(unsigned k) const {
    if (!square()) throw ValidationError("matrix power needs a square matrix");
    IntMatrix acc = identity(rows_);
    IntMatrix base = *this;
    while (k > 0) {
        if (k & 1u) acc = acc * base;
        k >>= 1u;
        if (k > 0) base = base * base;
    }
    return acc;
}

RatMatrix IntMatrix::to_rat() const {
    RatMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = Rat(at(i, j));
    return out;
}

IntMatrix IntMatrix::from_rat(const RatMatrix& m) {
    if (!m.is_integral()) throw ValidationError("matrix has non-integer entries");
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j).get_num();
    return out;
}

Rat det(const RatMatrix& m) {
    if (!m.square()) throw ValidationError("determinant needs a square matrix");
    RatMatrix work = m;
    Rat d = 1;
    std::size_t n = m.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && work.at(p, col) == 0) ++p;
        if (p == n) return Rat(0);
        if (p != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(work.at(p, c), work.at(col, c));
            d = -d;
        }
        d *= work.at(col, col);
        Rat inv = 1 / work.at(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (work.at(r, col) == 0) continue;
            Rat factor = work.at(r, col) * inv;
            for (std::size_t c = col; c < n; ++c)
                work.at(r, c) -= factor * work.at(col, c);
        }
    }
    return d;
}

Int det(const IntMatrix& m) {
    Rat d = det(m.to_rat());
    return d.get_num();
}

std::size_t rank(const RatMatrix& m) {
    RatMatrix work = m;
    return rref(work).size();
}

std::vector<RatVec> kernel_basis(const RatMatrix& m) {
    RatMatrix work = m;
    std::vector<std::size_t> pivots = rref(work);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : pivots) is_pivot[p] = true;

    std::vector<RatVec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        RatVec v(m.cols(), Rat(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -work.at(r, free);
        IntVec scaled = clear_denominators(v);
        sign_normalize(scaled);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = Rat(scaled[i]);
        basis.push_back(std::move(v));
    }
    return basis;
}

RatVec solve(const RatMatrix& m, const RatVec& b) {
    if (m.rows() != b.size()) throw ValidationError("solve shape mismatch");
    RatMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    std::vector<std::size_t> pivots = rref(aug);
    RatVec x(m.cols(), Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == m.cols()) throw ValidationError("inconsistent linear system");
        x[pivots[r]] = aug.at(r, m.cols());
    }
    // Reject underdetermined systems only if they are genuinely ambiguous.
    if (pivots.size() < m.cols()) {
        RatVec check(m.rows(), Rat(0));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) check[i] += m.at(i, j) * x[j];
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (check[i] != b[i]) throw ValidationError("inconsistent linear system");
    }
    return x;
}

RatMatrix inverse(const RatMatrix& m) {
    if (!m.square()) throw ValidationError("inverse needs a square matrix");
    std::size_t n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    std::vector<std::size_t> pivots = rref(aug);
    if (pivots.size() != n || pivots.back() != n - 1)
        throw ValidationError("matrix is singular");
    RatMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
    return out;
}

} // namespace arithdyn
