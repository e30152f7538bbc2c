#pragma once

#include <cstddef>
#include <vector>

#include "arithdyn/rat.hpp"

namespace arithdyn {

inline constexpr std::size_t kMaxMatrixDim = 64;

/// Dense matrix of exact rationals, row-major.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols);
    static RatMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Rat& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Rat& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    const RatVec& entries() const { return entries_; }

    RatMatrix operator*(const RatMatrix& other) const;
    RatVec operator*(const RatVec& v) const;
    RatMatrix operator+(const RatMatrix& other) const;
    RatMatrix operator-(const RatMatrix& other) const;
    RatMatrix scaled(const Rat& s) const;
    RatMatrix transposed() const;
    RatMatrix power(unsigned k) const;
    bool operator==(const RatMatrix& other) const = default;

    bool is_integral() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    RatVec entries_;
};

/// Dense matrix of exact integers, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Int& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    IntMatrix operator*(const IntMatrix& other) const;
    IntVec operator*(const IntVec& v) const;
    IntMatrix transposed() const;
    IntMatrix power(unsigned k) const;
    bool operator==(const IntMatrix& other) const = default;

    RatMatrix to_rat() const;
    /// Requires all entries integral.
    static IntMatrix from_rat(const RatMatrix& m);

private:
    std::size_t rows_ = 0, cols_ = 0;
    IntVec entries_;
};

Rat det(const RatMatrix& m);
Int det(const IntMatrix& m);
std::size_t rank(const RatMatrix& m);

/// Basis of the right kernel {v : m v = 0}. Vectors are integral and primitive.
std::vector<RatVec> kernel_basis(const RatMatrix& m);

/// Solves m x = b. Throws ValidationError if singular/inconsistent.
RatVec solve(const RatMatrix& m, const RatVec& b);

/// Inverse of a square nonsingular matrix.
RatMatrix inverse(const RatMatrix& m);

} // namespace arithdyn
