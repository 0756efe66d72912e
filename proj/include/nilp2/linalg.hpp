#pragma once

#include "nilp2/gfield.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace nilp2 {

/// Dense vector over GF(2^e).  Entries are raw bit patterns; the field is
/// carried once.  Immutable in spirit: mutation only through set() during
/// construction phases.
class Vec {
public:
    Vec(const FieldSpec& f, std::size_t n) : f_(&f), v_(n, 0) {}
    static Vec unit(const FieldSpec& f, std::size_t n, std::size_t i);
    /// Vector number `idx` in the fixed enumeration order: coordinate 0 is the
    /// most significant base-q digit of idx.
    static Vec from_index(const FieldSpec& f, std::size_t n, std::uint64_t idx);

    std::size_t size() const { return v_.size(); }
    const FieldSpec& field() const { return *f_; }
    std::uint32_t operator[](std::size_t i) const { return v_[i]; }
    void set(std::size_t i, std::uint32_t bits) { v_[i] = bits; }
    FieldElem at(std::size_t i) const { return FieldElem(v_[i], *f_); }

    bool is_zero() const;
    Vec operator+(const Vec& o) const;
    Vec scaled(std::uint32_t c) const;
    void add_scaled(const Vec& o, std::uint32_t c); // *this += c*o
    bool operator==(const Vec& o) const { return *f_ == *o.f_ && v_ == o.v_; }
    bool operator!=(const Vec& o) const { return !(*this == o); }

private:
    const FieldSpec* f_;
    std::vector<std::uint32_t> v_;
};

/// Dense row-major matrix over GF(2^e) with exact elimination.
class Mat {
public:
    Mat(const FieldSpec& f, std::size_t rows, std::size_t cols)
        : f_(&f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}
    static Mat identity(const FieldSpec& f, std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldSpec& field() const { return *f_; }

    std::uint32_t operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, std::uint32_t bits) { a_[i * cols_ + j] = bits; }
    void add_at(std::size_t i, std::size_t j, std::uint32_t bits) { a_[i * cols_ + j] ^= bits; }

    Mat operator+(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Vec operator*(const Vec& v) const;
    Mat transpose() const;
    Mat pow(std::uint64_t k) const;
    std::uint32_t trace_bits() const;
    bool is_zero() const;
    Vec row_vec(std::size_t i) const;
    Vec col_vec(std::size_t j) const;
    bool operator==(const Mat& o) const {
        return *f_ == *o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    std::size_t rank() const;
    Mat inverse() const; // throws input_error if singular
    /// Deterministic kernel basis: reduced row echelon form, one basis vector
    /// per free column in ascending column order.
    std::vector<Vec> kernel_basis() const;

    const std::vector<std::uint32_t>& raw() const { return a_; }

private:
    const FieldSpec* f_;
    std::size_t rows_, cols_;
    std::vector<std::uint32_t> a_;
};

struct Rref {
    Mat m;
    std::vector<std::size_t> pivots; // pivot column per row, in row order
};
Rref rref(const Mat& a);

std::optional<Vec> solve(const Mat& a, const Vec& b);

/// x^N = 0, tested with ceil(log2 N) squarings.
bool is_nilpotent(const Mat& x);

/// Coordinates of matrices inside the span of a fixed basis of matrices.
/// The RREF of the flattened basis is computed once.
class SpanSolver {
public:
    explicit SpanSolver(const std::vector<Mat>& basis);
    std::size_t dim() const { return basis_.size(); }
    /// Coordinates of x in basis order, or nullopt if x lies outside the span.
    std::optional<std::vector<std::uint32_t>> coords(const Mat& x) const;
    /// Linear combination sum coeffs[i] * basis[i].
    Mat combine(const std::vector<std::uint32_t>& coeffs) const;

private:
    std::vector<Mat> basis_;
    Mat echelon_;                     // RREF of stacked flattened basis rows
    std::vector<std::size_t> pivots_; // pivot flat-index per echelon row
    Mat mix_;                         // mix_(r, j): echelon row r as combo of basis rows
};

} // namespace nilp2
