#pragma once

#include <cstddef>
#include <vector>

namespace mvt {

/// Dense real matrix, row-major. All entries are finite; constructors that
/// accept caller data reject NaN/Inf, and shapes are always >= 1x1.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);  // zero-initialized
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static Matrix identity(std::size_t n);
    static Matrix constant(std::size_t rows, std::size_t cols, double value);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    /// Bounds-checked access; throws ErrorKind::Index.
    double at(std::size_t i, std::size_t j) const;

    const std::vector<double>& data() const { return entries_; }
    std::vector<double>& data() { return entries_; }

    bool is_square() const { return rows_ == cols_ && rows_ > 0; }
    bool is_symmetric(double tol = 1e-12) const;
    bool all_finite() const;

    Matrix transposed() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix scaled(double factor) const;

    double frobenius_norm() const;
    double squared_frobenius_norm() const;
    double trace() const;
    double min_entry() const;
    double max_entry() const;

    bool operator==(const Matrix& rhs) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> entries_;
};

/// Throws ErrorKind::Dimension unless both matrices have the given shape
/// relation satisfied by the caller's check; small helpers used across modules.
void require_same_shape(const Matrix& a, const Matrix& b, const char* op);
void require_square(const Matrix& a, const char* op);

} // namespace mvt
