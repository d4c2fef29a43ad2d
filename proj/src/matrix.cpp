#include "mvtreelet/matrix.hpp"

#include "mvtreelet/error.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace mvt {

namespace {

void check_shape(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw Error(ErrorKind::Dimension, "matrix must have at least one row and one column");
    }
}

} // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {
    check_shape(rows, cols);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    check_shape(rows, cols);
    if (entries_.size() != rows_ * cols_) {
        throw Error(ErrorKind::Dimension,
                    "entry count " + std::to_string(entries_.size()) + " does not match " +
                        std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    if (!all_finite()) {
        throw Error(ErrorKind::NonFinite, "matrix contains a non-finite entry");
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::constant(std::size_t rows, std::size_t cols, double value) {
    Matrix m(rows, cols);
    for (double& e : m.entries_) e = value;
    if (!m.all_finite()) {
        throw Error(ErrorKind::NonFinite, "constant matrix fill value is not finite");
    }
    return m;
}

double Matrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) {
        throw Error(ErrorKind::Index, "matrix index (" + std::to_string(i) + "," +
                                          std::to_string(j) + ") out of range for " +
                                          std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    return (*this)(i, j);
}

bool Matrix::is_symmetric(double tol) const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = i + 1; j < cols_; ++j) {
            if (std::fabs((*this)(i, j) - (*this)(j, i)) > tol) return false;
        }
    }
    return true;
}

bool Matrix::all_finite() const {
    for (double e : entries_) {
        if (!std::isfinite(e)) return false;
    }
    return true;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) {
        throw Error(ErrorKind::Dimension, "matrix product shape mismatch: " +
                                              std::to_string(rows_) + "x" + std::to_string(cols_) +
                                              " * " + std::to_string(rhs.rows_) + "x" +
                                              std::to_string(rhs.cols_));
    }
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const double a = (*this)(i, k);
            if (a == 0.0) continue;
            const double* rrow = &rhs.entries_[k * rhs.cols_];
            double* orow = &out.entries_[i * rhs.cols_];
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                orow[j] += a * rrow[j];
            }
        }
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    require_same_shape(*this, rhs, "matrix sum");
    Matrix out = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] += rhs.entries_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    require_same_shape(*this, rhs, "matrix difference");
    Matrix out = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] -= rhs.entries_[i];
    return out;
}

Matrix Matrix::scaled(double factor) const {
    Matrix out = *this;
    for (double& e : out.entries_) e *= factor;
    return out;
}

double Matrix::frobenius_norm() const {
    return std::sqrt(squared_frobenius_norm());
}

double Matrix::squared_frobenius_norm() const {
    double sum = 0.0;
    for (double e : entries_) sum += e * e;
    return sum;
}

double Matrix::trace() const {
    require_square(*this, "trace");
    double t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double Matrix::min_entry() const {
    double m = entries_[0];
    for (double e : entries_) m = e < m ? e : m;
    return m;
}

double Matrix::max_entry() const {
    double m = entries_[0];
    for (double e : entries_) m = e > m ? e : m;
    return m;
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::Dimension,
                    std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                        std::to_string(b.cols()));
    }
}

void require_square(const Matrix& a, const char* op) {
    if (!a.is_square()) {
        throw Error(ErrorKind::Dimension, std::string(op) + ": matrix must be square, got " +
                                              std::to_string(a.rows()) + "x" +
                                              std::to_string(a.cols()));
    }
}

} // namespace mvt
