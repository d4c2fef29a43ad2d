#pragma once

#include "mvtreelet/matrix.hpp"

#include <cstddef>

namespace mvt {

/// Unordered column pair (j, k), j != k, selected for a local rotation.
struct RotationPair {
    std::size_t j = 0;
    std::size_t k = 0;
};

/// One Givens rotation record. The rotation matrix is the identity except
///   J[j,j] = c, J[j,k] = -s, J[k,j] = s, J[k,k] = c.
struct JacobiRotation {
    std::size_t j = 0;
    std::size_t k = 0;
    double c = 1.0;
    double s = 0.0;
    std::size_t level = 0;
};

/// Variances at or below this floor are treated as degenerate: every
/// correlation involving such a column is defined as 0, so the column can
/// never win a merge selection.
inline constexpr double kVarianceFloor = 1e-12;

/// Sample covariance (divisor n-1) of the columns of an n x p data matrix.
/// The result is symmetrized exactly by averaging with its transpose.
Matrix compute_covariance(const Matrix& X);

/// Correlation matrix from a covariance matrix: rho[j,k] =
/// Sigma[j,k] / sqrt(Sigma[j,j] * Sigma[k,k]), clamped to [-1, 1].
/// Entries touching a floored variance are 0; the diagonal is 1 where the
/// variance exceeds the floor and 0 otherwise.
Matrix compute_correlation(const Matrix& sigma);

/// Sum of squared off-diagonal entries.
double off_diagonal_norm(const Matrix& a);

/// J^T Sigma J for the Givens rotation `rot`, as a rank-2 update touching
/// only rows and columns j and k. Mirrored writes keep the result exactly
/// symmetric for symmetric input.
Matrix apply_rotation_symmetric(const Matrix& sigma, const JacobiRotation& rot);

/// Orthogonal R minimizing ||R A - B||_F, from the SVD of B A^T (R = U V^T).
Matrix orthogonal_procrustes(const Matrix& a, const Matrix& b);

/// Pearson correlation over the flattened entries of two same-shape matrices.
/// Throws ErrorKind::Degenerate when either input is constant.
double pearson_correlation(const Matrix& a, const Matrix& b);

} // namespace mvt
