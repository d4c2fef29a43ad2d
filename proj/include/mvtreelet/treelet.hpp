#pragma once

#include "mvtreelet/linalg.hpp"
#include "mvtreelet/matrix.hpp"

#include <cstddef>
#include <vector>

namespace mvt {

/// Working state of a transform at one level: current covariance, its
/// correlation matrix, the active (still mergeable) indices in ascending
/// order, and the level counter.
struct TreeletState {
    Matrix sigma;
    Matrix rho;
    std::vector<std::size_t> active;
    std::size_t level = 0;
};

/// Accumulated orthogonal basis with its rotation log. `survivor_order`
/// lists the active set at termination (ascending) followed by the dropped
/// indices in the order they were dropped.
struct TreeletBasis {
    Matrix basis;
    std::vector<JacobiRotation> rotations;
    std::vector<std::size_t> survivor_order;
    std::size_t levels = 0;
};

/// Pair (j, k), j < k, both active, maximizing |rho[j,k]|. Ties break to the
/// smallest j, then the smallest k.
RotationPair find_max_correlation_pair(const Matrix& rho,
                                       const std::vector<std::size_t>& active);

/// Givens rotation zeroing sigma[j,k] under conjugation, with rotation angle
/// in (-pi/4, pi/4]. sigma[j,k] == 0 yields the identity rotation.
JacobiRotation single_view_rotation(const Matrix& sigma, const RotationPair& pair);

/// L levels of local PCA rotations on a covariance matrix: select the most
/// correlated active pair, rotate it apart, retire the lower-variance index.
TreeletBasis treelet_transform(const Matrix& sigma0, std::size_t levels);

/// Default tree height: floor(p / 2).
std::size_t default_levels(std::size_t p);

/// Right-multiplies the accumulated basis by the rotation (touches only
/// columns j and k). Shared by the single- and multi-view transforms.
void apply_basis_rotation(Matrix& basis, const JacobiRotation& rot);

/// Retires one index of the rotated pair from the active set: the one whose
/// post-rotation variance is smaller, ties dropping the larger index.
/// Returns the dropped index.
std::size_t drop_difference_index(std::vector<std::size_t>& active, const RotationPair& pair,
                                  double variance_j, double variance_k);

} // namespace mvt
