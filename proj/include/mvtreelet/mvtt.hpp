#pragma once

#include "mvtreelet/treelet.hpp"

#include <cstddef>
#include <vector>

namespace mvt {

/// Ordered collection of M same-dimension symmetric matrices, the per-view
/// covariances (or covariance surrogates) of one phenomenon.
class ViewSet {
public:
    explicit ViewSet(std::vector<Matrix> views);

    std::size_t view_count() const { return views_.size(); }
    std::size_t dim() const { return views_.front().rows(); }
    const Matrix& view(std::size_t i) const;
    const std::vector<Matrix>& views() const { return views_; }

private:
    std::vector<Matrix> views_;
};

/// Winner of the cross-view pair selection: view index, column pair, |rho|.
struct JointSelection {
    std::size_t view = 0;
    RotationPair pair;
    double score = 0.0;
};

/// (i, j, k) maximizing |rho_i[j,k]| over views i and active pairs j < k.
/// Ties break to the smallest i, then j, then k.
JointSelection find_max_correlation_triple(const std::vector<Matrix>& rhos,
                                           const std::vector<std::size_t>& active);

/// Single Givens rotation minimizing sum_i off(J^T Sigma_i J) at the pair,
/// via the top eigenvector of G = sum_i h_i h_i^T with
/// h_i = [Sigma_i[j,j] - Sigma_i[k,k], Sigma_i[j,k] + Sigma_i[k,j]].
/// Returns the identity rotation when G carries no direction (r < 1e-14).
JacobiRotation joint_rotation(const std::vector<Matrix>& sigmas, const RotationPair& pair);

/// Multi-view treelet transform: L levels, each level selecting the most
/// correlated pair across all views and applying one shared joint rotation
/// to every view. Returns the consensus basis.
TreeletBasis mvtt_transform(const ViewSet& views, std::size_t levels);

} // namespace mvt
