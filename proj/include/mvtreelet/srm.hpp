#pragma once

#include "mvtreelet/matrix.hpp"
#include "mvtreelet/mvtt.hpp"

#include <cstdint>
#include <cstddef>
#include <vector>

namespace mvt {

/// Fitted shared response model: per-view orthonormal bases W_i (p x K), one
/// shared coefficient matrix S (K x p), and the squared-objective trace.
struct SrmModel {
    std::vector<Matrix> bases;
    Matrix shared;
    std::size_t rank = 0;
    std::vector<double> objective_trace;     // sum_i ||X_i - W_i S||_F^2 per iteration
    double final_objective_unsquared = 0.0;  // sum_i ||X_i - W_i S||_F at convergence
    std::size_t iterations = 0;
};

/// Alternating minimization of sum_i ||X_i - W_i S||_F^2 subject to
/// W_i^T W_i = I: S <- (1/M) sum_i W_i^T X_i, then each W_i from the
/// orthogonal Procrustes solution of X_i S^T. W_i start at the top-K left
/// singular vectors of X_i. The seed only disambiguates degenerate SVDs and
/// is unused by the deterministic solver.
SrmModel srm_fit(const ViewSet& views, std::size_t rank, std::size_t max_iters = 500,
                 double tol = 1e-8, std::uint64_t seed = 0);

/// W_i * S for one view.
Matrix srm_reconstruct(const SrmModel& model, std::size_t view_index);

/// Orthonormal W (p x K) maximizing tr(W^T X S^T): the mapping of a held-out
/// view into an already-fitted shared space.
Matrix srm_transfer_basis(const Matrix& x, const Matrix& shared);

} // namespace mvt
