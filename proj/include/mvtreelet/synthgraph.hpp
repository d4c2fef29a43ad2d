#pragma once

#include "mvtreelet/matrix.hpp"
#include "mvtreelet/mvtt.hpp"

#include <cstdint>
#include <cstddef>

namespace mvt {

/// Recipe for a noisy Kronecker graph: a symmetric 3x3 initiator with
/// entries in [0,1], the Kronecker power, an additive noise level, and the
/// seed every realization derives from.
struct KroneckerSpec {
    Matrix initiator = default_initiator();
    std::size_t power = 3;
    double noise_level = 0.0;
    std::uint64_t seed = 0;

    static Matrix default_initiator();
    void validate() const;
};

/// A truth graph together with one noisy realization of it.
struct NoisyGraph {
    Matrix truth;
    Matrix noisy;
    double epsilon = 0.0;
};

/// k-fold iterated Kronecker product (k products, i.e. k+1 factors of A);
/// an n x n input yields n^(k+1) x n^(k+1). Guarded above 10^4 rows.
Matrix kronecker_power(const Matrix& a, std::size_t k);

/// Adds epsilon * N(0,1) noise drawn i.i.d. on the upper triangle (diagonal
/// included) and mirrored, keeping the result exactly symmetric.
NoisyGraph add_noise(const Matrix& truth, double epsilon, std::uint64_t seed);

/// M independently noised copies of the spec's truth graph; view i uses the
/// child seed derive_seed(spec.seed, i).
ViewSet generate_views(const KroneckerSpec& spec, std::size_t m);

/// Truth graph of the spec (no noise).
Matrix kronecker_truth(const KroneckerSpec& spec);

/// Collapses each contiguous non-overlapping 3x3 block to its mean,
/// mapping 3m x 3m to m x m.
Matrix box_filter_coarsen(const Matrix& a);

/// Fraction of strict-upper-triangle entries with |value| > edge_threshold.
double connection_density(const Matrix& a, double edge_threshold);

/// Connected components of the graph whose edges are entries with
/// |value| > edge_threshold.
std::size_t connected_components(const Matrix& a, double edge_threshold);

} // namespace mvt
