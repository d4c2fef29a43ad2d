#include "mvtreelet/synthgraph.hpp"

#include "mvtreelet/error.hpp"
#include "mvtreelet/rng.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace mvt {

Matrix KroneckerSpec::default_initiator() {
    return Matrix(3, 3,
                  {0.9, 0.5, 0.1,
                   0.5, 0.9, 0.5,
                   0.1, 0.5, 0.9});
}

void KroneckerSpec::validate() const {
    if (initiator.rows() != 3 || initiator.cols() != 3) {
        throw Error(ErrorKind::Dimension, "initiator must be 3x3, got " +
                                              std::to_string(initiator.rows()) + "x" +
                                              std::to_string(initiator.cols()));
    }
    if (!initiator.is_symmetric(1e-12)) {
        throw Error(ErrorKind::Dimension, "initiator must be symmetric");
    }
    for (double e : initiator.data()) {
        if (e < 0.0 || e > 1.0) {
            throw Error(ErrorKind::Parameter, "initiator entries must lie in [0, 1]");
        }
    }
    if (power < 1) {
        throw Error(ErrorKind::Parameter, "kronecker power must be >= 1");
    }
    if (noise_level < 0.0 || !std::isfinite(noise_level)) {
        throw Error(ErrorKind::Parameter, "noise level must be finite and >= 0");
    }
}


Matrix kronecker_power(const Matrix& a, std::size_t k) {
    require_square(a, "kronecker power");
    if (k < 1) {
        throw Error(ErrorKind::Parameter, "kronecker power must be >= 1");
    }
    const std::size_t n = a.rows();
    std::size_t dim = n;
    for (std::size_t i = 0; i < k; ++i) {
        if (dim > 10000 / n) {
            throw Error(ErrorKind::Parameter,
                        "kronecker power result would exceed 10^4 rows");
        }
        dim *= n;
    }

    Matrix result = a;
    for (std::size_t step = 0; step < k; ++step) {
        const std::size_t m = result.rows();
        Matrix next(m * n, m * n);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                const double v = result(i, j);
                for (std::size_t bi = 0; bi < n; ++bi) {
                    for (std::size_t bj = 0; bj < n; ++bj) {
                        next(i * n + bi, j * n + bj) = v * a(bi, bj);
                    }
                }
            }
        }
        result = std::move(next);
    }
    return result;
}

NoisyGraph add_noise(const Matrix& truth, double epsilon, std::uint64_t seed) {
    require_square(truth, "noise injection");
    if (!truth.is_symmetric(1e-12)) {
        throw Error(ErrorKind::Dimension, "noise injection requires a symmetric matrix");
    }
    if (epsilon < 0.0 || !std::isfinite(epsilon)) {
        throw Error(ErrorKind::Parameter, "noise level must be finite and >= 0");
    }
    const std::size_t p = truth.rows();
    Matrix noisy = truth;
    Rng rng(seed);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = j; k < p; ++k) {
            const double w = truth(j, k) + epsilon * rng.normal();
            noisy(j, k) = w;
            noisy(k, j) = w;
        }
    }
    return NoisyGraph{truth, std::move(noisy), epsilon};
}

Matrix kronecker_truth(const KroneckerSpec& spec) {
    spec.validate();
    return kronecker_power(spec.initiator, spec.power);
}

ViewSet generate_views(const KroneckerSpec& spec, std::size_t m) {
    if (m < 1) {
        throw Error(ErrorKind::Parameter, "view count must be >= 1");
    }
    const Matrix truth = kronecker_truth(spec);
    std::vector<Matrix> views;
    views.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        views.push_back(add_noise(truth, spec.noise_level, derive_seed(spec.seed, i)).noisy);
    }
    return ViewSet(std::move(views));
}

Matrix box_filter_coarsen(const Matrix& a) {
    require_square(a, "box filter");
    const std::size_t p = a.rows();
    if (p % 3 != 0) {
        throw Error(ErrorKind::Dimension, "box filter requires a dimension divisible by 3, got " +
                                              std::to_string(p));
    }
    const std::size_t m = p / 3;
    Matrix out(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            double sum = 0.0;
            for (std::size_t bi = 0; bi < 3; ++bi)
                for (std::size_t bj = 0; bj < 3; ++bj)
                    sum += a(3 * i + bi, 3 * j + bj);
            out(i, j) = sum / 9.0;
        }
    }
    return out;
}

double connection_density(const Matrix& a, double edge_threshold) {
    require_square(a, "connection density");
    const std::size_t p = a.rows();
    if (p < 2) return 0.0;
    std::size_t edges = 0;
    for (std::size_t j = 0; j < p; ++j)
        for (std::size_t k = j + 1; k < p; ++k)
            if (std::fabs(a(j, k)) > edge_threshold) ++edges;
    return static_cast<double>(edges) / (static_cast<double>(p) * (p - 1) / 2.0);
}

std::size_t connected_components(const Matrix& a, double edge_threshold) {
    require_square(a, "connected components");
    const std::size_t p = a.rows();
    std::vector<std::size_t> parent(p);
    for (std::size_t i = 0; i < p; ++i) parent[i] = i;

    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };

    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = j + 1; k < p; ++k) {
            if (std::fabs(a(j, k)) > edge_threshold) {
                const std::size_t rj = find(j);
                const std::size_t rk = find(k);
                if (rj != rk) parent[rj] = rk;
            }
        }
    }
    std::size_t components = 0;
    for (std::size_t i = 0; i < p; ++i)
        if (find(i) == i) ++components;
    return components;
}

} // namespace mvt
