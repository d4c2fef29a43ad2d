#include "mvtreelet/treelet.hpp"

#include "mvtreelet/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mvt {

RotationPair find_max_correlation_pair(const Matrix& rho,
                                       const std::vector<std::size_t>& active) {
    if (active.size() < 2) {
        throw Error(ErrorKind::Parameter,
                    "pair selection requires at least two active indices, got " +
                        std::to_string(active.size()));
    }
    RotationPair best{active[0], active[1]};
    double best_score = -1.0;
    for (std::size_t a = 0; a < active.size(); ++a) {
        for (std::size_t b = a + 1; b < active.size(); ++b) {
            const std::size_t j = active[a];
            const std::size_t k = active[b];
            const double score = std::fabs(rho(j, k));
            if (score > best_score) {
                best_score = score;
                best = RotationPair{j, k};
            }
        }
    }
    return best;
}

JacobiRotation single_view_rotation(const Matrix& sigma, const RotationPair& pair) {
    const std::size_t j = pair.j;
    const std::size_t k = pair.k;
    const double b = sigma.at(j, k);
    if (b == 0.0) {
        return JacobiRotation{j, k, 1.0, 0.0, 0};
    }
    // tan(2theta) = 2 Sigma[j,k] / (Sigma[j,j] - Sigma[k,k]), folded into the
    // inner-rotation range (-pi/4, pi/4].
    double theta = 0.5 * std::atan2(2.0 * b, sigma(j, j) - sigma(k, k));
    constexpr double quarter_pi = std::numbers::pi / 4.0;
    if (theta > quarter_pi) {
        theta -= 2.0 * quarter_pi;
    } else if (theta <= -quarter_pi) {
        theta += 2.0 * quarter_pi;
    }
    return JacobiRotation{j, k, std::cos(theta), std::sin(theta), 0};
}

void apply_basis_rotation(Matrix& basis, const JacobiRotation& rot) {
    const std::size_t p = basis.rows();
    for (std::size_t i = 0; i < p; ++i) {
        const double bij = basis(i, rot.j);
        const double bik = basis(i, rot.k);
        basis(i, rot.j) = rot.c * bij + rot.s * bik;
        basis(i, rot.k) = -rot.s * bij + rot.c * bik;
    }
}

std::size_t drop_difference_index(std::vector<std::size_t>& active, const RotationPair& pair,
                                  double variance_j, double variance_k) {
    const std::size_t dropped =
        variance_j < variance_k ? pair.j : (variance_k < variance_j ? pair.k : std::max(pair.j, pair.k));
    active.erase(std::find(active.begin(), active.end(), dropped));
    return dropped;
}

TreeletBasis treelet_transform(const Matrix& sigma0, std::size_t levels) {
    require_square(sigma0, "treelet transform");
    if (!sigma0.is_symmetric(1e-8)) {
        throw Error(ErrorKind::Dimension, "treelet transform requires a symmetric matrix");
    }
    const std::size_t p = sigma0.rows();
    if (levels < 1 || levels > p - 1) {
        throw Error(ErrorKind::Parameter, "level count " + std::to_string(levels) +
                                              " outside [1, " + std::to_string(p - 1) +
                                              "] for dimension " + std::to_string(p));
    }

    TreeletState state;
    state.sigma = sigma0;
    state.rho = compute_correlation(sigma0);
    state.active.resize(p);
    for (std::size_t i = 0; i < p; ++i) state.active[i] = i;
    state.level = 1;

    TreeletBasis result;
    result.basis = Matrix::identity(p);
    result.levels = levels;
    std::vector<std::size_t> dropped;
    dropped.reserve(levels);

    for (std::size_t l = 1; l <= levels; ++l) {
        const RotationPair pair = find_max_correlation_pair(state.rho, state.active);
        JacobiRotation rot = single_view_rotation(state.sigma, pair);
        rot.level = l;

        state.sigma = apply_rotation_symmetric(state.sigma, rot);
        apply_basis_rotation(result.basis, rot);
        result.rotations.push_back(rot);

        dropped.push_back(drop_difference_index(state.active, pair, state.sigma(pair.j, pair.j),
                                                state.sigma(pair.k, pair.k)));
        state.rho = compute_correlation(state.sigma);
        state.level = l + 1;
    }

    result.survivor_order = state.active;
    result.survivor_order.insert(result.survivor_order.end(), dropped.begin(), dropped.end());
    return result;
}

std::size_t default_levels(std::size_t p) {
    if (p < 2) {
        throw Error(ErrorKind::Parameter, "default level count requires dimension >= 2");
    }
    return p / 2;
}

} // namespace mvt
