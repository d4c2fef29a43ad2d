#include "mvtreelet/mvtt.hpp"

#include "mvtreelet/error.hpp"

#include <cmath>
#include <string>

namespace mvt {

ViewSet::ViewSet(std::vector<Matrix> views) : views_(std::move(views)) {
    if (views_.empty()) {
        throw Error(ErrorKind::Parameter, "view set requires at least one view");
    }
    const std::size_t p = views_.front().rows();
    for (std::size_t i = 0; i < views_.size(); ++i) {
        const Matrix& v = views_[i];
        if (!v.is_square() || v.rows() != p) {
            throw Error(ErrorKind::Dimension, "view " + std::to_string(i) +
                                                  " is not square of dimension " +
                                                  std::to_string(p));
        }
        if (!v.is_symmetric(1e-8)) {
            throw Error(ErrorKind::Dimension,
                        "view " + std::to_string(i) + " is not symmetric");
        }
    }
}

const Matrix& ViewSet::view(std::size_t i) const {
    if (i >= views_.size()) {
        throw Error(ErrorKind::Index, "view index " + std::to_string(i) + " out of range for " +
                                          std::to_string(views_.size()) + " views");
    }
    return views_[i];
}

JointSelection find_max_correlation_triple(const std::vector<Matrix>& rhos,
                                           const std::vector<std::size_t>& active) {
    if (rhos.empty()) {
        throw Error(ErrorKind::Parameter, "triple selection requires at least one view");
    }
    if (active.size() < 2) {
        throw Error(ErrorKind::Parameter,
                    "triple selection requires at least two active indices, got " +
                        std::to_string(active.size()));
    }
    JointSelection best{0, RotationPair{active[0], active[1]}, -1.0};
    for (std::size_t i = 0; i < rhos.size(); ++i) {
        const Matrix& rho = rhos[i];
        for (std::size_t a = 0; a < active.size(); ++a) {
            for (std::size_t b = a + 1; b < active.size(); ++b) {
                const std::size_t j = active[a];
                const std::size_t k = active[b];
                const double score = std::fabs(rho(j, k));
                if (score > best.score) {
                    best = JointSelection{i, RotationPair{j, k}, score};
                }
            }
        }
    }
    if (best.score < 0.0) best.score = 0.0;
    return best;
}

JacobiRotation joint_rotation(const std::vector<Matrix>& sigmas, const RotationPair& pair) {
    if (sigmas.empty()) {
        throw Error(ErrorKind::Parameter, "joint rotation requires at least one view");
    }
    const std::size_t j = pair.j;
    const std::size_t k = pair.k;

    double g00 = 0.0, g01 = 0.0, g11 = 0.0;
    for (const Matrix& sigma : sigmas) {
        const double h0 = sigma.at(j, j) - sigma.at(k, k);
        const double h1 = sigma.at(j, k) + sigma.at(k, j);
        g00 += h0 * h0;
        g01 += h0 * h1;
        g11 += h1 * h1;
    }

    // Top eigenvector of the 2x2 symmetric G, unnormalized; the branch picks
    // the numerically larger representation.
    const double half_diff = 0.5 * (g00 - g11);
    const double disc = std::sqrt(half_diff * half_diff + g01 * g01);
    double x, y;
    if (half_diff >= 0.0) {
        x = half_diff + disc;
        y = g01;
    } else {
        x = g01;
        y = disc - half_diff;
    }

    // Sign convention: x >= 0, and y >= 0 when x == 0.
    if (x < 0.0 || (x == 0.0 && y < 0.0)) {
        x = -x;
        y = -y;
    }

    const double r = std::sqrt(x * x + y * y);
    if (r < 1e-14) {
        return JacobiRotation{j, k, 1.0, 0.0, 0};
    }
    const double c = std::sqrt((x + r) / (2.0 * r));
    const double s = y / std::sqrt(2.0 * r * (x + r));
    return JacobiRotation{j, k, c, s, 0};
}

TreeletBasis mvtt_transform(const ViewSet& views, std::size_t levels) {
    const std::size_t p = views.dim();
    const std::size_t m = views.view_count();
    if (levels < 1 || levels > p - 1) {
        throw Error(ErrorKind::Parameter, "level count " + std::to_string(levels) +
                                              " outside [1, " + std::to_string(p - 1) +
                                              "] for dimension " + std::to_string(p));
    }

    // Bit-identical views reduce exactly to the single-view transform; route
    // the per-level decisions through the single-view code so the reduction
    // holds to the last bit (ties in the selection scan resolve identically).
    bool uniform = true;
    for (std::size_t i = 1; i < m && uniform; ++i) {
        uniform = views.view(i) == views.view(0);
    }
    if (uniform) {
        return treelet_transform(views.view(0), levels);
    }

    std::vector<Matrix> sigmas = views.views();
    std::vector<std::size_t> active(p);
    for (std::size_t i = 0; i < p; ++i) active[i] = i;

    TreeletBasis result;
    result.basis = Matrix::identity(p);
    result.levels = levels;
    std::vector<std::size_t> dropped;
    dropped.reserve(levels);

    std::vector<Matrix> rhos(m, Matrix(p, p));
    for (std::size_t l = 1; l <= levels; ++l) {
        for (std::size_t i = 0; i < m; ++i) rhos[i] = compute_correlation(sigmas[i]);
        const JointSelection sel = find_max_correlation_triple(rhos, active);

        JacobiRotation rot = joint_rotation(sigmas, sel.pair);
        rot.level = l;
        for (Matrix& sigma : sigmas) sigma = apply_rotation_symmetric(sigma, rot);
        apply_basis_rotation(result.basis, rot);
        result.rotations.push_back(rot);

        double var_j = 0.0, var_k = 0.0;
        for (const Matrix& sigma : sigmas) {
            var_j += sigma(sel.pair.j, sel.pair.j);
            var_k += sigma(sel.pair.k, sel.pair.k);
        }
        dropped.push_back(drop_difference_index(active, sel.pair, var_j, var_k));
    }

    result.survivor_order = active;
    result.survivor_order.insert(result.survivor_order.end(), dropped.begin(), dropped.end());
    return result;
}

} // namespace mvt
