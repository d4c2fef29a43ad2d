#pragma once

#include "mvtreelet/linalg.hpp"
#include "mvtreelet/matrix.hpp"
#include "mvtreelet/rng.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace testutil {

inline mvt::Matrix random_matrix(mvt::Rng& rng, std::size_t rows, std::size_t cols,
                                 double lo = -1.0, double hi = 1.0) {
    mvt::Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
    return m;
}

inline mvt::Matrix random_symmetric(mvt::Rng& rng, std::size_t p, double lo = -1.0,
                                    double hi = 1.0) {
    mvt::Matrix m(p, p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i; j < p; ++j) {
            const double v = rng.uniform(lo, hi);
            m(i, j) = v;
            m(j, i) = v;
        }
    }
    return m;
}

/// A A^T + ridge I: symmetric positive definite.
inline mvt::Matrix random_spd(mvt::Rng& rng, std::size_t p, double ridge = 0.1) {
    const mvt::Matrix a = random_matrix(rng, p, p);
    mvt::Matrix spd = a * a.transposed();
    for (std::size_t i = 0; i < p; ++i) spd(i, i) += ridge;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j) spd(j, i) = spd(i, j);
    return spd;
}

/// Product of 4p random Givens rotations: a random-ish orthogonal matrix.
inline mvt::Matrix random_orthogonal(mvt::Rng& rng, std::size_t p) {
    mvt::Matrix q = mvt::Matrix::identity(p);
    for (std::size_t t = 0; t < 4 * p; ++t) {
        const std::size_t j = rng.below(p);
        std::size_t k = rng.below(p - 1);
        if (k >= j) ++k;
        const double theta = rng.uniform(-3.14159265358979, 3.14159265358979);
        const mvt::JacobiRotation rot{j < k ? j : k, j < k ? k : j, std::cos(theta),
                                      std::sin(theta), 0};
        for (std::size_t i = 0; i < p; ++i) {
            const double qij = q(i, rot.j);
            const double qik = q(i, rot.k);
            q(i, rot.j) = rot.c * qij + rot.s * qik;
            q(i, rot.k) = -rot.s * qij + rot.c * qik;
        }
    }
    return q;
}

inline double max_abs_diff(const mvt::Matrix& a, const mvt::Matrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            worst = std::max(worst, std::fabs(a(i, j) - b(i, j)));
    return worst;
}

inline double orthogonality_defect(const mvt::Matrix& q) {
    return (q.transposed() * q - mvt::Matrix::identity(q.cols())).frobenius_norm();
}

/// Spearman rank correlation with average ranks for ties.
inline double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
    auto ranks = [](const std::vector<double>& v) {
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            double less = 0.0, equal = 0.0;
            for (std::size_t j = 0; j < v.size(); ++j) {
                if (v[j] < v[i]) ++less;
                else if (v[j] == v[i]) ++equal;
            }
            r[i] = less + (equal + 1.0) / 2.0;
        }
        return r;
    };
    const auto rx = ranks(xs);
    const auto ry = ranks(ys);
    const std::size_t n = xs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

} // namespace testutil
