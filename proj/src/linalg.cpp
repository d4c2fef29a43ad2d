#include "mvtreelet/linalg.hpp"

#include "mvtreelet/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace mvt {

namespace {

Eigen::MatrixXd to_eigen(const Matrix& m) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    return out;
}

Matrix from_eigen(const Eigen::MatrixXd& m) {
    Matrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
    return out;
}

} // namespace

Matrix compute_covariance(const Matrix& X) {
    const std::size_t n = X.rows();
    const std::size_t p = X.cols();
    if (n < 2) {
        throw Error(ErrorKind::Dimension,
                    "covariance requires at least two rows, got " + std::to_string(n));
    }

    std::vector<double> mean(p, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j)
            mean[j] += X(i, j);
    for (double& m : mean) m /= static_cast<double>(n);

    Matrix cov(p, p);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            const double dj = X(i, j) - mean[j];
            for (std::size_t k = j; k < p; ++k) {
                cov(j, k) += dj * (X(i, k) - mean[k]);
            }
        }
    }
    const double denom = static_cast<double>(n - 1);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = j; k < p; ++k) {
            const double v = cov(j, k) / denom;
            cov(j, k) = v;
            cov(k, j) = v;  // exact symmetrization
        }
    }
    return cov;
}

Matrix compute_correlation(const Matrix& sigma) {
    require_square(sigma, "correlation");
    const std::size_t p = sigma.rows();
    Matrix rho(p, p);
    for (std::size_t j = 0; j < p; ++j) {
        rho(j, j) = sigma(j, j) > kVarianceFloor ? 1.0 : 0.0;
        for (std::size_t k = 0; k < p; ++k) {
            if (k == j) continue;
            double r = 0.0;
            if (sigma(j, j) > kVarianceFloor && sigma(k, k) > kVarianceFloor) {
                r = std::clamp(sigma(j, k) / std::sqrt(sigma(j, j) * sigma(k, k)), -1.0, 1.0);
            }
            rho(j, k) = r;
        }
    }
    return rho;
}

double off_diagonal_norm(const Matrix& a) {
    require_square(a, "off-diagonal norm");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i == j) continue;
            sum += a(i, j) * a(i, j);
        }
    }
    return sum;
}

Matrix apply_rotation_symmetric(const Matrix& sigma, const JacobiRotation& rot) {
    require_square(sigma, "rotation conjugation");
    const std::size_t p = sigma.rows();
    const std::size_t j = rot.j;
    const std::size_t k = rot.k;
    if (j >= p || k >= p) {
        throw Error(ErrorKind::Index, "rotation pair (" + std::to_string(j) + "," +
                                          std::to_string(k) + ") out of range for dimension " +
                                          std::to_string(p));
    }
    if (j == k) {
        throw Error(ErrorKind::Index, "rotation pair indices must differ");
    }
    const double c = rot.c;
    const double s = rot.s;

    Matrix out = sigma;
    for (std::size_t i = 0; i < p; ++i) {
        if (i == j || i == k) continue;
        const double aij = sigma(i, j);
        const double aik = sigma(i, k);
        const double nij = c * aij + s * aik;
        const double nik = -s * aij + c * aik;
        out(i, j) = nij;
        out(j, i) = nij;
        out(i, k) = nik;
        out(k, i) = nik;
    }
    const double ajj = sigma(j, j);
    const double akk = sigma(k, k);
    const double ajk = sigma(j, k);
    out(j, j) = c * c * ajj + 2.0 * c * s * ajk + s * s * akk;
    out(k, k) = s * s * ajj - 2.0 * c * s * ajk + c * c * akk;
    const double njk = (c * c - s * s) * ajk + c * s * (akk - ajj);
    out(j, k) = njk;
    out(k, j) = njk;
    return out;
}

Matrix orthogonal_procrustes(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "procrustes");
    const Eigen::MatrixXd cross = to_eigen(b) * to_eigen(a).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return from_eigen(svd.matrixU() * svd.matrixV().transpose());
}

double pearson_correlation(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "pearson correlation");
    const std::size_t n = a.size();
    if (n < 2) {
        throw Error(ErrorKind::Dimension, "pearson correlation requires at least two entries");
    }
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_a += a.data()[i];
        mean_b += b.data()[i];
    }
    mean_a /= static_cast<double>(n);
    mean_b /= static_cast<double>(n);

    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a.data()[i] - mean_a;
        const double db = b.data()[i] - mean_b;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    if (saa == 0.0 || sbb == 0.0) {
        throw Error(ErrorKind::Degenerate, "pearson correlation undefined for constant input");
    }
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

} // namespace mvt
