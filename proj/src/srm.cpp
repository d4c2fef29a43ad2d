#include "mvtreelet/srm.hpp"

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

// Orthonormal p x K frame maximizing tr(W^T C) for a p x K target C.
Eigen::MatrixXd procrustes_frame(const Eigen::MatrixXd& c) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.matrixU() * svd.matrixV().transpose();
}

} // namespace

SrmModel srm_fit(const ViewSet& views, std::size_t rank, std::size_t max_iters, double tol,
                 std::uint64_t seed) {
    (void)seed;  // solver is deterministic; kept for interface stability
    const std::size_t p = views.dim();
    const std::size_t m = views.view_count();
    if (rank < 1 || rank > p) {
        throw Error(ErrorKind::Parameter, "rank " + std::to_string(rank) + " outside [1, " +
                                              std::to_string(p) + "]");
    }
    if (max_iters < 1) {
        throw Error(ErrorKind::Parameter, "max iterations must be >= 1");
    }
    if (!(tol >= 0.0) || !std::isfinite(tol)) {
        throw Error(ErrorKind::Parameter, "tolerance must be finite and >= 0");
    }
    const Eigen::Index ip = static_cast<Eigen::Index>(p);
    const Eigen::Index ik = static_cast<Eigen::Index>(rank);

    std::vector<Eigen::MatrixXd> x(m);
    for (std::size_t i = 0; i < m; ++i) x[i] = to_eigen(views.view(i));

    std::vector<Eigen::MatrixXd> w(m);
    for (std::size_t i = 0; i < m; ++i) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(x[i], Eigen::ComputeThinU);
        w[i] = svd.matrixU().leftCols(ik);
    }

    auto shared_update = [&]() {
        Eigen::MatrixXd s = Eigen::MatrixXd::Zero(ik, ip);
        for (std::size_t i = 0; i < m; ++i) s += w[i].transpose() * x[i];
        return Eigen::MatrixXd(s / static_cast<double>(m));
    };
    auto squared_objective = [&](const Eigen::MatrixXd& s) {
        double obj = 0.0;
        for (std::size_t i = 0; i < m; ++i) obj += (x[i] - w[i] * s).squaredNorm();
        return obj;
    };

    // S-step for the initial frames, then alternate W-step / S-step; each
    // half-step is the exact minimizer of the squared objective for its
    // block, so the recorded trace cannot increase.
    Eigen::MatrixXd s = shared_update();
    SrmModel model;
    model.rank = rank;
    double objective = squared_objective(s);
    model.objective_trace.push_back(objective);

    for (std::size_t iter = 1; iter <= max_iters; ++iter) {
        for (std::size_t i = 0; i < m; ++i) {
            w[i] = procrustes_frame(x[i] * s.transpose());
        }
        s = shared_update();

        const double prev = objective;
        objective = squared_objective(s);
        model.objective_trace.push_back(objective);
        model.iterations = iter;
        if (prev - objective <= tol * std::max(prev, 1e-300)) break;
    }

    double unsq = 0.0;
    for (std::size_t i = 0; i < m; ++i) unsq += (x[i] - w[i] * s).norm();
    model.final_objective_unsquared = unsq;
    model.shared = from_eigen(s);
    model.bases.reserve(m);
    for (std::size_t i = 0; i < m; ++i) model.bases.push_back(from_eigen(w[i]));
    return model;
}

Matrix srm_reconstruct(const SrmModel& model, std::size_t view_index) {
    if (view_index >= model.bases.size()) {
        throw Error(ErrorKind::Index, "view index " + std::to_string(view_index) +
                                          " out of range for " +
                                          std::to_string(model.bases.size()) + " views");
    }
    return model.bases[view_index] * model.shared;
}

Matrix srm_transfer_basis(const Matrix& x, const Matrix& shared) {
    if (x.cols() != shared.cols()) {
        throw Error(ErrorKind::Dimension, "data and shared matrix column counts differ");
    }
    return from_eigen(procrustes_frame(to_eigen(x) * to_eigen(shared).transpose()));
}

} // namespace mvt
