#include "mvtreelet/denoise.hpp"

#include "mvtreelet/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace mvt {

CoefficientSet expand(const Matrix& x, const TreeletBasis& basis) {
    if (basis.basis.rows() != x.rows()) {
        throw Error(ErrorKind::Dimension,
                    "basis dimension " + std::to_string(basis.basis.rows()) +
                        " does not match data rows " + std::to_string(x.rows()));
    }
    return CoefficientSet{basis.basis.transposed() * x, basis.basis};
}

Matrix reconstruct(const CoefficientSet& coeffs) {
    return coeffs.basis * coeffs.coeffs;
}

std::vector<double> coefficient_p_values(const CoefficientSet& coeffs) {
    const std::vector<double>& c = coeffs.coeffs.data();
    if (c.size() < 2) {
        throw Error(ErrorKind::Dimension, "p-values require at least two coefficients");
    }
    const double mean = std::accumulate(c.begin(), c.end(), 0.0) / static_cast<double>(c.size());
    double var = 0.0;
    for (double v : c) var += (v - mean) * (v - mean);
    var /= static_cast<double>(c.size());
    if (var == 0.0) {
        throw Error(ErrorKind::Degenerate, "all coefficients equal; null variance is zero");
    }
    const double sigma = std::sqrt(var);

    std::vector<double> p(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        // two-tailed: 2 (1 - Phi(|c|/sigma)) = erfc(|c| / (sigma sqrt(2)))
        p[i] = std::erfc(std::fabs(c[i]) / (sigma * std::numbers::sqrt2));
    }
    return p;
}

FdrResult fdr_threshold(const std::vector<double>& p_values, const std::vector<double>& coeffs,
                        double q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw Error(ErrorKind::Parameter, "FDR rate q must lie in (0, 1)");
    }
    if (p_values.size() != coeffs.size() || p_values.empty()) {
        throw Error(ErrorKind::Dimension, "p-value and coefficient lists must match and be non-empty");
    }
    const std::size_t n = p_values.size();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    // Ascending p; ties resolved by larger |c| first, then input position, so
    // the boundary magnitude is the smallest |c| among the rejected set.
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (p_values[a] != p_values[b]) return p_values[a] < p_values[b];
        const double ca = std::fabs(coeffs[a]);
        const double cb = std::fabs(coeffs[b]);
        if (ca != cb) return ca > cb;
        return a < b;
    });

    std::size_t boundary = 0;  // 1-based rank of the last rejected hypothesis
    for (std::size_t rank = 1; rank <= n; ++rank) {
        if (p_values[order[rank - 1]] <=
            static_cast<double>(rank) * q / static_cast<double>(n)) {
            boundary = rank;
        }
    }

    FdrResult result;
    result.q = q;
    result.p_values = p_values;
    result.rejected_count = boundary;
    result.threshold = boundary == 0 ? std::numeric_limits<double>::infinity()
                                     : std::fabs(coeffs[order[boundary - 1]]);
    return result;
}

CoefficientSet hard_threshold(const CoefficientSet& coeffs, double threshold) {
    CoefficientSet out = coeffs;
    for (double& c : out.coeffs.data()) {
        if (std::fabs(c) < threshold) c = 0.0;
    }
    return out;
}

DenoiseOutcome denoise_with_details(const Matrix& x, const TreeletBasis& basis, double q) {
    const CoefficientSet coeffs = expand(x, basis);
    const std::vector<double> p = coefficient_p_values(coeffs);
    const FdrResult fdr = fdr_threshold(p, coeffs.coeffs.data(), q);
    const CoefficientSet kept = hard_threshold(coeffs, fdr.threshold);
    return DenoiseOutcome{reconstruct(kept), fdr};
}

Matrix denoise(const Matrix& x, const TreeletBasis& basis, double q) {
    return denoise_with_details(x, basis, q).denoised;
}

double denoise_error(const Matrix& x_true, const Matrix& x_denoised) {
    require_same_shape(x_true, x_denoised, "denoise error");
    return (x_true - x_denoised).squared_frobenius_norm();
}

} // namespace mvt
