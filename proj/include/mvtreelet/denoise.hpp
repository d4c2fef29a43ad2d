#pragma once

#include "mvtreelet/matrix.hpp"
#include "mvtreelet/treelet.hpp"

#include <cstddef>
#include <vector>

namespace mvt {

/// Basis-coefficient expansion of a data matrix: column j of `coeffs` holds
/// the coefficients of column j of X in the stored orthogonal basis.
struct CoefficientSet {
    Matrix coeffs;
    Matrix basis;
};

/// Outcome of the Benjamini-Hochberg step-up on coefficient p-values.
/// `threshold` is |c| of the boundary (last rejected) coefficient, or +inf
/// when nothing is rejected.
struct FdrResult {
    double q = 0.0;
    std::vector<double> p_values;
    double threshold = 0.0;
    std::size_t rejected_count = 0;
};

/// coeffs = B^T X; lossless under reconstruct() for an orthogonal basis.
CoefficientSet expand(const Matrix& x, const TreeletBasis& basis);

/// B * coeffs.
Matrix reconstruct(const CoefficientSet& coeffs);

/// Two-tailed Gaussian p-values under the pooled null: sigma^2 is the
/// population variance of all coefficients, p_k = 2(1 - Phi(|c_k| / sigma)).
/// Throws ErrorKind::Degenerate when all coefficients are equal.
std::vector<double> coefficient_p_values(const CoefficientSet& coeffs);

/// Benjamini-Hochberg step-up at rate q over paired (p-value, coefficient)
/// lists; the boundary coefficient's magnitude becomes the hard threshold.
FdrResult fdr_threshold(const std::vector<double>& p_values, const std::vector<double>& coeffs,
                        double q);

/// Zeroes coefficients with |c| strictly below the threshold.
CoefficientSet hard_threshold(const CoefficientSet& coeffs, double threshold);

/// Full pipeline: expand, p-values, FDR threshold, hard-threshold,
/// reconstruct.
Matrix denoise(const Matrix& x, const TreeletBasis& basis, double q);

/// Pipeline variant that also reports the FDR stage, for callers that
/// surface the no-rejection warning.
struct DenoiseOutcome {
    Matrix denoised;
    FdrResult fdr;
};
DenoiseOutcome denoise_with_details(const Matrix& x, const TreeletBasis& basis, double q);

/// Squared Frobenius distance ||X_t - X_d||_F^2.
double denoise_error(const Matrix& x_true, const Matrix& x_denoised);

} // namespace mvt
