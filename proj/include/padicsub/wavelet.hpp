#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

#include "padicsub/smoothness.hpp"

namespace padicsub {

using ComplexVector = std::vector<std::complex<double>>;

/// Column layout of the shifted-mask matrix: p^{N+1} columns arranged as
/// p blocks (scaling mask first, then each wavelet mask) of p^N cyclic
/// shifts each.
struct ShiftFrame {
    long p = 2;
    long order = 0;  // N

    long dim() const { return pow_z(p, order + 1).get_si(); }
    long shifts() const { return pow_z(p, order).get_si(); }
    long families() const { return p; }
    /// Column index of shift a of family j (j = 0 is the scaling mask).
    long column(long family, long shift) const { return family * shifts() + shift; }
};

/// Mask coefficients (h(0), ..., h((p^{N+1}-1)/p^{N+1})) as complex values.
ComplexVector mask_coefficient_vector(const Mask& m);

/// Assembles U = (S^0 h, ..., S^{p^N-1} h, S^0 h_1, ...) from raw coefficient
/// vectors, applying the 1/sqrt(p) scaling. S is the cyclic shift-down.
Eigen::MatrixXcd build_U(const ComplexVector& h, const std::vector<ComplexVector>& wavelets);

struct UnitarityReport {
    bool pass = false;
    double max_deviation = 0.0;
    double tol = 0.0;
};

/// Max-entry deviation of U*U from the identity.
UnitarityReport verify_unitary(const Eigen::MatrixXcd& U, double tol);

struct WaveletMasks {
    Mask base;
    /// p-1 wavelet coefficient vectors on the same grid, raw (unscaled).
    std::vector<ComplexVector> wavelets;
    ShiftFrame frame;
};

/// Completes an orthonormal scaling mask to wavelet masks: the mask's
/// spectrum occupies one frequency class mod p, and each block of p
/// frequencies is completed to a unitary p x p frame; the remaining columns
/// transform back to the wavelet coefficients. Requires the orthonormality
/// pre-check to pass and verifies the completion at tolerance 1e-9.
WaveletMasks complete_masks(const Mask& m);

/// Wavelet approximant sum_k h_j(k/p^{N+1}) f_n(A . - k/p^{N+1}) with
/// f_n the n-th cascade iterate. Coefficients are taken exactly (binary
/// value of the completed doubles).
BallStepFunction wavelet_cascade(const Mask& m, const WaveletMasks& w, long j, long n,
                                 std::size_t cell_budget = kDefaultCellBudget);

/// Mask-schema JSON for wavelet mask j (decimal floats, flagged inexact).
std::string wavelet_mask_to_json(const WaveletMasks& w, long j);

}  // namespace padicsub
