#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reflab/filter.hpp"

namespace reflab {

/// Window half-widths per conjugate: sigma[0] = 0 (the real embedding is
/// cut by L instead), sigma[j] > 0 for j >= 1, equal across conjugate pairs.
struct AdmissibleVector {
    std::vector<double> sigma;
};

/// Validates the shape above; the second member of each conjugate pair is
/// overwritten with the first (exact duplication).
AdmissibleVector make_admissible(const AlgebraicContext& ctx, std::vector<double> sigma);

struct LatticePoint {
    double value;                 // sum_i coords_i lambda_1^i
    std::vector<BigInt> coords;
};

struct QuasilatticeWindow {
    AdmissibleVector sigma;
    double L = 0.0;
    std::vector<LatticePoint> points;  // sorted by (value, coords); 0 included
};

/// All integer coordinate vectors with |conjugate_j| < sigma_j (j >= 2) and
/// |value| < L, via a pruned search inside the (V^T)^{-1} box bound. Values
/// within 1e-10 of a boundary throw BoundaryAmbiguous unless the comparison
/// is exactly decidable (pure-integer points).
QuasilatticeWindow enumerate_window(const AlgebraicContext& ctx,
                                    const AdmissibleVector& sigma, double L);

struct WindowStats {
    double min_gap = 0.0;
    double max_gap = 0.0;
    std::int64_t count = 0;
};

WindowStats window_stats(const QuasilatticeWindow& w);

struct MinkowskiResult {
    double L_star = 0.0;
    LatticePoint witness;
};

/// L_star = |det V| * prod_{j>=2} sigma_j^{-1}; every window at least this
/// wide contains a nonzero point. Returns the smallest-|value| witness found
/// at L_star * (1 + 1e-9); throws NoWitness if none exists.
MinkowskiResult minkowski_threshold(const AlgebraicContext& ctx,
                                    const AdmissibleVector& sigma);

struct SelfSimilarityReport {
    bool equal = false;
    std::int64_t left_count = 0;
    std::int64_t right_count = 0;
    std::string detail;
};

/// For |c_0| = 1: lambda * window(sigma, L) must equal
/// window((0, |lambda_j| sigma_j), |lambda| L), compared exactly through the
/// coordinate map ell -> C^T ell. Throws NotUnit otherwise.
SelfSimilarityReport check_self_similarity(const AlgebraicContext& ctx,
                                           const AdmissibleVector& sigma, double L);

struct MultiscaleReport {
    std::vector<double> xi;
    std::int64_t checked = 0;
    bool ok = false;
    std::string detail;
};

/// xi_j = (1 - |lambda_j|) sigma_j. Each translation must lie in the lattice
/// of xi (else TranslationOutsideXi); then lambda*t + tau_j stays in the
/// lattice of sigma for every window point t and tap j, checked by exact
/// coordinates and direct conjugate evaluation.
MultiscaleReport multiscale_check(const AlgebraicContext& ctx,
                                  const AdmissibleVector& sigma, const Filter& f,
                                  double L);

/// |S(y)| = |sum over points of e^{2 pi i y value}| for each y.
std::vector<std::pair<double, double>> diffraction_sample(const QuasilatticeWindow& w,
                                                          const std::vector<double>& y_grid);

/// C^T ell: the coordinate image of multiplication by lambda in Z[lambda].
std::vector<BigInt> multiply_by_lambda(const AlgebraicContext& ctx,
                                       const std::vector<BigInt>& ell);

} // namespace reflab
