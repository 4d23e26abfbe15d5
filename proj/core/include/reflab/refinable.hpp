#pragma once

#include <cstdint>
#include <vector>

#include "reflab/filter.hpp"

namespace reflab {

/// Truncated-product evaluator of fhat(y) = prod_{k>=1} A(y lambda^{-k}).
/// The factor count K grows like log_{|lambda|}(|y| B / tail_eps) with
/// B = 2 pi sum |a_j tau_j| / |lambda|, which bounds |ln A(u)| ~ B|u| near 0.
struct RefinableEvaluator {
    Filter filter;
    double tail_eps = 1e-10;
    int K_min = 8;
    double B = 0.0;
};

/// Validates tail_eps in (0, 1e-6] and K_min >= 1, precomputes B.
RefinableEvaluator make_evaluator(Filter f, double tail_eps = 1e-10, int K_min = 8);

/// fhat(y); fhat(0) = 1 exactly. Arguments descend through a long double
/// ladder so large |y| keeps usable phase accuracy.
Complex eval_fhat(const RefinableEvaluator& e, double y);

/// Same with a long double argument (large arguments from exact products).
Complex eval_fhat_ld(const RefinableEvaluator& e, long double y);

/// Fixed factor count K regardless of the tail rule (truncation studies).
Complex eval_fhat_k(const RefinableEvaluator& e, double y, int K);

/// |fhat(y lambda^k) - fhat(y) * prod_{j=0}^{k-1} A(y lambda^j)|.
double functional_residual(const RefinableEvaluator& e, double y, int k);

struct RhoReport {
    double rho_closed = 0.0;   // -ln M(A) / ln|lambda|
    double rho_numeric = 0.0;  // extrapolated from the means below
    std::vector<double> L_grid;
    std::vector<double> raw_means;  // m(L) = integral of ln|fhat| / (2 L ln L)
    double extrapolation_residual = 0.0;
};

/// m(L) over the grid via the shell identity
///   int_{-L}^{L} ln|fhat| = sum_{k>=1} |lambda|^k int_{-L/|lambda|^k}^{..} ln|A|,
/// shells below half-width 1e-3 dropped (their integrand is odd to O(u^2)).
/// Fit m(L) = -rho + c/ln L; rho_numeric = -intercept.
RhoReport estimate_rho(const RefinableEvaluator& e, const std::vector<double>& L_grid,
                       int panels_per_unit);

struct ScalingRow {
    int k;
    Complex fhat;  // fhat(alpha lambda^k)
    double ratio;  // ln|fhat| / (k ln|lambda|)
};

/// The sequence fhat(alpha lambda^k), k = 1..k_max. Throws ZeroHit when a
/// value falls below 1e-300 in modulus.
std::vector<ScalingRow> scaling_sequence(const RefinableEvaluator& e, double alpha,
                                         int k_max);

} // namespace reflab
