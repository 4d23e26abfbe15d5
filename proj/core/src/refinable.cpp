#include "reflab/refinable.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "reflab/errors.hpp"
#include "reflab/mahler.hpp"
#include "reflab/numeric.hpp"

namespace reflab {

RefinableEvaluator make_evaluator(Filter f, double tail_eps, int K_min) {
    if (!(tail_eps > 0.0) || tail_eps > 1e-6)
        fail(ErrorCode::BadInput, "tail tolerance must lie in (0, 1e-6]");
    if (K_min < 1) fail(ErrorCode::BadInput, "minimum factor count must be >= 1");
    RefinableEvaluator e;
    e.tail_eps = tail_eps;
    e.K_min = K_min;
    double s = 0.0;
    for (int j = 0; j < f.taps(); ++j)
        s += std::abs(f.coeffs[j]) * std::abs(f.translations[j].value);
    e.B = kTwoPi * s / std::abs(f.lambda);
    e.filter = std::move(f);
    return e;
}

namespace {

// long double throughout: arguments from lambda^k ladders overflow a double
// long before they overflow the evaluator
int factor_count(const RefinableEvaluator& e, long double ay) {
    long double t = ay * static_cast<long double>(e.B) / static_cast<long double>(e.tail_eps);
    if (!(t > 1.0L)) return e.K_min;
    long double k = ceill(logl(t) / logl(fabsl(static_cast<long double>(e.filter.lambda))));
    return std::max(e.K_min, static_cast<int>(k));
}

Complex product_down(const RefinableEvaluator& e, long double y, int K) {
    const long double lam = e.filter.lambda;
    long double u = y;
    Complex prod = 1.0;
    for (int k = 0; k < K; ++k) {
        u /= lam;
        prod *= eval_filter_ld(e.filter, u);
        if (prod == Complex(0.0, 0.0)) return prod;
    }
    return prod;
}

} // namespace

Complex eval_fhat_ld(const RefinableEvaluator& e, long double y) {
    if (y == 0.0L) return Complex(1.0, 0.0);
    return product_down(e, y, factor_count(e, fabsl(y)));
}

Complex eval_fhat(const RefinableEvaluator& e, double y) {
    return eval_fhat_ld(e, static_cast<long double>(y));
}

Complex eval_fhat_k(const RefinableEvaluator& e, double y, int K) {
    if (K < 0) fail(ErrorCode::BadInput, "factor count must be >= 0");
    return product_down(e, static_cast<long double>(y), K);
}

double functional_residual(const RefinableEvaluator& e, double y, int k) {
    if (k < 1) fail(ErrorCode::BadInput, "scale count must be >= 1");
    const long double lam = e.filter.lambda;
    long double u = y;
    Complex steps = 1.0;
    for (int j = 0; j < k; ++j) {
        steps *= eval_filter_ld(e.filter, u);
        u *= lam;
    }
    Complex lhs = eval_fhat_ld(e, u);  // u = y lambda^k now
    Complex rhs = eval_fhat_ld(e, static_cast<long double>(y)) * steps;
    return std::abs(lhs - rhs);
}

namespace {

double closed_form_rho(const RefinableEvaluator& e) {
    TrigPolynomial P = to_trig_poly(e.filter);
    double M;
    if (P.dim() == 1) {
        long long lo = 0, hi = 0;
        for (const auto& t : P.terms) {
            lo = std::min(lo, t.exps[0]);
            hi = std::max(hi, t.exps[0]);
        }
        std::vector<Complex> c(static_cast<std::size_t>(hi - lo) + 1, Complex(0.0, 0.0));
        for (const auto& t : P.terms) c[static_cast<std::size_t>(t.exps[0] - lo)] += t.coeff;
        M = mahler_jensen(c).value;
    } else {
        M = mahler_torus_mean(P, 1 << 18, 1e-8, 0).value;
    }
    return -std::log(M) / std::log(std::abs(e.filter.lambda));
}

} // namespace

RhoReport estimate_rho(const RefinableEvaluator& e, const std::vector<double>& L_grid,
                       int panels_per_unit) {
    if (L_grid.size() < 4) fail(ErrorCode::GridTooSmall, "need at least 4 window sizes");
    for (std::size_t i = 1; i < L_grid.size(); ++i)
        if (!(L_grid[i] > L_grid[i - 1]))
            fail(ErrorCode::BadInput, "window grid must be increasing");
    if (L_grid.back() > 1e7) fail(ErrorCode::BadInput, "window sizes above 1e7 unsupported");
    if (panels_per_unit < 1) fail(ErrorCode::BadInput, "panel density must be >= 1");

    const double al = std::abs(e.filter.lambda);
    std::vector<Complex> w = e.filter.normalized_coeffs();
    std::vector<double> tau = e.filter.tau_values();

    std::map<double, double> shell_cache;
    auto shell = [&](double ell) {
        auto it = shell_cache.find(ell);
        if (it != shell_cache.end()) return it->second;
        double v = log_abs_line_integral(w, tau, ell, panels_per_unit, 1e-12, 1).clipped;
        shell_cache.emplace(ell, v);
        return v;
    };

    RhoReport rep;
    rep.L_grid = L_grid;
    rep.raw_means.reserve(L_grid.size());
    for (double L : L_grid) {
        double total = 0.0, scale = 1.0, ell = L;
        while (true) {
            scale *= al;
            ell /= al;
            if (ell < 1e-3) break;
            total += scale * shell(ell);
        }
        rep.raw_means.push_back(total / (2.0 * L * std::log(L)));
    }

    // least squares for m(L) = a + b / ln L
    const int n = static_cast<int>(L_grid.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        double x = 1.0 / std::log(L_grid[i]), y = rep.raw_means[i];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    double b = (n * sxy - sx * sy) / denom;
    double a = (sy - b * sx) / n;
    rep.rho_numeric = -a;
    for (int i = 0; i < n; ++i) {
        double x = 1.0 / std::log(L_grid[i]);
        rep.extrapolation_residual =
            std::max(rep.extrapolation_residual, std::abs(a + b * x - rep.raw_means[i]));
    }
    rep.rho_closed = closed_form_rho(e);
    return rep;
}

std::vector<ScalingRow> scaling_sequence(const RefinableEvaluator& e, double alpha,
                                         int k_max) {
    if (k_max < 1) fail(ErrorCode::BadInput, "need k_max >= 1");
    const long double lam = e.filter.lambda;
    const double llam = std::log(std::abs(e.filter.lambda));
    std::vector<ScalingRow> rows;
    rows.reserve(k_max);
    long double u = alpha;
    for (int k = 1; k <= k_max; ++k) {
        u *= lam;
        Complex f = eval_fhat_ld(e, u);
        double m = std::abs(f);
        if (m < 1e-300)
            fail(ErrorCode::ZeroHit, "fhat vanishes at k = " + std::to_string(k));
        rows.push_back({k, f, std::log(m) / (k * llam)});
    }
    return rows;
}

} // namespace reflab
