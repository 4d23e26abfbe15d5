#include "reflab/quasilattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "reflab/errors.hpp"
#include "reflab/numeric.hpp"

namespace reflab {

AdmissibleVector make_admissible(const AlgebraicContext& ctx, std::vector<double> sigma) {
    const int n = ctx.degree();
    if (static_cast<int>(sigma.size()) != n)
        fail(ErrorCode::DimensionMismatch, "window length != degree");
    if (sigma[0] != 0.0)
        fail(ErrorCode::BadInput, "first window entry must be 0 (cut by L instead)");
    for (int j = 1; j < n; ++j)
        if (!(sigma[j] > 0.0)) fail(ErrorCode::BadInput, "conjugate windows must be positive");
    for (int j = 1; j + 1 < n; ++j)
        if (ctx.roots[j].imag() > 0.0 && ctx.roots[j + 1] == std::conj(ctx.roots[j]))
            sigma[j + 1] = sigma[j];  // conjugate pairs share one window value
    return AdmissibleVector{std::move(sigma)};
}

namespace {

bool pure_integer(const std::vector<BigInt>& ell) {
    for (std::size_t i = 1; i < ell.size(); ++i)
        if (ell[i] != 0) return false;
    return true;
}

// conjugate values (V^T ell)_j for j = 0..n-1
std::vector<Complex> conjugate_values(const AlgebraicContext& ctx,
                                      const std::vector<BigInt>& ell) {
    const int n = ctx.degree();
    std::vector<Complex> w(n);
    for (int j = 0; j < n; ++j) {
        Complex v = 0.0;
        for (int i = n - 1; i >= 0; --i) v = v * ctx.roots[j] + to_double(ell[i]);
        w[j] = v;
    }
    return w;
}

// strict test |w| < bound with a 1e-10 ambiguity band; exact for integers
bool strictly_inside(double mag, double bound, bool exact) {
    if (exact) return mag < bound;
    if (std::abs(mag - bound) <= 1e-10)
        fail(ErrorCode::BoundaryAmbiguous, "value within 1e-10 of a window boundary");
    return mag < bound;
}

// membership of ell in the lattice of sigma (conjugate constraints only)
bool in_lattice(const AlgebraicContext& ctx, const std::vector<BigInt>& ell,
                const std::vector<double>& sigma, bool guard) {
    const int n = ctx.degree();
    bool exact = pure_integer(ell);
    if (exact) {
        double v = to_double(ell[0]);
        for (int j = 1; j < n; ++j)
            if (!(std::abs(v) < sigma[j])) return false;
        return true;
    }
    std::vector<Complex> w = conjugate_values(ctx, ell);
    for (int j = 1; j < n; ++j) {
        double m = std::abs(w[j]);
        if (guard) {
            if (!strictly_inside(m, sigma[j], false)) return false;
        } else if (!(m < sigma[j])) {
            return false;
        }
    }
    return true;
}

} // namespace

std::vector<BigInt> multiply_by_lambda(const AlgebraicContext& ctx,
                                       const std::vector<BigInt>& ell) {
    const int n = ctx.degree();
    std::vector<BigInt> out(n);
    const BigInt& top = ell[n - 1];
    out[0] = -ctx.minpoly.c[0] * top;
    for (int i = 1; i < n; ++i) out[i] = ell[i - 1] - ctx.minpoly.c[i] * top;
    return out;
}

QuasilatticeWindow enumerate_window(const AlgebraicContext& ctx,
                                    const AdmissibleVector& sigma, double L) {
    const int n = ctx.degree();
    if (ctx.classification != Classification::PV)
        fail(ErrorCode::NotPV, "enumeration needs a PV context");
    if (!(L > 0.0)) fail(ErrorCode::BadInput, "half-width must be positive");
    if (static_cast<int>(sigma.sigma.size()) != n)
        fail(ErrorCode::DimensionMismatch, "window length != degree");

    // coordinate bounds: |ell_i| <= sum_j |((V^T)^{-1})_{ij}| box_j
    Eigen::MatrixXcd Winv = ctx.vandermonde.transpose().inverse();
    std::vector<double> box(n);
    box[0] = L;
    for (int j = 1; j < n; ++j) box[j] = sigma.sigma[j];
    std::vector<long long> M(n);
    for (int i = 0; i < n; ++i) {
        double b = 0.0;
        for (int j = 0; j < n; ++j) b += std::abs(Winv(i, j)) * box[j];
        M[i] = static_cast<long long>(std::floor(b + 1e-9));
    }

    // reach[j][i]: largest |sum_{i' <= i} ell_{i'} lambda_j^{i'}| still assignable
    std::vector<std::vector<double>> reach(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<Complex>> rpow(n, std::vector<Complex>(n, 1.0));
    for (int j = 0; j < n; ++j) {
        double pw = 1.0, acc = 0.0;
        Complex cp = 1.0;
        for (int i = 0; i < n; ++i) {
            acc += static_cast<double>(M[i]) * pw;
            reach[j][i] = acc;
            rpow[j][i] = cp;
            pw *= std::abs(ctx.roots[j]);
            cp *= ctx.roots[j];
        }
    }

    QuasilatticeWindow win;
    win.sigma = sigma;
    win.L = L;

    std::vector<BigInt> ell(n, BigInt(0));
    std::vector<std::vector<Complex>> partial(n + 1, std::vector<Complex>(n, 0.0));
    // assign ell_i from i = n-1 down to 0; partial[i] holds sum_{i' > i} terms
    auto descend = [&](auto&& self, int i) -> void {
        if (i < 0) {
            bool exact = pure_integer(ell);
            double value = exact ? to_double(ell[0]) : partial[0][0].real();
            if (!strictly_inside(std::abs(value), L, exact)) return;
            for (int j = 1; j < n; ++j) {
                double m = exact ? std::abs(value) : std::abs(partial[0][j]);
                if (!strictly_inside(m, sigma.sigma[j], exact)) return;
            }
            win.points.push_back(LatticePoint{value, ell});
            return;
        }
        for (long long c = -M[i]; c <= M[i]; ++c) {
            ell[i] = c;
            bool viable = true;
            for (int j = 0; j < n && viable; ++j) {
                partial[i][j] = partial[i + 1][j] + static_cast<double>(c) * rpow[j][i];
                double cap = (j == 0 ? L : sigma.sigma[j]) + 1e-9;
                double rest = i > 0 ? reach[j][i - 1] : 0.0;
                if (std::abs(partial[i][j]) - rest > cap) viable = false;
            }
            if (viable) self(self, i - 1);
        }
        ell[i] = 0;
    };
    descend(descend, n - 1);

    std::sort(win.points.begin(), win.points.end(),
              [](const LatticePoint& a, const LatticePoint& b) {
                  if (a.value != b.value) return a.value < b.value;
                  return a.coords < b.coords;
              });
    return win;
}

WindowStats window_stats(const QuasilatticeWindow& w) {
    if (w.points.size() < 2) fail(ErrorCode::TooFewPoints, "need at least two points");
    WindowStats s;
    s.count = static_cast<std::int64_t>(w.points.size());
    s.min_gap = 1e308;
    for (std::size_t i = 1; i < w.points.size(); ++i) {
        double g = w.points[i].value - w.points[i - 1].value;
        s.min_gap = std::min(s.min_gap, g);
        s.max_gap = std::max(s.max_gap, g);
    }
    return s;
}

MinkowskiResult minkowski_threshold(const AlgebraicContext& ctx,
                                    const AdmissibleVector& sigma) {
    const int n = ctx.degree();
    double L_star = std::abs(ctx.vandermonde.determinant());
    for (int j = 1; j < n; ++j) L_star /= sigma.sigma[j];

    QuasilatticeWindow w = enumerate_window(ctx, sigma, L_star * (1.0 + 1e-9));
    const LatticePoint* best = nullptr;
    for (const auto& p : w.points) {
        if (p.coords == std::vector<BigInt>(n, BigInt(0))) continue;
        if (!best || std::abs(p.value) < std::abs(best->value)) best = &p;
    }
    if (!best)
        fail(ErrorCode::NoWitness, "no nonzero point at the threshold half-width");
    return MinkowskiResult{L_star, *best};
}

SelfSimilarityReport check_self_similarity(const AlgebraicContext& ctx,
                                           const AdmissibleVector& sigma, double L) {
    const int n = ctx.degree();
    if (abs(ctx.minpoly.c[0]) != 1)
        fail(ErrorCode::NotUnit, "|c_0| must be 1 so multiplication by lambda is invertible");

    QuasilatticeWindow A = enumerate_window(ctx, sigma, L);
    std::vector<double> scaled(n);
    scaled[0] = 0.0;
    for (int j = 1; j < n; ++j) scaled[j] = std::abs(ctx.roots[j]) * sigma.sigma[j];
    QuasilatticeWindow B = enumerate_window(ctx, make_admissible(ctx, scaled),
                                            std::abs(ctx.lambda1()) * L);

    std::set<std::vector<BigInt>> left, right;
    for (const auto& p : A.points) left.insert(multiply_by_lambda(ctx, p.coords));
    for (const auto& p : B.points) right.insert(p.coords);

    SelfSimilarityReport rep;
    rep.left_count = static_cast<std::int64_t>(left.size());
    rep.right_count = static_cast<std::int64_t>(right.size());
    rep.equal = left == right;
    if (!rep.equal) {
        std::ostringstream os;
        os << "coordinate sets differ (" << rep.left_count << " vs " << rep.right_count << ")";
        rep.detail = os.str();
    } else {
        rep.detail = "lambda * window == scaled window, exactly";
    }
    return rep;
}

MultiscaleReport multiscale_check(const AlgebraicContext& ctx,
                                  const AdmissibleVector& sigma, const Filter& f,
                                  double L) {
    const int n = ctx.degree();
    if (abs(ctx.minpoly.c[0]) != 1)
        fail(ErrorCode::NotUnit, "|c_0| must be 1 for the nesting construction");
    for (const auto& t : f.translations)
        if (t.kind != Translation::Kind::ZLambda)
            fail(ErrorCode::BadInput, "translations must carry exact coordinates");

    MultiscaleReport rep;
    rep.xi.resize(n);
    rep.xi[0] = 0.0;
    for (int j = 1; j < n; ++j)
        rep.xi[j] = (1.0 - std::abs(ctx.roots[j])) * sigma.sigma[j];

    for (int j = 0; j < f.taps(); ++j)
        if (!in_lattice(ctx, f.translations[j].zlambda, rep.xi, true)) {
            std::ostringstream os;
            os << "translation " << j << " (value " << f.translations[j].value
               << ") lies outside the xi lattice";
            fail(ErrorCode::TranslationOutsideXi, os.str());
        }

    QuasilatticeWindow w = enumerate_window(ctx, sigma, L);
    rep.ok = true;
    for (const auto& p : w.points) {
        std::vector<BigInt> lam_t = multiply_by_lambda(ctx, p.coords);
        for (int j = 0; j < f.taps() && rep.ok; ++j) {
            std::vector<BigInt> cand(n);
            for (int i = 0; i < n; ++i) cand[i] = lam_t[i] + f.translations[j].zlambda[i];
            ++rep.checked;
            if (!in_lattice(ctx, cand, sigma.sigma, false)) {
                rep.ok = false;
                std::ostringstream os;
                os << "lambda * " << p.value << " + tau_" << j
                   << " escapes the sigma lattice";
                rep.detail = os.str();
            }
        }
        if (!rep.ok) break;
    }
    if (rep.ok) rep.detail = "all shifted points stay inside the sigma lattice";
    return rep;
}

std::vector<std::pair<double, double>> diffraction_sample(const QuasilatticeWindow& w,
                                                          const std::vector<double>& y_grid) {
    std::vector<std::pair<double, double>> out;
    out.reserve(y_grid.size());
    for (double y : y_grid) {
        Complex s = 0.0;
        for (const auto& p : w.points) s += std::polar(1.0, kTwoPi * y * p.value);
        out.emplace_back(y, std::abs(s));
    }
    return out;
}

} // namespace reflab
