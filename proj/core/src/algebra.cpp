#include "reflab/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "reflab/errors.hpp"

namespace reflab {

const char* to_string(Classification c) {
    switch (c) {
        case Classification::PV: return "PV";
        case Classification::Salem: return "Salem";
        case Classification::Neither: return "neither";
    }
    return "neither";
}

std::vector<BigInt> power_sums(const IntPolynomial& p, int m_max) {
    const int n = p.degree();
    // a_i is the coefficient of z^i; a_n = 1
    const std::vector<BigInt>& a = p.c;
    std::vector<BigInt> ps(m_max + 1);
    ps[0] = n;
    for (int m = 1; m <= m_max; ++m) {
        BigInt s = 0;
        // p_m + sum_{i=1}^{min(m,n)-?} a_{n-i} p_{m-i} + [m<=n] m a_{n-m} = 0
        int top = std::min(m - 1, n - 1);
        for (int i = 1; i <= top; ++i) s += a[n - i] * ps[m - i];
        if (m <= n) {
            s += BigInt(m) * a[n - m];
        } else {
            // i = m..: only i <= n contributes; handle the i in (top, n] range
            for (int i = top + 1; i <= n; ++i)
                if (m - i >= 0) s += a[n - i] * ps[m - i];
        }
        ps[m] = -s;
    }
    return ps;
}

namespace {

bool is_reciprocal(const IntPolynomial& p) {
    std::vector<BigInt> f = p.full();
    for (std::size_t i = 0, j = f.size() - 1; i < j; ++i, --j)
        if (f[i] != f[j]) return false;
    return true;
}

Classification classify(const IntPolynomial& p, const std::vector<Complex>& roots) {
    const double tol = 1e-9;
    bool all_inside = true, any_near_unit = false, any_outside = false;
    for (std::size_t j = 1; j < roots.size(); ++j) {
        double m = std::abs(roots[j]);
        if (m >= 1.0 - tol) all_inside = false;
        if (std::abs(m - 1.0) <= tol) any_near_unit = true;
        if (m > 1.0 + tol) any_outside = true;
    }
    if (all_inside) return Classification::PV;
    if (any_near_unit) {
        // a Salem number's minimal polynomial is reciprocal, which pins the
        // near-unit moduli to exactly 1; without that certificate a modulus
        // this close to 1 cannot be resolved in floating point
        if (is_reciprocal(p) && !any_outside) return Classification::Salem;
        fail(ErrorCode::BoundaryIndeterminate,
             "a conjugate modulus sits within 1e-9 of the unit circle");
    }
    return Classification::Neither;
}

} // namespace

AlgebraicContext build_context(const IntPolynomial& p) {
    const int n = p.degree();
    std::vector<Complex> roots = find_roots(p.full());

    // move the largest real root of modulus > 1 to the front
    int pick = -1;
    for (int j = 0; j < n; ++j) {
        if (roots[j].imag() != 0.0) continue;
        double m = std::abs(roots[j]);
        if (m <= 1.0) continue;
        if (pick < 0 || m > std::abs(roots[pick]) ||
            (m == std::abs(roots[pick]) && roots[j].real() > roots[pick].real()))
            pick = j;
    }
    if (pick < 0)
        fail(ErrorCode::NoRealDominantRoot, "no real root with modulus > 1");
    std::rotate(roots.begin(), roots.begin() + pick, roots.begin() + pick + 1);

    AlgebraicContext ctx;
    ctx.minpoly = p;
    ctx.roots = roots;

    ctx.companion.assign(n, std::vector<BigInt>(n, BigInt(0)));
    for (int i = 0; i + 1 < n; ++i) ctx.companion[i][i + 1] = 1;
    for (int j = 0; j < n; ++j) ctx.companion[n - 1][j] = -p.c[j];

    ctx.vandermonde.resize(n, n);
    for (int j = 0; j < n; ++j) {
        Complex pw = 1.0;
        for (int i = 0; i < n; ++i) {
            ctx.vandermonde(i, j) = pw;
            pw *= roots[j];
        }
    }

    std::vector<BigInt> ps = power_sums(p, 2 * n - 2);
    ctx.gram.assign(n, std::vector<BigInt>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ctx.gram[i][j] = ps[i + j];

    ctx.classification = classify(p, roots);
    return ctx;
}

ZLambdaValue zlambda_eval(const AlgebraicContext& ctx, const std::vector<BigInt>& t) {
    const int n = ctx.degree();
    if (static_cast<int>(t.size()) != n)
        fail(ErrorCode::DimensionMismatch, "coordinate vector length != degree");
    ZLambdaValue out;
    out.conjugates.reserve(n - 1);
    for (int j = 0; j < n; ++j) {
        Complex v = 0.0;
        for (int i = n - 1; i >= 0; --i) v = v * ctx.roots[j] + to_double(t[i]);
        if (j == 0)
            out.value = v.real();
        else
            out.conjugates.push_back(v);
    }
    return out;
}

std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> A,
                                     std::vector<Rational> rhs) {
    const int n = static_cast<int>(A.size());
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        Rational best = 0;
        for (int r = col; r < n; ++r) {
            Rational m = abs(A[r][col]);
            if (m > best) {
                best = m;
                piv = r;
            }
        }
        if (piv < 0) fail(ErrorCode::BadInput, "singular matrix in exact solve");
        std::swap(A[col], A[piv]);
        std::swap(rhs[col], rhs[piv]);
        for (int r = col + 1; r < n; ++r) {
            if (A[r][col] == 0) continue;
            Rational f = A[r][col] / A[col][col];
            for (int c = col; c < n; ++c) A[r][c] -= f * A[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Rational> x(n);
    for (int r = n - 1; r >= 0; --r) {
        Rational s = rhs[r];
        for (int c = r + 1; c < n; ++c) s -= A[r][c] * x[c];
        x[r] = s / A[r][r];
    }
    return x;
}

Rational det_rational(std::vector<std::vector<Rational>> A) {
    const int n = static_cast<int>(A.size());
    Rational det = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (A[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return Rational(0);
        if (piv != col) {
            std::swap(A[col], A[piv]);
            det = -det;
        }
        det *= A[col][col];
        for (int r = col + 1; r < n; ++r) {
            if (A[r][col] == 0) continue;
            Rational f = A[r][col] / A[col][col];
            for (int c = col; c < n; ++c) A[r][c] -= f * A[col][c];
        }
    }
    return det;
}

AlphaResult alpha_from_rational_vector(const AlgebraicContext& ctx,
                                       const std::vector<Rational>& q) {
    const int n = ctx.degree();
    if (static_cast<int>(q.size()) != n)
        fail(ErrorCode::DimensionMismatch, "vector length != degree");

    std::vector<std::vector<Rational>> G(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G[i][j] = Rational(ctx.gram[i][j]);

    AlphaResult out;
    out.b = solve_rational(G, q);

    out.u.resize(n);
    for (int j = 0; j < n; ++j) {
        Complex v = 0.0;
        for (int i = n - 1; i >= 0; --i) v = v * ctx.roots[j] + to_double(out.b[i]);
        out.u[j] = v;
    }
    out.alpha = out.u[0].real();

    // q = V u must hold; a large residual means the roots are unusable
    double resid = 0.0;
    for (int i = 0; i < n; ++i) {
        Complex s = 0.0;
        for (int j = 0; j < n; ++j) s += ctx.vandermonde(i, j) * out.u[j];
        resid = std::max(resid, std::abs(s - to_double(q[i])));
    }
    if (resid > 1e-10)
        fail(ErrorCode::RootFindFailed, "eigenbasis reconstruction residual too large");
    return out;
}

} // namespace reflab
