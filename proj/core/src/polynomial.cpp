#include "reflab/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "reflab/errors.hpp"

namespace reflab {

std::vector<BigInt> IntPolynomial::full() const {
    std::vector<BigInt> f(c);
    f.push_back(1);
    return f;
}

namespace {

using QPoly = std::vector<Rational>; // ascending, may have zero leading entries

int qdeg(const QPoly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

// remainder of a by b (b nonzero), ascending coefficients
QPoly qrem(QPoly a, const QPoly& b) {
    int db = qdeg(b);
    Rational lead = b[db];
    for (int da = qdeg(a); da >= db; da = qdeg(a)) {
        Rational f = a[da] / lead;
        for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
        a[da] = 0; // force exact cancellation of the leading term
    }
    return a;
}

int gcd_degree(QPoly a, QPoly b) {
    if (qdeg(a) < qdeg(b)) std::swap(a, b);
    while (qdeg(b) >= 0) {
        QPoly r = qrem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return qdeg(a);
}

} // namespace

IntPolynomial validate_min_poly(const std::vector<BigInt>& low) {
    if (low.empty()) fail(ErrorCode::DegreeZero, "minimal polynomial must have degree >= 1");
    if (low[0] == 0) fail(ErrorCode::ZeroConstantTerm, "constant term is zero, so 0 is a root");
    int n = static_cast<int>(low.size());
    QPoly p(n + 1), dp(n);
    for (int i = 0; i < n; ++i) p[i] = Rational(low[i]);
    p[n] = 1;
    for (int i = 1; i <= n; ++i) dp[i - 1] = Rational(i) * p[i];
    if (gcd_degree(p, dp) > 0)
        fail(ErrorCode::NotSquarefree, "polynomial shares a factor with its derivative");
    return IntPolynomial{low};
}

std::vector<BigInt> parse_poly_string(const std::string& s) {
    // sums of terms: [+-] [int] [z [^ int]], e.g. "z^2-z-1", "2z^3+z-4"
    std::vector<BigInt> coeffs;
    auto bump = [&](int e, const BigInt& v) {
        if (static_cast<int>(coeffs.size()) <= e) coeffs.resize(e + 1, BigInt(0));
        coeffs[e] += v;
    };
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    skip_ws();
    if (i == s.size()) fail(ErrorCode::BadInput, "empty polynomial string");
    bool any = false;
    while (true) {
        skip_ws();
        if (i == s.size()) break;
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
            skip_ws();
        } else if (any) {
            fail(ErrorCode::BadInput, "expected '+' or '-' in '" + s + "'");
        }
        std::string digits;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
        skip_ws();
        bool has_z = i < s.size() && (s[i] == 'z' || s[i] == 'Z');
        int exp = 0;
        if (has_z) {
            ++i;
            skip_ws();
            exp = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                skip_ws();
                std::string ed;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ed += s[i++];
                if (ed.empty()) fail(ErrorCode::BadInput, "missing exponent in '" + s + "'");
                exp = std::stoi(ed);
            }
        }
        if (digits.empty() && !has_z) fail(ErrorCode::BadInput, "dangling sign in '" + s + "'");
        BigInt v = digits.empty() ? BigInt(1) : BigInt(digits);
        bump(exp, sign * v);
        any = true;
    }
    if (coeffs.empty()) fail(ErrorCode::BadInput, "empty polynomial string");
    return coeffs;
}

Complex poly_eval(const std::vector<Complex>& coeffs, Complex z) {
    Complex v = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * z + *it;
    return v;
}

namespace {

Complex poly_eval_d(const std::vector<Complex>& coeffs, Complex z, Complex& dv) {
    Complex v = 0.0;
    dv = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        dv = dv * z + v;
        v = v * z + *it;
    }
    return v;
}

bool coeffs_real(const std::vector<Complex>& c) {
    for (const auto& x : c)
        if (x.imag() != 0.0) return false;
    return true;
}

void newton_polish(const std::vector<Complex>& c, Complex& z, int steps) {
    for (int s = 0; s < steps; ++s) {
        Complex d, v = poly_eval_d(c, z, d);
        if (std::abs(d) == 0.0) return;
        Complex step = v / d;
        z -= step;
        if (std::abs(step) < 1e-17 * (1.0 + std::abs(z))) return;
    }
}

std::vector<Complex> aberth_pass(const std::vector<Complex>& c, double start_radius,
                                 int max_iter) {
    const int n = static_cast<int>(c.size()) - 1;
    std::vector<Complex> z(n);
    for (int j = 0; j < n; ++j) {
        // irrational angle step breaks any symmetry the root set may have
        double th = kTwoPi * (static_cast<double>(j) / n + 0.36602540378443865 / n);
        double r = start_radius * (1.0 + 0.08 * std::fmod(0.6180339887498949 * (j + 1), 1.0));
        z[j] = std::polar(r, th);
    }
    for (int it = 0; it < max_iter; ++it) {
        double worst = 0.0;
        for (int j = 0; j < n; ++j) {
            Complex d, v = poly_eval_d(c, z[j], d);
            if (std::abs(v) == 0.0) continue;
            if (std::abs(d) == 0.0) {
                z[j] += Complex(1e-8, 1e-8);
                worst = 1.0;
                continue;
            }
            Complex nr = v / d;
            Complex s = 0.0;
            for (int k = 0; k < n; ++k)
                if (k != j) s += 1.0 / (z[j] - z[k]);
            Complex denom = 1.0 - nr * s;
            Complex w = std::abs(denom) < 1e-300 ? nr : nr / denom;
            z[j] -= w;
            worst = std::max(worst, std::abs(w) / (1.0 + std::abs(z[j])));
        }
        if (worst < 1e-15) break;
    }
    return z;
}

double residual_scale(const std::vector<Complex>& c) {
    double m = 0.0;
    for (const auto& x : c) m = std::max(m, std::abs(x));
    return std::max(1.0, m);
}

bool residuals_ok(const std::vector<Complex>& c, const std::vector<Complex>& z,
                  double tol_scale) {
    const int n = static_cast<int>(c.size()) - 1;
    double sc = residual_scale(c);
    for (const auto& r : z)
        if (std::abs(poly_eval(c, r)) > tol_scale * sc * std::pow(1.0 + std::abs(r), n))
            return false;
    return true;
}

} // namespace

std::vector<Complex> find_roots(const std::vector<Complex>& coeffs_in, double tol_scale,
                                int max_iter) {
    // strip zero leading coefficients, then zero roots
    std::vector<Complex> c(coeffs_in);
    while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
    if (c.size() <= 1) {
        if (c.empty()) fail(ErrorCode::ZeroPolynomial, "all coefficients vanish");
        return {};
    }
    int zero_roots = 0;
    while (std::abs(c.front()) == 0.0) {
        c.erase(c.begin());
        ++zero_roots;
    }

    std::vector<Complex> roots;
    if (c.size() > 1) {
        roots = aberth_pass(c, 1.0, max_iter);
        for (auto& z : roots) newton_polish(c, z, 8);
        if (!residuals_ok(c, roots, tol_scale)) {
            // rare: roots far from the unit circle; restart from the Cauchy bound
            double cb = 0.0;
            for (std::size_t i = 0; i + 1 < c.size(); ++i)
                cb = std::max(cb, std::abs(c[i] / c.back()));
            roots = aberth_pass(c, 1.0 + cb, max_iter);
            for (auto& z : roots) newton_polish(c, z, 12);
            if (!residuals_ok(c, roots, tol_scale))
                fail(ErrorCode::RootFindFailed, "residual target not reached");
        }
    }

    if (coeffs_real(c)) {
        // snap near-real roots, then average conjugate pairs so they match exactly
        for (auto& z : roots)
            if (std::abs(z.imag()) <= 1e-8 * (1.0 + std::abs(z))) {
                z = Complex(z.real(), 0.0);
                newton_polish(c, z, 4);
                z = Complex(z.real(), 0.0);
            }
        std::vector<bool> used(roots.size(), false);
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if (used[i] || roots[i].imag() == 0.0) continue;
            std::size_t best = i;
            double bd = 1e308;
            for (std::size_t k = i + 1; k < roots.size(); ++k) {
                if (used[k] || roots[k].imag() == 0.0) continue;
                double d = std::abs(roots[k] - std::conj(roots[i]));
                if (d < bd) {
                    bd = d;
                    best = k;
                }
            }
            if (best != i) {
                Complex avg = 0.5 * (roots[i] + std::conj(roots[best]));
                if (avg.imag() < 0.0) avg = std::conj(avg);
                roots[i] = avg.imag() > 0 ? avg : std::conj(avg);
                roots[best] = std::conj(roots[i]);
                used[i] = used[best] = true;
            }
        }
        if (!residuals_ok(c, roots, 10 * tol_scale))
            fail(ErrorCode::RootFindFailed, "conjugate pairing degraded the residuals");
    }

    for (int k = 0; k < zero_roots; ++k) roots.push_back(Complex(0.0, 0.0));
    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
        double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma > mb;
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return roots;
}

std::vector<Complex> find_roots(const std::vector<BigInt>& coeffs_ascending) {
    std::vector<Complex> c;
    c.reserve(coeffs_ascending.size());
    for (const auto& x : coeffs_ascending) c.emplace_back(to_double(x), 0.0);
    return find_roots(c);
}

std::vector<double> root_residuals(const std::vector<Complex>& coeffs,
                                   const std::vector<Complex>& roots) {
    int n = static_cast<int>(coeffs.size()) - 1;
    std::vector<double> res;
    res.reserve(roots.size());
    for (const auto& r : roots)
        res.push_back(std::abs(poly_eval(coeffs, r)) / std::pow(1.0 + std::abs(r), n));
    return res;
}

} // namespace reflab
