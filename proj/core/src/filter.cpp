#include "reflab/filter.hpp"

#include <algorithm>
#include <cmath>

#include "reflab/errors.hpp"
#include "reflab/numeric.hpp"

namespace reflab {

Translation Translation::real(double v) {
    Translation t;
    t.kind = Kind::PlainReal;
    t.value = v;
    return t;
}

Translation Translation::zl(std::vector<BigInt> c) {
    Translation t;
    t.kind = Kind::ZLambda;
    t.zlambda = std::move(c);
    return t;
}

Translation Translation::basis_coords(std::vector<Rational> c) {
    Translation t;
    t.kind = Kind::BasisCoords;
    t.coords = std::move(c);
    return t;
}

std::vector<double> Filter::tau_values() const {
    std::vector<double> v;
    v.reserve(translations.size());
    for (const auto& t : translations) v.push_back(t.value);
    return v;
}

std::vector<Complex> Filter::normalized_coeffs() const {
    std::vector<Complex> v(coeffs);
    double al = std::abs(lambda);
    for (auto& c : v) c /= al;
    return v;
}

Filter make_filter(double lambda, std::vector<Complex> coeffs,
                   std::vector<Translation> translations, std::vector<double> basis,
                   std::shared_ptr<const AlgebraicContext> ctx) {
    if (!(std::abs(lambda) > 1.0)) fail(ErrorCode::BadInput, "|lambda| must exceed 1");
    if (coeffs.empty()) fail(ErrorCode::BadInput, "filter needs at least one tap");
    if (coeffs.size() != translations.size())
        fail(ErrorCode::DimensionMismatch, "coefficient and translation counts differ");
    for (const auto& a : coeffs)
        if (a == Complex(0.0, 0.0)) fail(ErrorCode::BadInput, "zero filter coefficient");

    for (auto& t : translations) {
        switch (t.kind) {
            case Translation::Kind::PlainReal: break;
            case Translation::Kind::ZLambda: {
                if (!ctx)
                    fail(ErrorCode::BadInput,
                         "coordinate translations need an algebraic context");
                t.value = zlambda_eval(*ctx, t.zlambda).value;
                break;
            }
            case Translation::Kind::BasisCoords: {
                if (t.coords.size() != basis.size())
                    fail(ErrorCode::DimensionMismatch,
                         "coordinate length differs from basis length");
                double v = 0.0;
                for (std::size_t i = 0; i < basis.size(); ++i)
                    v += to_double(t.coords[i]) * basis[i];
                t.value = v;
                break;
            }
        }
    }

    Complex sum = 0.0;
    for (const auto& a : coeffs) sum += a;
    double al = std::abs(lambda);
    if (std::abs(sum - Complex(al, 0.0)) > 1e-12 * std::max(1.0, al))
        fail(ErrorCode::BadInput, "coefficients must sum to |lambda|");

    for (std::size_t j = 1; j < translations.size(); ++j)
        if (!(translations[j - 1].value < translations[j].value))
            fail(ErrorCode::BadInput, "translations must be strictly increasing");

    Filter f;
    f.lambda = lambda;
    f.coeffs = std::move(coeffs);
    f.translations = std::move(translations);
    f.basis = std::move(basis);
    f.ctx = std::move(ctx);
    return f;
}

Filter bernoulli_filter(std::shared_ptr<const AlgebraicContext> ctx) {
    const int n = ctx->degree();
    double lam = ctx->lambda1();
    std::vector<BigInt> zero(n, BigInt(0)), one(n, BigInt(0));
    one[0] = 1;
    double half = std::abs(lam) / 2.0;
    return make_filter(lam, {half, half},
                       {Translation::zl(zero), Translation::zl(one)}, {}, std::move(ctx));
}

Complex eval_filter(const Filter& f, double y) {
    Complex s = 0.0;
    for (int j = 0; j < f.taps(); ++j)
        s += f.coeffs[j] * std::polar(1.0, kTwoPi * f.translations[j].value * y);
    return s / std::abs(f.lambda);
}

Complex eval_filter_ld(const Filter& f, long double y) {
    const long double two_pi_l = 6.283185307179586476925286766559L;
    Complex s = 0.0;
    for (int j = 0; j < f.taps(); ++j) {
        long double r = remainderl(static_cast<long double>(f.translations[j].value) * y, 1.0L);
        double ang = static_cast<double>(two_pi_l * r);
        s += f.coeffs[j] * Complex(std::cos(ang), std::sin(ang));
    }
    return s / std::abs(f.lambda);
}

Complex TrigPolynomial::eval_angles(const std::vector<double>& theta) const {
    Complex s = 0.0;
    for (const auto& t : terms) {
        double ph = 0.0;
        for (std::size_t i = 0; i < theta.size(); ++i)
            ph += static_cast<double>(t.exps[i]) * theta[i];
        s += t.coeff * std::polar(1.0, kTwoPi * ph);
    }
    return s;
}

Complex TrigPolynomial::eval_line(double y) const {
    std::vector<double> theta(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) theta[i] = basis[i] * y;
    return eval_angles(theta);
}

namespace {

long long to_ll_exponent(const BigInt& e) {
    if (e > BigInt(1) << 62 || e < -(BigInt(1) << 62))
        fail(ErrorCode::BadInput, "exponent too large");
    return e.convert_to<long long>();
}

bool all_kind(const Filter& f, Translation::Kind k) {
    for (const auto& t : f.translations)
        if (t.kind != k) return false;
    return true;
}

} // namespace

TrigPolynomial to_trig_poly(const Filter& f, const std::vector<double>& basis_arg) {
    const std::vector<double>& user = basis_arg.empty() ? f.basis : basis_arg;
    std::vector<Complex> w = f.normalized_coeffs();
    TrigPolynomial P;

    if (!user.empty()) {
        if (!all_kind(f, Translation::Kind::BasisCoords))
            fail(ErrorCode::NoExactCoordinates,
                 "a user basis needs exact coordinates on every translation");
        for (std::size_t i = 0; i < user.size(); ++i) {
            if (user[i] == 0.0)
                fail(ErrorCode::NotIndependentBasis, "zero basis frequency");
            for (std::size_t k = i + 1; k < user.size(); ++k) {
                Rational r;
                double ratio = user[i] / user[k];
                if (reconstruct_rational(ratio, 1000, 1e-12 * (1.0 + std::abs(ratio)), r))
                    fail(ErrorCode::NotIndependentBasis,
                         "basis frequencies are rationally dependent");
            }
        }
        const std::size_t d = user.size();
        // clear per-dimension denominators so exponents are integers
        std::vector<BigInt> scale(d, BigInt(1));
        for (std::size_t i = 0; i < d; ++i)
            for (const auto& t : f.translations) scale[i] = lcm(scale[i], den(t.coords[i]));
        P.basis.resize(d);
        for (std::size_t i = 0; i < d; ++i) P.basis[i] = user[i] / to_double(scale[i]);
        for (int j = 0; j < f.taps(); ++j) {
            TrigTerm term;
            term.coeff = w[j];
            term.exps.resize(d);
            double check = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                BigInt e = num(f.translations[j].coords[i]) *
                           (scale[i] / den(f.translations[j].coords[i]));
                term.exps[i] = to_ll_exponent(e);
                check += static_cast<double>(term.exps[i]) * P.basis[i];
            }
            if (std::abs(check - f.translations[j].value) >
                1e-9 * (1.0 + std::abs(f.translations[j].value)))
                fail(ErrorCode::BadInput, "coordinates do not reproduce the translation");
            P.terms.push_back(std::move(term));
        }
        return P;
    }

    if (all_kind(f, Translation::Kind::ZLambda) && f.ctx) {
        const int n = f.ctx->degree();
        P.basis.resize(n);
        double pw = 1.0;
        for (int i = 0; i < n; ++i) {
            P.basis[i] = pw;
            pw *= f.ctx->lambda1();
        }
        for (int j = 0; j < f.taps(); ++j) {
            TrigTerm term;
            term.coeff = w[j];
            term.exps.resize(n);
            for (int i = 0; i < n; ++i)
                term.exps[i] = to_ll_exponent(f.translations[j].zlambda[i]);
            P.terms.push_back(std::move(term));
        }
        return P;
    }

    if (all_kind(f, Translation::Kind::PlainReal)) {
        std::vector<Rational> taus(f.taps());
        BigInt q = 1;
        for (int j = 0; j < f.taps(); ++j) {
            double v = f.translations[j].value;
            if (!reconstruct_rational(v, 10000, 1e-12 * (1.0 + std::abs(v)), taus[j]))
                fail(ErrorCode::NoExactCoordinates,
                     "translations are not rational and no basis was supplied");
            q = lcm(q, den(taus[j]));
        }
        P.basis = {1.0 / to_double(q)};
        for (int j = 0; j < f.taps(); ++j) {
            TrigTerm term;
            term.coeff = w[j];
            term.exps = {to_ll_exponent(num(taus[j]) * (q / den(taus[j])))};
            P.terms.push_back(std::move(term));
        }
        return P;
    }

    fail(ErrorCode::NoExactCoordinates, "mixed translation representations");
}

std::vector<std::pair<double, double>> sublevel_measure(const Filter& f, double L,
                                                        const std::vector<double>& v_list,
                                                        std::int64_t grid) {
    if (!(L > 0.0)) fail(ErrorCode::BadInput, "window half-width must be positive");
    if (grid < 2) fail(ErrorCode::BadInput, "grid too coarse");

    const double h = 2.0 * L / static_cast<double>(grid);
    std::vector<double> g(grid + 1);
    parallel_for(grid + 1, [&](std::int64_t i) {
        g[i] = std::abs(eval_filter(f, -L + h * static_cast<double>(i)));
    });

    auto cross = [&](double lo, double hi, double v) {
        // |A| - v changes sign on [lo, hi]; bisect to 1e-12
        double flo = std::abs(eval_filter(f, lo)) - v;
        for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
            double mid = 0.5 * (lo + hi);
            double fm = std::abs(eval_filter(f, mid)) - v;
            if ((flo <= 0.0) == (fm <= 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };

    std::vector<std::pair<double, double>> out;
    out.reserve(v_list.size());
    for (double v : v_list) {
        double measure = 0.0;
        for (std::int64_t i = 0; i < grid; ++i) {
            double a = -L + h * static_cast<double>(i), b = a + h;
            bool ina = g[i] <= v, inb = g[i + 1] <= v;
            if (ina && inb) {
                measure += b - a;
            } else if (ina != inb) {
                double c = cross(a, b, v);
                measure += ina ? (c - a) : (b - c);
            }
        }
        out.emplace_back(v, measure);
    }
    return out;
}

} // namespace reflab
