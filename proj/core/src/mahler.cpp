#include "reflab/mahler.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "reflab/errors.hpp"
#include "reflab/numeric.hpp"
#include "reflab/polynomial.hpp"

namespace reflab {

const char* to_string(MeanMethod m) {
    switch (m) {
        case MeanMethod::JensenExact: return "jensen_exact";
        case MeanMethod::TorusQmc: return "torus_qmc";
        case MeanMethod::LineAverage: return "line_average";
        case MeanMethod::BoydLawton: return "boyd_lawton";
    }
    return "jensen_exact";
}

MeanEstimate mahler_jensen(const std::vector<Complex>& coeffs_ascending) {
    std::vector<Complex> c(coeffs_ascending);
    while (!c.empty() && c.back() == Complex(0.0, 0.0)) c.pop_back();
    if (c.empty()) fail(ErrorCode::ZeroPolynomial, "all coefficients vanish");

    MeanEstimate out;
    out.method = MeanMethod::JensenExact;
    out.value = std::abs(c.back());
    if (c.size() == 1) {
        out.value_unclipped = out.value;
        return out;
    }

    std::vector<Complex> roots = find_roots(c);
    std::vector<Complex> dc(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) dc[i - 1] = static_cast<double>(i) * c[i];

    double rel_err = 0.0;
    for (const auto& r : roots) {
        double m = std::abs(r);
        if (m > 1.0) out.value *= m;
        Complex d = poly_eval(dc, r);
        if (std::abs(d) > 0.0)
            rel_err += std::abs(poly_eval(c, r) / d) / std::max(1.0, m);
    }
    out.value_unclipped = out.value;
    out.half_width = out.value * rel_err;
    out.samples = static_cast<std::int64_t>(roots.size());
    return out;
}

namespace {

std::vector<double> weyl_alphas(int d) {
    std::vector<double> a;
    int cand = 2;
    while (static_cast<int>(a.size()) < d) {
        bool prime = cand >= 2;
        for (int p = 2; p * p <= cand; ++p)
            if (cand % p == 0) {
                prime = false;
                break;
            }
        if (prime) {
            double s = std::sqrt(static_cast<double>(cand));
            a.push_back(s - std::floor(s));
        }
        ++cand;
    }
    return a;
}

} // namespace

MeanEstimate mahler_torus_mean(const TrigPolynomial& P, std::int64_t n_samples,
                               double clip, std::uint64_t seed) {
    if (P.terms.empty()) fail(ErrorCode::BadInput, "empty trigonometric polynomial");
    if (!(clip > 0.0)) fail(ErrorCode::BadInput, "clip must be positive");
    if (n_samples < 8) fail(ErrorCode::BadInput, "need at least 8 samples");

    const int d = P.dim();
    const int nb = 8;
    const std::int64_t per = n_samples / nb;
    const std::vector<double> alpha = weyl_alphas(d);
    const double lclip = std::log(clip);
    const double lfloor = std::log(1e-300);

    std::vector<double> bmean(nb), bmean_floor(nb);
    parallel_for(nb, [&](std::int64_t b) {
        SplitMix64 rng{seed * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL *
                       (static_cast<std::uint64_t>(b) + 1)};
        std::vector<double> x(d);
        for (int i = 0; i < d; ++i) x[i] = rng.next_unit();
        double sc = 0.0, sf = 0.0;
        for (std::int64_t k = 0; k < per; ++k) {
            double lg = std::log(std::abs(P.eval_angles(x)));
            sc += std::max(lg, lclip);
            sf += std::max(lg, lfloor);
            for (int i = 0; i < d; ++i) {
                x[i] += alpha[i];
                if (x[i] >= 1.0) x[i] -= 1.0;
            }
        }
        bmean[b] = sc / static_cast<double>(per);
        bmean_floor[b] = sf / static_cast<double>(per);
    });

    double mc = 0.0, mf = 0.0;
    for (int b = 0; b < nb; ++b) {
        mc += bmean[b];
        mf += bmean_floor[b];
    }
    mc /= nb;
    mf /= nb;
    double var = 0.0;
    for (int b = 0; b < nb; ++b) var += (bmean[b] - mc) * (bmean[b] - mc);
    var /= (nb - 1);

    MeanEstimate out;
    out.method = MeanMethod::TorusQmc;
    out.value = std::exp(mc);
    out.value_unclipped = std::exp(mf);
    out.half_width = out.value * 2.0 * std::sqrt(var / nb);
    out.samples = per * nb;
    out.clip = clip;
    return out;
}

MeanEstimate bohr_mean_log_modulus(const Filter& f, const std::vector<double>& L_schedule) {
    if (L_schedule.size() < 2)
        fail(ErrorCode::ScheduleTooShort, "need at least two window sizes");
    for (std::size_t i = 1; i < L_schedule.size(); ++i)
        if (!(L_schedule[i] > L_schedule[i - 1]))
            fail(ErrorCode::BadInput, "window schedule must be increasing");
    if (L_schedule.back() < 1e3)
        fail(ErrorCode::ScheduleTooShort, "final window must reach 1e3");

    const double clip = 1e-8;
    std::vector<Complex> w = f.normalized_coeffs();
    std::vector<double> tau = f.tau_values();

    double prev = 0.0, last = 0.0, last_floor = 0.0;
    std::int64_t evals = 0;
    for (std::size_t i = 0; i < L_schedule.size(); ++i) {
        LogIntegralResult r = log_abs_line_integral(w, tau, L_schedule[i], 64, clip, 6);
        prev = last;
        last = r.clipped / (2.0 * L_schedule[i]);
        last_floor = r.floored / (2.0 * L_schedule[i]);
        evals += r.evaluations;
    }

    MeanEstimate out;
    out.method = MeanMethod::LineAverage;
    out.value = last;
    out.value_unclipped = last_floor;
    out.half_width = std::abs(last - prev);
    out.samples = evals;
    out.clip = clip;
    return out;
}

std::vector<MeanEstimate> boyd_lawton_sequence(const TrigPolynomial& P,
                                               const std::vector<int>& N_list) {
    if (P.dim() != 2)
        fail(ErrorCode::UnsupportedDimension, "substitution needs exactly two variables");
    std::vector<MeanEstimate> out;
    out.reserve(N_list.size());
    for (int N : N_list) {
        if (N < 1) fail(ErrorCode::BadInput, "substitution exponent must be >= 1");
        long long lo = 0, hi = 0;
        for (const auto& t : P.terms) {
            long long e = t.exps[0] + static_cast<long long>(N) * t.exps[1];
            lo = std::min(lo, e);
            hi = std::max(hi, e);
        }
        std::vector<Complex> c(static_cast<std::size_t>(hi - lo) + 1, Complex(0.0, 0.0));
        for (const auto& t : P.terms) {
            long long e = t.exps[0] + static_cast<long long>(N) * t.exps[1];
            c[static_cast<std::size_t>(e - lo)] += t.coeff;
        }
        MeanEstimate m = mahler_jensen(c);
        m.method = MeanMethod::BoydLawton;
        out.push_back(m);
    }
    return out;
}

} // namespace reflab
