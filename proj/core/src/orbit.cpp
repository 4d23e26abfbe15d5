#include "reflab/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

#include "reflab/errors.hpp"
#include "reflab/numeric.hpp"

namespace reflab {

bool operator==(const TorusState& a, const TorusState& b) {
    return a.den == b.den && a.nums == b.nums;
}

namespace {

BigInt mod_pos(BigInt x, const BigInt& d) {
    x %= d;
    if (x < 0) x += d;
    return x;
}

std::string state_key(const std::vector<BigInt>& nums) {
    std::ostringstream os;
    for (const auto& x : nums) os << x << ',';
    return os.str();
}

std::vector<BigInt> companion_step(const AlgebraicContext& ctx,
                                   const std::vector<BigInt>& x, const BigInt& D) {
    const int n = ctx.degree();
    std::vector<BigInt> y(n);
    for (int i = 0; i + 1 < n; ++i) y[i] = x[i + 1];
    BigInt s = 0;
    for (int j = 0; j < n; ++j) s -= ctx.minpoly.c[j] * x[j];
    y[n - 1] = mod_pos(s, D);
    return y;
}

} // namespace

OrbitResult torus_orbit(const AlgebraicContext& ctx, const std::vector<Rational>& q) {
    const int n = ctx.degree();
    if (static_cast<int>(q.size()) != n)
        fail(ErrorCode::DimensionMismatch, "seed length != degree");

    BigInt D = 1;
    for (const auto& r : q) D = lcm(D, den(r));
    std::vector<BigInt> x(n);
    for (int i = 0; i < n; ++i) x[i] = mod_pos(num(q[i]) * (D / den(q[i])), D);

    std::unordered_map<std::string, std::int64_t> seen;
    std::vector<std::vector<BigInt>> states;
    std::int64_t first = -1, repeat = -1;
    for (std::int64_t step = 0;; ++step) {
        if (step > 10000000)
            fail(ErrorCode::OrbitTooLong, "more than 1e7 states before a repeat");
        auto [it, fresh] = seen.emplace(state_key(x), step);
        if (!fresh) {
            first = it->second;
            repeat = step;
            break;
        }
        states.push_back(x);
        x = companion_step(ctx, x, D);
    }

    OrbitResult out;
    out.preperiod = first;
    out.period = repeat - first;
    out.seed_q = q;
    for (std::int64_t i = first; i < repeat; ++i)
        out.cycle.push_back(TorusState{states[i], D});
    out.alpha = alpha_from_rational_vector(ctx, q).alpha;
    return out;
}

namespace {

using ZPoly = std::vector<BigInt>;  // ascending, exact

// quotient of a by monic b, exact division (remainder known to vanish)
ZPoly zpoly_div(const ZPoly& a, const ZPoly& b) {
    ZPoly r(a);
    int db = static_cast<int>(b.size()) - 1;
    int da = static_cast<int>(r.size()) - 1;
    ZPoly qout(da - db + 1, BigInt(0));
    for (int d = da; d >= db; --d) {
        BigInt f = r[d];
        if (f == 0) continue;
        qout[d - db] = f;
        for (int i = 0; i <= db; ++i) r[d - db + i] -= f * b[i];
    }
    return qout;
}

const ZPoly& cyclotomic(int m, std::map<int, ZPoly>& memo) {
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    ZPoly f(m + 1, BigInt(0));
    f[0] = -1;
    f[m] = 1;  // x^m - 1
    for (int d = 1; d < m; ++d)
        if (m % d == 0) f = zpoly_div(f, cyclotomic(d, memo));
    return memo.emplace(m, std::move(f)).first->second;
}

// is sum_t c_t zeta_M^{e_t} exactly zero? reduce mod Phi_M over Q
bool cyclotomic_sum_is_zero(int M, const std::vector<std::pair<Rational, int>>& terms) {
    std::vector<Rational> S(M, Rational(0));
    for (const auto& [c, e] : terms) S[((e % M) + M) % M] += c;

    std::map<int, ZPoly> memo;
    const ZPoly& phi = cyclotomic(M, memo);
    int dp = static_cast<int>(phi.size()) - 1;
    for (int d = M - 1; d >= dp; --d) {
        Rational f = S[d];
        if (f == 0) continue;
        for (int i = 0; i <= dp; ++i) S[d - dp + i] -= f * Rational(phi[i]);
    }
    for (int d = 0; d < dp; ++d)
        if (S[d] != 0) return false;
    return true;
}

} // namespace

double cycle_mean_log(const TrigPolynomial& P, const OrbitResult& orbit) {
    if (orbit.cycle.empty()) fail(ErrorCode::BadInput, "orbit has no cycle");
    const int n = static_cast<int>(orbit.cycle.front().nums.size());
    for (const auto& t : P.terms)
        if (static_cast<int>(t.exps.size()) != n)
            fail(ErrorCode::DimensionMismatch, "exponent length != torus dimension");

    double sum = 0.0;
    for (const auto& st : orbit.cycle) {
        const BigInt& D = st.den;
        std::vector<BigInt> angles(P.terms.size());  // e . x mod D, angle m/D
        Complex v = 0.0;
        for (std::size_t t = 0; t < P.terms.size(); ++t) {
            BigInt m = 0;
            for (int i = 0; i < n; ++i) m += BigInt(P.terms[t].exps[i]) * st.nums[i];
            angles[t] = mod_pos(m, D);
            v += P.terms[t].coeff *
                 std::polar(1.0, kTwoPi * to_double(angles[t]) / to_double(D));
        }
        double av = std::abs(v);
        if (av < 1e-13 && D < 30000) {
            // candidate exact zero: check the vanishing sum in Q(zeta_M)
            bool exact_ok = true;
            int Dl = D.convert_to<int>();
            int M = Dl % 4 == 0 ? Dl : (Dl % 2 == 0 ? 2 * Dl : 4 * Dl);
            std::vector<std::pair<Rational, int>> terms;
            for (std::size_t t = 0; t < P.terms.size(); ++t) {
                Rational re, im;
                double cr = P.terms[t].coeff.real(), ci = P.terms[t].coeff.imag();
                if (!reconstruct_rational(cr, 1000000, 1e-12 * (1.0 + std::abs(cr)), re) ||
                    !reconstruct_rational(ci, 1000000, 1e-12 * (1.0 + std::abs(ci)), im)) {
                    exact_ok = false;
                    break;
                }
                int e = (angles[t] * (M / Dl)).convert_to<int>();
                if (re != 0) terms.emplace_back(re, e);
                if (im != 0) terms.emplace_back(im, e + M / 4);
            }
            if (exact_ok && cyclotomic_sum_is_zero(M, terms)) {
                std::ostringstream os;
                os << "P vanishes at cycle state (";
                for (int i = 0; i < n; ++i)
                    os << st.nums[i] << "/" << D << (i + 1 < n ? ", " : ")");
                fail(ErrorCode::ZeroOnCycle, os.str());
            }
        }
        if (av == 0.0) fail(ErrorCode::ZeroOnCycle, "P vanishes at a cycle state");
        sum += std::log(av);
    }
    return sum / static_cast<double>(orbit.cycle.size());
}

ErdosSeed erdos_seed(const AlgebraicContext& ctx, const std::vector<BigInt>& q) {
    if (ctx.classification != Classification::PV)
        fail(ErrorCode::NotPV, "construction needs a PV context");
    bool nonzero = false;
    for (const auto& x : q)
        if (x != 0) nonzero = true;
    if (!nonzero) fail(ErrorCode::ZeroVector, "seed must be nonzero");

    std::vector<Rational> qr(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) qr[i] = Rational(q[i]);
    ErdosSeed out;
    out.alpha = alpha_from_rational_vector(ctx, qr).alpha;
    out.prediction = "converges to nonzero gamma";
    return out;
}

std::vector<double> shadowing_distances(const AlgebraicContext& ctx,
                                        const std::vector<Rational>& q, int k_max) {
    const int n = ctx.degree();
    if (static_cast<int>(q.size()) != n)
        fail(ErrorCode::DimensionMismatch, "seed length != degree");
    double alpha = alpha_from_rational_vector(ctx, q).alpha;

    BigInt D = 1;
    for (const auto& r : q) D = lcm(D, den(r));
    std::vector<BigInt> x(n);
    for (int i = 0; i < n; ++i) x[i] = mod_pos(num(q[i]) * (D / den(q[i])), D);

    const long double lam = ctx.lambda1();
    std::vector<double> out;
    out.reserve(k_max + 1);
    long double base = alpha;  // alpha * lambda^k
    for (int k = 0; k <= k_max; ++k) {
        double dist = 0.0;
        long double comp = base;  // alpha * lambda^{k+i}
        for (int i = 0; i < n; ++i) {
            double rat = to_double(Rational(x[i], D));
            double d = std::abs(std::remainder(static_cast<double>(comp) - rat, 1.0));
            dist = std::max(dist, d);
            comp *= lam;
        }
        out.push_back(dist);
        x = companion_step(ctx, x, D);
        base *= lam;
    }
    return out;
}

} // namespace reflab
