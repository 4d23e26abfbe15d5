#include "reflab/rational.hpp"

#include <cmath>
#include <cstdlib>

namespace reflab {

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) fail(ErrorCode::BadInput, "non-finite value has no rational form");
    if (x == 0.0) return Rational(0);
    int e = 0;
    double m = std::frexp(x, &e); // x = m * 2^e, 0.5 <= |m| < 1
    // 53 doublings make the mantissa integral
    auto mant = static_cast<long long>(std::ldexp(m, 53));
    e -= 53;
    Rational r(mant);
    if (e >= 0)
        r *= Rational(BigInt(1) << e);
    else
        r /= Rational(BigInt(1) << -e);
    return r;
}

Rational parse_rational(const std::string& s) {
    auto bad = [&] { fail(ErrorCode::BadInput, "cannot parse rational '" + s + "'"); };
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) bad();
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(t));
        BigInt p(t.substr(0, slash)), q(t.substr(slash + 1));
        if (q == 0) bad();
        return Rational(p, q);
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rational(0); // unreachable
}

bool reconstruct_rational(double x, long max_den, double tol, Rational& out) {
    // continued-fraction convergents of x until the denominator cap
    double a = x;
    long long p0 = 1, q0 = 0, p1 = static_cast<long long>(std::floor(a)), q1 = 1;
    for (int it = 0; it < 64; ++it) {
        if (q1 <= max_den && std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)) <= tol) {
            out = Rational(BigInt(p1), BigInt(q1));
            return true;
        }
        double frac = a - std::floor(a);
        if (frac < 1e-15) break;
        a = 1.0 / frac;
        long long ai = static_cast<long long>(std::floor(a));
        long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den || q2 <= 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    }
    if (q1 <= max_den && q1 > 0 &&
        std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)) <= tol) {
        out = Rational(BigInt(p1), BigInt(q1));
        return true;
    }
    return false;
}

BigInt vec_gcd(const std::vector<BigInt>& v) {
    BigInt g = 0;
    for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
    if (g < 0) g = -g;
    return g;
}

BigInt lcm(const BigInt& a, const BigInt& b) { return boost::multiprecision::lcm(a, b); }

} // namespace reflab
