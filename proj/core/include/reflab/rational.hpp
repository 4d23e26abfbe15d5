#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "reflab/errors.hpp"

namespace reflab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& n) { return n.convert_to<double>(); }

/// Exact conversion; every finite double is a dyadic rational.
Rational rational_from_double(double x);

/// Parse "p/q", "p", or a plain integer string. Throws BadInput.
Rational parse_rational(const std::string& s);

/// Best rational approximation p/q with q <= max_den (continued fractions).
/// Returns true and sets out when |x - p/q| <= tol.
bool reconstruct_rational(double x, long max_den, double tol, Rational& out);

/// gcd of a list, nonnegative.
BigInt vec_gcd(const std::vector<BigInt>& v);

/// lcm of two positive integers.
BigInt lcm(const BigInt& a, const BigInt& b);

} // namespace reflab
