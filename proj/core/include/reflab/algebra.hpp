#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "reflab/polynomial.hpp"

namespace reflab {

enum class Classification { PV, Salem, Neither };

const char* to_string(Classification c);

/// Element of Z[lambda] in the power basis (1, lambda, ..., lambda^{n-1}).
struct ZLambdaElement {
    std::vector<BigInt> coords;
};

/// Roots, companion matrix, Vandermonde, and exact integer Gram matrix of a
/// monic squarefree integer polynomial with a real dominant root lambda_1.
struct AlgebraicContext {
    IntPolynomial minpoly;
    /// roots[0] is the real root of maximal modulus (> 1); the rest are sorted
    /// by descending modulus, conjugate pairs adjacent with +Im first.
    std::vector<Complex> roots;
    /// n x n integer companion matrix, last row -c_0..-c_{n-1}.
    std::vector<std::vector<BigInt>> companion;
    /// V(i,j) = roots[j]^i, so C V = V diag(roots).
    Eigen::MatrixXcd vandermonde;
    /// G(i,j) = trace C^{i+j} = power sum p_{i+j}, computed exactly.
    std::vector<std::vector<BigInt>> gram;
    Classification classification = Classification::Neither;

    int degree() const { return minpoly.degree(); }
    double lambda1() const { return roots[0].real(); }
};

/// Power sums p_0..p_{m_max} of the roots via Newton's identities, exact.
std::vector<BigInt> power_sums(const IntPolynomial& p, int m_max);

/// Build roots/companion/Vandermonde/Gram and classify. Throws
/// NoRealDominantRoot when no real root has modulus > 1, and
/// BoundaryIndeterminate when a conjugate sits within 1e-9 of the unit circle
/// without the reciprocal-polynomial structure that certifies a Salem number.
AlgebraicContext build_context(const IntPolynomial& p);

struct ZLambdaValue {
    double value;                    // coordinates against powers of lambda_1
    std::vector<Complex> conjugates; // same element under lambda_2..lambda_n
};

/// Evaluate an integer coordinate vector at lambda_1 and at each conjugate.
ZLambdaValue zlambda_eval(const AlgebraicContext& ctx, const std::vector<BigInt>& t);

struct AlphaResult {
    double alpha;              // first component of u, real by construction
    std::vector<Complex> u;    // u = V^T G^{-1} q, the eigenbasis coefficients
    std::vector<Rational> b;   // exact solution of G b = q
};

/// Decompose a rational vector q = sum_j u_j (1, lambda_j, ..., lambda_j^{n-1})
/// via an exact rational solve against the integer Gram matrix.
AlphaResult alpha_from_rational_vector(const AlgebraicContext& ctx,
                                       const std::vector<Rational>& q);

/// Exact rational linear solve A x = rhs (Gaussian elimination, partial pivot).
/// Throws BadInput when A is singular.
std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> A,
                                     std::vector<Rational> rhs);

/// det of an exact rational matrix (fraction-free on a copy).
Rational det_rational(std::vector<std::vector<Rational>> A);

} // namespace reflab
