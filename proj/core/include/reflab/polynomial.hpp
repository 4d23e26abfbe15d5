#pragma once

#include <string>
#include <vector>

#include "reflab/numeric.hpp"
#include "reflab/rational.hpp"

namespace reflab {

/// Monic integer polynomial z^n + c_{n-1} z^{n-1} + ... + c_0, stored as the
/// low coefficients c_0..c_{n-1} (the leading 1 is implicit).
struct IntPolynomial {
    std::vector<BigInt> c;

    int degree() const { return static_cast<int>(c.size()); }
    /// All coefficients including the leading 1, ascending.
    std::vector<BigInt> full() const;
};

/// Checks degree >= 1, c_0 != 0, and squarefreeness (gcd(P, P') constant).
/// Throws DegreeZero / ZeroConstantTerm / NotSquarefree.
IntPolynomial validate_min_poly(const std::vector<BigInt>& low_coeffs);

/// Parse forms like "z^2-z-1", "z^10+z^9-z^7-...", "2z^3-4z+6".
/// Returns ascending integer coefficients (constant first), possibly non-monic.
std::vector<BigInt> parse_poly_string(const std::string& s);

/// p(z) for ascending complex coefficients (Horner).
Complex poly_eval(const std::vector<Complex>& coeffs, Complex z);

/// Simultaneous Aberth-Ehrlich iteration from perturbed unit-circle starts,
/// then Newton polishing. Roots of real-coefficient inputs come back with
/// conjugate pairs exactly paired and near-real roots snapped to the axis.
/// Residual target: |p(r)| <= tol_scale * (1+|r|)^deg; throws RootFindFailed.
std::vector<Complex> find_roots(const std::vector<Complex>& coeffs_ascending,
                                double tol_scale = 1e-13, int max_iter = 200);

/// find_roots on an integer polynomial (leading coefficient included).
std::vector<Complex> find_roots(const std::vector<BigInt>& coeffs_ascending);

/// |p(r)| / (1+|r|)^deg for each root: the normalized residuals used in
/// accuracy reporting.
std::vector<double> root_residuals(const std::vector<Complex>& coeffs_ascending,
                                   const std::vector<Complex>& roots);

} // namespace reflab
