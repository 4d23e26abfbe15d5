#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "reflab/algebra.hpp"

namespace reflab {

/// One translation tau_j: a plain real, an element of Z[lambda] in the power
/// basis, or exact rational coordinates against a user-supplied frequency
/// basis. `value` always holds the real value.
struct Translation {
    enum class Kind { PlainReal, ZLambda, BasisCoords };
    Kind kind = Kind::PlainReal;
    double value = 0.0;
    std::vector<BigInt> zlambda;   // Kind::ZLambda
    std::vector<Rational> coords;  // Kind::BasisCoords

    static Translation real(double v);
    static Translation zl(std::vector<BigInt> t);
    static Translation basis_coords(std::vector<Rational> c);
};

/// A(y) = |lambda|^{-1} sum_j a_j e^{2 pi i tau_j y} with sum a_j = |lambda|,
/// so A(0) = 1.
struct Filter {
    double lambda = 2.0;
    std::vector<Complex> coeffs;
    std::vector<Translation> translations;
    std::vector<double> basis;  // optional user frequency basis
    std::shared_ptr<const AlgebraicContext> ctx;  // set when lambda is algebraic

    int taps() const { return static_cast<int>(coeffs.size()); }
    std::vector<double> tau_values() const;
    /// coeffs divided by |lambda|, i.e. the weights that sum to 1.
    std::vector<Complex> normalized_coeffs() const;
};

/// Validates and assembles a Filter; resolves ZLambda translation values via
/// ctx. Checks |lambda| > 1, nonzero coefficients, sum a_j = |lambda| within
/// 1e-12, and strictly increasing translations.
Filter make_filter(double lambda, std::vector<Complex> coeffs,
                   std::vector<Translation> translations,
                   std::vector<double> basis = {},
                   std::shared_ptr<const AlgebraicContext> ctx = nullptr);

/// Two equal coefficients |lambda|/2 at translations 0 and 1 (given in Z[lambda]
/// coordinates), the Bernoulli convolution filter for the context's lambda.
Filter bernoulli_filter(std::shared_ptr<const AlgebraicContext> ctx);

Complex eval_filter(const Filter& f, double y);

/// Same evaluation with the phase tau_j * y accumulated in long double; used
/// by the refinable evaluator at large arguments.
Complex eval_filter_ld(const Filter& f, long double y);

struct TrigTerm {
    Complex coeff;
    std::vector<long long> exps;
};

/// P(z_1..z_d) with integer exponents over frequency basis r_1..r_d;
/// P(e^{2 pi i r_1 y}, ..., e^{2 pi i r_d y}) reproduces A(y).
struct TrigPolynomial {
    std::vector<double> basis;
    std::vector<TrigTerm> terms;

    int dim() const { return static_cast<int>(basis.size()); }
    /// P at torus point theta in [0,1)^d, z_i = e^{2 pi i theta_i}.
    Complex eval_angles(const std::vector<double>& theta) const;
    /// P along the line, theta_i = r_i y.
    Complex eval_line(double y) const;
};

/// Lift a filter to a trigonometric polynomial. Modes, in order:
/// all-ZLambda translations (basis = powers of lambda), user basis with exact
/// rational coordinates, or all-rational plain translations (basis = [1/q]).
/// Throws NoExactCoordinates / NotIndependentBasis.
TrigPolynomial to_trig_poly(const Filter& f, const std::vector<double>& basis = {});

/// Measure of {y in [-L, L] : |A(y)| <= v} for each v, via a uniform grid
/// plus bisection refinement of the crossings to 1e-12.
std::vector<std::pair<double, double>> sublevel_measure(const Filter& f, double L,
                                                        const std::vector<double>& v_list,
                                                        std::int64_t grid);

} // namespace reflab
