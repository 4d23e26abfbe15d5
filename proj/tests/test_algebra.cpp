#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "reflab/algebra.hpp"

using namespace reflab;

namespace {

AlgebraicContext ctx_of(std::vector<BigInt> low) { return build_context(validate_min_poly(low)); }

std::vector<std::vector<Rational>> to_rat(const std::vector<std::vector<BigInt>>& m) {
    std::vector<std::vector<Rational>> out(m.size(), std::vector<Rational>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = Rational(m[i][j]);
    return out;
}

} // namespace

TEST_CASE("golden context: companion, gram, determinant") {
    AlgebraicContext ctx = ctx_of({-1, -1});
    CHECK(ctx.degree() == 2);
    CHECK(ctx.lambda1() == doctest::Approx(1.6180339887498949).epsilon(1e-15));
    CHECK(ctx.classification == Classification::PV);

    CHECK(ctx.companion[0][0] == 0);
    CHECK(ctx.companion[0][1] == 1);
    CHECK(ctx.companion[1][0] == 1);
    CHECK(ctx.companion[1][1] == 1);

    CHECK(ctx.gram[0][0] == 2);
    CHECK(ctx.gram[0][1] == 1);
    CHECK(ctx.gram[1][0] == 1);
    CHECK(ctx.gram[1][1] == 3);
    // det G equals the discriminant of z^2 - z - 1
    CHECK(det_rational(to_rat(ctx.gram)) == Rational(5));
}

TEST_CASE("power sums via newton identities") {
    IntPolynomial p = validate_min_poly({-1, -1});
    auto ps = power_sums(p, 4);
    CHECK(ps[0] == 2);
    CHECK(ps[1] == 1);
    CHECK(ps[2] == 3);
    CHECK(ps[3] == 4);
    CHECK(ps[4] == 7);
}

TEST_CASE("gram entries match trace of companion powers") {
    AlgebraicContext ctx = ctx_of({-1, -1, 0});  // z^3 - z - 1
    const int n = ctx.degree();
    // complex side: sum of root powers
    for (int k = 0; k <= 2 * n - 2; ++k) {
        Complex s = 0.0;
        for (auto r : ctx.roots) s += std::pow(r, k);
        int i = std::min(k, n - 1), j = k - i;
        CHECK(std::abs(s.imag()) < 1e-9);
        CHECK(s.real() == doctest::Approx(to_double(ctx.gram[i][j])).epsilon(1e-10));
    }
}

TEST_CASE("companion diagonalization C V = V D") {
    AlgebraicContext ctx = ctx_of({-1, 0, 0, -1});  // z^4 - z^3 - 1
    const int n = ctx.degree();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Complex cv = 0.0;
            for (int k = 0; k < n; ++k)
                cv += Complex(to_double(ctx.companion[i][k]), 0.0) * ctx.vandermonde(k, j);
            Complex vd = ctx.vandermonde(i, j) * ctx.roots[j];
            CHECK(std::abs(cv - vd) < 1e-9);
        }
}

TEST_CASE("classification across known minimal polynomials") {
    struct Row {
        std::vector<BigInt> low;
        double lambda;
    };
    // dominant roots printed to four decimals
    std::vector<Row> pv = {
        {{-1, -1}, 1.6180},        {{-1, 1}, -1.6180},      {{2, -4}, 3.4142},
        {{1, -1, -2}, 2.2470},     {{-1, -1, 0}, 1.3247},   {{-1, 0, 0, -1}, 1.3803},
    };
    for (const auto& row : pv) {
        AlgebraicContext ctx = ctx_of(row.low);
        CHECK(ctx.classification == Classification::PV);
        CHECK(std::abs(ctx.lambda1() - row.lambda) < 1e-4);
        for (int j = 1; j < ctx.degree(); ++j) CHECK(std::abs(ctx.roots[j]) < 1.0);
    }

    std::vector<BigInt> lehmer = {1, 1, 0, -1, -1, -1, -1, -1, 0, 1};
    CHECK(ctx_of(lehmer).classification == Classification::Salem);
    CHECK(ctx_of(lehmer).lambda1() == doctest::Approx(1.17628).epsilon(1e-4));

    CHECK(ctx_of({-2, 0}).classification == Classification::Neither);  // z^2 - 2
}

TEST_CASE("contexts that cannot be built") {
    CHECK_THROWS_WITH_AS(ctx_of({1, 0}), doctest::Contains("NoRealDominantRoot"), Error);
    // (z^2 - z + 1)(z - 2): unit-modulus pair without reciprocal structure
    CHECK_THROWS_WITH_AS(ctx_of({-2, 3, -3}), doctest::Contains("BoundaryIndeterminate"),
                         Error);
}

TEST_CASE("zlambda evaluation at the root and its conjugates") {
    AlgebraicContext ctx = ctx_of({-1, -1});
    auto v = zlambda_eval(ctx, {BigInt(0), BigInt(1)});
    CHECK(v.value == doctest::Approx(1.6180339887498949).epsilon(1e-15));
    REQUIRE(v.conjugates.size() == 1);
    CHECK(v.conjugates[0].real() == doctest::Approx(-0.6180339887498949).epsilon(1e-14));

    auto w = zlambda_eval(ctx, {BigInt(1), BigInt(1)});
    CHECK(w.value == doctest::Approx(2.6180339887498949).epsilon(1e-15));
    CHECK(w.conjugates[0].real() == doctest::Approx(0.3819660112501051).epsilon(1e-13));
}

TEST_CASE("eigenbasis coefficient of rational seeds") {
    AlgebraicContext ctx = ctx_of({-1, -1});
    double lam = ctx.lambda1();
    CHECK(alpha_from_rational_vector(ctx, {Rational(1), Rational(0)}).alpha ==
          doctest::Approx((3.0 - lam) / 5.0).epsilon(1e-14));
    CHECK(alpha_from_rational_vector(ctx, {Rational(0), Rational(1)}).alpha ==
          doctest::Approx((-1.0 + 2.0 * lam) / 5.0).epsilon(1e-14));
    CHECK(alpha_from_rational_vector(ctx, {Rational(1, 3), Rational(0)}).alpha ==
          doctest::Approx((3.0 - lam) / 15.0).epsilon(1e-14));
    CHECK(alpha_from_rational_vector(ctx, {Rational(0), Rational(0)}).alpha == 0.0);
    CHECK_THROWS_WITH_AS(alpha_from_rational_vector(ctx, {Rational(1)}),
                         doctest::Contains("DimensionMismatch"), Error);
}

TEST_CASE("eigenbasis decomposition reconstructs the seed") {
    AlgebraicContext ctx = ctx_of({-1, -1, 0});  // z^3 - z - 1
    std::vector<Rational> q = {Rational(2, 7), Rational(-1, 3), Rational(5, 11)};
    auto res = alpha_from_rational_vector(ctx, q);
    for (int i = 0; i < 3; ++i) {
        Complex s = 0.0;
        for (int j = 0; j < 3; ++j) s += res.u[j] * std::pow(ctx.roots[j], i);
        CHECK(std::abs(s - Complex(to_double(q[i]), 0.0)) < 1e-10);
    }
}

TEST_CASE("exact rational solve and determinant") {
    std::vector<std::vector<Rational>> A = {{Rational(2), Rational(1)},
                                            {Rational(1), Rational(3)}};
    auto x = solve_rational(A, {Rational(5), Rational(10)});
    CHECK(x[0] == Rational(1));
    CHECK(x[1] == Rational(3));
    CHECK(det_rational(A) == Rational(5));

    std::vector<std::vector<Rational>> S = {{Rational(1), Rational(2)},
                                            {Rational(2), Rational(4)}};
    CHECK_THROWS_AS(solve_rational(S, {Rational(1), Rational(1)}), Error);
}
