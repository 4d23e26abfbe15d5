#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>

#include "reflab/filter.hpp"
#include "reflab/quasilattice.hpp"

using namespace reflab;

namespace {

AlgebraicContext golden() { return build_context(validate_min_poly({BigInt(-1), BigInt(-1)})); }
AlgebraicContext plastic() {
    return build_context(validate_min_poly({BigInt(-1), BigInt(-1), BigInt(0)}));
}

std::set<std::vector<BigInt>> coord_set(const QuasilatticeWindow& w) {
    std::set<std::vector<BigInt>> s;
    for (const auto& p : w.points) s.insert(p.coords);
    return s;
}

} // namespace

TEST_CASE("golden window holds the known short values") {
    AlgebraicContext ctx = golden();
    auto w = enumerate_window(ctx, make_admissible(ctx, {0.0, 1.0}), 6.0);
    std::vector<double> pos;
    for (const auto& p : w.points)
        if (p.value > 1e-12) pos.push_back(p.value);
    REQUIRE(pos.size() == 5);
    CHECK(pos[0] == doctest::Approx(1.6180339887).epsilon(1e-9));
    CHECK(pos[1] == doctest::Approx(2.6180339887).epsilon(1e-9));
    CHECK(pos[2] == doctest::Approx(4.2360679775).epsilon(1e-9));
    CHECK(pos[3] == doctest::Approx(5.2360679775).epsilon(1e-9));
    CHECK(pos[4] == doctest::Approx(5.8541019662).epsilon(1e-9));
}

TEST_CASE("zero always belongs, integers enter once sigma passes one") {
    AlgebraicContext ctx = golden();
    auto w1 = enumerate_window(ctx, make_admissible(ctx, {0.0, 1.0}), 1.5);
    bool has_zero = false, has_one = false;
    for (const auto& p : w1.points) {
        if (p.coords[0] == 0 && p.coords[1] == 0) has_zero = true;
        if (p.coords[0] == 1 && p.coords[1] == 0) has_one = true;
    }
    CHECK(has_zero);
    CHECK_FALSE(has_one);  // conjugate of 1 is 1, not inside sigma_2 = 1

    auto w2 = enumerate_window(ctx, make_admissible(ctx, {0.0, 1.01}), 1.5);
    has_one = false;
    for (const auto& p : w2.points)
        if (p.coords[0] == 1 && p.coords[1] == 0) has_one = true;
    CHECK(has_one);
}

TEST_CASE("windows are symmetric and monotone") {
    AlgebraicContext ctx = golden();
    auto w = enumerate_window(ctx, make_admissible(ctx, {0.0, 0.7}), 8.0);
    auto s = coord_set(w);
    for (const auto& p : w.points) {
        std::vector<BigInt> neg = {-p.coords[0], -p.coords[1]};
        CHECK(s.count(neg) == 1);
    }
    // growing sigma or L only adds points
    auto bigger = coord_set(enumerate_window(ctx, make_admissible(ctx, {0.0, 0.9}), 8.0));
    auto longer = coord_set(enumerate_window(ctx, make_admissible(ctx, {0.0, 0.7}), 12.0));
    for (const auto& c : s) {
        CHECK(bigger.count(c) == 1);
        CHECK(longer.count(c) == 1);
    }
    CHECK(bigger.size() > s.size());
    CHECK(longer.size() > s.size());
}

TEST_CASE("sums of window points satisfy the additive bound") {
    AlgebraicContext ctx = golden();
    auto wa = enumerate_window(ctx, make_admissible(ctx, {0.0, 0.7}), 3.0);
    auto wb = enumerate_window(ctx, make_admissible(ctx, {0.0, 0.9}), 4.0);
    auto sum_set = coord_set(enumerate_window(ctx, make_admissible(ctx, {0.0, 1.6}), 7.0));
    for (const auto& p : wa.points)
        for (const auto& q : wb.points) {
            std::vector<BigInt> s = {p.coords[0] + q.coords[0], p.coords[1] + q.coords[1]};
            CHECK(sum_set.count(s) == 1);
        }
}

TEST_CASE("window statistics and separation bounds") {
    AlgebraicContext ctx = golden();
    auto w = enumerate_window(ctx, make_admissible(ctx, {0.0, 1.0}), 200.0);
    WindowStats st = window_stats(w);
    CHECK(st.count == 355);
    CHECK(st.min_gap == doctest::Approx(0.6180339887).epsilon(1e-8));
    CHECK(st.max_gap == doctest::Approx(1.6180339887).epsilon(1e-8));
    // differences live in the doubled window: min_gap >= 2^{1-n} prod sigma_j^{-1}
    CHECK(st.min_gap >= 0.5 - 1e-12);
    // nonzero points are at least prod sigma_j^{-1} away from zero
    for (const auto& p : w.points)
        if (!(p.coords[0] == 0 && p.coords[1] == 0)) CHECK(std::abs(p.value) >= 1.0 - 1e-12);

    // gap structure is already saturated at moderate window lengths
    auto w2 = enumerate_window(ctx, make_admissible(ctx, {0.0, 1.0}), 1000.0);
    WindowStats st2 = window_stats(w2);
    CHECK(st2.max_gap == doctest::Approx(st.max_gap).epsilon(1e-12));
    CHECK(st2.min_gap == doctest::Approx(st.min_gap).epsilon(1e-12));

    auto tiny = enumerate_window(ctx, make_admissible(ctx, {0.0, 1e-6}), 0.5);
    CHECK_THROWS_WITH_AS(window_stats(tiny), doctest::Contains("TooFewPoints"), Error);
}

TEST_CASE("enumeration agrees with brute force on a small window") {
    AlgebraicContext ctx = golden();
    AdmissibleVector sigma = make_admissible(ctx, {0.0, 0.8});
    double L = 5.0;
    auto fast = coord_set(enumerate_window(ctx, sigma, L));
    double lam = ctx.lambda1();
    double conj = ctx.roots[1].real();
    std::set<std::vector<BigInt>> brute;
    for (int a = -15; a <= 15; ++a)
        for (int b = -15; b <= 15; ++b) {
            double value = a + b * lam;
            double c = a + b * conj;
            if (std::abs(value) < L && std::abs(c) < sigma.sigma[1])
                brute.insert({BigInt(a), BigInt(b)});
        }
    CHECK(fast == brute);
}

TEST_CASE("near-boundary conjugates are refused") {
    AlgebraicContext ctx = golden();
    double s2 = -ctx.roots[1].real() + 5e-11;  // the conjugate of lambda sits on the edge
    CHECK_THROWS_WITH_AS(enumerate_window(ctx, make_admissible(ctx, {0.0, s2}), 2.0),
                         doctest::Contains("BoundaryAmbiguous"), Error);
}

TEST_CASE("admissible vector validation") {
    AlgebraicContext ctx = golden();
    CHECK_THROWS_AS(make_admissible(ctx, {0.5, 1.0}), Error);
    CHECK_THROWS_AS(make_admissible(ctx, {0.0, -1.0}), Error);
    CHECK_THROWS_AS(make_admissible(ctx, {0.0}), Error);

    AlgebraicContext p3 = plastic();
    // conjugate pair: the second member is forced equal to the first
    auto adm = make_admissible(p3, {0.0, 0.5, 0.9});
    CHECK(adm.sigma[2] == 0.5);

    AlgebraicContext neither = build_context(validate_min_poly({BigInt(-2), BigInt(0)}));
    CHECK_THROWS_WITH_AS(enumerate_window(neither, AdmissibleVector{{0.0, 1.0}}, 2.0),
                         doctest::Contains("NotPV"), Error);
}

TEST_CASE("smallest window guaranteed to trap a nonzero point") {
    AlgebraicContext ctx = golden();
    auto r1 = minkowski_threshold(ctx, make_admissible(ctx, {0.0, 1.0}));
    CHECK(r1.L_star == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
    CHECK(std::abs(r1.witness.value) == doctest::Approx(1.6180339887).epsilon(1e-9));

    auto r2 = minkowski_threshold(ctx, make_admissible(ctx, {0.0, 2.0}));
    CHECK(r2.L_star == doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-12));
    CHECK(std::abs(r2.witness.value) > 0.0);

    auto r3 = minkowski_threshold(ctx, make_admissible(ctx, {0.0, 100.0}));
    CHECK(r3.L_star == doctest::Approx(0.022360679775).epsilon(1e-9));
}

TEST_CASE("multiplication by lambda in coordinates") {
    AlgebraicContext ctx = golden();
    auto out = multiply_by_lambda(ctx, {BigInt(1), BigInt(0)});
    CHECK(out[0] == 0);
    CHECK(out[1] == 1);
    auto out2 = multiply_by_lambda(ctx, {BigInt(0), BigInt(1)});  // lambda^2 = 1 + lambda
    CHECK(out2[0] == 1);
    CHECK(out2[1] == 1);
}

TEST_CASE("windows scale exactly under multiplication by a unit lambda") {
    AlgebraicContext g = golden();
    // sigma_2 = 1 would put the image boundary |lambda_2| right on the
    // conjugate of the point -lambda; keep the widths generic
    auto rep = check_self_similarity(g, make_admissible(g, {0.0, 0.9}), 9.7);
    CHECK(rep.equal);
    CHECK(rep.left_count == rep.right_count);

    AlgebraicContext p3 = plastic();
    auto rep3 = check_self_similarity(p3, make_admissible(p3, {0.0, 0.9, 0.9}), 5.9);
    CHECK(rep3.equal);

    AlgebraicContext nonunit = build_context(validate_min_poly({BigInt(2), BigInt(-4)}));
    CHECK_THROWS_WITH_AS(
        check_self_similarity(nonunit, make_admissible(nonunit, {0.0, 0.5}), 5.0),
        doctest::Contains("NotUnit"), Error);
}

TEST_CASE("multiscale nesting of translated windows") {
    auto ctx = std::make_shared<AlgebraicContext>(golden());
    // translations 0 and 1 + 2 lambda: conjugates 0 and 1 + 2 lambda_2 = -0.236,
    // inside xi_2 = (1 - |lambda_2|) sigma_2 = 0.382
    Filter ok = make_filter(ctx->lambda1(),
                            {Complex(ctx->lambda1() / 2, 0), Complex(ctx->lambda1() / 2, 0)},
                            {Translation::zl({BigInt(0), BigInt(0)}),
                             Translation::zl({BigInt(1), BigInt(2)})},
                            {}, ctx);
    auto rep = multiscale_check(*ctx, make_admissible(*ctx, {0.0, 1.0}), ok, 8.0);
    CHECK(rep.ok);
    CHECK(rep.checked > 0);
    CHECK(rep.xi[1] == doctest::Approx(1.0 - 0.6180339887498949).epsilon(1e-12));

    // the bernoulli translation tau = 1 has conjugate 1, outside xi_2
    Filter bern = bernoulli_filter(ctx);
    CHECK_THROWS_WITH_AS(multiscale_check(*ctx, make_admissible(*ctx, {0.0, 1.0}), bern, 8.0),
                         doctest::Contains("TranslationOutsideXi"), Error);
}

TEST_CASE("exponential sums over a window") {
    AlgebraicContext ctx = golden();
    auto w = enumerate_window(ctx, make_admissible(ctx, {0.0, 1.0}), 200.0);
    double n = static_cast<double>(w.points.size());
    auto rows = diffraction_sample(w, {0.0, 0.37, 1.8944271910});
    CHECK(rows[0].second == doctest::Approx(n).epsilon(1e-12));
    for (const auto& [y, s] : rows) CHECK(s <= n + 1e-9);
    // the dual point (1 + 2 lambda)/5^{1/2} lights up almost the whole window
    CHECK(rows[2].second > 0.9 * n);
    CHECK(rows[2].second > 3.0 * rows[1].second);
}
