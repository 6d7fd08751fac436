#include "hfox/mellin_barnes.hpp"

#include "hfox/errors.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace hfox;
using hfox_test::cosine_kernel;
using hfox_test::exp_kernel;
using hfox_test::hankel_kernel;
using hfox_test::pole_free_point;
using hfox_test::random_params;

namespace {

constexpr double kSqrtPi = 1.77245385090551602729816748334;

// Ascending series for J0; test-only oracle, accurate to ~1e-9 for w <= 16.
double j0_series(double w) {
    double term = 1.0, sum = 1.0;
    const double q = 0.25 * w * w;
    for (int k = 1; k < 80; ++k) {
        term *= -q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (std::abs(term) < 1e-19 * std::abs(sum) && k > 4)
            break;
    }
    return sum;
}

} // namespace

TEST_CASE("chi special values") {
    CHECK(chi(exp_kernel(), Complex{1.0, 0.0}) == Complex{1.0, 0.0});  // Gamma(1)
    CHECK(std::abs(chi(hankel_kernel(), Complex{0.5, 0.0}) - 1.0) < 1e-14);
    CHECK(std::abs(chi(cosine_kernel(), Complex{0.5, 0.0}) - 1.0) < 1e-14);
    // denominator gamma pole: exact zero
    CHECK(chi(cosine_kernel(), Complex{1.0, 0.0}) == Complex{0.0, 0.0});
    CHECK_THROWS_AS((void)chi(exp_kernel(), Complex{0.0, 0.0}), PoleError);
    CHECK_THROWS_AS((void)chi(exp_kernel(), Complex{-2.0, 0.0}), PoleError);
}

TEST_CASE("reciprocal identity chi_0(s) chi(1-s) = 1") {
    std::mt19937_64 rng(20250810);
    int sets = 0;
    while (sets < 10) {
        const HFunctionParams p = random_params(rng);
        if (p.p + p.q == 0)
            continue;
        ++sets;
        const HFunctionParams dual = dual_params(p);
        std::uniform_real_distribution<double> sig(-1.0, 2.0);
        const double sigma = sig(rng);
        for (int i = 0; i < 200; ++i) {
            const Complex s = pole_free_point(p, rng, sigma);
            const Complex product = chi(dual, s) * chi(p, 1.0 - s);
            CHECK(std::abs(product - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("eval_h: exponential kernel reproduces exp(-z)") {
    for (double z : {0.25, 0.5, 1.0, 2.0, 4.0, 10.0}) {
        const HValue v = eval_h(exp_kernel(), z);
        CHECK(std::abs(v.value - std::exp(-z)) < 1e-9 * std::exp(-z));
        CHECK(v.error_estimate < 1e-8 * std::exp(-z) + 1e-14);
        CHECK(std::abs(v.value.imag()) < 1e-16);
    }
}

TEST_CASE("eval_h agrees with the residue series on the exponential kernel") {
    for (int i = 0; i < 20; ++i) {
        const double z = 0.25 * std::pow(16.0, i / 19.0);
        const HValue quad = eval_h(exp_kernel(), z);
        const HValue series = residue_series(exp_kernel(), z, 60);
        CHECK(std::abs(series.value - std::exp(-z)) < 1e-12 * std::exp(-z));
        CHECK(std::abs(quad.value - series.value) <= 1e-8 * std::abs(series.value));
    }
}

TEST_CASE("eval_h: contour invariance between admissible abscissae") {
    for (double z : {0.5, 1.0, 3.0}) {
        ContourSpec c1 = choose_contour(exp_kernel(), z);
        ContourSpec c2 = c1;
        c2.sigma = c1.sigma + 0.8;
        const HValue a = eval_h(exp_kernel(), z, c1);
        const HValue b = eval_h(exp_kernel(), z, c2);
        CHECK(std::abs(a.value - b.value) <=
              10.0 * (a.error_estimate + b.error_estimate) + 1e-12 * std::abs(a.value));
    }
}

TEST_CASE("eval_h: half-order Bessel kernel equals 2 sqrt(z) J0(2z)") {
    for (double z : {0.25, 0.7, 1.0, 2.0, 4.0, 6.5}) {
        const double expect = 2.0 * std::sqrt(z) * j0_series(2.0 * z);
        const HValue v = eval_h(hankel_kernel(), z);
        CHECK(std::abs(v.value - expect) < 2e-8 * std::max(std::abs(expect), 0.1));
    }
}

TEST_CASE("eval_h: cosine kernel equals (2/sqrt(pi)) cos(2z)") {
    for (double z : {0.3, 1.0, 3.0, 8.0, 20.0}) {
        const double expect = 2.0 / kSqrtPi * std::cos(2.0 * z);
        const HValue v = eval_h(cosine_kernel(), z);
        CHECK(std::abs(v.value - expect) < 5e-8);
    }
}

TEST_CASE("residue_series: exponential series behavior") {
    const HValue at1 = residue_series(exp_kernel(), 1.0, 30);
    CHECK(std::abs(at1.value - std::exp(-1.0)) < 1e-15);
    const HValue at0 = residue_series(exp_kernel(), 0.0, 30);
    CHECK(at0.value == Complex{1.0, 0.0});  // leading coefficient only
}

TEST_CASE("residue_series: Bessel kernel leading order matches rho = 1/2") {
    for (double z : {1e-4, 1e-3}) {
        const HValue v = residue_series(hankel_kernel(), z, 40);
        CHECK(std::abs(v.value - 2.0 * std::sqrt(z)) < 4.0 * std::pow(z, 2.5));
    }
}

TEST_CASE("residue_series refusals") {
    HFunctionParams doubled;
    doubled.m = 2;
    doubled.q = 2;
    doubled.lower = {{Complex{0, 0}, 1.0}, {Complex{0, 0}, 1.0}};
    CHECK_THROWS_AS((void)residue_series(doubled, 1.0, 10), UnsupportedError);

    HFunctionParams delta_zero;  // Delta = 0: series inadmissible
    delta_zero.m = 1;
    delta_zero.q = 1;
    delta_zero.p = 1;
    delta_zero.lower = {{Complex{0, 0}, 1.0}};
    delta_zero.upper = {{Complex{0.3, 0}, 1.0}};
    CHECK_THROWS_AS((void)residue_series(delta_zero, 1.0, 10), InadmissibleError);
}

TEST_CASE("asymptotic_orders on the corpus") {
    const AsymptoticOrders exp_orders = asymptotic_orders(exp_kernel());
    REQUIRE(exp_orders.rho.has_value());
    CHECK(*exp_orders.rho == 0.0);
    CHECK(exp_orders.log_order_zero == 0);
    CHECK_FALSE(exp_orders.varrho.has_value());  // a* > 0

    const AsymptoticOrders hk = asymptotic_orders(hankel_kernel());
    REQUIRE(hk.rho.has_value());
    CHECK(*hk.rho == 0.5);
    REQUIRE(hk.varrho.has_value());
    CHECK(*hk.varrho == doctest::Approx(0.0));
    CHECK(hk.log_order_inf == 0);

    HFunctionParams doubled;
    doubled.m = 2;
    doubled.q = 2;
    doubled.lower = {{Complex{0, 0}, 1.0}, {Complex{0, 0}, 1.0}};
    const AsymptoticOrders d = asymptotic_orders(doubled);
    REQUIRE(d.rho.has_value());
    CHECK(*d.rho == 0.0);
    CHECK(d.log_order_zero == 1);  // order-2 poles at the non-positive integers
}

TEST_CASE("choose_contour geometry") {
    const ContourSpec ce = choose_contour(exp_kernel(), 1.0);
    CHECK(ce.sigma > 0.0);
    const ContourSpec ch = choose_contour(hankel_kernel(), 1.0);
    CHECK(ch.sigma > -0.5);
    CHECK(ch.indent_radius == 0.0);

    // coincident pole families: no separating line
    HFunctionParams bad;
    bad.m = 1;
    bad.n = 1;
    bad.p = 1;
    bad.q = 1;
    bad.upper = {{Complex{1.0, 0.0}, 1.0}};
    bad.lower = {{Complex{0.0, 0.0}, 1.0}};
    CHECK_THROWS_AS((void)choose_contour(bad, 1.0), ContourError);

    // a* < 0 grows exponentially along vertical lines
    HFunctionParams neg = dual_params(exp_kernel());
    CHECK_THROWS_AS((void)choose_contour(neg, 1.0), ContourError);
}

TEST_CASE("eval_h reports non-convergence at the singular point of a Delta=0 kernel") {
    // chi(s) = Gamma(s)/Gamma(s + 0.3): a* = 0, Delta = 0, delta = 1. At
    // z = delta the integrand neither decays nor oscillates, so no vertical
    // contour converges.
    HFunctionParams p;
    p.m = 1;
    p.q = 1;
    p.p = 1;
    p.lower = {{Complex{0, 0}, 1.0}};
    p.upper = {{Complex{0.3, 0}, 1.0}};
    CHECK_THROWS_AS((void)eval_h(p, 1.0), AccuracyError);
}

TEST_CASE("eval_h rejects indented contours") {
    ContourSpec c = choose_contour(exp_kernel(), 1.0);
    c.indent_radius = 0.1;
    CHECK_THROWS_AS((void)eval_h(exp_kernel(), 1.0, c), UnsupportedError);
}
