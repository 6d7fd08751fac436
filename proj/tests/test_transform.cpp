#include "hfox/transform.hpp"

#include "hfox/errors.hpp"
#include "hfox/mellin_barnes.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace hfox;
using hfox_test::cosine_kernel;
using hfox_test::exp_kernel;
using hfox_test::pole_free_point;

namespace {

constexpr double kSqrtPi = 1.77245385090551602729816748334;

GridFunction exp_input() {
    return sample_function(make_log_grid(1e-7, 60.0, 512.0),
                           [](double t) { return Complex{std::exp(-t), 0}; }, 0.5);
}

GridFunction oracle_on(const std::vector<double>& grid, double nu,
                       const std::function<Complex(double)>& g) {
    return sample_function(grid, g, 1.0 - nu);
}

} // namespace

TEST_CASE("direct path: exponential kernel maps exp(-t) to 1/(1+x)") {
    const GridFunction f = exp_input();
    const auto xgrid = make_log_grid(1e-3, 50.0, 64.0);
    Diagnostics diag;
    const GridFunction g = h_transform_direct(exp_kernel(), f, xgrid, DirectOptions{}, &diag);
    const GridFunction want =
        oracle_on(xgrid, 0.5, [](double x) { return Complex{1.0 / (1.0 + x), 0}; });
    const auto [lo, hi] = interior_window(xgrid);
    CHECK(relative_l2_error(g, want, lo, hi) < 1e-6);
    CHECK(g.weight_nu == doctest::Approx(0.5));
    CHECK_FALSE(diag.outside_proven_regime);
}

TEST_CASE("direct path: cosine kernel maps exp(-t) to (2/sqrt(pi))/(1+4x^2)") {
    const GridFunction f = exp_input();
    const auto xgrid = make_log_grid(1e-3, 3.0, 128.0);
    const GridFunction g = h_transform_direct(cosine_kernel(), f, xgrid);
    const GridFunction want = oracle_on(xgrid, 0.5, [](double x) {
        return Complex{2.0 / kSqrtPi / (1.0 + 4.0 * x * x), 0};
    });
    const auto [lo, hi] = interior_window(xgrid);
    CHECK(relative_l2_error(g, want, lo, hi) < 1e-6);
}

TEST_CASE("multiplier path matches the closed forms and the direct path") {
    const GridFunction f = exp_input();
    const auto xgrid = make_log_grid(1e-3, 3.0, 128.0);
    const auto [lo, hi] = interior_window(xgrid);

    const GridFunction ge = h_transform_multiplier(exp_kernel(), f, 0.5, xgrid);
    const GridFunction we =
        oracle_on(xgrid, 0.5, [](double x) { return Complex{1.0 / (1.0 + x), 0}; });
    CHECK(relative_l2_error(ge, we, lo, hi) < 1e-6);

    const GridFunction gc = h_transform_multiplier(cosine_kernel(), f, 0.5, xgrid);
    const GridFunction wc = oracle_on(xgrid, 0.5, [](double x) {
        return Complex{2.0 / kSqrtPi / (1.0 + 4.0 * x * x), 0};
    });
    CHECK(relative_l2_error(gc, wc, lo, hi) < 1e-6);

    const GridFunction gd = h_transform_direct(cosine_kernel(), f, xgrid);
    CHECK(relative_l2_error(gc, gd, lo, hi) < 1e-6);
}

TEST_CASE("zero input stays zero") {
    GridFunction zero;
    zero.grid = make_log_grid(1e-4, 100.0, 64.0);
    zero.values.assign(zero.grid.size(), Complex{0, 0});
    zero.weight_nu = 0.5;
    const auto xgrid = make_log_grid(0.01, 10.0, 32.0);
    const GridFunction gd = h_transform_direct(exp_kernel(), zero, xgrid);
    const GridFunction gm = h_transform_multiplier(exp_kernel(), zero, 0.5, xgrid);
    for (std::size_t i = 0; i < xgrid.size(); ++i) {
        CHECK(gd.values[i] == Complex{0, 0});
        CHECK(std::abs(gm.values[i]) < 1e-15);
    }
}

TEST_CASE("augmented_params transcription") {
    RepresentationParams rep;
    rep.lambda = Complex{1.0, 0.0};
    rep.h = 1.0;
    rep.branch = RepresentationBranch::differential_lower;
    const HFunctionParams aug = augmented_params(exp_kernel(), rep);
    CHECK(aug.m == 1);
    CHECK(aug.n == 1);
    CHECK(aug.p == 1);
    CHECK(aug.q == 2);
    REQUIRE(aug.upper.size() == 1);
    CHECK(aug.upper[0].a == Complex{-1.0, 0.0});
    CHECK(aug.upper[0].scale == 1.0);
    REQUIRE(aug.lower.size() == 2);
    CHECK(aug.lower[0].a == Complex{0.0, 0.0});
    CHECK(aug.lower[1].a == Complex{-2.0, 0.0});
    CHECK(aug.lower[1].scale == 1.0);

    rep.branch = RepresentationBranch::differential_upper;
    const HFunctionParams aug2 = augmented_params(exp_kernel(), rep);
    CHECK(aug2.m == 2);
    CHECK(aug2.n == 0);
    CHECK(aug2.lower[0].a == Complex{-2.0, 0.0});  // prepended
    CHECK(aug2.upper[0].a == Complex{-1.0, 0.0});  // appended
}

TEST_CASE("augmented multiplier equals chi(s)/(1 + lambda - h s)") {
    std::mt19937_64 rng(606);
    for (auto branch :
         {RepresentationBranch::differential_lower, RepresentationBranch::differential_upper}) {
        RepresentationParams rep;
        rep.lambda = Complex{0.7, 0.3};
        rep.h = 1.5;
        rep.branch = branch;
        const HFunctionParams aug = augmented_params(cosine_kernel(), rep);
        for (int i = 0; i < 50; ++i) {
            const Complex s = pole_free_point(aug, rng, 0.35);
            const Complex lhs = chi(aug, s);
            const Complex rhs = chi(cosine_kernel(), s) / (1.0 + rep.lambda - rep.h * s);
            CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("representation path agrees with direct quadrature") {
    const GridFunction f = exp_input();
    const auto xgrid = make_log_grid(0.02, 3.0, 48.0);
    const auto [lo, hi] = interior_window(xgrid);

    SUBCASE("exponential kernel, lower branch") {
        RepresentationParams rep;  // Re(lambda)=1 > (1-nu)h-1 = -1/2
        rep.lambda = Complex{1.0, 0.0};
        const GridFunction gr =
            h_transform_representation(exp_kernel(), f, rep, xgrid);
        const GridFunction gd = h_transform_direct(exp_kernel(), f, xgrid);
        CHECK(relative_l2_error(gr, gd, lo, hi) < 1e-5);
    }
    SUBCASE("exponential kernel, upper branch") {
        RepresentationParams rep;
        rep.lambda = Complex{-1.75, 0.0};  // < -1/2
        rep.branch = RepresentationBranch::differential_upper;
        const GridFunction gr =
            h_transform_representation(exp_kernel(), f, rep, xgrid);
        const GridFunction gd = h_transform_direct(exp_kernel(), f, xgrid);
        CHECK(relative_l2_error(gr, gd, lo, hi) < 1e-5);
    }
    SUBCASE("cosine kernel, both branches") {
        const GridFunction gd = h_transform_direct(cosine_kernel(), f, xgrid);
        RepresentationParams rep;
        rep.lambda = Complex{1.0, 0.0};
        const GridFunction g1 =
            h_transform_representation(cosine_kernel(), f, rep, xgrid);
        CHECK(relative_l2_error(g1, gd, lo, hi) < 1e-5);
        rep.lambda = Complex{-1.6, 0.0};
        rep.branch = RepresentationBranch::differential_upper;
        const GridFunction g2 =
            h_transform_representation(cosine_kernel(), f, rep, xgrid);
        CHECK(relative_l2_error(g2, gd, lo, hi) < 1e-5);
    }
    SUBCASE("zero input") {
        GridFunction zero = f;
        zero.values.assign(zero.grid.size(), Complex{0, 0});
        RepresentationParams rep;
        rep.lambda = Complex{1.0, 0.0};
        const GridFunction gr =
            h_transform_representation(exp_kernel(), zero, rep, xgrid);
        for (const auto& v : gr.values)
            CHECK(std::abs(v) < 1e-14);
    }
}

TEST_CASE("representation branch thresholds are enforced") {
    RepresentationParams rep;
    rep.lambda = Complex{-0.5, 0.7};  // Re = threshold (1-1/2)*1-1 exactly
    CHECK_THROWS_AS(rep.validate_for(0.5), std::invalid_argument);
    rep.lambda = Complex{-0.8, 0.0};  // wrong side for the lower branch
    CHECK_THROWS_AS(rep.validate_for(0.5), std::invalid_argument);
    rep.branch = RepresentationBranch::differential_upper;
    rep.lambda = Complex{0.3, 0.0};  // wrong side for the upper branch
    CHECK_THROWS_AS(rep.validate_for(0.5), std::invalid_argument);
    rep.h = 0.0;
    CHECK_THROWS_AS(rep.validate(), std::invalid_argument);
}

TEST_CASE("dilation covariance: H(Pi_a f) (x) = (1/a) (Hf)(x/a)") {
    const GridFunction f = exp_input();
    const GridFunction fa = dilate(f, 2.0);
    const auto xgrid = make_log_grid(0.05, 5.0, 48.0);
    const GridFunction g = h_transform_direct(exp_kernel(), fa, xgrid);
    // closed form: Int exp(-xt) exp(-2t) dt = 1/(x+2)
    for (std::size_t i = 0; i < xgrid.size(); ++i)
        CHECK(std::abs(g.values[i] - 1.0 / (xgrid[i] + 2.0)) < 1e-7);
}

TEST_CASE("linearity of the transform") {
    const GridFunction f1 = exp_input();
    GridFunction f2 = f1;
    for (std::size_t i = 0; i < f2.size(); ++i)
        f2.values[i] = Complex{std::exp(-2.0 * f2.grid[i]), 0.0};
    const Complex a{1.25, 0.0}, b{-0.5, 0.0};
    GridFunction combo = f1;
    for (std::size_t i = 0; i < combo.size(); ++i)
        combo.values[i] = a * f1.values[i] + b * f2.values[i];
    const auto xgrid = make_log_grid(0.1, 5.0, 24.0);
    const GridFunction g1 = h_transform_direct(exp_kernel(), f1, xgrid);
    const GridFunction g2 = h_transform_direct(exp_kernel(), f2, xgrid);
    const GridFunction gc = h_transform_direct(exp_kernel(), combo, xgrid);
    for (std::size_t i = 0; i < xgrid.size(); ++i) {
        const Complex want = a * g1.values[i] + b * g2.values[i];
        CHECK(std::abs(gc.values[i] - want) < 1e-12 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("inadmissible regime warns but computes; bad line is a ContourError") {
    GridFunction f = exp_input();
    f.weight_nu = 1.5;  // 1-nu = -0.5 < alpha = 0: outside the proven strip
    const auto xgrid = make_log_grid(0.1, 2.0, 16.0);
    Diagnostics diag;
    const GridFunction g = h_transform_direct(exp_kernel(), f, xgrid, DirectOptions{}, &diag);
    CHECK(diag.outside_proven_regime);
    CHECK(g.size() == xgrid.size());

    CHECK_THROWS_AS(
        (void)h_transform_multiplier(exp_kernel(), f, 1.5, xgrid), ContourError);
}
