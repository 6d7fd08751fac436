#include "hfox/gamma.hpp"

#include "hfox/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using hfox::Complex;
using hfox::log_gamma;

namespace {

// Reference values computed once with 30-digit arbitrary-precision arithmetic.
struct RefPoint {
    Complex s;
    Complex lg;
};
const RefPoint kLogGammaRefs[] = {
    {{1.0, 5.0}, {-6.130324144552748811571, 3.8158985746149244778}},
    {{0.5, 0.0}, {0.5723649429247000870717, 0.0}},
    {{3.7, -2.2}, {0.7264467516244263396636, -2.718064292441145318663}},
    {{0.5, 30.0}, {-46.20495127064222583516, 72.03731042880579321527}},
    {{12.25, 0.75}, {18.09176391568054932822, 1.848623735715367526713}},
    {{0.5, -0.5}, {0.1123872428096231125187, 0.750729202122050744645}},
    {{1.0, 0.0}, {0.0, 0.0}},
    {{7.25, -40.0}, {-36.98138305520035606088, -117.5922076980795071866}},
    {{0.75, 0.1}, {0.1906529699410319573698, -0.1077107766324432563648}},
};

const RefPoint kGammaRefs[] = {  // Re(s) < 1/2, value of Gamma itself
    {{-2.3, 0.4}, {-0.3777633307349763378525, -0.5495155060742707311564}},
    {{-0.25, -1.75}, {-0.05116884400169007594756, 0.0906467078412067884817}},
    {{-6.5, 2.0}, {5.916515070511779894684e-6, 5.833866271498247389126e-6}},
    {{0.2, 3.0}, {0.01595801368925986379268, -0.002846832886169905073246}},
    {{-0.5, 0.0001}, {-3.544907543422192228035, -1.293535889131886503696e-5}},
    {{0.49, -8.0}, {-5.966500268862956005685e-6, -6.140226543131832095482e-6}},
};

double rel_err(Complex got, Complex want) {
    const double scale = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / scale;
}

} // namespace

TEST_CASE("log_gamma matches high-precision references on Re(s) >= 1/2") {
    for (const auto& ref : kLogGammaRefs) {
        const Complex got = log_gamma(ref.s);
        CAPTURE(ref.s.real());
        CAPTURE(ref.s.imag());
        if (std::abs(ref.lg) > 1e-10) {
            CHECK(rel_err(got, ref.lg) < 1e-13);
        } else {
            CHECK(std::abs(got - ref.lg) < 1e-14);
        }
    }
}

TEST_CASE("exp(log_gamma) reproduces Gamma left of the reflection line") {
    for (const auto& ref : kGammaRefs) {
        const Complex got = std::exp(log_gamma(ref.s));
        CAPTURE(ref.s.real());
        CAPTURE(ref.s.imag());
        CHECK(rel_err(got, ref.lg) < 1e-12);
    }
}

TEST_CASE("recurrence log Gamma(s+1) = log Gamma(s) + log s along vertical lines") {
    for (double sigma : {0.5, 0.75, 1.5, 3.25}) {
        for (int k = -40; k <= 40; ++k) {
            const Complex s(sigma, 0.6 * k + 0.05);
            const Complex lhs = log_gamma(s + 1.0);
            const Complex rhs = log_gamma(s) + std::log(s);
            CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
        }
    }
}

TEST_CASE("recurrence on the positive real axis") {
    for (double x = 0.51; x < 20.0; x += 0.37) {
        const Complex lhs = log_gamma(Complex(x + 1.0, 0.0));
        const Complex rhs = log_gamma(Complex(x, 0.0)) + std::log(Complex(x, 0.0));
        CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("continuity along vertical lines within each half-plane") {
    for (double sigma : {-2.3, -0.7, 0.2, 1.3}) {
        for (double t0 : {0.02, 1.0, 7.5}) {
            const double dt = 1e-4;
            for (double sgn : {1.0, -1.0}) {
                const Complex a = log_gamma(Complex(sigma, sgn * t0));
                const Complex b = log_gamma(Complex(sigma, sgn * (t0 + dt)));
                // No branch jump: successive values differ by O(dt * |psi|).
                CHECK(std::abs(a - b) < 1e-2);
            }
        }
    }
}

TEST_CASE("conjugate symmetry") {
    for (const auto& ref : kLogGammaRefs) {
        const Complex a = log_gamma(std::conj(ref.s));
        const Complex b = std::conj(log_gamma(ref.s));
        CHECK(std::abs(a - b) < 1e-13 * std::max(1.0, std::abs(b)));
    }
}

TEST_CASE("poles are rejected with the offending integer") {
    for (double bad : {0.0, -1.0, -2.0, -7.0}) {
        CHECK_THROWS_AS((void)log_gamma(Complex(bad, 0.0)), hfox::PoleError);
    }
    try {
        (void)log_gamma(Complex(-3.0, 0.0));
        FAIL("expected PoleError");
    } catch (const hfox::PoleError& e) {
        CHECK(e.pole_location == Complex(-3.0, 0.0));
    }
}

TEST_CASE("real on (0, inf) and gamma_fn sanity") {
    CHECK(log_gamma(Complex(0.25, 0.0)).imag() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(hfox::gamma_fn(Complex(5.0, 0.0)).real() == doctest::Approx(24.0).epsilon(1e-13));
}
