#include "hfox/params.hpp"

#include "hfox/errors.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

using namespace hfox;
using hfox_test::cosine_kernel;
using hfox_test::exp_kernel;
using hfox_test::hankel_kernel;
using hfox_test::random_params;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("derived constants: exponential kernel") {
    const DerivedConstants c = derive_constants(exp_kernel());
    CHECK(c.a_star == 1.0);
    CHECK(c.Delta == 1.0);
    CHECK(c.delta == 1.0);
    CHECK(c.mu == Complex(-0.5, 0.0));
    CHECK(c.alpha == 0.0);
    CHECK(c.beta == kInf);
    CHECK(c.alpha0 == -kInf);  // q = m: empty max
    CHECK(c.beta0 == kInf);
    CHECK(c.rho == 0.0);
    CHECK_FALSE(c.varrho.has_value());  // a* != 0
    CHECK(c.log_order_zero == 0);
    CHECK(c.log_order_inf == 0);
}

TEST_CASE("derived constants: half-order Bessel kernel") {
    const DerivedConstants c = derive_constants(hankel_kernel());
    CHECK(c.a_star == 0.0);
    CHECK(c.Delta == 1.0);
    CHECK(c.delta == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c.mu == Complex(-0.5, 0.0));
    CHECK(c.alpha == -0.5);
    CHECK(c.alpha0 == -0.5);
    CHECK(c.beta == kInf);
    CHECK(c.beta0 == kInf);
    CHECK(c.rho == 0.5);
    REQUIRE(c.varrho.has_value());
    CHECK(*c.varrho == doctest::Approx(0.0));
}

TEST_CASE("derived constants: cosine kernel") {
    const DerivedConstants c = derive_constants(cosine_kernel());
    CHECK(c.a_star == 0.0);
    CHECK(c.Delta == 1.0);
    CHECK(c.mu == Complex(-0.5, 0.0));
    CHECK(c.alpha == 0.0);
    CHECK(c.alpha0 == 0.0);
    CHECK(c.rho == 0.0);
    REQUIRE(c.varrho.has_value());
    CHECK(*c.varrho == doctest::Approx(0.0));
}

TEST_CASE("Meijer-G specialization: unit scales give Delta = q - p exactly") {
    std::mt19937_64 rng(7101);
    for (int trial = 0; trial < 200; ++trial) {
        HFunctionParams p = random_params(rng);
        for (auto& r : p.upper)
            r.scale = 1.0;
        for (auto& r : p.lower)
            r.scale = 1.0;
        const DerivedConstants c = derive_constants(p);
        CHECK(c.Delta == static_cast<double>(p.q - p.p));
    }
}

TEST_CASE("a1* + a2* equals a* exactly and matches the direct formula") {
    std::mt19937_64 rng(411);
    for (int trial = 0; trial < 100; ++trial) {
        const HFunctionParams p = random_params(rng, trial % 2 == 0);
        const DerivedConstants c = derive_constants(p);
        CHECK(c.a1_star + c.a2_star == c.a_star);  // bitwise, by construction
        double direct = 0.0;
        for (int i = 0; i < p.n; ++i)
            direct += p.upper[static_cast<std::size_t>(i)].scale;
        for (int i = p.n; i < p.p; ++i)
            direct -= p.upper[static_cast<std::size_t>(i)].scale;
        for (int j = 0; j < p.m; ++j)
            direct += p.lower[static_cast<std::size_t>(j)].scale;
        for (int j = p.m; j < p.q; ++j)
            direct -= p.lower[static_cast<std::size_t>(j)].scale;
        CHECK(std::abs(c.a_star - direct) < 1e-14 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("dual_params: Bessel kernel is self-reciprocal") {
    const HFunctionParams d = dual_params(hankel_kernel());
    CHECK(d.m == 1);
    CHECK(d.n == 0);
    CHECK(d.p == 0);
    CHECK(d.q == 2);
    REQUIRE(d.lower.size() == 2);
    CHECK(d.lower[0].a == Complex(0.25, 0.0));
    CHECK(d.lower[0].scale == 0.5);
    CHECK(d.lower[1].a == Complex(0.25, 0.0));
    CHECK(d.lower[1].scale == 0.5);
}

TEST_CASE("dual_params is an involution up to block ordering") {
    std::mt19937_64 rng(55);
    auto block_sorted = [](std::vector<GammaPair> v, int split) {
        auto cmp = [](const GammaPair& a, const GammaPair& b) {
            return std::make_tuple(a.a.real(), a.a.imag(), a.scale) <
                   std::make_tuple(b.a.real(), b.a.imag(), b.scale);
        };
        std::sort(v.begin(), v.begin() + split, cmp);
        std::sort(v.begin() + split, v.end(), cmp);
        return v;
    };
    for (int trial = 0; trial < 50; ++trial) {
        const HFunctionParams p = random_params(rng, true);
        const HFunctionParams dd = dual_params(dual_params(p));
        CHECK(dd.m == p.m);
        CHECK(dd.n == p.n);
        CHECK(dd.p == p.p);
        CHECK(dd.q == p.q);
        CHECK(block_sorted(dd.upper, p.n) == block_sorted(p.upper, p.n));
        CHECK(block_sorted(dd.lower, p.m) == block_sorted(p.lower, p.m));
    }
}

TEST_CASE("constant duality under dual_params") {
    std::mt19937_64 rng(991);
    for (int trial = 0; trial < 100; ++trial) {
        const bool dyadic = trial < 50;
        const HFunctionParams p = random_params(rng, dyadic);
        const DerivedConstants c = derive_constants(p);
        const DerivedConstants c0 = derive_constants(dual_params(p));
        if (dyadic) {
            CHECK(c0.a_star == -c.a_star);
            CHECK(c0.a1_star == -c.a2_star);
            CHECK(c0.a2_star == -c.a1_star);
            CHECK(c0.delta == c.delta);
            CHECK(c0.Delta == c.Delta);
            CHECK(c0.mu == -c.mu - c.Delta);
        } else {
            auto close = [](double x, double y) {
                return std::abs(x - y) <= 1e-14 * std::max({1.0, std::abs(x), std::abs(y)});
            };
            CHECK(close(c0.a_star, -c.a_star));
            CHECK(close(c0.a1_star, -c.a2_star));
            CHECK(close(c0.a2_star, -c.a1_star));
            CHECK(close(c0.delta, c.delta));
            CHECK(close(c0.Delta, c.Delta));
            CHECK(std::abs(c0.mu - (-c.mu - c.Delta)) <=
                  1e-14 * std::max(1.0, std::abs(c.mu)));
        }
        // alpha0/beta0 computed directly agree with alpha/beta of the dual set
        auto ext_close = [](double x, double y) {
            if (std::isinf(x) || std::isinf(y))
                return x == y;
            return std::abs(x - y) <= 1e-14 * std::max({1.0, std::abs(x), std::abs(y)});
        };
        CHECK(ext_close(c0.alpha, c.alpha0));
        CHECK(ext_close(c0.beta, c.beta0));
    }
}

TEST_CASE("gamma_exponent values and symmetry") {
    CHECK(gamma_exponent(2.0) == 0.5);
    CHECK(gamma_exponent(4.0) == 0.75);
    CHECK(gamma_exponent(4.0 / 3.0) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK_THROWS_AS((void)gamma_exponent(1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)gamma_exponent(0.5), std::invalid_argument);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(1.0 + 1e-6, 50.0);
    for (int i = 0; i < 200; ++i) {
        const double r = d(rng);
        const double rp = r / (r - 1.0);
        CHECK(gamma_exponent(r) == doctest::Approx(gamma_exponent(rp)).epsilon(1e-12));
        CHECK(gamma_exponent(r) >= 0.5);
    }
}

TEST_CASE("pole separation: exponential kernel trivially clean") {
    const PoleSeparationReport rep = check_pole_separation(exp_kernel());
    CHECK(rep.numerator_disjoint);
    CHECK(rep.lower_simple);
    CHECK(rep.upper_simple);
    CHECK(rep.log_order_zero == 0);
    CHECK(rep.log_order_inf == 0);
    CHECK(rep.window == 64);
}

TEST_CASE("pole separation: doubled lower row has order-2 poles") {
    HFunctionParams p;
    p.m = 2;
    p.q = 2;
    p.lower = {{Complex{0, 0}, 1.0}, {Complex{0, 0}, 1.0}};
    const PoleSeparationReport rep = check_pole_separation(p);
    CHECK_FALSE(rep.lower_simple);
    CHECK(rep.log_order_zero == 1);
    REQUIRE_FALSE(rep.coincidences.empty());
    CHECK(rep.coincidences.front().order == 2);
}

TEST_CASE("pole separation: Bessel kernel with m=1 is vacuously simple") {
    const PoleSeparationReport rep = check_pole_separation(hankel_kernel());
    CHECK(rep.numerator_disjoint);  // n = 0: empty i-range
    CHECK(rep.lower_simple);        // single numerator row
    CHECK(rep.log_order_zero == 0);
}

TEST_CASE("pole separation: crossing numerator families is detected") {
    // Gamma(s) in both numerator families: poles of Gamma(b+s) at -k collide
    // with poles of Gamma(1-a-s) at 1-a+k for a = 1, k = l = 0, ...
    HFunctionParams p;
    p.m = 1;
    p.n = 1;
    p.p = 1;
    p.q = 1;
    p.upper = {{Complex{1.0, 0.0}, 1.0}};
    p.lower = {{Complex{0.0, 0.0}, 1.0}};
    const PoleSeparationReport rep = check_pole_separation(p);
    CHECK_FALSE(rep.numerator_disjoint);
}

TEST_CASE("classifier: Bessel kernel at nu=1/2, r=2") {
    const RegimeReport rep = classify_regime(hankel_kernel(), 0.5, 2.0);
    CHECK(rep.gamma_r == 0.5);
    CHECK(rep.theorem_applies("4.1"));
    CHECK(rep.theorem_applies("2.1"));
    CHECK(rep.theorem_applies("2.3"));
    CHECK(rep.theorem_applies("3.1"));
    CHECK_FALSE(rep.theorem_applies("2.2"));  // Delta != 0
    CHECK_FALSE(rep.theorem_applies("4.2"));  // Delta > 0
    CHECK(rep.inversion_branch == InversionBranch::either);
    // the recorded numbers: alpha = -1/2 < 1/2, upper bound min(inf, 1) = 1
    bool found_upper = false;
    for (const auto& c : rep.conditions) {
        if (c.name == "nu < min(beta0, (Re(mu)+1/2)/Delta + 1)") {
            found_upper = true;
            CHECK(c.holds);
            CHECK(c.lhs == 0.5);
            CHECK(c.rhs == 1.0);
        }
    }
    CHECK(found_upper);
    CHECK(rep.exceptional_hits.empty());
}

TEST_CASE("classifier: exponential kernel applies only through a* > 0") {
    const RegimeReport rep = classify_regime(exp_kernel(), 0.5, 2.0);
    CHECK(rep.theorem_applies("2.1"));
    CHECK_FALSE(rep.theorem_applies("2.2"));
    CHECK_FALSE(rep.theorem_applies("2.3"));
    CHECK_FALSE(rep.theorem_applies("3.1"));
    CHECK_FALSE(rep.theorem_applies("3.2"));
    CHECK_FALSE(rep.theorem_applies("4.1"));
    CHECK_FALSE(rep.theorem_applies("4.2"));
    CHECK(rep.inversion_branch == InversionBranch::none);
}

TEST_CASE("classifier: m=0 side of the strip is vacuously satisfied") {
    HFunctionParams p;
    p.n = 1;
    p.p = 1;
    p.upper = {{Complex{0.0, 0.0}, 1.0}};  // beta = 1
    for (double nu : {-3.0, 0.25, 0.9}) {
        const RegimeReport rep = classify_regime(p, nu, 2.0);
        for (const auto& c : rep.conditions)
            if (c.name == "alpha < 1-nu")
                CHECK(c.holds);
    }
}

TEST_CASE("classifier: theorem 2.3 monotone toward r = 2") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> pick_nu(-0.5, 1.5), pick_r(1.05, 8.0);
    std::uniform_real_distribution<double> pick_scale(0.3, 1.5), pick_b(0.0, 1.2);
    // Balanced lower rows force a* = 0 with Delta = 2 s > 0, so the theorem
    // hypotheses are actually reachable.
    auto a0_kernel = [&] {
        HFunctionParams p;
        p.m = 1;
        p.q = 2;
        const double s = pick_scale(rng);
        p.lower = {{Complex{pick_b(rng), 0.0}, s}, {Complex{pick_b(rng), 0.0}, s}};
        return p;
    };
    int admitted = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const HFunctionParams p = trial % 2 == 0 ? a0_kernel() : random_params(rng);
        const double nu = pick_nu(rng), r = pick_r(rng);
        ScanOptions cheap;
        cheap.steps = 8;
        cheap.t_max = 1.0;
        const RegimeReport at_r = classify_regime(p, nu, r, cheap);
        if (at_r.theorem_applies("2.3")) {
            ++admitted;
            const RegimeReport at_2 = classify_regime(p, nu, 2.0, cheap);
            CHECK(at_2.theorem_applies("2.3"));
        }
    }
    CHECK(admitted > 0);  // the property must actually fire
}

TEST_CASE("exceptional scan: corpus kernels have zero-free lines") {
    CHECK(scan_exceptional_line(hankel_kernel(), 0.5).empty());
    CHECK(scan_exceptional_line(exp_kernel(), 0.25).empty());
    // m=q, n=p: pure product of gammas, no zeros at all
    HFunctionParams p;
    p.m = 1;
    p.q = 1;
    p.lower = {{Complex{0.3, 0.0}, 0.7}};
    CHECK(scan_exceptional_line(p, 0.2).empty());
}

TEST_CASE("exceptional scan finds a planted zero") {
    // chi(s) = 1/Gamma(a + s) vanishes at s = -a - k; plant a = -0.5 - 2i so
    // the k = 0 zero sits on the line Re(s) = 1/2 at height t = 2.
    HFunctionParams p;
    p.p = 1;
    p.upper = {{Complex{-0.5, -2.0}, 1.0}};
    const auto hits = scan_exceptional_line(p, 0.5, 10.0, 2048);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].real() == doctest::Approx(0.5));
    CHECK(hits[0].imag() == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("exceptional scan rejects a line through a numerator pole") {
    // Gamma(s) pole at s = 0 lies on the line 1 - nu = 0.
    CHECK_THROWS_AS((void)scan_exceptional_line(exp_kernel(), 1.0), ContourError);
}

TEST_CASE("parameter validation") {
    HFunctionParams p;
    p.m = 2;
    p.q = 1;
    p.lower = {{Complex{0, 0}, 1.0}};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = exp_kernel();
    p.lower[0].scale = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = exp_kernel();
    p.lower.push_back({Complex{0, 0}, 1.0});
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
