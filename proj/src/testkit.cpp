#include "hfox/testkit.hpp"

#include "hfox/errors.hpp"
#include "hfox/kernel_lattice.hpp"
#include "hfox/mellin_barnes.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <memory>

#include "hfox/io.hpp"

namespace hfox {

namespace {

constexpr double kSqrtPi = 1.77245385090551602729816748334;

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

HFunctionParams exp_kernel() {
    HFunctionParams p;
    p.m = 1;
    p.q = 1;
    p.lower = {{Complex{0, 0}, 1.0}};
    return p;
}

HFunctionParams cosine_kernel() {
    HFunctionParams p;
    p.m = 1;
    p.q = 2;
    p.lower = {{Complex{0, 0}, 0.5}, {Complex{0.5, 0}, 0.5}};
    return p;
}

HFunctionParams hankel_kernel() {
    HFunctionParams p;
    p.m = 1;
    p.q = 2;
    p.lower = {{Complex{0.25, 0}, 0.5}, {Complex{0.25, 0}, 0.5}};
    return p;
}

} // namespace

GridFunction OraclePair::sample_f(double nu) const {
    return sample_function(make_log_grid(f_min, f_max, f_ppd), f, nu);
}

GridFunction OraclePair::sample_g(double nu) const {
    return sample_function(make_log_grid(g_min, g_max, g_ppd), g, 1.0 - nu);
}

Complex smooth_bump(double t, double center, double half_width_log) {
    const double u = std::log(t / center) / half_width_log;
    if (!(std::abs(u) < 1.0))
        return {0, 0};
    return {std::exp(-1.0 / (1.0 - u * u)), 0.0};
}

std::string resolve_data_dir(const std::string& override_dir) {
    if (!override_dir.empty())
        return override_dir;
    if (const char* env = std::getenv("HFOX_DATA_DIR"))
        return env;
#ifdef HFOX_DATA_DIR_DEFAULT
    return HFOX_DATA_DIR_DEFAULT;
#else
    return "data";
#endif
}

std::vector<OraclePair> builtin_pairs(const std::string& data_dir) {
    std::vector<OraclePair> pairs;

    {
        OraclePair p;
        p.name = "exp";
        p.params = exp_kernel();
        p.f_description = "f(t) = exp(-t)";
        p.g_description = "g(x) = 1/(1+x)";
        p.f = [](double t) { return Complex{std::exp(-t), 0.0}; };
        p.g = [](double x) { return Complex{1.0 / (1.0 + x), 0.0}; };
        p.admissible_nu_r = {{0.5, 2.0}, {0.5, 4.0}, {0.25, 2.0}};
        p.g_min = 1e-4;
        p.g_max = 1e4;
        pairs.push_back(std::move(p));
    }
    {
        OraclePair p;
        p.name = "cosine";
        p.params = cosine_kernel();
        p.f_description = "f(t) = exp(-t)";
        p.g_description = "g(x) = (2/sqrt(pi)) / (1 + 4x^2)";
        p.f = [](double t) { return Complex{std::exp(-t), 0.0}; };
        p.g = [](double x) { return Complex{2.0 / kSqrtPi / (1.0 + 4.0 * x * x), 0.0}; };
        p.admissible_nu_r = {{0.5, 2.0}};
        p.g_min = 1e-4;
        p.g_max = 1e3;
        p.g_ppd = 512.0;
        pairs.push_back(std::move(p));
    }
    {
        OraclePair p;
        p.name = "hankel0";
        p.params = hankel_kernel();
        p.f_description = "f(t) = smooth log-space bump supported on [1/4, 4]";
        p.g_description = "g = Hf frozen by high-resolution reference quadrature";
        p.f = [](double t) { return smooth_bump(t); };
        p.admissible_nu_r = {{0.5, 2.0}};
        p.f_min = 0.25;
        p.f_max = 4.0;
        p.f_ppd = 512.0;
        p.g_min = 1e-3;
        p.g_max = 1e2;
        p.g_ppd = 512.0;

        const std::string dir = resolve_data_dir(data_dir);
        const std::string path = dir + "/hankel0_pair.csv";
        if (std::filesystem::exists(path)) {
            auto fixture = std::make_shared<GridFunction>(read_grid_csv(path));
            auto interp = std::make_shared<GridInterpolant>(*fixture);
            p.g_min = fixture->grid.front();
            p.g_max = fixture->grid.back();
            p.g = [interp](double x) { return (*interp)(x); };
        } else {
            p.g = nullptr;  // fixture missing; sample_g will fail loudly
        }
        pairs.push_back(std::move(p));
    }
    return pairs;
}

double bilinear_check(const HFunctionParams& params, const GridFunction& f,
                      const GridFunction& g, double nu, double r, double s,
                      double floor) {
    params.validate();
    f.validate();
    g.validate();
    if (!(r > 1.0) || !(s > 1.0))
        throw InadmissibleError("bilinear_check: need r, s > 1");
    if (1.0 / r + 1.0 / s < 1.0 - 1e-12)
        throw InadmissibleError("bilinear_check: requires 1/r + 1/s >= 1");
    const DerivedConstants c = derive_constants(params);
    const double lhs = c.Delta * (1.0 - nu) + c.mu.real();
    const double rhs = 0.5 - std::max(gamma_exponent(r), gamma_exponent(s));
    if (lhs > rhs + 1e-12)
        throw InadmissibleError(
            "bilinear_check: requires Delta(1-nu)+Re(mu) <= 1/2 - max(gamma(r), gamma(s)); "
            "have " + std::to_string(lhs) + " > " + std::to_string(rhs));
    if (std::abs(c.a_star) > 1e-12 || !(c.Delta > 0.0))
        throw InadmissibleError("bilinear_check: requires a* = 0 and Delta > 0");
    if (!(c.alpha < 1.0 - nu && 1.0 - nu < c.beta))
        throw InadmissibleError("bilinear_check: requires alpha < 1-nu < beta");

    auto pairing = [](const GridFunction& u, const GridFunction& v) {
        // Int u(x) v(x) dx over the common grid (trapezoid in log measure).
        Complex acc{0, 0};
        for (std::size_t i = 0; i + 1 < u.size(); ++i) {
            const double du = std::log(u.grid[i + 1] / u.grid[i]);
            acc += 0.5 * du *
                   (u.values[i] * v.values[i] * u.grid[i] +
                    u.values[i + 1] * v.values[i + 1] * u.grid[i + 1]);
        }
        return acc;
    };

    const GridFunction Hg = h_transform_multiplier(params, g, nu, f.grid);
    const GridFunction Hf = h_transform_multiplier(params, f, nu, g.grid);
    const Complex a = pairing(f, Hg);
    const Complex b = pairing(g, Hf);
    return std::abs(a - b) / std::max(std::abs(a), floor);
}

namespace {

MethodResult compare_on_interior(const GridFunction& got, const GridFunction& want,
                                 std::size_t lo, std::size_t hi, double seconds) {
    MethodResult r;
    r.ok = true;
    r.relative_l2 = relative_l2_error(got, want, lo, hi);
    r.seconds = seconds;
    return r;
}

MethodResult failed(const std::string& message, double seconds) {
    MethodResult r;
    r.ok = false;
    r.error = message;
    r.seconds = seconds;
    return r;
}

} // namespace

RoundtripReport roundtrip_report(const OraclePair& pair, double nu, double r,
                                 ForwardMethod method) {
    RoundtripReport rep;
    rep.pair = pair.name;
    rep.nu = nu;
    rep.r = r;
    rep.forward_method = method == ForwardMethod::direct ? "direct" : "mellin";
    rep.regime = classify_regime(pair.params, nu, r);
    rep.outside_proven_regime = rep.regime.inversion_branch == InversionBranch::none;

    const GridFunction f = pair.sample_f(nu);
    const auto xgrid = make_log_grid(pair.g_min, pair.g_max, pair.g_ppd);

    GridFunction g;
    {
        const double t0 = now_seconds();
        try {
            g = method == ForwardMethod::direct
                    ? h_transform_direct(pair.params, f, xgrid)
                    : h_transform_multiplier(pair.params, f, nu, xgrid);
            GridFunction g_oracle = sample_function(xgrid, pair.g, 1.0 - nu);
            const auto [lo, hi] = interior_window(xgrid);
            rep.forward_vs_oracle =
                compare_on_interior(g, g_oracle, lo, hi, now_seconds() - t0);
        } catch (const std::exception& e) {
            rep.forward_vs_oracle = failed(e.what(), now_seconds() - t0);
            return rep;  // nothing to invert
        }
    }

    const GridFunction f_ref = pair.sample_f(nu);
    const auto [flo, fhi] = interior_window(f_ref.grid);

    {
        const double t0 = now_seconds();
        try {
            const GridFunction back =
                invert_via_mellin(pair.params, g, nu, f_ref.grid);
            rep.mellin = compare_on_interior(back, f_ref, flo, fhi, now_seconds() - t0);
        } catch (const std::exception& e) {
            rep.mellin = failed(e.what(), now_seconds() - t0);
        }
    }
    {
        const double t0 = now_seconds();
        try {
            const InversionPlan plan =
                make_inversion_plan(pair.params, nu, FormulaBranch::formula_1_11);
            rep.formula_lambda = plan.lambda;
            rep.formula_branch = to_string(plan.branch);
            const GridFunction back = invert_via_formula(pair.params, g, plan, f_ref.grid);
            rep.formula = compare_on_interior(back, f_ref, flo, fhi, now_seconds() - t0);
        } catch (const std::exception& e) {
            rep.formula = failed(e.what(), now_seconds() - t0);
        }
    }
    const auto [lo_t, hi_t] = interior_window(f_ref.grid);
    rep.interior = {f_ref.grid[lo_t], f_ref.grid[hi_t - 1]};
    return rep;
}

} // namespace hfox
