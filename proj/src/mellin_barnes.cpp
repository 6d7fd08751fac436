#include "hfox/mellin_barnes.hpp"

#include "hfox/errors.hpp"
#include "hfox/gamma.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace hfox {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kInf = std::numeric_limits<double>::infinity();

// 16-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 8> kGlNodes16 = {
    0.0950125098376374401853, 0.2816035507792589132305, 0.4580167776572273863424,
    0.6178762444026437484467, 0.7554044083550030338951, 0.8656312023878317438805,
    0.9445750230732325760780, 0.9894009349916499325962};
constexpr std::array<double, 8> kGlWeights16 = {
    0.1894506104550684962854, 0.1826034150449235888667, 0.1691565193950025381893,
    0.1495959888165767320815, 0.1246289712555338720525, 0.0951585116824927848099,
    0.0622535239386478928628, 0.0271524594117540948518};

// 8-point rule used for the coarse pass of the N-vs-2N error estimate.
constexpr std::array<double, 4> kGlNodes8 = {
    0.1834346424956498049395, 0.5255324099163289858177,
    0.7966664774136267395916, 0.9602898564975362316836};
constexpr std::array<double, 4> kGlWeights8 = {
    0.3626837833783619829652, 0.3137066458778872873380,
    0.2223810344533744705444, 0.1012285362903762591525};

bool real_coefficients(const HFunctionParams& params) {
    for (const auto& r : params.upper)
        if (r.a.imag() != 0.0)
            return false;
    for (const auto& r : params.lower)
        if (r.a.imag() != 0.0)
            return false;
    return true;
}

struct LineIntegrand {
    const HFunctionParams& params;
    double sigma;
    double log_z;

    // exp(log chi(sigma+it) - s ln z)/(2 pi); 0 at denominator-gamma poles.
    Complex operator()(double t) const {
        const Complex s(sigma, t);
        bool zero = false;
        const Complex lw = log_chi(params, s, &zero);
        if (zero)
            return {0.0, 0.0};
        const Complex e = lw - s * log_z;
        if (e.real() > 690.0)
            throw AccuracyError("eval_h: integrand overflow on the contour", {0, 0}, kInf);
        return std::exp(e) / (2.0 * kPi);
    }
};

// Asymptotic oscillation rate of the integrand at height t (> 0):
// d/dt arg[chi(sigma+it) z^{-it}] ~ Delta ln t + ln(delta) - ln z.
struct OscRate {
    double Delta;
    double log_delta_minus_log_z;
    double operator()(double t) const {
        return std::abs(Delta * std::log(std::max(t, 1.5)) + log_delta_minus_log_z);
    }
};

template <typename F>
Complex gauss16(const F& f, double a, double b) {
    const double c = 0.5 * (a + b), hl = 0.5 * (b - a);
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < 8; ++i) {
        acc += kGlWeights16[i] * (f(c + hl * kGlNodes16[i]) + f(c - hl * kGlNodes16[i]));
    }
    return acc * hl;
}

template <typename F>
Complex gauss8(const F& f, double a, double b) {
    const double c = 0.5 * (a + b), hl = 0.5 * (b - a);
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < 4; ++i) {
        acc += kGlWeights8[i] * (f(c + hl * kGlNodes8[i]) + f(c - hl * kGlNodes8[i]));
    }
    return acc * hl;
}

// Panel edges on [0, T] sized so that each panel spans at most ~8 radians of
// integrand phase; amplitude alone is handled well by long panels.
std::vector<double> build_panels(double T, const OscRate& rate) {
    std::vector<double> edges{0.0};
    double t = 0.0;
    while (t < T) {
        const double w = std::max(rate(t + 0.5), 0.25);
        double len = std::max(std::min(8.0 / w, 8.0), 0.02);
        len = std::min(len, T - t);
        t += len;
        edges.push_back(std::min(t, T));
    }
    edges.back() = T;
    return edges;
}

struct CoreResult {
    Complex coarse{0, 0};
    Complex fine{0, 0};
    int nodes = 0;
};

// Integrate over [0,T] (dir=+1) or [-T,0] (dir=-1) with N and 2N nodes.
CoreResult integrate_half(const LineIntegrand& f, double T, int dir, const OscRate& rate) {
    CoreResult r;
    const auto edges = build_panels(T, rate);
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        double a = edges[k], b = edges[k + 1];
        if (dir < 0)
            std::swap(a, b), a = -a, b = -b;
        r.coarse += gauss8(f, a, b);
        r.fine += gauss16(f, a, b);
        r.nodes += 8;
    }
    return r;
}

struct TailResult {
    Complex value{0, 0};
    double estimate = 0.0;
};

// Euler-averaged continuation of the oscillatory tail beyond +-T. Successive
// half-period segments form an alternating-flavour sequence of partial sums;
// iterated pairwise averaging accelerates it.
TailResult oscillatory_tail(const LineIntegrand& f, double T, int dir, const OscRate& rate,
                            double peak) {
    TailResult out;
    const double probe = std::abs(f(dir * T));
    if (probe < 1e-15 * peak) {
        out.estimate = probe * 2.0;
        return out;
    }
    constexpr int kSegments = 14;
    std::array<Complex, kSegments + 1> partial{};
    double t = T;
    Complex acc{0, 0};
    partial[0] = acc;
    double last_seg = 0.0, first_seg = 0.0, abs_segs = 0.0;
    for (int j = 1; j <= kSegments; ++j) {
        const double w = std::max(rate(t), 0.05);
        const double len = kPi / w;
        acc += gauss16(f, dir * t, dir * (t + len)) * static_cast<double>(dir);
        t += len;
        partial[static_cast<std::size_t>(j)] = acc;
        last_seg = std::abs(partial[static_cast<std::size_t>(j)] -
                            partial[static_cast<std::size_t>(j - 1)]);
        if (j == 1)
            first_seg = last_seg;
        abs_segs += last_seg;
    }
    // Without oscillation the averaging below has no cancellation to work
    // with; if the segments are not clearly decaying either, the tail is
    // divergent and the whole segment mass is the honest error.
    const bool no_oscillation = rate(t) < 0.08;
    const bool not_decaying = last_seg > 0.3 * first_seg;
    std::array<Complex, kSegments + 1> row = partial;
    int len = kSegments + 1;
    Complex prev = row[static_cast<std::size_t>(len - 1)];
    while (len > 1) {
        for (int i = 0; i + 1 < len; ++i)
            row[static_cast<std::size_t>(i)] =
                0.5 * (row[static_cast<std::size_t>(i)] + row[static_cast<std::size_t>(i + 1)]);
        --len;
        if (len > 1)
            prev = row[static_cast<std::size_t>(len - 1)];
    }
    out.value = row[0];
    out.estimate = std::abs(row[0] - prev) + 1e-4 * last_seg;
    if (no_oscillation && not_decaying)
        out.estimate = std::max(out.estimate, abs_segs);
    return out;
}

} // namespace

Complex log_chi(const HFunctionParams& params, Complex s, bool* is_zero) {
    if (is_zero)
        *is_zero = false;
    Complex acc{0.0, 0.0};
    for (int j = 0; j < params.m; ++j) {
        const auto& r = params.lower[static_cast<std::size_t>(j)];
        const Complex arg = r.a + r.scale * s;
        if (near_gamma_pole(arg))
            throw PoleError("chi: pole of numerator Gamma(b_j + beta_j s)", s);
        acc += log_gamma(arg);
    }
    for (int i = 0; i < params.n; ++i) {
        const auto& r = params.upper[static_cast<std::size_t>(i)];
        const Complex arg = 1.0 - r.a - r.scale * s;
        if (near_gamma_pole(arg))
            throw PoleError("chi: pole of numerator Gamma(1 - a_i - alpha_i s)", s);
        acc += log_gamma(arg);
    }
    for (int i = params.n; i < params.p; ++i) {
        const auto& r = params.upper[static_cast<std::size_t>(i)];
        const Complex arg = r.a + r.scale * s;
        if (near_gamma_pole(arg)) {
            if (is_zero)
                *is_zero = true;
            return {0.0, 0.0};
        }
        acc -= log_gamma(arg);
    }
    for (int j = params.m; j < params.q; ++j) {
        const auto& r = params.lower[static_cast<std::size_t>(j)];
        const Complex arg = 1.0 - r.a - r.scale * s;
        if (near_gamma_pole(arg)) {
            if (is_zero)
                *is_zero = true;
            return {0.0, 0.0};
        }
        acc -= log_gamma(arg);
    }
    return acc;
}

Complex chi(const HFunctionParams& params, Complex s) {
    bool zero = false;
    const Complex lc = log_chi(params, s, &zero);
    if (zero)
        return {0.0, 0.0};
    return std::exp(lc);
}

std::vector<Complex> numerator_poles(const HFunctionParams& params, int k_max) {
    std::vector<Complex> out;
    for (int j = 0; j < params.m; ++j) {
        const auto& r = params.lower[static_cast<std::size_t>(j)];
        for (int k = 0; k <= k_max; ++k)
            out.push_back(-(r.a + static_cast<double>(k)) / r.scale);
    }
    for (int i = 0; i < params.n; ++i) {
        const auto& r = params.upper[static_cast<std::size_t>(i)];
        for (int k = 0; k <= k_max; ++k)
            out.push_back((1.0 - r.a + static_cast<double>(k)) / r.scale);
    }
    return out;
}

ContourSpec choose_contour(const HFunctionParams& params, double z, double nu_hint) {
    params.validate();
    if (!(z > 0.0))
        throw std::invalid_argument("choose_contour: need z > 0");
    const DerivedConstants c = derive_constants(params);

    if (c.a_star < -1e-12 * std::max(1.0, std::abs(c.Delta)))
        throw ContourError("choose_contour: vertical-line evaluation requires a* >= 0 "
                           "(integrand grows exponentially)");
    if (!(c.alpha < c.beta)) {
        const PoleSeparationReport sep = check_pole_separation(params);
        if (!sep.numerator_disjoint)
            throw ContourError("choose_contour: numerator pole families coincide (2.8 fails); "
                               "no separating contour exists");
        throw ContourError("choose_contour: pole families interleave (alpha >= beta); "
                           "indented contours are not supported");
    }

    const double width = c.beta - c.alpha;  // may be +inf
    const double margin = std::isfinite(width) ? 0.25 * std::min(1.0, 0.5 * width) : 0.25;
    double sigma = 1.0 - nu_hint;
    const bool astar_zero = std::abs(c.a_star) <= 1e-12 * std::max(1.0, std::abs(c.Delta));
    if (astar_zero && c.Delta != 0.0) {
        // Bias toward absolute convergence: Delta*sigma + Re(mu) <= -1.2 if possible.
        const double target = (-1.2 - c.mu.real()) / c.Delta;
        sigma = c.Delta > 0.0 ? std::min(sigma, target) : std::max(sigma, target);
    }
    if (std::isfinite(c.alpha))
        sigma = std::max(sigma, c.alpha + margin);
    if (std::isfinite(c.beta))
        sigma = std::min(sigma, c.beta - margin);

    const double log_z = std::log(z);
    const LineIntegrand f{params, sigma, log_z};
    const OscRate rate{c.Delta, std::log(c.delta) - log_z};

    double peak = 0.0;
    for (double t : {0.0, 0.5, 1.0, 2.0, 4.0})
        peak = std::max(peak, std::max(std::abs(f(t)), std::abs(f(-t))));
    if (peak == 0.0)
        peak = 1e-300;

    double T = 24.0;
    if (astar_zero && c.Delta != 0.0) {
        // Cover the stationary-phase point t* = (z/delta)^(1/Delta) with
        // enough margin that the Euler-averaged tail sees clean oscillation.
        const double t_star = std::pow(z / c.delta, 1.0 / c.Delta);
        if (std::isfinite(t_star))
            T = std::max(T, 2.0 * t_star + 10.0);
    }
    const double decay_power = c.Delta * sigma + c.mu.real();
    for (int grow = 0; grow < 12; ++grow) {
        const double end_mag = std::max(std::abs(f(T)), std::abs(f(-T)));
        const bool absolute = decay_power < -1.1;
        const double goal = absolute ? 1e-9 * peak * std::abs(decay_power + 1.0) / std::max(T, 1.0)
                                     : 1e-14 * peak;
        if (end_mag < goal || (!absolute && astar_zero))
            break;
        if (T > 5e4)
            break;
        T *= 2.0;
    }

    ContourSpec spec;
    spec.sigma = sigma;
    spec.half_height = T;
    double density = 2.0 * (rate(T) + 1.0);
    spec.nodes = static_cast<int>(std::min(4e6, std::ceil(2.0 * T * std::max(8.0, density))));
    spec.indent_radius = 0.0;
    return spec;
}

HValue eval_h(const HFunctionParams& params, double z, const ContourSpec& contour) {
    params.validate();
    if (!(z > 0.0))
        throw std::invalid_argument("eval_h: need z > 0");
    if (contour.indent_radius != 0.0)
        throw UnsupportedError("eval_h: indented contours are not supported");

    const DerivedConstants c = derive_constants(params);
    const double log_z = std::log(z);
    const LineIntegrand f{params, contour.sigma, log_z};
    const OscRate rate{c.Delta, std::log(c.delta) - log_z};
    const double T = contour.half_height;

    double peak = 0.0;
    for (double t : {0.0, 0.5, 1.0, 2.0, 4.0})
        peak = std::max(peak, std::max(std::abs(f(t)), std::abs(f(-t))));
    if (peak == 0.0)
        peak = 1e-300;

    Complex coarse{0, 0}, fine{0, 0};
    double tail_estimate = 0.0;
    if (real_coefficients(params)) {
        const CoreResult half = integrate_half(f, T, +1, rate);
        const TailResult tail = oscillatory_tail(f, T, +1, rate, peak);
        coarse = 2.0 * std::real(half.coarse + tail.value);
        fine = 2.0 * std::real(half.fine + tail.value);
        tail_estimate = 2.0 * tail.estimate;
    } else {
        const CoreResult up = integrate_half(f, T, +1, rate);
        const CoreResult dn = integrate_half(f, T, -1, rate);
        const TailResult tup = oscillatory_tail(f, T, +1, rate, peak);
        const TailResult tdn = oscillatory_tail(f, T, -1, rate, peak);
        coarse = up.coarse + dn.coarse + tup.value + tdn.value;
        fine = up.fine + dn.fine + tup.value + tdn.value;
        tail_estimate = tup.estimate + tdn.estimate;
    }

    HValue out;
    out.value = fine;
    out.error_estimate = std::abs(fine - coarse) + tail_estimate;
    const double scale = std::max(std::abs(fine), 1e-3 * peak);
    if (out.error_estimate > 0.25 * scale && out.error_estimate > 1e-13 * peak) {
        throw AccuracyError("eval_h: contour quadrature did not converge (estimate " +
                                std::to_string(out.error_estimate) + ")",
                            out.value, out.error_estimate);
    }
    return out;
}

HValue eval_h(const HFunctionParams& params, double z, double nu_hint) {
    return eval_h(params, z, choose_contour(params, z, nu_hint));
}

HValue residue_series(const HFunctionParams& params, double z, int k_max) {
    params.validate();
    if (z < 0.0)
        throw std::invalid_argument("residue_series: need z >= 0");
    const DerivedConstants c = derive_constants(params);
    if (!(c.Delta > 0.0))
        throw InadmissibleError("residue_series: requires Delta > 0");
    const PoleSeparationReport sep = check_pole_separation(params, std::max(64, k_max));
    if (!sep.lower_simple)
        throw UnsupportedError("residue_series: lower numerator poles are not simple "
                               "(power-log case is outside the oracle's scope)");
    if (!sep.numerator_disjoint)
        throw UnsupportedError("residue_series: numerator pole families coincide (2.8 fails)");

    // Residue of chi(s) z^{-s} at s = -(b_j+k)/beta_j is
    // (-1)^k / (k! beta_j) * rest_j(s) * z^{(b_j+k)/beta_j}.
    auto rest_log = [&](int j_skip, Complex s, bool* zero) {
        Complex acc{0, 0};
        *zero = false;
        for (int j = 0; j < params.m; ++j) {
            if (j == j_skip)
                continue;
            const auto& r = params.lower[static_cast<std::size_t>(j)];
            const Complex arg = r.a + r.scale * s;
            if (near_gamma_pole(arg))
                throw UnsupportedError("residue_series: coincident numerator poles");
            acc += log_gamma(arg);
        }
        for (int i = 0; i < params.n; ++i) {
            const auto& r = params.upper[static_cast<std::size_t>(i)];
            const Complex arg = 1.0 - r.a - r.scale * s;
            if (near_gamma_pole(arg))
                throw UnsupportedError("residue_series: coincident numerator poles");
            acc += log_gamma(arg);
        }
        for (int i = params.n; i < params.p; ++i) {
            const auto& r = params.upper[static_cast<std::size_t>(i)];
            const Complex arg = r.a + r.scale * s;
            if (near_gamma_pole(arg)) { *zero = true; return Complex{0, 0}; }
            acc -= log_gamma(arg);
        }
        for (int j = params.m; j < params.q; ++j) {
            const auto& r = params.lower[static_cast<std::size_t>(j)];
            const Complex arg = 1.0 - r.a - r.scale * s;
            if (near_gamma_pole(arg)) { *zero = true; return Complex{0, 0}; }
            acc -= log_gamma(arg);
        }
        return acc;
    };

    Complex sum{0, 0};
    double max_term = 0.0, last_band = 0.0;
    const double log_z = z > 0.0 ? std::log(z) : 0.0;
    for (int k = 0; k <= k_max; ++k) {
        double band = 0.0;  // largest |term| in this k-band across j
        for (int j = 0; j < params.m; ++j) {
            const auto& r = params.lower[static_cast<std::size_t>(j)];
            const Complex s_pole = -(r.a + static_cast<double>(k)) / r.scale;
            const Complex exponent = (r.a + static_cast<double>(k)) / r.scale;  // z^exponent
            if (z == 0.0) {
                if (std::abs(exponent) <= 1e-14) {
                    bool zero = false;
                    const Complex lg = rest_log(j, s_pole, &zero);
                    if (!zero) {
                        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
                        sum += sign / (std::tgamma(k + 1.0) * r.scale) * std::exp(lg);
                    }
                }
                continue;
            }
            bool zero = false;
            const Complex lg = rest_log(j, s_pole, &zero);
            if (zero)
                continue;
            Complex log_term = lg + exponent * log_z - std::lgamma(k + 1.0) - std::log(r.scale);
            if (log_term.real() > 690.0)
                throw AccuracyError("residue_series: term overflow (z too large)", sum, kInf);
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            const Complex term = sign * std::exp(log_term);
            sum += term;
            band = std::max(band, std::abs(term));
        }
        max_term = std::max(max_term, band);
        last_band = band;
        if (z > 0.0 && k > 4 && band < 1e-18 * std::max(std::abs(sum), max_term))
            break;
    }
    HValue out;
    out.value = sum;
    out.error_estimate = last_band * static_cast<double>(std::max(params.m, 1));
    if (z > 0.0 && last_band > 1e-10 * std::max({std::abs(sum), max_term, 1e-300}))
        throw AccuracyError("residue_series: series not numerically decreasing before k_max",
                            sum, out.error_estimate);
    return out;
}

AsymptoticOrders asymptotic_orders(const HFunctionParams& params) {
    const DerivedConstants c = derive_constants(params);
    AsymptoticOrders out;
    if (c.Delta >= -1e-12 * std::max(1.0, std::abs(c.Delta)))
        out.rho = c.rho;
    out.varrho = c.varrho;
    out.log_order_zero = c.log_order_zero;
    out.log_order_inf = c.log_order_inf;
    return out;
}

} // namespace hfox
