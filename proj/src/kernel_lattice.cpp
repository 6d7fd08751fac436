#include "hfox/kernel_lattice.hpp"

#include "hfox/errors.hpp"
#include "hfox/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace hfox {

namespace {

constexpr std::array<double, 8> kGlNodes16 = {
    0.0950125098376374401853, 0.2816035507792589132305, 0.4580167776572273863424,
    0.6178762444026437484467, 0.7554044083550030338951, 0.8656312023878317438805,
    0.9445750230732325760780, 0.9894009349916499325962};
constexpr std::array<double, 8> kGlWeights16 = {
    0.1894506104550684962854, 0.1826034150449235888667, 0.1691565193950025381893,
    0.1495959888165767320815, 0.1246289712555338720525, 0.0951585116824927848099,
    0.0622535239386478928628, 0.0271524594117540948518};

} // namespace

double KernelLattice::oscillation_rate(double w) const {
    if (std::abs(a_star_) > 1e-12 || Delta_ == 0.0)
        return 0.0;  // decaying or bounded-oscillation kernels: no phase model
    // Leading asymptotic phase Delta*(w/delta)^(1/Delta) gives the rate
    // (w/delta)^(1/Delta) per unit log w.
    return std::pow(w / delta_, 1.0 / Delta_);
}

double KernelLattice::truncation_bound(double integrand_mag, double w_edge) const {
    const double rate = std::max(oscillation_rate(w_edge), 0.5);
    return 2.0 * integrand_mag / rate;
}

KernelLattice::KernelLattice(const HFunctionParams& params, double w_lo, double w_hi,
                             const LatticeOptions& options)
    : params_(params) {
    params_.validate();
    if (!(w_lo > 0.0) || !(w_hi > w_lo))
        throw std::invalid_argument("KernelLattice: need 0 < w_lo < w_hi");
    const DerivedConstants c = derive_constants(params_);
    delta_ = c.delta;
    Delta_ = c.Delta;
    a_star_ = c.a_star;

    // Panel edges in u = ln w: base density where smooth, oscillation-locked
    // density where the kernel rings, phase budget capping the oscillatory end.
    double u_lo = std::log(w_lo), u_hi = std::log(w_hi);
    if (a_star_ > 1e-12) {
        // Exponentially decaying kernel: nothing to gain past the point where
        // the decay exponent a*(w/delta')^(1/a*) reaches ~45.
        const double w_decay = delta_ * std::pow(45.0 / a_star_, a_star_);
        u_hi = std::min(u_hi, std::log(std::max(w_decay, 2.0 * w_lo)));
        u_hi = std::max(u_hi, u_lo + 0.1);
    }
    const double base_len = std::log(10.0) / options.base_points_per_decade * 16.0;
    // The oscillatory side (top for Delta > 0, bottom for Delta < 0) carries
    // the phase budget; build from the smooth side toward it.
    const bool downward = std::abs(a_star_) <= 1e-12 && Delta_ < 0.0;
    std::vector<double> edges{downward ? u_hi : u_lo};
    double phase_used = 0.0;
    double u = edges.front();
    const double u_end = downward ? u_lo : u_hi;
    while (downward ? u > u_end : u < u_end) {
        const double w = std::exp(downward ? u - 0.5 * base_len : u + 0.5 * base_len);
        const double rate = oscillation_rate(w);
        double len = base_len;
        if (rate > 0.0)
            len = std::min(len, 10.0 / rate);
        len = std::max(len, 1e-4);
        u = downward ? std::max(u - len, u_end) : std::min(u + len, u_end);
        edges.push_back(u);
        phase_used += rate * len;
        if (phase_used > options.max_phase)
            break;  // oscillation budget exhausted; record truncation
    }
    if (downward)
        std::reverse(edges.begin(), edges.end());
    w_min_built_ = std::exp(edges.front());
    w_max_built_ = std::exp(edges.back());

    const std::size_t n_panels = edges.size() - 1;
    panel_lo_.resize(n_panels);
    panel_hi_.resize(n_panels);
    node_w_.assign(n_panels * 16, 0.0);
    node_coeff_.assign(n_panels * 16, Complex{0, 0});
    node_err_.assign(n_panels * 16, 0.0);

    std::vector<double> panel_err(n_panels, 0.0);
    std::vector<double> panel_mag(n_panels, 0.0);
    parallel_for(n_panels, [&](std::size_t k) {
        const double a = edges[k], b = edges[k + 1];
        panel_lo_[k] = a;
        panel_hi_[k] = b;
        const double mid = 0.5 * (a + b), hl = 0.5 * (b - a);
        for (std::size_t i = 0; i < 8; ++i) {
            for (int sign = 0; sign < 2; ++sign) {
                const double un = mid + (sign ? -hl : hl) * kGlNodes16[i];
                const double w = std::exp(un);
                const std::size_t idx = k * 16 + i * 2 + static_cast<std::size_t>(sign);
                HValue hv;
                try {
                    hv = eval_h(params_, w, options.nu_hint);
                } catch (const AccuracyError& e) {
                    hv.value = e.best_value;
                    hv.error_estimate = e.error_estimate;
                }
                const double coeff = kGlWeights16[i] * hl * w;  // includes dw = w du
                node_w_[idx] = w;
                node_coeff_[idx] = coeff * hv.value;
                node_err_[idx] = coeff * hv.error_estimate;
                panel_err[k] = std::max(panel_err[k], hv.error_estimate);
                panel_mag[k] = std::max(panel_mag[k], std::abs(hv.value));
            }
        }
    });
    for (double e : panel_err)
        max_kernel_err_ = std::max(max_kernel_err_, e);
    h_mag_lo_ = panel_mag.front();
    h_mag_hi_ = panel_mag.back();
}

Complex KernelLattice::integrate(double x, const std::function<Complex(double)>& g,
                                 double* kernel_err) const {
    Complex acc{0, 0};
    double err = 0.0;
    for (std::size_t i = 0; i < node_w_.size(); ++i) {
        const Complex gv = g(node_w_[i] / x);
        if (gv.real() == 0.0 && gv.imag() == 0.0)
            continue;
        acc += node_coeff_[i] * gv;
        err += node_err_[i] * std::abs(gv);
    }
    if (kernel_err)
        *kernel_err += err / x;
    return acc / x;
}

GridInterpolant::GridInterpolant(const GridFunction& f) {
    f.validate();
    u_.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        u_[i] = std::log(f.grid[i]);
    v_ = f.values;
    if (u_.size() >= 2) {
        const double h = (u_.back() - u_.front()) / static_cast<double>(u_.size() - 1);
        uniform_ = true;
        for (std::size_t i = 1; i < u_.size(); ++i)
            if (std::abs(u_[i] - u_[i - 1] - h) > 1e-8 * std::max(h, 1.0)) {
                uniform_ = false;
                break;
            }
        u0_ = u_.front();
        h_ = h;
    }
    edge_mag_ = std::max(std::abs(v_.front()), std::abs(v_.back()));
}

Complex GridInterpolant::operator()(double t) const {
    if (!(t > 0.0))
        return {0, 0};
    const double u = std::log(t);
    if (u < u_.front() || u > u_.back())
        return {0, 0};
    std::size_t i;
    double frac;
    if (uniform_) {
        const double pos = (u - u0_) / h_;
        i = static_cast<std::size_t>(std::min(std::max(pos, 0.0),
                                              static_cast<double>(u_.size() - 2)));
        frac = pos - static_cast<double>(i);
    } else {
        const auto it = std::upper_bound(u_.begin(), u_.end(), u);
        i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - u_.begin() - 1));
        i = std::min(i, u_.size() - 2);
        frac = (u - u_[i]) / (u_[i + 1] - u_[i]);
    }
    // Catmull-Rom with clamped end segments.
    const Complex p1 = v_[i], p2 = v_[i + 1];
    const Complex p0 = i > 0 ? v_[i - 1] : 2.0 * p1 - p2;
    const Complex p3 = i + 2 < v_.size() ? v_[i + 2] : 2.0 * p2 - p1;
    const double t2 = frac * frac, t3 = t2 * frac;
    return 0.5 * ((2.0 * p1) + (-p0 + p2) * frac +
                  (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * t2 +
                  (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * t3);
}

} // namespace hfox
