#include "hfox/mellin.hpp"

#include "hfox/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace hfox {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

struct PowerFit {
    bool valid = false;
    double exponent = 0.0;
    double scatter = 0.0;  // rms residual of ln|f| against the fit
};

// Least-squares power law |f| ~ c t^a over the index range [first, last).
PowerFit fit_power(const std::vector<double>& u, const std::vector<Complex>& f,
                   std::size_t first, std::size_t last) {
    PowerFit out;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t i = first; i < last; ++i) {
        const double a = std::abs(f[i]);
        if (a <= 0.0)
            return out;
        sx += u[i];
        sy += std::log(a);
        sxx += u[i] * u[i];
        sxy += u[i] * std::log(a);
        ++n;
    }
    if (n < 3)
        return out;
    const double dn = static_cast<double>(n);
    const double det = dn * sxx - sx * sx;
    if (det <= 0.0)
        return out;
    out.exponent = (dn * sxy - sx * sy) / det;
    const double intercept = (sy - out.exponent * sx) / dn;
    double ss = 0.0;
    for (std::size_t i = first; i < last; ++i)
        ss += std::pow(std::log(std::abs(f[i])) - out.exponent * u[i] - intercept, 2);
    out.scatter = std::sqrt(ss / dn);
    out.valid = true;
    return out;
}

bool log_uniform(const std::vector<double>& u, double* h_out) {
    if (u.size() < 2)
        return false;
    const double h = (u.back() - u.front()) / static_cast<double>(u.size() - 1);
    for (std::size_t i = 1; i < u.size(); ++i)
        if (std::abs(u[i] - u[i - 1] - h) > 1e-8 * std::max(h, 1.0))
            return false;
    *h_out = h;
    return true;
}

} // namespace

std::vector<double> make_line_nodes(double half_height, std::size_t nodes) {
    return make_uniform_grid(-half_height, half_height, nodes);
}

MellinLineFunction mellin_forward(const GridFunction& f, double sigma,
                                  const std::vector<double>& imag_nodes,
                                  Diagnostics* diag, const ForwardOptions& options) {
    f.validate();
    if (imag_nodes.empty())
        throw std::invalid_argument("mellin_forward: empty node list");
    const std::size_t n = f.size();
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i)
        u[i] = std::log(f.grid[i]);
    double h = 0.0;
    const bool uniform = log_uniform(u, &h);

    // Integrand g(u) = e^{s u} f(e^u); A_i carries the tau-independent part.
    std::vector<Complex> A(n);
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        A[i] = f.values[i] * std::exp(sigma * u[i]);
        peak = std::max(peak, std::abs(A[i]));
    }
    if (peak == 0.0)
        peak = 1e-300;

    // Endpoint handling: negligible endpoints need no tail; otherwise fit a
    // power law over the outer 10% of nodes and continue the lattice sum
    // geometrically (uniform grids) or integrate the fit (nonuniform).
    const std::size_t edge = std::max<std::size_t>(4, n / 10);
    struct Tail {
        bool active = false;
        PowerFit fit;
        std::size_t idx = 0;
    } lo, hi;
    lo.idx = 0;
    hi.idx = n - 1;
    if (options.fit_tails && std::abs(A[lo.idx]) > 1e-12 * peak) {
        lo.fit = fit_power(u, f.values, 0, std::min(edge, n));
        lo.active = true;
    }
    if (options.fit_tails && std::abs(A[hi.idx]) > 1e-12 * peak) {
        hi.fit = fit_power(u, f.values, n - std::min(edge, n), n);
        hi.active = true;
    }

    MellinLineFunction out;
    out.sigma = sigma;
    out.imag_nodes = imag_nodes;
    out.values.resize(imag_nodes.size());

    double tail_bound_lo = 0.0, tail_bound_hi = 0.0;
    const bool tau_uniform = [&] {
        if (imag_nodes.size() < 3)
            return false;
        const double d = imag_nodes[1] - imag_nodes[0];
        for (std::size_t k = 1; k < imag_nodes.size(); ++k)
            if (std::abs(imag_nodes[k] - imag_nodes[k - 1] - d) > 1e-9 * std::max(1.0, std::abs(d)))
                return false;
        return true;
    }();

    // Oscillating factors e^{i tau u_i}; recurrence over tau with periodic
    // resync keeps the O(N M) loop cheap without losing precision.
    std::vector<Complex> osc(n), step(n);
    const double tau0 = imag_nodes.front();
    const double dtau = imag_nodes.size() > 1 ? imag_nodes[1] - imag_nodes[0] : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        osc[i] = std::exp(Complex(0.0, tau0 * u[i]));
        step[i] = std::exp(Complex(0.0, dtau * u[i]));
    }

    for (std::size_t k = 0; k < imag_nodes.size(); ++k) {
        const double tau = imag_nodes[k];
        const Complex s(sigma, tau);
        if (tau_uniform && k > 0) {
            if (k % 64 == 0) {
                for (std::size_t i = 0; i < n; ++i)
                    osc[i] = std::exp(Complex(0.0, tau * u[i]));
            } else {
                for (std::size_t i = 0; i < n; ++i)
                    osc[i] *= step[i];
            }
        } else if (k > 0) {
            for (std::size_t i = 0; i < n; ++i)
                osc[i] = std::exp(Complex(0.0, tau * u[i]));
        }

        Complex acc{0, 0};
        if (uniform) {
            for (std::size_t i = 0; i < n; ++i)
                acc += A[i] * osc[i];
            acc -= 0.5 * (A[0] * osc[0] + A[n - 1] * osc[n - 1]);
            acc *= h;
        } else {
            for (std::size_t i = 0; i + 1 < n; ++i)
                acc += 0.5 * (A[i] * osc[i] + A[i + 1] * osc[i + 1]) * (u[i + 1] - u[i]);
        }

        auto add_tail = [&](const Tail& tl, int dir, double& bound) {
            if (!tl.active)
                return;
            const Complex g_end = A[tl.idx] * osc[tl.idx];
            if (!tl.fit.valid || tl.fit.scatter > 0.75) {
                // No usable model (e.g. oscillatory data): bound the omission.
                bound = std::max(bound, std::abs(g_end) * (uniform ? h : 0.05) * 4.0);
                return;
            }
            const Complex gam = s + tl.fit.exponent;  // growth rate of g along u
            if (uniform) {
                const Complex q = std::exp(static_cast<double>(dir) * gam * h);
                if (std::abs(q) >= 1.0 - 1e-9) {
                    throw DomainError(std::string("mellin_forward: ") +
                                          (dir < 0 ? "lower" : "upper") +
                                          " endpoint tail diverges for Re(s)=" +
                                          std::to_string(sigma),
                                      dir < 0 ? "lower" : "upper");
                }
                // continue the lattice sum past the half-weighted end node:
                // h*g_end*(1/2 + q + q^2 + ...) = h*g_end*(1+q)/(2(1-q))
                const Complex tail = h * g_end * (1.0 + q) / (2.0 * (1.0 - q));
                acc += tail;
                // extrapolation bias grows with how far the model is carried
                const double carry = 1.0 + std::abs(u[tl.idx]);
                bound = std::max(bound,
                                 std::abs(tail) * std::min(1.0, 8.0 * tl.fit.scatter * carry));
            } else {
                if (static_cast<double>(dir) * gam.real() >= -1e-9) {
                    throw DomainError(std::string("mellin_forward: ") +
                                          (dir < 0 ? "lower" : "upper") +
                                          " endpoint tail diverges for Re(s)=" +
                                          std::to_string(sigma),
                                      dir < 0 ? "lower" : "upper");
                }
                acc += -static_cast<double>(dir) * g_end / gam;
                bound = std::max(bound, std::abs(g_end / gam) * tl.fit.scatter);
            }
        };
        add_tail(lo, -1, tail_bound_lo);
        add_tail(hi, +1, tail_bound_hi);
        out.values[k] = acc;
    }

    if (diag) {
        diag->error_estimate += tail_bound_lo + tail_bound_hi;
        char buf[128];
        std::snprintf(buf, sizeof buf, "mellin_forward: tail bounds lower %.3g upper %.3g",
                      tail_bound_lo, tail_bound_hi);
        diag->add_note(buf);
    }
    return out;
}

GridFunction mellin_inverse(const MellinLineFunction& F, const std::vector<double>& grid,
                            const InverseOptions& options, Diagnostics* diag) {
    F.validate();
    if (grid.empty())
        throw std::invalid_argument("mellin_inverse: empty output grid");
    const std::size_t m = F.size();
    double peak = 0.0;
    for (const auto& v : F.values)
        peak = std::max(peak, std::abs(v));
    const double end_mag = std::max(std::abs(F.values.front()), std::abs(F.values.back()));
    if (peak > 0.0 && end_mag > options.coverage_tol * peak)
        throw AccuracyError("mellin_inverse: insufficient line coverage (|F| at the line ends is " +
                                std::to_string(end_mag / peak) + " of its peak)",
                            {0, 0}, end_mag);

    // Trapezoid weights, optionally tapered by a raised cosine on the outer
    // fraction of the line.
    std::vector<double> w(m, 1.0);
    w.front() = w.back() = 0.5;
    if (options.taper_fraction > 0.0 && m > 4) {
        const double lo = F.imag_nodes.front(), hi = F.imag_nodes.back();
        const double span = hi - lo;
        const double cut = 0.5 * options.taper_fraction * span;
        for (std::size_t k = 0; k < m; ++k) {
            const double d = std::min(F.imag_nodes[k] - lo, hi - F.imag_nodes[k]);
            if (d < cut)
                w[k] *= 0.5 * (1.0 - std::cos(kPi * d / cut));
        }
    }

    GridFunction out;
    out.grid = grid;
    out.values.assign(grid.size(), Complex{0, 0});
    out.weight_nu = F.sigma;

    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double uj = std::log(grid[j]);
        Complex acc{0, 0};
        Complex osc = std::exp(Complex(0.0, -F.imag_nodes.front() * uj));
        Complex step{1.0, 0.0};
        bool have_step = false;
        for (std::size_t k = 0; k < m; ++k) {
            if (k > 0) {
                const double d = F.imag_nodes[k] - F.imag_nodes[k - 1];
                if (!have_step) {
                    step = std::exp(Complex(0.0, -d * uj));
                    have_step = true;
                }
                if (k % 64 == 0)
                    osc = std::exp(Complex(0.0, -F.imag_nodes[k] * uj));
                else
                    osc *= step;
                // Nonuniform spacing: fall back to a direct evaluation.
                if (std::abs(d - (F.imag_nodes[1] - F.imag_nodes[0])) >
                    1e-9 * std::max(1.0, std::abs(d)))
                    osc = std::exp(Complex(0.0, -F.imag_nodes[k] * uj));
            }
            double dk;
            if (k == 0)
                dk = F.imag_nodes[1] - F.imag_nodes[0];
            else if (k + 1 == m)
                dk = F.imag_nodes[m - 1] - F.imag_nodes[m - 2];
            else
                dk = 0.5 * (F.imag_nodes[k + 1] - F.imag_nodes[k - 1]);
            acc += w[k] * dk * F.values[k] * osc;
        }
        out.values[j] = acc * std::pow(grid[j], -F.sigma) / (2.0 * kPi);
    }
    if (diag)
        diag->error_estimate += end_mag * (F.imag_nodes.back() - F.imag_nodes.front()) * 1e-3;
    return out;
}

GridFunction dilate(const GridFunction& f, double a) {
    f.validate();
    if (!(a > 0.0))
        throw std::invalid_argument("dilate: need a > 0");
    GridFunction out;
    out.grid.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        out.grid[i] = f.grid[i] / a;
    out.values = f.values;
    out.weight_nu = f.weight_nu;
    return out;
}

} // namespace hfox
