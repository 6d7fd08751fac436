#include "hfox/transform.hpp"

#include "hfox/errors.hpp"
#include "hfox/gamma.hpp"
#include "hfox/mellin_barnes.hpp"
#include "hfox/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace hfox {

namespace {

constexpr double kThresholdTol = 1e-12;

void attach_regime_warning(const HFunctionParams& params, const GridFunction& f,
                           double r, Diagnostics* diag) {
    if (!diag)
        return;
    try {
        ScanOptions no_scan;
        no_scan.steps = 8;  // keep the advisory check cheap
        no_scan.t_max = 1.0;
        const RegimeReport rep = classify_regime(params, f.weight_nu, r, no_scan);
        if (rep.applicable_theorems.empty()) {
            diag->outside_proven_regime = true;
            diag->add_note("no mapping theorem applies at (nu=" +
                           std::to_string(f.weight_nu) + ", r=" + std::to_string(r) +
                           "); computing anyway");
        }
    } catch (const std::exception& e) {
        diag->add_note(std::string("regime check failed: ") + e.what());
    }
}

} // namespace

void RepresentationParams::validate() const {
    if (h == 0.0)
        throw std::invalid_argument("RepresentationParams: h must be nonzero");
}

void RepresentationParams::validate_for(double nu) const {
    validate();
    const double threshold = (1.0 - nu) * h - 1.0;
    const double margin = lambda.real() - threshold;
    if (std::abs(margin) <= kThresholdTol * std::max(1.0, std::abs(threshold)))
        throw std::invalid_argument(
            "RepresentationParams: Re(lambda) sits exactly on the branch threshold "
            "(1-nu)h-1; neither branch applies");
    if (branch == RepresentationBranch::differential_lower && margin < 0.0)
        throw std::invalid_argument(
            "RepresentationParams: this branch requires Re(lambda) > (1-nu)h-1");
    if (branch == RepresentationBranch::differential_upper && margin > 0.0)
        throw std::invalid_argument(
            "RepresentationParams: this branch requires Re(lambda) < (1-nu)h-1");
}

HFunctionParams augmented_params(const HFunctionParams& params,
                                 const RepresentationParams& rep) {
    params.validate();
    rep.validate();
    HFunctionParams out;
    out.p = params.p + 1;
    out.q = params.q + 1;
    const GammaPair top{-rep.lambda, rep.h};
    const GammaPair bottom{-rep.lambda - 1.0, rep.h};
    if (rep.branch == RepresentationBranch::differential_lower) {
        out.m = params.m;
        out.n = params.n + 1;
        out.upper.push_back(top);
        out.upper.insert(out.upper.end(), params.upper.begin(), params.upper.end());
        out.lower = params.lower;
        out.lower.push_back(bottom);
    } else {
        out.m = params.m + 1;
        out.n = params.n;
        out.upper = params.upper;
        out.upper.push_back(top);
        out.lower.push_back(bottom);
        out.lower.insert(out.lower.end(), params.lower.begin(), params.lower.end());
    }
    out.validate();
    return out;
}

GridFunction h_transform_direct(const HFunctionParams& params, const GridFunction& f,
                                const std::vector<double>& xgrid,
                                const DirectOptions& options, Diagnostics* diag) {
    params.validate();
    f.validate();
    if (xgrid.empty())
        throw std::invalid_argument("h_transform_direct: empty output grid");
    if (options.check_regime)
        attach_regime_warning(params, f, options.check_r, diag);

    const double x_min = *std::min_element(xgrid.begin(), xgrid.end());
    const double x_max = *std::max_element(xgrid.begin(), xgrid.end());
    LatticeOptions lat = options.lattice;
    const KernelLattice lattice(params, x_min * f.grid.front(), x_max * f.grid.back(), lat);
    const GridInterpolant fi(f);

    GridFunction g;
    g.grid = xgrid;
    g.values.assign(xgrid.size(), Complex{0, 0});
    g.weight_nu = 1.0 - f.weight_nu;

    std::vector<double> errs(xgrid.size(), 0.0);
    parallel_for(xgrid.size(), [&](std::size_t j) {
        const double x = xgrid[j];
        double kerr = 0.0;
        g.values[j] = lattice.integrate(x, [&](double t) { return fi(t); }, &kerr);
        double err = kerr;
        // Parts of [x t_min, x t_max] beyond the built lattice were dropped;
        // bound the omitted oscillatory integral by the edge integrand
        // magnitude |H(w) f(w/x) w/x|.
        if (x * f.grid.back() > lattice.built_max() * (1.0 + 1e-12)) {
            const double t_edge = lattice.built_max() / x;
            const double mag = lattice.edge_magnitude(true) * std::abs(fi(t_edge)) * t_edge;
            err += lattice.truncation_bound(mag, lattice.built_max());
        }
        if (x * f.grid.front() < lattice.built_min() * (1.0 - 1e-12)) {
            const double t_edge = lattice.built_min() / x;
            const double mag = lattice.edge_magnitude(false) * std::abs(fi(t_edge)) * t_edge;
            err += lattice.truncation_bound(mag, lattice.built_min());
        }
        errs[j] = err;
    });
    if (diag) {
        const double worst = *std::max_element(errs.begin(), errs.end());
        diag->error_estimate += worst;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "direct path: %zu kernel nodes on [%.3g, %.3g], worst error %.3g",
                      lattice.node_count(), lattice.built_min(), lattice.built_max(), worst);
        diag->add_note(buf);
    }
    return g;
}

GridFunction h_transform_multiplier(const HFunctionParams& params, const GridFunction& f,
                                    double nu, const std::vector<double>& xgrid,
                                    const MultiplierOptions& options, Diagnostics* diag) {
    params.validate();
    f.validate();
    const DerivedConstants c = derive_constants(params);
    if (!(c.alpha < 1.0 - nu && 1.0 - nu < c.beta))
        throw ContourError("h_transform_multiplier: line Re(s) = 1-nu = " +
                           std::to_string(1.0 - nu) + " is outside (alpha, beta) = (" +
                           std::to_string(c.alpha) + ", " + std::to_string(c.beta) + ")");

    const auto nodes = make_line_nodes(options.line_half_height, options.line_nodes);
    Diagnostics local;
    const MellinLineFunction Ff = mellin_forward(f, nu, nodes, &local);

    // chi(s) (M f)(1-s) on s = 1-nu + i tau needs (M f) at nu - i tau:
    // symmetric uniform nodes let us read the mirrored sample directly.
    MellinLineFunction G;
    G.sigma = 1.0 - nu;
    G.imag_nodes = nodes;
    G.values.resize(nodes.size());
    const std::size_t M = nodes.size();
    for (std::size_t k = 0; k < M; ++k) {
        const Complex s(1.0 - nu, nodes[k]);
        G.values[k] = chi(params, s) * Ff.values[M - 1 - k];
    }

    GridFunction g = mellin_inverse(G, xgrid, InverseOptions{}, &local);
    g.weight_nu = 1.0 - nu;
    if (diag)
        diag->merge(local);

    if (options.crosscheck_direct) {
        Diagnostics dd;
        DirectOptions dopt;
        dopt.check_regime = false;
        const GridFunction gd = h_transform_direct(params, f, xgrid, dopt, &dd);
        const auto [lo, hi] = interior_window(xgrid);
        const double rel = relative_l2_error(g, gd, lo, hi);
        const double budget = 1e-5 + 10.0 * (dd.error_estimate + local.error_estimate);
        if (diag) {
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "crosscheck vs direct path: relative L2 %.3g (budget %.3g)%s", rel,
                          budget, rel > budget ? " DISAGREEMENT" : "");
            diag->add_note(buf);
        }
    }
    return g;
}

GridFunction apply_differential_form(const HFunctionParams& kernel, const GridFunction& input,
                                     Complex lambda, double h, double sign,
                                     const std::vector<double>& xgrid,
                                     const DirectOptions& options, Diagnostics* diag) {
    kernel.validate();
    input.validate();
    if (xgrid.empty())
        throw std::invalid_argument("apply_differential_form: empty output grid");

    const double x_min = *std::min_element(xgrid.begin(), xgrid.end());
    const double x_max = *std::max_element(xgrid.begin(), xgrid.end());
    const double slack = 2.5e-3;  // widest relative derivative step used below
    const KernelLattice lattice(kernel, x_min * input.grid.front() * (1.0 - 2.0 * slack),
                                x_max * input.grid.back() * (1.0 + 2.0 * slack),
                                options.lattice);
    const GridInterpolant fi(input);
    const Complex cpow = (lambda + 1.0) / h;

    // F(x) = x^c Int K(xt) f(t) dt; output = sign*h*x^{1-c} dF/dx.
    auto F = [&](double x, double* err) {
        double kerr = 0.0;
        const Complex base = lattice.integrate(x, [&](double t) { return fi(t); }, &kerr);
        if (err)
            *err = std::max(*err, kerr);
        return std::pow(Complex(x, 0.0), cpow) * base;
    };

    GridFunction out;
    out.grid = xgrid;
    out.values.assign(xgrid.size(), Complex{0, 0});
    out.weight_nu = 1.0 - input.weight_nu;

    std::vector<double> errs(xgrid.size(), 0.0);
    parallel_for(xgrid.size(), [&](std::size_t j) {
        const double x = xgrid[j];
        // Central difference in log x with one Richardson stage, refined until
        // two stages agree.
        double step = 1e-3;
        Complex prev_extrap{0, 0};
        double prev_gap = 0.0;
        bool have_prev = false;
        double kerr = 0.0;
        Complex result{0, 0};
        double deriv_err = 0.0;
        double final_step = step;
        for (int stage = 0; stage < 3; ++stage) {
            const Complex d1 =
                (F(x * std::exp(step), &kerr) - F(x * std::exp(-step), &kerr)) /
                (2.0 * step * x);
            const Complex d2 =
                (F(x * std::exp(0.5 * step), &kerr) - F(x * std::exp(-0.5 * step), &kerr)) /
                (step * x);
            const Complex extrap = (4.0 * d2 - d1) / 3.0;
            const double gap = std::abs(d2 - d1);
            result = extrap;
            deriv_err = gap / 3.0;
            final_step = step;
            if (have_prev &&
                std::abs(extrap - prev_extrap) <=
                    1e-9 * std::max(1.0, std::abs(extrap)) + 0.5 * prev_gap) {
                deriv_err = std::abs(extrap - prev_extrap);
                break;
            }
            prev_extrap = extrap;
            prev_gap = gap;
            have_prev = true;
            if (step <= 1.01e-5)
                break;
            step *= 0.1;
        }
        const Complex prefactor = sign * h * std::pow(Complex(x, 0.0), 1.0 - cpow);
        out.values[j] = prefactor * result;
        // kernel error enters the difference quotient divided by the step
        errs[j] = std::abs(prefactor) *
                  (deriv_err + kerr * std::pow(x, cpow.real()) / (final_step * x));
    });
    const double worst = *std::max_element(errs.begin(), errs.end());
    double scale = 0.0;
    for (const auto& v : out.values)
        scale = std::max(scale, std::abs(v));
    if (worst > 0.25 * scale && scale > 0.0)
        throw AccuracyError("apply_differential_form: derivative did not converge", {0, 0},
                            worst);
    if (diag) {
        diag->error_estimate += worst;
        diag->add_note("differential form: derivative by central log-step with Richardson "
                       "refinement");
    }
    return out;
}

GridFunction h_transform_representation(const HFunctionParams& params, const GridFunction& f,
                                        const RepresentationParams& rep,
                                        const std::vector<double>& xgrid,
                                        const DirectOptions& options, Diagnostics* diag) {
    rep.validate_for(f.weight_nu);
    if (options.check_regime)
        attach_regime_warning(params, f, options.check_r, diag);
    const HFunctionParams aug = augmented_params(params, rep);
    const double sign = rep.branch == RepresentationBranch::differential_lower ? 1.0 : -1.0;
    DirectOptions opt = options;
    opt.check_regime = false;
    return apply_differential_form(aug, f, rep.lambda, rep.h, sign, xgrid, opt, diag);
}

} // namespace hfox
