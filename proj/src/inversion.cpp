#include "hfox/inversion.hpp"

#include "hfox/errors.hpp"
#include "hfox/mellin_barnes.hpp"

#include <cmath>
#include <stdexcept>

namespace hfox {

namespace {
constexpr double kThresholdTol = 1e-12;
}

std::string to_string(FormulaBranch b) {
    return b == FormulaBranch::formula_1_11 ? "formula-1.11" : "formula-1.12";
}

void InversionPlan::validate_for(double nu) const {
    if (h == 0.0)
        throw std::invalid_argument("InversionPlan: h must be nonzero");
    const double threshold = nu * h - 1.0;
    const double margin = lambda.real() - threshold;
    if (std::abs(margin) <= kThresholdTol * std::max(1.0, std::abs(threshold)))
        throw std::invalid_argument(
            "InversionPlan: Re(lambda) sits exactly on the branch threshold nu*h-1; "
            "neither branch applies");
    if (branch == FormulaBranch::formula_1_11 && margin < 0.0)
        throw std::invalid_argument("InversionPlan: formula-1.11 requires Re(lambda) > nu*h-1");
    if (branch == FormulaBranch::formula_1_12 && margin > 0.0)
        throw std::invalid_argument("InversionPlan: formula-1.12 requires Re(lambda) < nu*h-1");
}

HFunctionParams inverse_kernel_params(const HFunctionParams& params, Complex lambda,
                                      double h, FormulaBranch branch) {
    params.validate();
    if (h == 0.0)
        throw std::invalid_argument("inverse_kernel_params: h must be nonzero");
    const HFunctionParams dual = dual_params(params);
    const GammaPair top{-lambda, h};
    const GammaPair bottom{-lambda - 1.0, h};

    HFunctionParams out;
    out.p = params.p + 1;
    out.q = params.q + 1;
    if (branch == FormulaBranch::formula_1_11) {
        out.m = params.q - params.m;
        out.n = params.p - params.n + 1;
        out.upper.push_back(top);
        out.upper.insert(out.upper.end(), dual.upper.begin(), dual.upper.end());
        out.lower = dual.lower;
        out.lower.push_back(bottom);
    } else {
        out.m = params.q - params.m + 1;
        out.n = params.p - params.n;
        out.upper = dual.upper;
        out.upper.push_back(top);
        out.lower.push_back(bottom);
        out.lower.insert(out.lower.end(), dual.lower.begin(), dual.lower.end());
    }
    out.validate();
    return out;
}

InversionPlan make_inversion_plan(const HFunctionParams& params, double nu,
                                  FormulaBranch branch, double h) {
    const Complex lambda = branch == FormulaBranch::formula_1_11
                               ? Complex(nu * h, 0.0)
                               : Complex(nu * h - 2.0, 0.0);
    return make_inversion_plan(params, nu, branch, lambda, h);
}

InversionPlan make_inversion_plan(const HFunctionParams& params, double nu,
                                  FormulaBranch branch, Complex lambda, double h) {
    InversionPlan plan;
    plan.lambda = lambda;
    plan.h = h;
    plan.branch = branch;
    plan.validate_for(nu);
    plan.kernel = inverse_kernel_params(params, lambda, h, branch);
    return plan;
}

GridFunction invert_via_mellin(const HFunctionParams& params, const GridFunction& g,
                               double nu, const std::vector<double>& tgrid,
                               const MultiplierOptions& options, Diagnostics* diag) {
    params.validate();
    g.validate();
    const DerivedConstants c = derive_constants(params);
    if (!(c.alpha0 < nu && nu < c.beta0))
        throw ContourError("invert_via_mellin: line Re(s) = nu = " + std::to_string(nu) +
                           " is outside (alpha0, beta0) = (" + std::to_string(c.alpha0) +
                           ", " + std::to_string(c.beta0) + ")");

    const HFunctionParams dual = dual_params(params);
    const auto nodes = make_line_nodes(options.line_half_height, options.line_nodes);
    Diagnostics local;
    const MellinLineFunction Fg = mellin_forward(g, 1.0 - nu, nodes, &local);

    MellinLineFunction line;
    line.sigma = nu;
    line.imag_nodes = nodes;
    line.values.resize(nodes.size());
    const std::size_t M = nodes.size();
    for (std::size_t k = 0; k < M; ++k) {
        const Complex s(nu, nodes[k]);
        line.values[k] = chi(dual, s) * Fg.values[M - 1 - k];
    }

    GridFunction f = mellin_inverse(line, tgrid, InverseOptions{}, &local);
    f.weight_nu = nu;
    if (diag)
        diag->merge(local);
    return f;
}

GridFunction invert_via_formula(const HFunctionParams& params, const GridFunction& g,
                                const InversionPlan& plan, const std::vector<double>& tgrid,
                                const DirectOptions& options, Diagnostics* diag) {
    params.validate();
    g.validate();
    const double nu = 1.0 - g.weight_nu;  // g = Hf lives in the 1-nu space
    plan.validate_for(nu);

    if (diag) {
        try {
            ScanOptions no_scan;
            no_scan.steps = 8;
            no_scan.t_max = 1.0;
            const RegimeReport rep = classify_regime(params, nu, 2.0, no_scan);
            if (rep.inversion_branch == InversionBranch::none) {
                diag->outside_proven_regime = true;
                diag->add_note("no inversion theorem applies at (nu=" + std::to_string(nu) +
                               ", r=2); computing anyway");
            }
        } catch (const std::exception& e) {
            diag->add_note(std::string("regime check failed: ") + e.what());
        }
    }

    const bool kernel_unset = plan.kernel.p == 0 && plan.kernel.q == 0 &&
                              plan.kernel.upper.empty() && plan.kernel.lower.empty();
    const HFunctionParams kernel =
        kernel_unset ? inverse_kernel_params(params, plan.lambda, plan.h, plan.branch)
                     : plan.kernel;
    const double sign = plan.branch == FormulaBranch::formula_1_11 ? 1.0 : -1.0;
    DirectOptions opt = options;
    opt.check_regime = false;
    GridFunction f =
        apply_differential_form(kernel, g, plan.lambda, plan.h, sign, tgrid, opt, diag);
    f.weight_nu = nu;
    return f;
}

} // namespace hfox
