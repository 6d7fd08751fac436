#ifndef HFOX_INVERSION_HPP
#define HFOX_INVERSION_HPP

#include "hfox/params.hpp"
#include "hfox/transform.hpp"
#include "hfox/types.hpp"

namespace hfox {

enum class FormulaBranch { formula_1_11, formula_1_12 };

std::string to_string(FormulaBranch b);

/// How to invert g = Hf: through the Mellin-domain identity or one of the
/// two differential formulas (whose kernel is populated here).
struct InversionPlan {
    Complex lambda{0.5, 0.0};
    double h = 1.0;
    FormulaBranch branch = FormulaBranch::formula_1_11;
    HFunctionParams kernel;  // H1 or H2, filled by make_inversion_plan

    /// Branch admissibility at this nu: formula_1_11 needs Re(lambda) > nu h - 1,
    /// formula_1_12 needs Re(lambda) < nu h - 1; the threshold itself rejects both.
    void validate_for(double nu) const;
};

/// Inversion kernel parameters: the dual rows augmented by the
/// (-lambda, h) / (-lambda-1, h) pair. formula_1_11 gives orders
/// (q-m, p-n+1, p+1, q+1) with (-lambda, h) first in the upper row and
/// (-lambda-1, h) last in the lower row; formula_1_12 gives orders
/// (q-m+1, p-n, p+1, q+1) with the pair placed at the mirrored ends.
HFunctionParams inverse_kernel_params(const HFunctionParams& params, Complex lambda,
                                      double h, FormulaBranch branch);

/// Plan with the default lambda choice: lambda = nu h for formula_1_11,
/// lambda = nu h - 2 for formula_1_12, h = 1.
InversionPlan make_inversion_plan(const HFunctionParams& params, double nu,
                                  FormulaBranch branch, double h = 1.0);
InversionPlan make_inversion_plan(const HFunctionParams& params, double nu,
                                  FormulaBranch branch, Complex lambda, double h);

/// f = inverse Mellin of chi_0(s) (M g)(1-s) on Re(s) = nu, where chi_0 is
/// the multiplier of the dual parameter set. Requires alpha0 < nu < beta0.
GridFunction invert_via_mellin(const HFunctionParams& params, const GridFunction& g,
                               double nu, const std::vector<double>& tgrid,
                               const MultiplierOptions& options = MultiplierOptions{},
                               Diagnostics* diag = nullptr);

/// f(x) = (+-h) x^{1-(lambda+1)/h} d/dx [x^{(lambda+1)/h}
///         Int K(xt) g(t) dt] with K the plan's inversion kernel
/// (+ for formula_1_11, - for formula_1_12). nu is taken from the input:
/// g = Hf carries weight 1-nu. When no inversion theorem admits (nu, r=2),
/// diag is stamped outside_proven_regime and the computation proceeds.
GridFunction invert_via_formula(const HFunctionParams& params, const GridFunction& g,
                                const InversionPlan& plan, const std::vector<double>& tgrid,
                                const DirectOptions& options = DirectOptions{},
                                Diagnostics* diag = nullptr);

} // namespace hfox

#endif
