#ifndef HFOX_TRANSFORM_HPP
#define HFOX_TRANSFORM_HPP

#include "hfox/kernel_lattice.hpp"
#include "hfox/mellin.hpp"
#include "hfox/params.hpp"
#include "hfox/types.hpp"

namespace hfox {

enum class RepresentationBranch { differential_lower, differential_upper };
// differential_lower corresponds to the branch requiring Re(lambda) > (1-nu)h - 1
// (the one with the new pair prepended to the upper row); differential_upper is
// its mirror requiring Re(lambda) < (1-nu)h - 1.

/// Parameters of the differential representation of the transform.
struct RepresentationParams {
    Complex lambda{1.0, 0.0};
    double h = 1.0;  // nonzero
    RepresentationBranch branch = RepresentationBranch::differential_lower;

    void validate() const;                 // h != 0
    void validate_for(double nu) const;    // branch threshold Re(lambda) vs (1-nu)h-1
};

/// Tuning knobs for the direct quadrature path.
struct DirectOptions {
    LatticeOptions lattice;
    bool check_regime = true;   // classify and attach a warning when inadmissible
    double check_r = 2.0;       // r used for the advisory classification
};

/// Tuning knobs for the Mellin multiplier path.
struct MultiplierOptions {
    double line_half_height = defaults::line_half_height;
    std::size_t line_nodes = defaults::line_nodes;
    bool crosscheck_direct = false;  // compare against the direct path, flag disagreement
};

/// g(x) = Int H(xt) f(t) dt by shared-lattice Gauss-Legendre quadrature in
/// log(xt); kernel values come from eval_h once per lattice node. A regime
/// warning (advisory classification at (weight_nu, check_r)) is attached to
/// diag, never fatal. Kernel accuracy problems propagate through the error
/// estimate.
GridFunction h_transform_direct(const HFunctionParams& params, const GridFunction& f,
                                const std::vector<double>& xgrid,
                                const DirectOptions& options = DirectOptions{},
                                Diagnostics* diag = nullptr);

/// g = inverse Mellin of chi(s) (M f)(1-s) on Re(s) = 1-nu, sampled on xgrid.
/// Requires alpha < 1-nu < beta (ContourError otherwise).
GridFunction h_transform_multiplier(const HFunctionParams& params, const GridFunction& f,
                                    double nu, const std::vector<double>& xgrid,
                                    const MultiplierOptions& options = MultiplierOptions{},
                                    Diagnostics* diag = nullptr);

/// The (p+1, q+1) parameter set of the differential representation:
/// differential_lower prepends (-lambda, h) to the upper row and appends
/// (-lambda-1, h) to the lower row (orders m, n+1, p+1, q+1);
/// differential_upper appends (-lambda, h) to the upper row and prepends
/// (-lambda-1, h) to the lower row (orders m+1, n, p+1, q+1).
HFunctionParams augmented_params(const HFunctionParams& params,
                                 const RepresentationParams& rep);

/// g(x) = (+-h) x^{1-(lambda+1)/h} d/dx [ x^{(lambda+1)/h}
///         Int H_aug(xt) f(t) dt ], derivative by central differences in
/// log x with Richardson extrapolation and step refinement.
GridFunction h_transform_representation(const HFunctionParams& params, const GridFunction& f,
                                        const RepresentationParams& rep,
                                        const std::vector<double>& xgrid,
                                        const DirectOptions& options = DirectOptions{},
                                        Diagnostics* diag = nullptr);

/// Shared machinery: sign * h * x^{1-(lambda+1)/h} d/dx [x^{(lambda+1)/h} *
/// Int K(xt) input(t) dt] for an explicit kernel K. Used by the
/// representation path and by the differential inversion formulas.
GridFunction apply_differential_form(const HFunctionParams& kernel, const GridFunction& input,
                                     Complex lambda, double h, double sign,
                                     const std::vector<double>& xgrid,
                                     const DirectOptions& options, Diagnostics* diag);

} // namespace hfox

#endif
