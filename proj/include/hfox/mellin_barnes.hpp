#ifndef HFOX_MELLIN_BARNES_HPP
#define HFOX_MELLIN_BARNES_HPP

#include "hfox/params.hpp"
#include "hfox/types.hpp"

#include <optional>
#include <vector>

namespace hfox {

/// Truncated vertical contour Re(s) = sigma, |Im(s)| <= half_height.
/// The segment must separate the poles of Gamma(b_j + beta_j s), j <= m
/// (left family) from those of Gamma(1 - a_i - alpha_i s), i <= n (right
/// family). indent_radius is kept for the general contract; only straight
/// lines (indent_radius = 0) are evaluated.
struct ContourSpec {
    double sigma = 0.5;
    double half_height = 40.0;
    int nodes = 512;
    double indent_radius = 0.0;
};

/// Value of a Mellin-Barnes quadrature together with its error estimate
/// (difference between the N-node and 2N-node results plus tail terms).
struct HValue {
    Complex value{0.0, 0.0};
    double error_estimate = 0.0;
};

struct AsymptoticOrders {
    std::optional<double> rho;     // power order at zero, Delta >= 0 only
    int log_order_zero = 0;        // M
    std::optional<double> varrho;  // power order at infinity, a*=0 and Delta>0 only
    int log_order_inf = 0;         // N
};

/// The Mellin multiplier: the ratio of gamma products of the kernel,
/// computed as exp of a signed sum of log_gamma terms. A pole of a numerator
/// gamma throws PoleError; a pole of a denominator gamma gives exactly 0.
Complex chi(const HFunctionParams& params, Complex s);

/// log of chi. Sets *is_zero instead of returning -inf when a denominator
/// gamma has a pole at s.
Complex log_chi(const HFunctionParams& params, Complex s, bool* is_zero);

/// Poles of the numerator gamma factors with index k <= k_max:
/// s = -(b_j + k)/beta_j (j <= m) and s = (1 - a_i + k)/alpha_i (i <= n).
std::vector<Complex> numerator_poles(const HFunctionParams& params, int k_max);

/// Abscissa and truncation height for evaluating H(z). sigma is placed
/// strictly between the two pole families, biased toward good integrand
/// decay; half_height covers the stationary-phase region and the power-law
/// tail. Throws ContourError when no separating vertical line exists or
/// a* < 0.
ContourSpec choose_contour(const HFunctionParams& params, double z, double nu_hint = 0.5);

/// H(z) = (1/2 pi i) Int chi(s) z^{-s} ds over the truncated contour, by
/// composite Gauss-Legendre panels with oscillation-aware paneling and an
/// Euler-averaged oscillatory tail. Throws AccuracyError when the estimate
/// does not converge under refinement.
HValue eval_h(const HFunctionParams& params, double z, const ContourSpec& contour);

/// Convenience overload: chooses the contour internally.
HValue eval_h(const HFunctionParams& params, double z, double nu_hint = 0.5);

/// Residue series sum_{j<=m, k<=k_max} Res chi(s) z^{-s} at s = -(b_j+k)/beta_j.
/// Valid for Delta > 0 with simple poles; the log-multiplier case is refused
/// (UnsupportedError). Divergence before k_max raises AccuracyError.
HValue residue_series(const HFunctionParams& params, double z, int k_max = 120);

/// rho (2.10), varrho (2.12) and the log-correction orders M, N detected by
/// the windowed pole scan. Fields are absent when their precondition fails.
AsymptoticOrders asymptotic_orders(const HFunctionParams& params);

} // namespace hfox

#endif
