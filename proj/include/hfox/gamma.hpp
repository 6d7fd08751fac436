#ifndef HFOX_GAMMA_HPP
#define HFOX_GAMMA_HPP

#include "hfox/types.hpp"

namespace hfox {

/// log Gamma(s) for complex s.
///
/// For Re(s) >= 1/2 this is the principal branch (analytic continuation that
/// is real on (0, inf)), computed by a 14-term Lanczos sum; relative error is
/// below 1e-13 there. For Re(s) < 1/2 the reflection formula is used with a
/// branch-corrected log(sin) so the value stays continuous along vertical
/// lines in each open half-plane Im(s) != 0. exp(log_gamma(s)) equals
/// Gamma(s) everywhere off the poles.
///
/// Throws PoleError when s is a non-positive integer (within ~1e-13).
Complex log_gamma(Complex s);

/// Gamma(s) = exp(log_gamma(s)); overflows to inf like exp does.
Complex gamma_fn(Complex s);

/// True when s is within tol of a non-positive integer (a pole of Gamma).
bool near_gamma_pole(Complex s, double tol = 1e-13);

} // namespace hfox

#endif
