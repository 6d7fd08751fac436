#include "hfox/gamma.hpp"

#include "hfox/errors.hpp"

#include <cmath>

namespace hfox {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kLn2 = 0.693147180559945309417232121458;
constexpr double kSqrt2Pi = 2.50662827463100050241576528481;

// Lanczos coefficients (g = 607/128), the 14-term set from Numerical Recipes
// 3rd ed.; accurate to ~1e-15 relative for Re(z) >= 1/2.
constexpr double kLanczos[14] = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,    3.39946499848118887e-5,  4.65236289270485756e-5,
    -9.83744753048795646e-5,  1.58088703224912494e-4, -2.10264441724104883e-4,
     2.17439618115212643e-4, -1.64318106536763890e-4,  8.44182239838527433e-5,
    -2.61908384015814087e-5,  3.68991826595316234e-6};
constexpr double kLanczosC0 = 0.999999999999997092;
constexpr double kLanczosGph = 5.24218750000000000;  // g + 1/2

Complex lanczos_log_gamma(Complex z) {
    Complex tmp = z + kLanczosGph;
    tmp = (z + 0.5) * std::log(tmp) - tmp;
    Complex ser = kLanczosC0;
    Complex y = z;
    for (double c : kLanczos) {
        y += 1.0;
        ser += c / y;
    }
    return tmp + std::log(kSqrt2Pi * ser / z);
}

// log(sin(x)) with the branch continuous in each open half-plane, stable for
// large |Im(x)| (avoids overflow of sin).
Complex sin_log(Complex x) {
    const Complex i(0.0, 1.0);
    if (x.imag() > 0.0)
        return -i * (kPi / 2.0) - kLn2 - i * x + std::log(std::exp(2.0 * i * x) - 1.0);
    return -i * (kPi / 2.0) - kLn2 + i * x + std::log(1.0 - std::exp(-2.0 * i * x));
}

} // namespace

bool near_gamma_pole(Complex s, double tol) {
    if (s.real() > 0.5 || std::abs(s.imag()) > tol)
        return false;
    const double r = std::round(s.real());
    return r <= 0.0 && std::abs(s.real() - r) <= tol * std::max(1.0, std::abs(r));
}

Complex log_gamma(Complex s) {
    if (near_gamma_pole(s)) {
        throw PoleError("log_gamma: pole at non-positive integer " +
                            std::to_string(static_cast<long long>(std::llround(s.real()))),
                        Complex(std::round(s.real()), 0.0));
    }
    if (s.real() >= 0.5)
        return lanczos_log_gamma(s);
    // Reflection: log Gamma(s) = log pi - log sin(pi s) - log Gamma(1-s).
    return std::log(kPi) - sin_log(kPi * s) - lanczos_log_gamma(1.0 - s);
}

Complex gamma_fn(Complex s) {
    return std::exp(log_gamma(s));
}

} // namespace hfox
