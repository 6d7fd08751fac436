#ifndef HFOX_ERRORS_HPP
#define HFOX_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace hfox {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An evaluation point landed on (or indistinguishably close to) a pole of a
/// numerator gamma factor. Carries the offending pole location.
class PoleError : public Error {
public:
    PoleError(const std::string& msg, std::complex<double> pole)
        : Error(msg), pole_location(pole) {}
    std::complex<double> pole_location;
};

/// No admissible contour exists (pole families not separable by a vertical
/// line, a* < 0, or a requested line passes through a pole).
class ContourError : public Error {
public:
    using Error::Error;
};

/// A quadrature or series did not reach the requested accuracy. Carries the
/// best value obtained and its estimated error.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& msg, std::complex<double> best, double estimate)
        : Error(msg), best_value(best), error_estimate(estimate) {}
    std::complex<double> best_value;
    double error_estimate = 0.0;
};

/// Input function violates an integrability heuristic (divergent endpoint).
class DomainError : public Error {
public:
    DomainError(const std::string& msg, const std::string& which_end)
        : Error(msg), end(which_end) {}
    std::string end;   // "lower" or "upper"
};

/// A stated hypothesis of the identity being checked does not hold.
class InadmissibleError : public Error {
public:
    using Error::Error;
};

/// Requested feature intentionally not implemented (e.g. residue series at
/// non-simple poles).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Malformed input file. Carries the offending field name.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, const std::string& field_name)
        : Error(msg), field(field_name) {}
    std::string field;
};

} // namespace hfox

#endif
