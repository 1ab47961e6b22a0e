#ifndef FSUMM_ERROR_HPP
#define FSUMM_ERROR_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace fsumm {

// Base for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BasisMismatch : public Error {
public:
    BasisMismatch() : Error("exponential sums are defined over different frequency bases") {}
};

// e^{-2 pi lambda y} left the representable range.
class EvalRangeError : public Error {
public:
    using Error::Error;
};

// Input violates a documented precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A numerical procedure hit a degenerate configuration (zero polynomial,
// pole on the contour, double root where a simple one is required, ...).
class DegenerateError : public Error {
public:
    using Error::Error;
};

// Hermite-Biehler validation failed; carries the sampled witness point.
class NotHermiteBiehler : public Error {
public:
    NotHermiteBiehler(const std::string& why, std::complex<double> witness)
        : Error(why), witness_(witness) {}
    std::complex<double> witness() const { return witness_; }

private:
    std::complex<double> witness_;
};

}  // namespace fsumm

#endif  // FSUMM_ERROR_HPP
