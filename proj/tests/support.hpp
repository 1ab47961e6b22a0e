#ifndef FSUMM_TESTS_SUPPORT_HPP
#define FSUMM_TESTS_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <random>

#include "fsumm/freqalg.hpp"

namespace fsumm::testing {

inline const cplx I(0.0, 1.0);

// Frequencies in units of 1/2, so sin(pi z) has keys +-1.
inline FreqBasis half_basis() { return FreqBasis({1.0}, 2); }

inline Freq k1(std::int64_t m) { return Freq({m}); }

// sin(2 pi m z / 2) = (e^{i pi m z} - e^{-i pi m z}) / 2i over half_basis.
inline ExpSum sin_half(std::int64_t m, double amp = 1.0) {
    return ExpSum(half_basis(), {{k1(m), amp / (2.0 * I)}, {k1(-m), -amp / (2.0 * I)}});
}

inline ExpSum cos_half(std::int64_t m, double amp = 1.0) {
    return ExpSum(half_basis(), {{k1(m), amp / 2.0}, {k1(-m), amp / 2.0}});
}

// Basis {1/2pi, sqrt2/2pi}: sin(x) has keys +-(1,0), sin(sqrt2 x) keys +-(0,1).
inline FreqBasis irrational_basis() { return FreqBasis({1.0 / (2.0 * M_PI), std::sqrt(2.0) / (2.0 * M_PI)}, 1); }

inline ExpSum sin_irr(std::int64_t a, std::int64_t b, double amp) {
    return ExpSum(irrational_basis(), {{Freq({a, b}), amp / (2.0 * I)}, {Freq({-a, -b}), -amp / (2.0 * I)}});
}

// The real-rooted variant sin(sqrt2 x) + 0.1 sin(x).
inline ExpSum rr_irrational_q() { return sin_irr(0, 1, 1.0) + sin_irr(1, 0, 0.1); }

// The two-frequency example with the weights the other way round.
inline ExpSum listed_irrational_q() { return sin_irr(1, 0, 1.0) + sin_irr(0, 1, 0.1); }

inline cplx random_point(std::mt19937_64& rng, double xmax, double ymin, double ymax) {
    std::uniform_real_distribution<double> ux(-xmax, xmax), uy(ymin, ymax);
    double x = ux(rng);
    double y = uy(rng);
    return {x, y};
}

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::max(std::abs(a), std::abs(b))); }

}  // namespace fsumm::testing

#endif  // FSUMM_TESTS_SUPPORT_HPP
