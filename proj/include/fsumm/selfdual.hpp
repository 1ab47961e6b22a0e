#ifndef FSUMM_SELFDUAL_HPP
#define FSUMM_SELFDUAL_HPP

#include "fsumm/measures.hpp"
#include "fsumm/qmodular.hpp"

namespace fsumm {

// sum_n c_n (delta_{sqrt(2 gamma_n)} + delta_{-sqrt(2 gamma_n)}) restricted to
// [x0, x1] and to the indices the series actually determines.  The two deltas
// coincide at the origin, which therefore carries 2 c_0.  The sign tag of the
// series is attached to the measure.
DiscreteMeasure selfdual_measure(const SelfDualSeries& s, double x0, double x1);

// (mu, sign * mu): the Fourier summation pair asserted by mu^ = sign * mu.
FSPair selfdual_pair(const SelfDualSeries& s, double x0, double x1);

// F(z) = sum_n c_n exp(2 pi i gamma_n z) over the stored coefficients.
cplx selfdual_eval(const SelfDualSeries& s, cplx z);

// Upper bound on |F(z) - selfdual_eval(s, z)| from an envelope
// |c_n| <= exp(a sqrt n) fitted to the upper half of the coefficients.
double selfdual_tail(const SelfDualSeries& s, cplx z);

// |F(z) - sign sqrt(i/z) F(-1/z)| with the principal branch of the square
// root.  Throws InvalidArgument when the truncation tail at z or -1/z exceeds
// target.
double functional_equation_residual(const SelfDualSeries& s, cplx z, double target = 1e-8);

}  // namespace fsumm

#endif  // FSUMM_SELFDUAL_HPP
