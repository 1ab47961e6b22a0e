#ifndef FSUMM_SPECTRA_HPP
#define FSUMM_SPECTRA_HPP

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "fsumm/freqalg.hpp"
#include "fsumm/hermite.hpp"

namespace fsumm {

// Bohr coefficients of iA/B on [0, cutoff].
struct SpectrumAtoms {
    FreqBasis basis;
    std::map<Freq, cplx> atoms;
    double cutoff = 0.0;
    // iA/B equals its expansion for Im z > y_valid, where sum|g_mu| e^{-2 pi mu y} < 1/2.
    double y_valid = 0.0;
    // Number of powers of g that contributed.
    int powers = 0;

    // (frequency, coefficient) ascending.
    std::vector<std::pair<double, cplx>> sorted() const;
    cplx at(const Freq& f) const;
};

// Exact-frequency expansion of iA/B by geometric division.
SpectrumAtoms exact_spectrum(const HermiteBiehler& H, double cutoff);

enum class Taper { none, fejer };

using Evaluator = std::function<cplx(cplx)>;

// (1/2T) int_{-T}^{T} w(x/T) f(x+iy) e^{-2 pi i lambda (x+iy)} dx, composite
// Gauss-Legendre (8 nodes on panels of width 0.25).
cplx mean_value(const Evaluator& f, double lambda, double y, double T, Taper taper = Taper::fejer);

// (1/2) a0 + sum_{0 < lambda < T} a(lambda) (1 - lambda/T) e^{2 pi i lambda z}.
// a0 is normally 2 Re Ef(0); a complex a0 carries an imaginary constant.
cplx fejer_reconstruct(const SpectrumAtoms& a, cplx a0, double T, cplx z);

// iA/B as an evaluator.
Evaluator ratio_evaluator(const HermiteBiehler& H);

}  // namespace fsumm

#endif  // FSUMM_SPECTRA_HPP
