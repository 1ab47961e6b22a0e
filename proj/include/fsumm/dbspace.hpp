#ifndef FSUMM_DBSPACE_HPP
#define FSUMM_DBSPACE_HPP

#include <map>
#include <vector>

#include "fsumm/freqalg.hpp"
#include "fsumm/hermite.hpp"
#include "fsumm/measures.hpp"

namespace fsumm {

// A real zero gamma of B_alpha with residue 1/phi'(gamma) of A_alpha / B_alpha.
struct PhasePoint {
    double gamma = 0.0;
    double residue = 0.0;
    double alpha = 0.0;
};

std::vector<PhasePoint> phase_points(const HermiteBiehler& H, double alpha, double x0, double x1);

class KernelContext {
public:
    // Collects the zeros of B in [-R, R].
    KernelContext(HermiteBiehler H, double R);
    // Uses the given zeros; they must be sorted, carry positive residues and
    // lie in [-R, R].
    KernelContext(HermiteBiehler H, std::vector<PhasePoint> roots, double R);

    const HermiteBiehler& H() const { return H_; }
    const std::vector<PhasePoint>& roots() const { return roots_; }
    double radius() const { return R_; }
    const ExpSum& dA() const { return dA_; }
    const ExpSum& dB() const { return dB_; }
    // The roots as the measure sum residue * delta_gamma, for tail estimates.
    const DiscreteMeasure& residue_measure() const { return residues_; }

private:
    HermiteBiehler H_;
    std::vector<PhasePoint> roots_;
    double R_;
    ExpSum dA_, dB_, ddA_, ddB_;
    DiscreteMeasure residues_;

    friend cplx kernel_closed(const KernelContext& ctx, cplx w, cplx z);
};

// K(w, z) = (B(z) conj A(w) - conj B(w) A(z)) / (pi (z - conj w)); within
// 1e-8 of z = conj w a second-order Taylor expansion of the numerator is used.
cplx kernel_closed(const KernelContext& ctx, cplx w, cplx z);

// (E(z) conj E(w) - E*(z) conj E*(w)) / (2 pi i (conj w - z)).
cplx kernel_eform(const KernelContext& ctx, cplx w, cplx z);

struct SeriesValue {
    cplx value{0.0, 0.0};
    // Estimated contribution of the roots outside the window.
    double tail = 0.0;
};

// (1/pi) sum_gamma residue * B(z) conj B(w) / ((gamma - z)(gamma - conj w)).
SeriesValue kernel_series(const KernelContext& ctx, cplx w, cplx z);

// sum_gamma F(gamma) B(z) / (B'(gamma) (z - gamma)).  Samples are matched to
// the context roots within 1e-9; a missing sample throws InvalidArgument.
cplx sampling_eval(const KernelContext& ctx, const std::map<double, cplx>& samples, cplx z);

}  // namespace fsumm

#endif  // FSUMM_DBSPACE_HPP
