#include "fsumm/dbspace.hpp"

#include <algorithm>
#include <cmath>

#include "fsumm/error.hpp"

namespace fsumm {

namespace {

constexpr double kConfluent = 1e-8;
constexpr double kSampleMatch = 1e-9;

DiscreteMeasure residues_of(const std::vector<PhasePoint>& roots, double R) {
    std::vector<Atom> atoms;
    atoms.reserve(roots.size());
    for (const PhasePoint& p : roots) atoms.push_back(Atom{p.gamma, cplx(p.residue, 0.0), std::nullopt});
    return DiscreteMeasure(std::move(atoms), -R, R, true);
}

}  // namespace

std::vector<PhasePoint> phase_points(const HermiteBiehler& H, double alpha, double x0, double x1) {
    DiscreteMeasure m = measure_from_phase(H, alpha, x0, x1);
    std::vector<PhasePoint> out;
    out.reserve(m.size());
    for (const Atom& a : m.atoms()) out.push_back(PhasePoint{a.x, a.w.real() / kTwoPi, alpha});
    return out;
}

KernelContext::KernelContext(HermiteBiehler H, double R)
    : KernelContext(H, phase_points(H, 0.0, -R, R), R) {}

KernelContext::KernelContext(HermiteBiehler H, std::vector<PhasePoint> roots, double R)
    : H_(std::move(H)), roots_(std::move(roots)), R_(R) {
    if (!(R > 0.0) || !std::isfinite(R)) throw InvalidArgument("window radius must be positive and finite");
    for (std::size_t i = 0; i < roots_.size(); ++i) {
        const PhasePoint& p = roots_[i];
        if (!(p.residue > 0.0)) throw InvalidArgument("phase points need positive residues");
        if (std::abs(p.gamma) > R) throw InvalidArgument("phase point outside the window radius");
        if (i > 0 && !(roots_[i - 1].gamma < p.gamma)) throw InvalidArgument("phase points must be sorted");
    }
    dA_ = es_derivative(H_.A);
    dB_ = es_derivative(H_.B);
    ddA_ = es_derivative(dA_);
    ddB_ = es_derivative(dB_);
    residues_ = residues_of(roots_, R_);
}

cplx kernel_closed(const KernelContext& ctx, cplx w, cplx z) {
    const HermiteBiehler& H = ctx.H();
    const cplx wb = std::conj(w);
    const cplx Aw = std::conj(H.A(w));
    const cplx Bw = std::conj(H.B(w));
    const cplx d = z - wb;
    if (std::abs(d) >= kConfluent) return (H.B(z) * Aw - Bw * H.A(z)) / (kPi * d);
    // N(z) = B(z) conj A(w) - conj B(w) A(z) vanishes at z = conj w.
    const cplx n1 = ctx.dB_(wb) * Aw - Bw * ctx.dA_(wb);
    const cplx n2 = ctx.ddB_(wb) * Aw - Bw * ctx.ddA_(wb);
    return (n1 + 0.5 * n2 * d) / kPi;
}

cplx kernel_eform(const KernelContext& ctx, cplx w, cplx z) {
    const ExpSum& E = ctx.H().E;
    const ExpSum Es = es_star(E);
    const cplx num = E(z) * std::conj(E(w)) - Es(z) * std::conj(Es(w));
    return num / (cplx(0.0, kTwoPi) * (std::conj(w) - z));
}

SeriesValue kernel_series(const KernelContext& ctx, cplx w, cplx z) {
    const cplx wb = std::conj(w);
    const cplx scale = ctx.H().B(z) * std::conj(ctx.H().B(w)) / kPi;
    cplx acc(0.0, 0.0);
    for (const PhasePoint& p : ctx.roots()) acc += p.residue / ((p.gamma - z) * (p.gamma - wb));
    SeriesValue out;
    out.value = scale * acc;
    out.tail = std::abs(scale) *
               ctx.residue_measure().tail_bound([&](double x) { return 1.0 / (std::abs(x - z) * std::abs(x - wb)); });
    return out;
}

cplx sampling_eval(const KernelContext& ctx, const std::map<double, cplx>& samples, cplx z) {
    auto lookup = [&samples](double g) {
        const double tol = kSampleMatch * std::max(1.0, std::abs(g));
        auto it = samples.lower_bound(g - tol);
        if (it == samples.end() || std::abs(it->first - g) > tol)
            throw InvalidArgument("no sample supplied for the root at " + std::to_string(g));
        return it->second;
    };
    const cplx Bz = ctx.H().B(z);
    cplx acc(0.0, 0.0);
    for (const PhasePoint& p : ctx.roots()) {
        const cplx F = lookup(p.gamma);
        if (std::abs(z - p.gamma) <= kSampleMatch * std::max(1.0, std::abs(p.gamma))) return F;
        acc += F / (ctx.dB()(p.gamma) * (z - p.gamma));
    }
    return Bz * acc;
}

}  // namespace fsumm
