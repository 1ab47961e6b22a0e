#include "fsumm/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>
#include <mpfr.h>

#include "fsumm/error.hpp"

namespace fsumm {

namespace {

// Minimal complex number over MPFR; only what the division loop needs.
class MpComplex {
public:
    explicit MpComplex(mpfr_prec_t prec) {
        mpfr_init2(re_, prec);
        mpfr_init2(im_, prec);
        mpfr_set_zero(re_, 1);
        mpfr_set_zero(im_, 1);
    }
    MpComplex(const MpComplex& o) {
        mpfr_init2(re_, mpfr_get_prec(o.re_));
        mpfr_init2(im_, mpfr_get_prec(o.im_));
        mpfr_set(re_, o.re_, MPFR_RNDN);
        mpfr_set(im_, o.im_, MPFR_RNDN);
    }
    MpComplex& operator=(const MpComplex& o) {
        if (this != &o) {
            mpfr_set(re_, o.re_, MPFR_RNDN);
            mpfr_set(im_, o.im_, MPFR_RNDN);
        }
        return *this;
    }
    ~MpComplex() {
        mpfr_clear(re_);
        mpfr_clear(im_);
    }

    void set(cplx c) {
        mpfr_set_d(re_, c.real(), MPFR_RNDN);
        mpfr_set_d(im_, c.imag(), MPFR_RNDN);
    }
    cplx get() const { return {mpfr_get_d(re_, MPFR_RNDN), mpfr_get_d(im_, MPFR_RNDN)}; }
    bool is_zero() const { return mpfr_zero_p(re_) && mpfr_zero_p(im_); }

    // this += a * b, using t1, t2 as scratch.
    void add_product(const MpComplex& a, const MpComplex& b, mpfr_t t1, mpfr_t t2) {
        mpfr_mul(t1, a.re_, b.re_, MPFR_RNDN);
        mpfr_mul(t2, a.im_, b.im_, MPFR_RNDN);
        mpfr_sub(t1, t1, t2, MPFR_RNDN);
        mpfr_add(re_, re_, t1, MPFR_RNDN);
        mpfr_mul(t1, a.re_, b.im_, MPFR_RNDN);
        mpfr_mul(t2, a.im_, b.re_, MPFR_RNDN);
        mpfr_add(t1, t1, t2, MPFR_RNDN);
        mpfr_add(im_, im_, t1, MPFR_RNDN);
    }
    void add(const MpComplex& a) {
        mpfr_add(re_, re_, a.re_, MPFR_RNDN);
        mpfr_add(im_, im_, a.im_, MPFR_RNDN);
    }

private:
    mpfr_t re_;
    mpfr_t im_;
};

class Scratch {
public:
    explicit Scratch(mpfr_prec_t prec) {
        mpfr_init2(a, prec);
        mpfr_init2(b, prec);
    }
    ~Scratch() {
        mpfr_clear(a);
        mpfr_clear(b);
    }
    Scratch(const Scratch&) = delete;
    Scratch& operator=(const Scratch&) = delete;
    mpfr_t a;
    mpfr_t b;
};

using MpSeries = std::map<Freq, MpComplex>;

double y_for_half(const std::vector<std::pair<double, double>>& g) {
    auto bound = [&g](double y) {
        double s = 0.0;
        for (const auto& [mu, m] : g) s += m * std::exp(-kTwoPi * mu * y);
        return s;
    };
    if (bound(0.0) < 0.5) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (bound(hi) >= 0.5) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        double mid = 0.5 * (lo + hi);
        (bound(mid) >= 0.5 ? lo : hi) = mid;
    }
    return hi;
}

}  // namespace

std::vector<std::pair<double, cplx>> SpectrumAtoms::sorted() const {
    std::vector<std::pair<double, cplx>> out;
    out.reserve(atoms.size());
    for (const auto& [f, c] : atoms) out.emplace_back(basis.value(f), c);
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

cplx SpectrumAtoms::at(const Freq& f) const {
    auto it = atoms.find(f);
    return it == atoms.end() ? cplx(0.0, 0.0) : it->second;
}

SpectrumAtoms exact_spectrum(const HermiteBiehler& H, double cutoff) {
    if (!(cutoff >= 0.0) || !std::isfinite(cutoff)) throw InvalidArgument("cutoff must be finite and nonnegative");
    const ExpSum& A = H.A;
    const ExpSum& B = H.B;
    if (B.empty()) throw DegenerateError("B is identically zero");
    if (A.empty()) throw DegenerateError("A is identically zero");
    const Freq theta0 = B.min_key();
    if (!(A.min_key() == theta0))
        throw DegenerateError("lowest frequencies of A and B differ; E is not Hermite-Biehler or is mis-normalised");
    const cplx b0 = B.coeff(theta0);
    const FreqBasis& basis = B.basis();
    const double slack = 1e-12 * std::max(1.0, cutoff);
    auto keep = [&](const Freq& f) { return basis.value(f) <= cutoff + slack; };

    // g = 1 - B e^{-2 pi i theta0 z} / b0 has only positive frequencies.
    ExpSum::TermMap gmap;
    for (const auto& [f, c] : B.terms()) {
        if (f == theta0) continue;
        gmap.emplace(f - theta0, -c / b0);
    }
    ExpSum g(basis, std::move(gmap));
    double delta = std::numeric_limits<double>::infinity();
    double gl1 = 0.0;
    std::vector<std::pair<double, double>> gmod;
    for (const auto& [mu, c] : g.sorted_terms()) {
        if (!(mu > 0.0)) throw DegenerateError("division series has a non-positive frequency");
        delta = std::min(delta, mu);
        gl1 += std::abs(c);
        gmod.emplace_back(mu, std::abs(c));
    }

    SpectrumAtoms out;
    out.basis = basis;
    out.cutoff = cutoff;
    out.y_valid = g.empty() ? 0.0 : y_for_half(gmod);

    const long long npow = g.empty() ? 0 : static_cast<long long>(std::ceil(cutoff / delta));
    // Cancellation in sum g^n loses about log10(sum|g|) digits per power.
    const double digits = 30.0 + static_cast<double>(npow) * std::log10(std::max(gl1, 1.0));
    const auto prec = static_cast<mpfr_prec_t>(std::min(1e6, std::ceil(digits * 3.33)) + 64);
    Scratch s(prec);

    std::vector<std::pair<Freq, MpComplex>> gmp;
    for (const auto& [f, c] : g.terms()) {
        MpComplex m(prec);
        m.set(c);
        gmp.emplace_back(f, m);
    }

    // S = sum_{n <= npow} g^n truncated at cutoff.
    MpSeries power;
    {
        MpComplex one(prec);
        one.set(1.0);
        power.emplace(Freq::zero(basis.rank()), one);
    }
    MpSeries sum = power;
    int used = 1;
    for (long long n = 1; n <= npow && !power.empty(); ++n) {
        MpSeries next;
        for (const auto& [f, c] : power) {
            for (const auto& [h, gc] : gmp) {
                Freq k = f + h;
                if (!keep(k)) continue;
                auto it = next.try_emplace(k, MpComplex(prec)).first;
                it->second.add_product(c, gc, s.a, s.b);
            }
        }
        for (const auto& [f, c] : next) {
            auto it = sum.try_emplace(f, MpComplex(prec)).first;
            it->second.add(c);
        }
        power = std::move(next);
        ++used;
    }
    out.powers = used;

    // iA e^{-2 pi i theta0 z} / b0 times S.
    std::vector<std::pair<Freq, MpComplex>> lead;
    for (const auto& [f, c] : A.terms()) {
        MpComplex m(prec);
        m.set(cplx(0.0, 1.0) * c / b0);
        lead.emplace_back(f - theta0, m);
    }
    MpSeries result;
    for (const auto& [f, c] : lead) {
        for (const auto& [h, sc] : sum) {
            Freq k = f + h;
            if (!keep(k)) continue;
            auto it = result.try_emplace(k, MpComplex(prec)).first;
            it->second.add_product(c, sc, s.a, s.b);
        }
    }
    for (const auto& [f, c] : result) {
        if (basis.value(f) < 0.0) throw DegenerateError("negative frequency in the expansion of iA/B");
        if (c.is_zero()) continue;
        out.atoms.emplace(f, c.get());
    }
    return out;
}

cplx mean_value(const Evaluator& f, double lambda, double y, double T, Taper taper) {
    if (!(T > 0.0) || !std::isfinite(T)) throw InvalidArgument("T must be positive and finite");
    using GL = boost::math::quadrature::gauss<double, 8>;
    constexpr double kPanel = 0.25;
    const auto panels = static_cast<long long>(std::ceil(2.0 * T / kPanel));
    const double width = 2.0 * T / static_cast<double>(panels);
    const auto& abscissa = GL::abscissa();
    const auto& weights = GL::weights();

    // The symmetric rule stores only nonnegative nodes.
    std::vector<std::pair<double, double>> nodes;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
        nodes.emplace_back(abscissa[i], weights[i]);
        if (abscissa[i] != 0.0) nodes.emplace_back(-abscissa[i], weights[i]);
    }

    const double growth = kTwoPi * lambda * y;
    cplx acc(0.0, 0.0);
    for (long long p = 0; p < panels; ++p) {
        double a = -T + static_cast<double>(p) * width;
        double mid = a + 0.5 * width;
        cplx panel(0.0, 0.0);
        for (const auto& [u, wq] : nodes) {
            double x = mid + 0.5 * width * u;
            cplx v = f(cplx(x, y));
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw DegenerateError("non-finite sample; a pole is too close to the integration line");
            double tw = taper == Taper::fejer ? 2.0 * (1.0 - std::abs(x) / T) : 1.0;
            double ph = -kTwoPi * lambda * x;
            panel += wq * tw * v * cplx(std::cos(ph), std::sin(ph));
        }
        acc += 0.5 * width * panel;
    }
    return acc * std::exp(growth) / (2.0 * T);
}

cplx fejer_reconstruct(const SpectrumAtoms& a, cplx a0, double T, cplx z) {
    if (!(T > 0.0)) throw InvalidArgument("T must be positive");
    cplx acc = 0.5 * a0;
    for (const auto& [lam, c] : a.sorted()) {
        if (!(lam > 0.0) || !(lam < T)) continue;
        acc += c * (1.0 - lam / T) * std::exp(cplx(0.0, kTwoPi * lam) * z);
    }
    return acc;
}

Evaluator ratio_evaluator(const HermiteBiehler& H) {
    return [A = H.A, B = H.B](cplx z) { return cplx(0.0, 1.0) * A(z) / B(z); };
}

}  // namespace fsumm
