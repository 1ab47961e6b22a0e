#ifndef FSUMM_MEASURES_HPP
#define FSUMM_MEASURES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fsumm/freqalg.hpp"
#include "fsumm/hermite.hpp"
#include "fsumm/spectra.hpp"

namespace fsumm {

// Exact position tag x = sqrt(2n / (b sqrt(N))).
struct SqrtProvenance {
    std::int64_t n = 0;
    std::int64_t b = 1;
    std::int64_t N = 1;
    // The tag describes -x rather than x.
    bool negative = false;

    double value() const;
    // Symbolic equality of the encoded positions.
    bool same_point(const SqrtProvenance& o) const;
};

struct Atom {
    double x = 0.0;
    cplx w{0.0, 0.0};
    std::optional<SqrtProvenance> prov;
};

// |w(x)| <= C (1 + |x|)^p and #{|x| <= R} <= K R^q, fitted on the populated
// window; used for error bars only.
struct TailModel {
    double C = 0.0;
    double p = 0.0;
    double K = 0.0;
    double q = 1.0;
};

class DiscreteMeasure {
public:
    DiscreteMeasure() = default;
    // Sorts, merges coincident atoms (by provenance when both carry it, else
    // within 1e-10), and drops atoms whose merged weight is exactly zero.
    DiscreteMeasure(std::vector<Atom> atoms, double x0, double x1, bool nonneg = false);

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::pair<double, double> window() const { return {x0_, x1_}; }
    bool nonneg() const { return nonneg_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }

    // +1 / -1 when the measure is claimed to satisfy mu^ = sign * mu.
    std::optional<int> sign() const { return sign_; }
    void set_sign(int s);

    const TailModel& tail_model() const { return tail_; }
    void set_tail_model(const TailModel& t) { tail_ = t; }

    // Sum of w(x) * phi(x) over the atoms.
    cplx pair_with(const std::function<cplx(double)>& phi) const;

    // Bound on sum |w| |phi| over atoms outside the window, using the tail model
    // and a pointwise envelope |phi(x)| <= env(x).
    double tail_bound(const std::function<double(double)>& env) const;

private:
    std::vector<Atom> atoms_;
    double x0_ = 0.0;
    double x1_ = 0.0;
    bool nonneg_ = false;
    std::optional<int> sign_;
    TailModel tail_;
};

// Fits the power-law tail model to a set of atoms.
TailModel fit_tail_model(const std::vector<Atom>& atoms);

struct FSPair {
    DiscreteMeasure mu;
    DiscreteMeasure a;
    bool real_antipodal = false;
    nlohmann::json meta = nlohmann::json::object();
};

// Atoms at the real zeros of B_alpha in the window, weight 2 pi / phi'(gamma).
DiscreteMeasure measure_from_phase(const HermiteBiehler& H, double alpha, double x0, double x1);

// mu from the phase, a from the exact spectrum of iA/B:
// a(lambda) = Ef(lambda), a(0) = 2 Re Ef(0), a(-lambda) = conj a(lambda).
FSPair pair_from_hb(const HermiteBiehler& H, double cutoff, double x0, double x1);

// i h + (1/2 pi i) sum w (1 + g z) / ((g - z)(1 + g^2)).
cplx herglotz_eval(const DiscreteMeasure& mu, double h, cplx z);

// h making herglotz_eval(mu, h, z0) match f(z0) in the imaginary part.
double fit_h(const DiscreteMeasure& mu, const Evaluator& f, cplx z0 = cplx(0.0, 1.0));

// |(f(z) + conj f(w))/(z - conj w) - (1/2 pi i) sum w_g / ((z - g)(conj w - g))|.
double herglotz_kernel_residual(const DiscreteMeasure& mu, const Evaluator& f, cplx w, cplx z);

// Tail of the sum in herglotz_kernel_residual outside the window.
double herglotz_kernel_tail(const DiscreteMeasure& mu, cplx w, cplx z);

std::pair<DiscreteMeasure, DiscreteMeasure> signed_split(const DiscreteMeasure& mu);

// a_1(l) = (a(l) + conj a(-l)) / 2, a_2(l) = (conj a(-l) - a(l)) / 2i; both
// are real-antipodal and a = a_1 - i a_2.
std::pair<DiscreteMeasure, DiscreteMeasure> real_antipodal_split(const DiscreteMeasure& a);

// (mu, a) = (mu_e, Re a) + i (mu_o, Im a) with mu_e = (mu + R mu)/2 and
// mu_o = (mu - R mu)/2i, R the reflection x -> -x.  For antipodal a both
// halves are again FS pairs.
std::pair<FSPair, FSPair> reflection_split(const FSPair& p);

struct DegreeReport {
    int n = 0;
    std::vector<double> radii;
    std::vector<double> partial_sums;
    // Fitted exponent of the dyadic-shell increments against the radius.
    double shell_exponent = 0.0;
    bool convergent = false;
    std::string trend;
};

DegreeReport degree_probe(const DiscreteMeasure& mu, int n);

}  // namespace fsumm

#endif  // FSUMM_MEASURES_HPP
