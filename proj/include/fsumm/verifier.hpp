#ifndef FSUMM_VERIFIER_HPP
#define FSUMM_VERIFIER_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fsumm/freqalg.hpp"
#include "fsumm/measures.hpp"

namespace fsumm {

// amp * exp(pi i z (x - x0)^2 + 2 pi i xi x), Im z > 0.
struct Gaussian {
    cplx z{0.0, 1.0};
    double x0 = 0.0;
    double xi = 0.0;
    cplx amp{1.0, 0.0};
};

// exp(-sharpness / (1 - u^2)) for |u| < 1, u = (x - center) / halfwidth.
struct Bump {
    double center = 0.0;
    double halfwidth = 1.0;
    double sharpness = 1.0;
};

class TestFunction {
public:
    static TestFunction gaussian(cplx z, double x0 = 0.0, double xi = 0.0, cplx amp = 1.0);
    static TestFunction bump(double center, double halfwidth, double sharpness = 1.0, double tol = 1e-12);

    bool is_gaussian() const { return kind_ == Kind::gaussian; }
    const Gaussian& gauss() const { return g_; }
    const Bump& bump_params() const { return b_; }
    double ft_tol() const { return tol_; }

    cplx operator()(double x) const;
    // Closed form for Gaussians; quadrature to ft_tol() for bumps.
    cplx ft(double xi) const;
    // Pointwise envelopes |phi| <= env(x), |phi^| <= ft_env(xi).
    double env(double x) const;
    double ft_env(double xi) const;
    // Accumulated quadrature error of ft() calls (zero for Gaussians).
    double ft_error(double xi) const;

    nlohmann::json describe() const;

private:
    enum class Kind { gaussian, bump };
    Kind kind_ = Kind::gaussian;
    Gaussian g_;
    Bump b_;
    double tol_ = 0.0;
    double l1_ = 0.0;   // integral of |phi|
    double d2l1_ = 0.0; // integral of |phi''|
};

// The transform of a Gaussian is again a Gaussian: sqrt(i/z) g_{-1/z} with
// shift and modulation exchanged.
Gaussian gaussian_ft(const Gaussian& g);
cplx gaussian_ft(const Gaussian& g, double xi);

struct QuadratureValue {
    cplx value{0.0, 0.0};
    double error = 0.0;
};

// int phi(x) exp(-2 pi i x xi) dx by composite Gauss-Legendre with panel
// doubling until successive estimates agree to tol.  Throws
// InvalidArgument when the panel budget is exhausted first.
QuadratureValue bump_ft(const Bump& b, double xi, double tol);

enum class Verdict { pass, fail, inconclusive };
std::string to_string(Verdict v);

struct VerificationReport {
    cplx lhs{0.0, 0.0};
    cplx rhs{0.0, 0.0};
    double residual = 0.0;
    double tail_lhs = 0.0;
    double tail_rhs = 0.0;
    double tol = 0.0;
    Verdict verdict = Verdict::fail;
    nlohmann::json params = nlohmann::json::object();
};

// pass iff residual <= tol and both tails <= tol; inconclusive when a tail
// exceeds tol; fail otherwise.
Verdict decide(double residual, double tail_lhs, double tail_rhs, double tol);

nlohmann::json to_json(const VerificationReport& r);
// Wraps a list of reports with an explicit note that a finite suite is
// evidence for the identity, not a proof of it.
nlohmann::json suite_json(const std::vector<VerificationReport>& reports);

// lhs = sum a(l) phi(l), rhs = sum w phi^(g).
VerificationReport check_pair(const FSPair& pair, const TestFunction& tf, double tol);
std::vector<VerificationReport> check_pair_suite(const FSPair& pair, const std::vector<TestFunction>& suite, double tol);

// sum w phi^(g) against sign * sum w phi(g) for each test function.
std::vector<VerificationReport> check_selfdual(const DiscreteMeasure& m, const std::vector<TestFunction>& suite,
                                               double tol);

// lhs = sum_{|l| < T} a(l) g(w, z, l) (1 - |l|/T),
// rhs = (1 / 2 pi i) sum w_g / ((g - z)(g - conj w)).
// tail_lhs bounds the Fejer bias plus the part of a outside its window,
// tail_rhs the part of mu outside its window.
VerificationReport fejer_identity_check(const FSPair& pair, cplx w, cplx z, double T, double tol);

// n Gaussians with z = i y, y uniform in [ymin, ymax], shift and modulation
// uniform in [-shift, shift]; deterministic in seed.
std::vector<TestFunction> gaussian_suite(int n, std::uint64_t seed, double ymin = 0.5, double ymax = 3.0,
                                         double shift = 2.0);

// z = i y for each y.
std::vector<TestFunction> centered_gaussians(const std::vector<double>& ys);

}  // namespace fsumm

#endif  // FSUMM_VERIFIER_HPP
