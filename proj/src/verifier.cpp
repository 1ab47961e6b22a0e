#include "fsumm/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss.hpp>

#include "fsumm/error.hpp"

namespace fsumm {

namespace {

constexpr cplx kI(0.0, 1.0);

cplx gaussian_value(const Gaussian& g, double x) {
    const double d = x - g.x0;
    return g.amp * std::exp(kI * kPi * g.z * d * d + kI * kTwoPi * g.xi * x);
}

double bump_value(const Bump& b, double x) {
    const double u = (x - b.center) / b.halfwidth;
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(-b.sharpness / (1.0 - u * u));
}

// Composite Gauss-Legendre over [lo, hi] with the given number of panels.
template <class F>
cplx composite(F&& f, double lo, double hi, int panels) {
    using Rule = boost::math::quadrature::gauss<double, 20>;
    const double h = (hi - lo) / panels;
    cplx acc(0.0, 0.0);
    for (int k = 0; k < panels; ++k) {
        const double a = lo + k * h;
        acc += Rule::integrate([&](double x) { return f(x).real(); }, a, a + h) +
               kI * Rule::integrate([&](double x) { return f(x).imag(); }, a, a + h);
    }
    return acc;
}

void check_gaussian(const Gaussian& g) {
    if (!(g.z.imag() > 0.0) || !std::isfinite(g.z.real())) throw InvalidArgument("Gaussian needs Im z > 0");
    if (!std::isfinite(g.x0) || !std::isfinite(g.xi)) throw InvalidArgument("Gaussian shift and modulation must be finite");
}

void check_bump(const Bump& b) {
    if (!(b.halfwidth > 0.0) || !std::isfinite(b.halfwidth) || !std::isfinite(b.center))
        throw InvalidArgument("bump needs a finite center and positive halfwidth");
    if (!(b.sharpness > 0.0) || !std::isfinite(b.sharpness)) throw InvalidArgument("bump sharpness must be positive");
}

nlohmann::json cjson(cplx c) { return nlohmann::json::array({c.real(), c.imag()}); }

}  // namespace

Gaussian gaussian_ft(const Gaussian& g) {
    check_gaussian(g);
    Gaussian t;
    t.z = -1.0 / g.z;
    t.x0 = g.xi;
    t.xi = -g.x0;
    t.amp = g.amp * std::sqrt(kI / g.z) * std::exp(kI * kTwoPi * g.xi * g.x0);
    return t;
}

cplx gaussian_ft(const Gaussian& g, double xi) {
    check_gaussian(g);
    const double d = xi - g.xi;
    return g.amp * std::sqrt(kI / g.z) * std::exp(-kI * kTwoPi * d * g.x0 - kI * kPi * d * d / g.z);
}

QuadratureValue bump_ft(const Bump& b, double xi, double tol) {
    check_bump(b);
    if (!(tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
    auto f = [&](double x) { return bump_value(b, x) * std::exp(-kI * kTwoPi * x * xi); };
    const double lo = b.center - b.halfwidth, hi = b.center + b.halfwidth;
    // Enough panels to resolve the oscillation before comparing refinements.
    int panels = std::max(4, static_cast<int>(std::ceil(2.0 * b.halfwidth * std::abs(xi))));
    cplx prev = composite(f, lo, hi, panels);
    constexpr int kMaxPanels = 1 << 16;
    while (panels <= kMaxPanels) {
        panels *= 2;
        cplx next = composite(f, lo, hi, panels);
        const double err = std::abs(next - prev);
        if (err <= tol) return QuadratureValue{next, err};
        prev = next;
    }
    throw InvalidArgument("bump transform did not reach the requested tolerance");
}

TestFunction TestFunction::gaussian(cplx z, double x0, double xi, cplx amp) {
    TestFunction t;
    t.kind_ = Kind::gaussian;
    t.g_ = Gaussian{z, x0, xi, amp};
    check_gaussian(t.g_);
    return t;
}

TestFunction TestFunction::bump(double center, double halfwidth, double sharpness, double tol) {
    TestFunction t;
    t.kind_ = Kind::bump;
    t.b_ = Bump{center, halfwidth, sharpness};
    check_bump(t.b_);
    if (!(tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
    t.tol_ = tol;
    t.l1_ = composite([&](double x) { return cplx(bump_value(t.b_, x), 0.0); }, center - halfwidth,
                      center + halfwidth, 64)
                .real();
    // |phi''| by central differences on a fine grid, padded by 10%.
    constexpr int kGrid = 8000;
    const double h = 2.0 * halfwidth / kGrid;
    double acc = 0.0;
    for (int k = 1; k < kGrid; ++k) {
        const double x = center - halfwidth + k * h;
        acc += std::abs(bump_value(t.b_, x + h) - 2.0 * bump_value(t.b_, x) + bump_value(t.b_, x - h)) / (h * h);
    }
    t.d2l1_ = 1.1 * acc * h;
    return t;
}

cplx TestFunction::operator()(double x) const {
    if (kind_ == Kind::gaussian) return gaussian_value(g_, x);
    return cplx(bump_value(b_, x), 0.0);
}

cplx TestFunction::ft(double xi) const {
    if (kind_ == Kind::gaussian) return gaussian_ft(g_, xi);
    return bump_ft(b_, xi, tol_).value;
}

double TestFunction::ft_error(double) const { return kind_ == Kind::gaussian ? 0.0 : tol_; }

double TestFunction::env(double x) const {
    if (kind_ == Kind::gaussian) {
        const double d = x - g_.x0;
        return std::abs(g_.amp) * std::exp(-kPi * g_.z.imag() * d * d);
    }
    return std::abs(x - b_.center) < b_.halfwidth ? 1.0 : 0.0;
}

double TestFunction::ft_env(double xi) const {
    if (kind_ == Kind::gaussian) {
        const Gaussian t = gaussian_ft(g_);
        const double d = xi - t.x0;
        return std::abs(t.amp) * std::exp(-kPi * t.z.imag() * d * d);
    }
    const double s = kTwoPi * xi;
    return std::min(l1_, d2l1_ / (s * s));
}

nlohmann::json TestFunction::describe() const {
    if (kind_ == Kind::gaussian)
        return {{"kind", "gaussian"}, {"z", cjson(g_.z)}, {"x0", g_.x0}, {"xi", g_.xi}, {"amp", cjson(g_.amp)}};
    return {{"kind", "bump"},
            {"center", b_.center},
            {"halfwidth", b_.halfwidth},
            {"sharpness", b_.sharpness},
            {"quadratureTol", tol_}};
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "fail";
}

Verdict decide(double residual, double tail_lhs, double tail_rhs, double tol) {
    if (!(tail_lhs <= tol) || !(tail_rhs <= tol)) return Verdict::inconclusive;
    return residual <= tol ? Verdict::pass : Verdict::fail;
}

nlohmann::json to_json(const VerificationReport& r) {
    return {{"lhs", cjson(r.lhs)},
            {"rhs", cjson(r.rhs)},
            {"residual", r.residual},
            {"tails", {r.tail_lhs, r.tail_rhs}},
            {"tol", r.tol},
            {"verdict", to_string(r.verdict)},
            {"params", r.params}};
}

nlohmann::json suite_json(const std::vector<VerificationReport>& reports) {
    nlohmann::json j;
    j["scope"] = "finite test-function suite: evidence for the identity, not a proof";
    j["reports"] = nlohmann::json::array();
    std::size_t passed = 0;
    for (const auto& r : reports) {
        j["reports"].push_back(to_json(r));
        if (r.verdict == Verdict::pass) ++passed;
    }
    j["passed"] = passed;
    j["total"] = reports.size();
    return j;
}

VerificationReport check_pair(const FSPair& pair, const TestFunction& tf, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
    VerificationReport r;
    r.tol = tol;
    r.lhs = pair.a.pair_with([&](double x) { return tf(x); });
    r.rhs = pair.mu.pair_with([&](double x) { return tf.ft(x); });
    r.residual = std::abs(r.lhs - r.rhs);
    r.tail_lhs = pair.a.tail_bound([&](double x) { return tf.env(x); });
    double quad = 0.0;
    if (!tf.is_gaussian())
        for (const Atom& at : pair.mu.atoms()) quad += std::abs(at.w) * tf.ft_error(at.x);
    r.tail_rhs = pair.mu.tail_bound([&](double x) { return tf.ft_env(x); }) + quad;
    r.verdict = decide(r.residual, r.tail_lhs, r.tail_rhs, tol);
    auto [a0, a1] = pair.a.window();
    auto [m0, m1] = pair.mu.window();
    r.params = {{"check", "pair"},
                {"test", tf.describe()},
                {"aWindow", {a0, a1}},
                {"muWindow", {m0, m1}},
                {"aAtoms", pair.a.size()},
                {"muAtoms", pair.mu.size()}};
    return r;
}

std::vector<VerificationReport> check_pair_suite(const FSPair& pair, const std::vector<TestFunction>& suite,
                                                 double tol) {
    std::vector<VerificationReport> out;
    out.reserve(suite.size());
    for (const auto& tf : suite) out.push_back(check_pair(pair, tf, tol));
    return out;
}

std::vector<VerificationReport> check_selfdual(const DiscreteMeasure& m, const std::vector<TestFunction>& suite,
                                               double tol) {
    if (!m.sign()) throw InvalidArgument("measure carries no self-duality sign");
    if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
    const double sign = static_cast<double>(*m.sign());
    std::vector<VerificationReport> out;
    for (const auto& tf : suite) {
        VerificationReport r;
        r.tol = tol;
        r.lhs = m.pair_with([&](double x) { return tf.ft(x); });
        r.rhs = sign * m.pair_with([&](double x) { return tf(x); });
        r.residual = std::abs(r.lhs - r.rhs);
        double quad = 0.0;
        if (!tf.is_gaussian())
            for (const Atom& at : m.atoms()) quad += std::abs(at.w) * tf.ft_error(at.x);
        r.tail_lhs = m.tail_bound([&](double x) { return tf.ft_env(x); }) + quad;
        r.tail_rhs = m.tail_bound([&](double x) { return tf.env(x); });
        r.verdict = decide(r.residual, r.tail_lhs, r.tail_rhs, tol);
        auto [x0, x1] = m.window();
        r.params = {{"check", "selfdual"},
                    {"sign", *m.sign()},
                    {"test", tf.describe()},
                    {"window", {x0, x1}},
                    {"atoms", m.size()}};
        out.push_back(std::move(r));
    }
    return out;
}

VerificationReport fejer_identity_check(const FSPair& pair, cplx w, cplx z, double T, double tol) {
    if (!(w.imag() > 0.0) || !(z.imag() > 0.0)) throw InvalidArgument("Fejer identity needs w, z in the upper half-plane");
    if (!(T > 0.0) || !std::isfinite(T)) throw InvalidArgument("Fejer cutoff T must be positive and finite");
    if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
    const cplx wb = std::conj(w);
    const cplx denom = z - wb;
    auto g = [&](double x) -> cplx {
        if (x < 0.0) return std::exp(-kI * kTwoPi * wb * std::abs(x)) / denom;
        return std::exp(kI * kTwoPi * z * x) / denom;
    };
    auto genv = [&](double x) {
        const double y = x < 0.0 ? w.imag() : z.imag();
        return std::exp(-kTwoPi * y * std::abs(x)) / std::abs(denom);
    };

    VerificationReport r;
    r.tol = tol;
    double bias = 0.0;
    for (const Atom& at : pair.a.atoms()) {
        const double ax = std::abs(at.x);
        if (ax >= T) continue;
        r.lhs += at.w * g(at.x) * (1.0 - ax / T);
        bias += std::abs(at.w) * genv(at.x) * ax / T;
    }
    // Beyond T the Fejer weight vanishes; beyond the window up to T the atoms
    // are missing and contribute at most the tail bound.
    auto [a0, a1] = pair.a.window();
    double missing = 0.0;
    if (T > std::min(-a0, a1)) missing = pair.a.tail_bound(genv);
    // The undamped identity differs from the Fejer sum by the bias term plus
    // everything at |l| >= T.
    double beyond = 0.0;
    for (const Atom& at : pair.a.atoms())
        if (std::abs(at.x) >= T) beyond += std::abs(at.w) * genv(at.x);

    for (const Atom& at : pair.mu.atoms()) r.rhs += at.w / ((at.x - z) * (at.x - wb));
    r.rhs /= kI * kTwoPi;

    r.residual = std::abs(r.lhs - r.rhs);
    r.tail_lhs = bias + missing + beyond;
    r.tail_rhs = herglotz_kernel_tail(pair.mu, w, z);
    r.verdict = decide(r.residual, r.tail_lhs, r.tail_rhs, tol);
    auto [m0, m1] = pair.mu.window();
    r.params = {{"check", "fejer"},
                {"w", cjson(w)},
                {"z", cjson(z)},
                {"T", T},
                {"aWindow", {a0, a1}},
                {"muWindow", {m0, m1}}};
    return r;
}

std::vector<TestFunction> gaussian_suite(int n, std::uint64_t seed, double ymin, double ymax, double shift) {
    if (n < 0) throw InvalidArgument("suite size must be nonnegative");
    if (!(ymin > 0.0) || !(ymax >= ymin)) throw InvalidArgument("need 0 < ymin <= ymax");
    if (!(shift >= 0.0)) throw InvalidArgument("shift range must be nonnegative");
    std::mt19937_64 rng(seed);
    std::vector<TestFunction> out;
    out.reserve(static_cast<std::size_t>(n));
    // Draw raw 64-bit words and map them by hand so the suite does not depend
    // on the standard library's distribution implementation.
    auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int i = 0; i < n; ++i) {
        const double y = ymin + (ymax - ymin) * unit();
        const double x0 = shift * (2.0 * unit() - 1.0);
        const double xi = shift * (2.0 * unit() - 1.0);
        out.push_back(TestFunction::gaussian(cplx(0.0, y), x0, xi));
    }
    return out;
}

std::vector<TestFunction> centered_gaussians(const std::vector<double>& ys) {
    std::vector<TestFunction> out;
    for (double y : ys) out.push_back(TestFunction::gaussian(cplx(0.0, y)));
    return out;
}

}  // namespace fsumm
