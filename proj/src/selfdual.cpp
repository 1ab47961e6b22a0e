#include "fsumm/selfdual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fsumm/error.hpp"

namespace fsumm {

namespace {

double radical_scale(const SelfDualSeries& s) {
    return static_cast<double>(s.den) * std::sqrt(static_cast<double>(s.N));
}

}  // namespace

DiscreteMeasure selfdual_measure(const SelfDualSeries& s, double x0, double x1) {
    if (!std::isfinite(x0) || !std::isfinite(x1) || !(x0 <= x1)) throw InvalidArgument("window must be finite with x0 <= x1");
    if (s.sign != 1 && s.sign != -1) throw InvalidArgument("series sign must be +1 or -1");
    // Positions sqrt(2 n / (den sqrt N)) for n < n_limit are all determined.
    const double cover = std::sqrt(2.0 * static_cast<double>(std::max<std::int64_t>(s.n_limit, 0)) / radical_scale(s));
    const double lo = std::clamp(x0, -cover, cover);
    const double hi = std::clamp(x1, -cover, cover);

    std::vector<Atom> atoms;
    for (const auto& [n, c] : s.coeffs) {
        if (n >= s.n_limit) continue;
        const double w = c.get_d();
        if (n == 0) {
            if (lo <= 0.0 && 0.0 <= hi) atoms.push_back(Atom{0.0, cplx(2.0 * w, 0.0), SqrtProvenance{0, s.den, s.N, false}});
            continue;
        }
        for (bool neg : {false, true}) {
            SqrtProvenance p{n, s.den, s.N, neg};
            double x = p.value();
            if (x < lo || x > hi) continue;
            atoms.push_back(Atom{x, cplx(w, 0.0), p});
        }
    }
    DiscreteMeasure m(std::move(atoms), lo, hi, false);
    m.set_sign(s.sign);
    return m;
}

FSPair selfdual_pair(const SelfDualSeries& s, double x0, double x1) {
    FSPair p;
    p.mu = selfdual_measure(s, x0, x1);
    std::vector<Atom> a = p.mu.atoms();
    for (Atom& at : a) at.w *= static_cast<double>(s.sign);
    auto [lo, hi] = p.mu.window();
    p.a = DiscreteMeasure(std::move(a), lo, hi, false);
    p.real_antipodal = true;
    p.meta = {{"source", "self-dual"},
              {"sign", s.sign},
              {"den", s.den},
              {"N", s.N},
              {"nLimit", s.n_limit},
              {"window", {lo, hi}},
              {"hecke", {{"constant", s.hecke_constant}, {"ok", s.hecke_ok}}}};
    return p;
}

cplx selfdual_eval(const SelfDualSeries& s, cplx z) {
    const double scale = radical_scale(s);
    cplx acc(0.0, 0.0);
    for (const auto& [n, c] : s.coeffs) {
        const double g = static_cast<double>(n) / scale;
        acc += c.get_d() * std::exp(cplx(0.0, kTwoPi * g) * z);
    }
    return acc;
}

double selfdual_tail(const SelfDualSeries& s, cplx z) {
    if (!(z.imag() > 0.0)) throw InvalidArgument("tail estimate needs Im z > 0");
    const std::int64_t L = s.n_limit;
    if (L < 2) return std::numeric_limits<double>::infinity();
    double a = 0.0;
    for (const auto& [n, c] : s.coeffs) {
        if (2 * n < L || n < 1) continue;
        const double m = std::abs(c.get_d());
        if (m > 1.0) a = std::max(a, std::log(m) / std::sqrt(static_cast<double>(n)));
    }
    a *= 1.1;
    const double t = kTwoPi * z.imag() / radical_scale(s);
    const double sl = std::sqrt(static_cast<double>(L));
    const double kappa = t - a / (2.0 * sl);
    if (!(kappa > 0.0)) return std::numeric_limits<double>::infinity();
    // a sqrt(n) - t n decreases at rate >= kappa beyond L.
    return std::exp(a * sl - t * static_cast<double>(L)) / -std::expm1(-kappa);
}

double functional_equation_residual(const SelfDualSeries& s, cplx z, double target) {
    if (!(z.imag() > 0.0)) throw InvalidArgument("functional equation needs Im z > 0");
    const cplx zt = -1.0 / z;
    const cplx root = std::sqrt(cplx(0.0, 1.0) / z);
    const double tail = selfdual_tail(s, z) + std::abs(root) * selfdual_tail(s, zt);
    if (!(tail <= target))
        throw InvalidArgument("truncation tail " + std::to_string(tail) + " exceeds the target; raise the order");
    return std::abs(selfdual_eval(s, z) - static_cast<double>(s.sign) * root * selfdual_eval(s, zt));
}

}  // namespace fsumm
