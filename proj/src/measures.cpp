#include "fsumm/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "fsumm/error.hpp"
#include "fsumm/io.hpp"

namespace fsumm {

namespace {

constexpr double kMergeTol = 1e-10;
constexpr double kPoleTol = 1e-9;

// Least-squares slope of ys against xs.
double slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double den = n * sxx - sx * sx;
    return den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
}

bool same_position(const Atom& a, const Atom& b) {
    if (a.prov && b.prov) return a.prov->same_point(*b.prov);
    return std::abs(a.x - b.x) <= kMergeTol;
}

double semi_infinite(const std::function<double(double)>& g, double a) {
    boost::math::quadrature::exp_sinh<double> integrator;
    double err = 0.0;
    double v = integrator.integrate([&](double t) { return g(t); }, a, std::numeric_limits<double>::infinity(),
                                    1e-10, &err);
    return v + err;
}

}  // namespace

double SqrtProvenance::value() const {
    double v = std::sqrt(2.0 * static_cast<double>(n) / (static_cast<double>(b) * std::sqrt(static_cast<double>(N))));
    return negative ? -v : v;
}

bool SqrtProvenance::same_point(const SqrtProvenance& o) const {
    if (n == 0 || o.n == 0) return n == o.n;
    if (negative != o.negative) return false;
    // n / (b sqrt N) == n' / (b' sqrt N')  <=>  n^2 b'^2 N' == n'^2 b^2 N
    using i128 = __int128;
    i128 lhs = static_cast<i128>(n) * n * o.b * o.b * o.N;
    i128 rhs = static_cast<i128>(o.n) * o.n * b * b * N;
    return lhs == rhs;
}

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms, double x0, double x1, bool nonneg)
    : x0_(x0), x1_(x1), nonneg_(nonneg) {
    if (!(x0 <= x1)) throw InvalidArgument("measure window must satisfy x0 <= x1");
    std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
    for (Atom& a : atoms) {
        if (!std::isfinite(a.x)) throw InvalidArgument("atom position must be finite");
        if (a.x < x0 - kMergeTol || a.x > x1 + kMergeTol) throw InvalidArgument("atom outside the measure window");
        if (!atoms_.empty() && same_position(atoms_.back(), a)) {
            atoms_.back().w += a.w;
            continue;
        }
        atoms_.push_back(std::move(a));
    }
    std::erase_if(atoms_, [](const Atom& a) { return a.w == cplx(0.0, 0.0); });
    if (nonneg_)
        for (const Atom& a : atoms_)
            if (a.w.imag() != 0.0 || a.w.real() < 0.0)
                throw InvalidArgument("measure flagged nonnegative has a weight outside [0, inf)");
    tail_ = fit_tail_model(atoms_);
}

void DiscreteMeasure::set_sign(int s) {
    if (s != 1 && s != -1) throw InvalidArgument("sign tag must be +1 or -1");
    sign_ = s;
}

cplx DiscreteMeasure::pair_with(const std::function<cplx(double)>& phi) const {
    cplx acc(0.0, 0.0);
    for (const Atom& a : atoms_) acc += a.w * phi(a.x);
    return acc;
}

double DiscreteMeasure::tail_bound(const std::function<double(double)>& env) const {
    if (atoms_.empty()) return 0.0;
    const TailModel& t = tail_;
    auto density = [&t](double r) { return 0.5 * t.K * t.q * std::pow(std::max(r, 1.0), t.q - 1.0); };
    auto weight = [&t](double r) { return t.C * std::pow(1.0 + r, t.p); };
    // An envelope that has underflowed kills the term even where the fitted
    // weight overflows.
    auto term = [&](double x) {
        const double e = env(x);
        return e == 0.0 ? 0.0 : weight(std::abs(x)) * density(std::abs(x)) * e;
    };
    double right = semi_infinite(term, x1_);
    double left = semi_infinite([&](double s) { return term(-s); }, -x0_);
    return right + left;
}

TailModel fit_tail_model(const std::vector<Atom>& atoms) {
    TailModel t;
    if (atoms.empty()) return t;
    double rmax = 0.0;
    for (const Atom& a : atoms) rmax = std::max(rmax, std::abs(a.x));

    // Weight growth from the upper envelope on geometric bins of |x| >= 1.
    constexpr int kBins = 8;
    std::vector<double> bx, by;
    if (rmax > 2.0) {
        const double ratio = std::pow(rmax, 1.0 / kBins);
        for (int k = 0; k < kBins; ++k) {
            double lo = std::pow(ratio, k), hi = std::pow(ratio, k + 1);
            double m = 0.0;
            for (const Atom& a : atoms) {
                double r = std::abs(a.x);
                if (r >= lo && r <= hi) m = std::max(m, std::abs(a.w));
            }
            if (m > 0.0) {
                bx.push_back(std::log(1.0 + std::sqrt(lo * hi)));
                by.push_back(std::log(m));
            }
        }
    }
    t.p = bx.size() >= 3 ? std::max(0.0, slope(bx, by)) : 0.0;
    for (const Atom& a : atoms) t.C = std::max(t.C, std::abs(a.w) / std::pow(1.0 + std::abs(a.x), t.p));

    // Counting function on the outer three octaves.
    std::vector<double> rs;
    for (const Atom& a : atoms) rs.push_back(std::abs(a.x));
    std::sort(rs.begin(), rs.end());
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (rs[i] < std::max(1.0, rmax / 8.0)) continue;
        lx.push_back(std::log(rs[i]));
        ly.push_back(std::log(static_cast<double>(i + 1)));
    }
    t.q = lx.size() >= 3 ? std::clamp(slope(lx, ly), 0.0, 4.0) : 1.0;
    t.K = 0.0;
    for (std::size_t i = 0; i < rs.size(); ++i)
        t.K = std::max(t.K, static_cast<double>(i + 1) / std::pow(std::max(rs[i], 1.0), t.q));
    return t;
}

DiscreteMeasure measure_from_phase(const HermiteBiehler& H, double alpha, double x0, double x1) {
    HermiteBiehler Ha = rotate_phase(H, alpha);
    RootScan rs = real_roots(Ha.B, x0, x1);
    if (!rs.double_roots.empty())
        throw DegenerateError("B_alpha has a double real zero; E has a real zero there");
    std::vector<Atom> atoms;
    atoms.reserve(rs.roots.size());
    for (double g : rs.roots) {
        double dphi = phase_derivative(H, g);
        if (!(dphi > 0.0)) throw DegenerateError("phase derivative is not positive at a zero of B_alpha");
        atoms.push_back(Atom{g, cplx(kTwoPi / dphi, 0.0), std::nullopt});
    }
    return DiscreteMeasure(std::move(atoms), x0, x1, true);
}

FSPair pair_from_hb(const HermiteBiehler& H, double cutoff, double x0, double x1) {
    FSPair p;
    p.mu = measure_from_phase(H, 0.0, x0, x1);
    SpectrumAtoms s = exact_spectrum(H, cutoff);
    std::vector<Atom> atoms;
    for (const auto& [lam, c] : s.sorted()) {
        if (lam == 0.0) {
            atoms.push_back(Atom{0.0, cplx(2.0 * c.real(), 0.0), std::nullopt});
        } else {
            atoms.push_back(Atom{lam, c, std::nullopt});
            atoms.push_back(Atom{-lam, std::conj(c), std::nullopt});
        }
    }
    p.a = DiscreteMeasure(std::move(atoms), -cutoff, cutoff, false);
    p.real_antipodal = true;
    p.meta = {{"source", "hermite-biehler"},
              {"E", to_json(H.E)},
              {"cutoff", cutoff},
              {"window", {x0, x1}},
              {"y_valid", s.y_valid},
              {"division_powers", s.powers}};
    return p;
}

cplx herglotz_eval(const DiscreteMeasure& mu, double h, cplx z) {
    if (!(z.imag() > 0.0)) throw InvalidArgument("Herglotz evaluation needs Im z > 0");
    cplx acc(0.0, 0.0);
    for (const Atom& a : mu.atoms()) {
        cplx d = a.x - z;
        if (std::abs(d) < kPoleTol) throw DegenerateError("evaluation point is within 1e-9 of an atom");
        acc += a.w * (1.0 + a.x * z) / (d * (1.0 + a.x * a.x));
    }
    return cplx(0.0, h) + acc / cplx(0.0, kTwoPi);
}

double fit_h(const DiscreteMeasure& mu, const Evaluator& f, cplx z0) {
    return (f(z0) - herglotz_eval(mu, 0.0, z0)).imag();
}

double herglotz_kernel_residual(const DiscreteMeasure& mu, const Evaluator& f, cplx w, cplx z) {
    if (!(w.imag() > 0.0) || !(z.imag() > 0.0)) throw InvalidArgument("kernel residual needs Im w, Im z > 0");
    const cplx wb = std::conj(w);
    cplx lhs = (f(z) + std::conj(f(w))) / (z - wb);
    cplx acc(0.0, 0.0);
    for (const Atom& a : mu.atoms()) {
        cplx d1 = z - a.x, d2 = wb - a.x;
        if (std::abs(d1) < kPoleTol || std::abs(d2) < kPoleTol)
            throw DegenerateError("kernel point is within 1e-9 of an atom");
        acc += a.w / (d1 * d2);
    }
    return std::abs(lhs - acc / cplx(0.0, kTwoPi));
}

double herglotz_kernel_tail(const DiscreteMeasure& mu, cplx w, cplx z) {
    const cplx wb = std::conj(w);
    return mu.tail_bound([&](double x) { return 1.0 / (kTwoPi * std::abs(z - x) * std::abs(wb - x)); });
}

std::pair<DiscreteMeasure, DiscreteMeasure> signed_split(const DiscreteMeasure& mu) {
    std::vector<Atom> plus, minus;
    for (const Atom& a : mu.atoms()) {
        if (a.w.imag() != 0.0) throw InvalidArgument("signed split needs real weights");
        if (a.w.real() > 0.0)
            plus.push_back(a);
        else
            minus.push_back(Atom{a.x, -a.w, a.prov});
    }
    auto [x0, x1] = mu.window();
    return {DiscreteMeasure(std::move(plus), x0, x1, true), DiscreteMeasure(std::move(minus), x0, x1, true)};
}

std::pair<DiscreteMeasure, DiscreteMeasure> real_antipodal_split(const DiscreteMeasure& a) {
    // a(-l) is looked up by position; antipodal partners share provenance
    // magnitude, so positions decide.
    const auto& at = a.atoms();
    auto partner = [&at](double x) -> cplx {
        auto it = std::lower_bound(at.begin(), at.end(), -x - kMergeTol,
                                   [](const Atom& p, double v) { return p.x < v; });
        if (it != at.end() && std::abs(it->x + x) <= kMergeTol) return it->w;
        return 0.0;
    };
    std::vector<Atom> a1, a2;
    std::vector<double> xs;
    for (const Atom& p : at) xs.push_back(p.x);
    for (const Atom& p : at) xs.push_back(-p.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(), [](double u, double v) { return std::abs(u - v) <= kMergeTol; }),
             xs.end());
    for (double x : xs) {
        auto self = std::lower_bound(at.begin(), at.end(), x - kMergeTol, [](const Atom& p, double v) { return p.x < v; });
        cplx ax = (self != at.end() && std::abs(self->x - x) <= kMergeTol) ? self->w : cplx(0.0, 0.0);
        cplx am = std::conj(partner(x));
        a1.push_back(Atom{x, 0.5 * (ax + am), std::nullopt});
        a2.push_back(Atom{x, (am - ax) / cplx(0.0, 2.0), std::nullopt});
    }
    auto [x0, x1] = a.window();
    double r = std::max(std::abs(x0), std::abs(x1));
    return {DiscreteMeasure(std::move(a1), -r, r), DiscreteMeasure(std::move(a2), -r, r)};
}

std::pair<FSPair, FSPair> reflection_split(const FSPair& p) {
    auto mirrored = [](const Atom& a, cplx w) {
        Atom m{-a.x, w, a.prov};
        if (m.prov) m.prov->negative = !m.prov->negative;
        return m;
    };
    std::vector<Atom> even, odd, re, im;
    for (const Atom& a : p.mu.atoms()) {
        even.push_back(Atom{a.x, 0.5 * a.w, a.prov});
        even.push_back(mirrored(a, 0.5 * a.w));
        odd.push_back(Atom{a.x, a.w / cplx(0.0, 2.0), a.prov});
        odd.push_back(mirrored(a, -a.w / cplx(0.0, 2.0)));
    }
    for (const Atom& a : p.a.atoms()) {
        re.push_back(Atom{a.x, a.w.real(), a.prov});
        im.push_back(Atom{a.x, a.w.imag(), a.prov});
    }
    auto sym = [](const DiscreteMeasure& m) {
        auto [x0, x1] = m.window();
        double r = std::max(std::abs(x0), std::abs(x1));
        return std::pair<double, double>{-r, r};
    };
    auto [m0, m1] = sym(p.mu);
    auto [a0, a1] = p.a.window();
    FSPair e{DiscreteMeasure(std::move(even), m0, m1), DiscreteMeasure(std::move(re), a0, a1), false,
             {{"source", "reflection-split"}, {"part", "even"}}};
    FSPair o{DiscreteMeasure(std::move(odd), m0, m1), DiscreteMeasure(std::move(im), a0, a1), false,
             {{"source", "reflection-split"}, {"part", "odd"}}};
    return {std::move(e), std::move(o)};
}

DegreeReport degree_probe(const DiscreteMeasure& mu, int n) {
    if (n < 0) throw InvalidArgument("degree probe needs n >= 0");
    DegreeReport rep;
    rep.n = n;
    auto [x0, x1] = mu.window();
    const double rmax = std::max(std::abs(x0), std::abs(x1));
    constexpr int kLevels = 6;
    for (int k = kLevels - 1; k >= 0; --k) rep.radii.push_back(rmax / std::pow(2.0, k));
    for (double R : rep.radii) {
        double s = 0.0;
        for (const Atom& a : mu.atoms())
            if (std::abs(a.x) <= R) s += std::abs(a.w) / std::pow(1.0 + a.x * a.x, 0.5 * n);
        rep.partial_sums.push_back(s);
    }
    std::vector<double> lx, ly;
    std::vector<double> shells;
    for (std::size_t k = 1; k < rep.radii.size(); ++k) {
        double d = rep.partial_sums[k] - rep.partial_sums[k - 1];
        shells.push_back(d);
        if (d > 0.0) {
            lx.push_back(std::log(rep.radii[k]));
            ly.push_back(std::log(d));
        }
    }
    const bool outer_empty = shells.size() >= 2 && shells[shells.size() - 1] == 0.0 && shells[shells.size() - 2] == 0.0;
    if (lx.empty() || outer_empty) {
        rep.shell_exponent = -std::numeric_limits<double>::infinity();
        rep.convergent = true;
    } else if (lx.size() == 1) {
        rep.shell_exponent = 0.0;
        rep.convergent = false;
    } else {
        rep.shell_exponent = slope(lx, ly);
        rep.convergent = rep.shell_exponent < -0.25;
    }
    rep.trend = rep.convergent ? "convergent-at-window-scale" : "divergent trend";
    return rep;
}

}  // namespace fsumm
