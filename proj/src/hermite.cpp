#include "fsumm/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "fsumm/error.hpp"

namespace fsumm {

namespace {

std::string fmt_point(cplx z) {
    std::ostringstream os;
    os.precision(6);
    os << "(" << z.real() << ", " << z.imag() << ")";
    return os.str();
}

void check_grid(const GridSpec& g) {
    if (g.nx < 2 || g.ny < 1) throw InvalidArgument("grid needs nx >= 2 and ny >= 1");
    if (!(g.x_min < g.x_max)) throw InvalidArgument("grid needs x_min < x_max");
    if (!(g.y_min > 0.0) || !(g.y_min <= g.y_max)) throw InvalidArgument("grid needs 0 < y_min <= y_max");
}

double lerp_step(double a, double b, int i, int n) {
    if (n <= 1) return a;
    return a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
}

double ulp_at(double x) {
    return std::nextafter(std::abs(x), std::numeric_limits<double>::infinity()) - std::abs(x);
}

}  // namespace

GridSpec default_grid(const ExpSum& E) {
    double slow = std::numeric_limits<double>::infinity();
    for (const auto& [lam, c] : E.sorted_terms())
        if (lam != 0.0) slow = std::min(slow, std::abs(lam));
    GridSpec g;
    double X = std::isfinite(slow) ? 4.0 / slow : 4.0;
    g.x_min = -X;
    g.x_max = X;
    return g;
}

std::pair<ExpSum, ExpSum> split_ab(const ExpSum& E) {
    ExpSum Es = es_star(E);
    ExpSum A = es_scale(Es + E, 0.5);
    ExpSum B = es_scale(Es - E, cplx(0.0, -0.5));
    return {A, B};
}

HbVerdict is_hermite_biehler(const ExpSum& E, const GridSpec& grid) {
    check_grid(grid);
    HbVerdict v;
    v.certificate.grid = grid;
    if (E.empty()) {
        v.reason = "E is identically zero";
        return v;
    }
    const double scale = E.coeff_l1();
    ExpSum Es = es_star(E);
    auto [A, B] = split_ab(E);

    // Real-axis preflight: a real zero of E is a common zero of A and B.
    const int nreal = 4 * grid.nx;
    double floor = std::numeric_limits<double>::infinity();
    for (int i = 0; i < nreal; ++i) {
        double x = lerp_step(grid.x_min, grid.x_max, i, nreal);
        double m = std::abs(E(cplx(x, 0.0))) / scale;
        if (m < floor) {
            floor = m;
            if (m < 1e-10) {
                v.witness = cplx(x, 0.0);
                v.reason = "E vanishes on the real axis near " + fmt_point(v.witness);
                v.certificate.real_axis_floor = m;
                return v;
            }
        }
    }
    v.certificate.real_axis_floor = floor;

    double margin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid.ny; ++j) {
        double y = lerp_step(grid.y_min, grid.y_max, j, grid.ny);
        for (int i = 0; i < grid.nx; ++i) {
            double x = lerp_step(grid.x_min, grid.x_max, i, grid.nx);
            cplx z(x, y);
            double e = std::abs(E(z));
            double es = std::abs(Es(z));
            if (!(es < e)) {
                v.witness = z;
                v.reason = "|E*(z)| >= |E(z)| at " + fmt_point(z);
                return v;
            }
            margin = std::min(margin, 1.0 - es / e);
            cplx b = B(z);
            cplx a = A(z);
            if (std::abs(b) > 1e-14 * (std::abs(a) + std::abs(b))) {
                double re = (cplx(0.0, 1.0) * a / b).real();
                if (!(re > 0.0)) {
                    v.witness = z;
                    v.reason = "Re(iA/B) <= 0 at " + fmt_point(z);
                    return v;
                }
            }
        }
    }
    v.certificate.margin = margin;
    v.accepted = true;
    return v;
}

HermiteBiehler make_hermite_biehler(const ExpSum& E, const std::optional<GridSpec>& grid) {
    GridSpec g = grid ? *grid : default_grid(E);
    HbVerdict v = is_hermite_biehler(E, g);
    if (!v.accepted) throw NotHermiteBiehler(v.reason, v.witness);
    auto [A, B] = split_ab(E);
    return HermiteBiehler{E, std::move(A), std::move(B), v.certificate};
}

HermiteBiehler rotate_phase(const HermiteBiehler& H, double alpha) {
    ExpSum Ea = es_scale(H.E, std::polar(1.0, alpha));
    auto [A, B] = split_ab(Ea);
    return HermiteBiehler{std::move(Ea), std::move(A), std::move(B), H.certificate};
}

HermiteBiehler ks_from_q(const ExpSum& Q, const std::optional<GridSpec>& grid) {
    if (Q.empty()) throw InvalidArgument("Q is identically zero");
    if (!is_star_fixed(Q, 1e-12)) throw InvalidArgument("Q is not real on the real axis");
    ExpSum dQ = es_derivative(Q);
    ExpSum E = dQ - es_scale(Q, cplx(0.0, 1.0));
    GridSpec g = grid ? *grid : default_grid(E);
    HbVerdict v = is_hermite_biehler(E, g);
    if (!v.accepted) throw NotHermiteBiehler(v.reason, v.witness);
    return HermiteBiehler{std::move(E), std::move(dQ), Q, v.certificate};
}

ExpSum leeyang_trigpoly(const ComplexMatrix& U, const FreqBasis& basis, const std::vector<Freq>& lengths) {
    const std::size_t n = U.size();
    if (n == 0) throw InvalidArgument("matrix must be non-empty");
    if (n > 20) throw InvalidArgument("matrix dimension above 20 is not supported");
    if (lengths.size() != n) throw InvalidArgument("need one length per matrix row");
    Eigen::MatrixXcd M(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (U[i].size() != n) throw InvalidArgument("matrix must be square");
        for (std::size_t j = 0; j < n; ++j) M(i, j) = U[i][j];
    }
    double dev = (M.adjoint() * M - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (dev > 1e-10) throw InvalidArgument("matrix is not unitary");
    for (const Freq& l : lengths)
        if (!(basis.value(l) > 0.0)) throw InvalidArgument("lengths must be positive");

    ExpSum::TermMap out;
    const std::uint32_t full = (1u << n) - 1u;
    for (std::uint32_t S = 0; S <= full; ++S) {
        std::vector<Eigen::Index> keep;
        Freq f = Freq::zero(basis.rank());
        for (std::size_t j = 0; j < n; ++j) {
            if (S & (1u << j))
                f += lengths[j];
            else
                keep.push_back(static_cast<Eigen::Index>(j));
        }
        cplx minor(1.0, 0.0);
        if (!keep.empty()) {
            Eigen::MatrixXcd sub(keep.size(), keep.size());
            for (std::size_t a = 0; a < keep.size(); ++a)
                for (std::size_t b = 0; b < keep.size(); ++b) sub(a, b) = M(keep[a], keep[b]);
            minor = sub.determinant();
        }
        auto [it, ins] = out.try_emplace(f, minor);
        if (!ins) it->second += minor;
    }
    return ExpSum(basis, std::move(out)).purged(1e-14);
}

ExpSum refine_denominator(const ExpSum& f, std::int64_t factor) {
    if (factor <= 0) throw InvalidArgument("refinement factor must be positive");
    FreqBasis nb(f.basis().base(), f.basis().denominator() * factor);
    ExpSum::TermMap out;
    for (const auto& [k, c] : f.terms()) out.emplace(factor * k, c);
    return ExpSum(nb, std::move(out));
}

ExpSum real_normalize(const ExpSum& P, double rel_tol) {
    if (P.empty()) throw DegenerateError("cannot normalise the zero sum");
    Freq sum = P.min_key() + P.max_key();
    bool half = std::any_of(sum.k.begin(), sum.k.end(), [](std::int64_t v) { return v % 2 != 0; });
    ExpSum Q = half ? refine_denominator(P, 2) : P;
    Freq c = half ? sum : Freq(sum);
    if (!half)
        for (auto& v : c.k) v /= 2;
    Q = es_shift(Q, -c);

    // Pick the unimodular constant from the extreme coefficients:
    // real-on-axis means c_{-lambda} = conj(c_lambda).
    cplx lo = Q.coeff(Q.min_key());
    cplx hi = Q.coeff(Q.max_key());
    cplx w = std::sqrt(std::conj(lo) / hi);
    if (!std::isfinite(w.real()) || std::abs(w) == 0.0) throw DegenerateError("no real normalisation");
    w /= std::abs(w);
    Q = es_scale(Q, w);
    if (!is_star_fixed(Q, rel_tol)) throw DegenerateError("exponential sum admits no real normalisation");
    // Symmetrise to remove rounding asymmetry.
    return es_scale(Q + es_star(Q), 0.5);
}

RootScan real_roots(const ExpSum& B, double x0, double x1) {
    if (B.empty()) throw DegenerateError("zero function has no isolated roots");
    if (!(x0 < x1) || !std::isfinite(x0) || !std::isfinite(x1)) throw InvalidArgument("need a finite interval x0 < x1");
    if (!is_star_fixed(B, 1e-10)) throw InvalidArgument("function is not real on the real axis");
    RootScan out;
    const double span = B.max_frequency() - B.min_frequency();
    if (span == 0.0) return out;

    auto f = [&B](double x) { return B(cplx(x, 0.0)).real(); };
    const double h = 1.0 / (8.0 * span);
    const double nsteps = std::ceil((x1 - x0) / h);
    if (nsteps > 1e8) throw DegenerateError("root scan interval too long for the frequency span");
    const auto n = static_cast<std::int64_t>(nsteps);
    const double scale = B.coeff_l1();
    const double zero_tol = 64.0 * std::numeric_limits<double>::epsilon() * scale;

    std::vector<double> xs(n + 1), bs(n + 1);
    for (std::int64_t i = 0; i <= n; ++i) {
        xs[i] = (i == n) ? x1 : x0 + static_cast<double>(i) * h;
        bs[i] = f(xs[i]);
    }
    auto near0 = [&](std::int64_t i) { return std::abs(bs[i]) <= zero_tol; };

    auto bisect = [&](double a, double fa, double b) {
        while (b - a > std::max(1e-12, 4.0 * ulp_at(std::max(std::abs(a), std::abs(b))))) {
            double m = 0.5 * (a + b);
            double fm = f(m);
            if (fm == 0.0) return m;
            if ((fm < 0.0) == (fa < 0.0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        return 0.5 * (a + b);
    };

    for (std::int64_t i = 0; i <= n; ++i) {
        if (near0(i)) {
            bool interior = i > 0 && i < n && !near0(i - 1) && !near0(i + 1);
            if (interior && (bs[i - 1] < 0.0) != (bs[i + 1] < 0.0)) {
                out.roots.push_back(bisect(xs[i - 1], bs[i - 1], xs[i + 1]));
            } else if (interior) {
                out.double_roots.push_back(xs[i]);
            } else {
                out.roots.push_back(xs[i]);
            }
            continue;
        }
        if (i < n && !near0(i + 1) && (bs[i] < 0.0) != (bs[i + 1] < 0.0))
            out.roots.push_back(bisect(xs[i], bs[i], xs[i + 1]));
    }

    // Tangential zeros: interior local minima of |B| without sign change.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    for (std::int64_t i = 1; i < n; ++i) {
        if (near0(i - 1) || near0(i) || near0(i + 1)) continue;
        bool same = (bs[i - 1] < 0.0) == (bs[i] < 0.0) && (bs[i] < 0.0) == (bs[i + 1] < 0.0);
        if (!same || !(std::abs(bs[i]) < std::abs(bs[i - 1]) && std::abs(bs[i]) <= std::abs(bs[i + 1]))) continue;
        double a = xs[i - 1], b = xs[i + 1];
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = std::abs(f(c)), fd = std::abs(f(d));
        for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - gr * (b - a);
                fc = std::abs(f(c));
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + gr * (b - a);
                fd = std::abs(f(d));
            }
        }
        double xm = 0.5 * (a + b);
        if (std::abs(f(xm)) <= 1e-8 * scale) out.double_roots.push_back(xm);
    }

    auto dedupe = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        std::vector<double> r;
        for (double x : v)
            if (r.empty() || x - r.back() > 1e-10) r.push_back(x);
        v = std::move(r);
    };
    dedupe(out.roots);
    dedupe(out.double_roots);
    return out;
}

double phase_derivative(const HermiteBiehler& H, double x) {
    cplx z(x, 0.0);
    cplx e = H.E(z);
    if (std::abs(e) < 1e-14 * H.E.coeff_l1()) throw DegenerateError("E vanishes at the requested point");
    cplx de = es_derivative(H.E)(z);
    return (cplx(0.0, 1.0) * de / e).real();
}

}  // namespace fsumm
