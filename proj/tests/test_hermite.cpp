#include <doctest.h>

#include <algorithm>

#include "fsumm/error.hpp"
#include "fsumm/hermite.hpp"
#include "support.hpp"

using namespace fsumm;
using namespace fsumm::testing;

namespace {

// e^{-2 pi i z} over half_basis.
ExpSum lattice_e() { return ExpSum::monomial(half_basis(), k1(-2), 1.0); }

std::vector<double> oracle_roots(double (*f)(double), double a, double b, double h) {
    std::vector<double> out;
    double x = a, fx = f(a);
    while (x < b) {
        double y = std::min(b, x + h), fy = f(y);
        if (fx == 0.0) out.push_back(x);
        if (fx * fy < 0.0) {
            double lo = x, hi = y, flo = fx;
            for (int i = 0; i < 200; ++i) {
                double m = 0.5 * (lo + hi), fm = f(m);
                if ((fm < 0) == (flo < 0)) {
                    lo = m;
                    flo = fm;
                } else {
                    hi = m;
                }
            }
            out.push_back(0.5 * (lo + hi));
        }
        x = y;
        fx = fy;
    }
    return out;
}

double listed_q(double x) { return std::sin(x) + 0.1 * std::sin(std::sqrt(2.0) * x); }

}  // namespace

TEST_CASE("split_ab") {
    auto [A, B] = split_ab(lattice_e());
    CHECK(term_distance(A, cos_half(2)) < 1e-16);
    CHECK(term_distance(B, sin_half(2)) < 1e-16);

    ExpSum E = cos_half(1, M_PI) - es_scale(sin_half(1), I);
    auto [A2, B2] = split_ab(E);
    CHECK(term_distance(A2, cos_half(1, M_PI)) < 1e-15);
    CHECK(term_distance(B2, sin_half(1)) < 1e-15);
    CHECK((A2 - es_scale(B2, I)) == E);

    auto [A3, B3] = split_ab(sin_half(3));
    CHECK(A3 == sin_half(3));
    CHECK(B3.empty());
}

TEST_CASE("hermite-biehler verdicts") {
    GridSpec g;
    HbVerdict v = is_hermite_biehler(lattice_e(), g);
    CHECK(v.accepted);
    CHECK(v.certificate.margin > 0.0);

    HbVerdict r = is_hermite_biehler(ExpSum::monomial(half_basis(), k1(2), 1.0), g);
    CHECK_FALSE(r.accepted);
    CHECK(r.witness.imag() > 0.0);

    ExpSum E = cos_half(1, M_PI) - es_scale(sin_half(1), I);
    CHECK(is_hermite_biehler(E, g).accepted);

    GridSpec bad;
    bad.y_min = 0.0;
    CHECK_THROWS_AS(is_hermite_biehler(E, bad), InvalidArgument);
    bad = GridSpec{};
    bad.nx = 0;
    CHECK_THROWS_AS(is_hermite_biehler(E, bad), InvalidArgument);
}

TEST_CASE("default grid spans four slow periods") {
    GridSpec g = default_grid(sin_half(1));
    CHECK(g.x_max == doctest::Approx(8.0));
    CHECK(g.x_min == doctest::Approx(-8.0));
    CHECK(g.nx == 400);
    CHECK(g.ny == 50);
}

TEST_CASE("Kurasov-Sarnak lift") {
    HermiteBiehler H = ks_from_q(sin_half(1));
    CHECK(term_distance(H.A, cos_half(1, M_PI)) < 1e-15);
    CHECK(H.B == sin_half(1));
    CHECK((H.A - es_scale(H.B, I)) == H.E);

    HermiteBiehler H2 = ks_from_q(rr_irrational_q());
    CHECK(H2.certificate.margin > 0.0);

    ExpSum shifted = ExpSum::constant(half_basis(), 2.0) + sin_half(1);
    CHECK_THROWS_AS(ks_from_q(shifted), NotHermiteBiehler);

    CHECK_THROWS_AS(ks_from_q(ExpSum::monomial(half_basis(), k1(1), 1.0)), InvalidArgument);
}

TEST_CASE("sin x + 0.1 sin(sqrt2 x) has a zero off the real axis") {
    // Newton from a point located by a coarse search finds a non-real zero,
    // and the lift is rejected accordingly.
    auto q = [](cplx z) { return std::sin(z) + 0.1 * std::sin(std::sqrt(2.0) * z); };
    auto dq = [](cplx z) { return std::cos(z) + 0.1 * std::sqrt(2.0) * std::cos(std::sqrt(2.0) * z); };
    cplx z(7.6, 5.6);
    for (int i = 0; i < 60; ++i) z -= q(z) / dq(z);
    CHECK(std::abs(q(z)) < 1e-9);
    CHECK(z.imag() > 1.0);
    try {
        ks_from_q(listed_irrational_q());
        FAIL("lift should be rejected");
    } catch (const NotHermiteBiehler& e) {
        CHECK(e.witness().imag() > 0.0);
    }
}

TEST_CASE("Lee-Yang determinant generator") {
    FreqBasis b({1.0}, 1);
    ExpSum p1 = leeyang_trigpoly({{-1.0}}, b, {Freq({1})});
    CHECK(p1.coeff(Freq({1})) == cplx(1.0, 0.0));
    CHECK(p1.coeff(Freq({0})) == cplx(-1.0, 0.0));
    ExpSum p2 = leeyang_trigpoly({{1.0}}, b, {Freq({1})});
    CHECK(p2.coeff(Freq({0})) == cplx(1.0, 0.0));

    ExpSum r1 = real_normalize(p1);
    RootScan rs = real_roots(r1, -2.25, 2.25);
    REQUIRE(rs.roots.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(std::abs(rs.roots[i] - (i - 2)) < 1e-12);
    RootScan rs2 = real_roots(real_normalize(p2), -2.1, 2.1);
    REQUIRE(rs2.roots.size() == 4);
    CHECK(rs2.roots[0] == doctest::Approx(-1.5));
    CHECK(rs2.roots[3] == doctest::Approx(1.5));

    CHECK_THROWS_AS(leeyang_trigpoly({{2.0}}, b, {Freq({1})}), InvalidArgument);
}

TEST_CASE("Lee-Yang rotation with lengths 1 and sqrt2 is real-rooted") {
    FreqBasis b({1.0, std::sqrt(2.0)}, 1);
    double c = std::cos(M_PI / 4), s = std::sin(M_PI / 4);
    ComplexMatrix U{{c, -s}, {s, c}};
    ExpSum P = leeyang_trigpoly(U, b, {Freq({1, 0}), Freq({0, 1})});
    ExpSum R = real_normalize(P);
    CHECK(is_star_fixed(R, 1e-12));
    HermiteBiehler H = ks_from_q(R);
    CHECK(H.certificate.margin > 0.0);
    // det U = 1 so P(0) = det(U + I) = 2 + 2c, and the root count on a long
    // window matches the density (l1 + l2) per unit length.
    RootScan rs = real_roots(R, -50.0, 50.0);
    CHECK(rs.double_roots.empty());
    double expected = 100.0 * (1.0 + std::sqrt(2.0));
    CHECK(std::abs(static_cast<double>(rs.roots.size()) - expected) <= 3.0);
}

TEST_CASE("diagonal unitary gives a product of binomials") {
    FreqBasis b({1.0, std::sqrt(2.0), std::sqrt(3.0)}, 1);
    std::vector<cplx> u{std::polar(1.0, 0.3), std::polar(1.0, -1.1), std::polar(1.0, 2.0)};
    ComplexMatrix U(3, std::vector<cplx>(3, 0.0));
    for (int i = 0; i < 3; ++i) U[i][i] = u[i];
    std::vector<Freq> L{Freq({1, 0, 0}), Freq({0, 1, 0}), Freq({0, 0, 1})};
    ExpSum P = leeyang_trigpoly(U, b, L);
    ExpSum prod = ExpSum::constant(b, 1.0);
    for (int i = 0; i < 3; ++i) prod = prod * (ExpSum::constant(b, u[i]) + ExpSum::monomial(b, L[i], 1.0));
    CHECK(term_distance(P, prod) < 1e-14);
}

TEST_CASE("real roots") {
    RootScan a = real_roots(sin_half(1), -2.5, 2.5);
    REQUIRE(a.roots.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(std::abs(a.roots[i] - (i - 2)) < 1e-12);
    CHECK(a.double_roots.empty());

    RootScan b = real_roots(sin_half(2), 0.0, 1.0);
    REQUIRE(b.roots.size() == 3);
    CHECK(std::abs(b.roots[0]) < 1e-12);
    CHECK(std::abs(b.roots[1] - 0.5) < 1e-12);
    CHECK(std::abs(b.roots[2] - 1.0) < 1e-12);

    RootScan c = real_roots(listed_irrational_q(), -10.0, 10.0);
    std::vector<double> ref = oracle_roots(listed_q, -10.0, 10.0, 1e-3);
    REQUIRE(c.roots.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(c.roots[i] - ref[i]) < 1e-10);

    // 1 - cos(2 pi z) touches zero at the integers without a sign change.
    ExpSum tang = ExpSum::constant(half_basis(), 1.0) - cos_half(2);
    RootScan d = real_roots(tang, -1.3, 1.3);
    CHECK(d.double_roots.size() == 3);

    CHECK_THROWS_AS(real_roots(ExpSum(half_basis()), 0.0, 1.0), DegenerateError);
    CHECK_THROWS_AS(real_roots(sin_half(1), 1.0, 0.0), InvalidArgument);
}

TEST_CASE("phase derivative") {
    HermiteBiehler H = make_hermite_biehler(lattice_e());
    CHECK(phase_derivative(H, 0.37) == doctest::Approx(2.0 * M_PI));
    HermiteBiehler K = ks_from_q(sin_half(1));
    CHECK(phase_derivative(K, 0.0) == doctest::Approx(1.0));
    CHECK(1.0 / phase_derivative(K, 0.0) == doctest::Approx(K.A(0.0).real() / es_derivative(K.B)(0.0).real()));
}

TEST_CASE("phase is increasing and zeros interlace") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ux(-60.0, 60.0);
    for (const ExpSum& Q : {sin_half(1), rr_irrational_q()}) {
        HermiteBiehler H = ks_from_q(Q);
        for (int i = 0; i < 10000; ++i) REQUIRE(phase_derivative(H, ux(rng)) > 0.0);
        RootScan ra = real_roots(H.A, -30.0, 30.0), rb = real_roots(H.B, -30.0, 30.0);
        std::vector<std::pair<double, int>> all;
        for (double x : ra.roots) all.emplace_back(x, 0);
        for (double x : rb.roots) all.emplace_back(x, 1);
        std::sort(all.begin(), all.end());
        for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i].second != all[i - 1].second);
        // B = Q, so its zeros are the zeros of Q.
        for (double x : rb.roots) CHECK(std::abs(Q(x)) < 1e-10);
    }
}
