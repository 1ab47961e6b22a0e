#include <doctest.h>

#include <chrono>
#include <random>

#include "fsumm/qmodular.hpp"

using namespace fsumm;

namespace {

mpq_class Q(long p, long q = 1) { return mpq_class(p, q); }

// (1 - q^n) as a two-term series.
QSeries one_minus(std::int64_t n, const mpq_class& order) {
    return QSeries({{Q(0), Q(1)}, {Q(n), Q(-1)}}, order);
}

// sum_{n in Z} q^{(n + shift)^2 / 2}.
QSeries theta(const mpq_class& shift, const mpq_class& order) {
    QSeries::Terms t;
    for (long n = -200; n <= 200; ++n) {
        mpq_class e = (n + shift) * (n + shift) / 2;
        if (e >= order) continue;
        t[e] += 1;
    }
    return QSeries(t, order);
}

EtaProductSpec guinand() { return EtaProductSpec(4, {{1, Q(2, 3)}, {2, Q(-1, 3)}, {4, Q(2, 3)}}); }
EtaProductSpec poisson() { return EtaProductSpec(4, {{1, Q(-2)}, {2, Q(5)}, {4, Q(-2)}}); }

// Lagrange interpolation through (x_i, y_i), returned as monomial coefficients.
std::vector<mpq_class> interpolate(const std::vector<mpq_class>& x, const std::vector<mpq_class>& y) {
    const std::size_t n = x.size();
    std::vector<mpq_class> out(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<mpq_class> basis{1};
        mpq_class denom = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            std::vector<mpq_class> next(basis.size() + 1, 0);
            for (std::size_t k = 0; k < basis.size(); ++k) {
                next[k + 1] += basis[k];
                next[k] -= x[j] * basis[k];
            }
            basis = next;
            denom *= x[i] - x[j];
        }
        for (std::size_t k = 0; k < n; ++k) out[k] += y[i] * basis[k] / denom;
    }
    return out;
}

mpq_class factorial(long n) {
    mpq_class f = 1;
    for (long k = 2; k <= n; ++k) f *= k;
    return f;
}

}  // namespace

TEST_CASE("eta expansion") {
    QSeries eta = eta_expansion(Q(8));
    CHECK(eta.coeff(Q(1, 24)) == 1);
    CHECK(eta.coeff(Q(25, 24)) == -1);
    CHECK(eta.coeff(Q(49, 24)) == -1);
    CHECK(eta.coeff(Q(121, 24)) == 1);
    CHECK(eta.coeff(Q(169, 24)) == 1);
    CHECK(eta.size() == 5);
    CHECK(eta_expansion(Q(1, 24)).empty());

    // q^{1/24} prod_{n < 48} (1 - q^n), truncated at q^{48}.
    const mpq_class order(48);
    QSeries prod = QSeries::one(order);
    for (long n = 1; n < 48; ++n) prod = (prod * one_minus(n, order)).truncated(order);
    CHECK(eta_expansion(order + Q(1, 24)) == prod.shifted(Q(1, 24)));

    CHECK(chi12(1) == 1);
    CHECK(chi12(11) == 1);
    CHECK(chi12(5) == -1);
    CHECK(chi12(7) == -1);
    CHECK(chi12(6) == 0);
    CHECK(chi12(-1) == 1);
}

TEST_CASE("series arithmetic tracks truncation") {
    QSeries a({{Q(1), Q(1)}, {Q(2), Q(3)}}, Q(5));
    QSeries b({{Q(1, 2), Q(2)}}, Q(3));
    QSeries p = a * b;
    CHECK(p.order() == Q(4));
    CHECK(p.coeff(Q(3, 2)) == 2);
    CHECK(p.coeff(Q(5, 2)) == 6);
    CHECK((a + b).order() == 3);
    CHECK((a - a).empty());
    CHECK(a.scaled(Q(1, 2)).coeff(Q(1)) == 3);
    CHECK(a.exponent_denominator() == 1);
    CHECK(b.exponent_denominator() == 2);
    CHECK_THROWS_AS(a.coeff(Q(5)), InvalidArgument);
    CHECK_THROWS_AS(QSeries(Q(2)).leading(), InvalidArgument);
}

TEST_CASE("rational powers") {
    const mpq_class order(30);
    QSeries u = one_minus(1, order);
    QSeries s = qpow(u, Q(1, 2));
    // Binomial series: c_k = c_{k-1} (1/2 - k + 1) / k * (-1).
    mpq_class c = 1;
    for (long k = 0; k < 30; ++k) {
        if (k > 0) c *= -(Q(1, 2) - (k - 1)) / k;
        CHECK(s.coeff(Q(k)) == c);
    }
    CHECK(s.coeff(Q(1)) == Q(-1, 2));
    CHECK(s.coeff(Q(2)) == Q(-1, 8));
    CHECK(s.coeff(Q(3)) == Q(-1, 16));

    QSeries eta = eta_expansion(Q(20));
    CHECK(qpow(eta, Q(0)) == QSeries::one(eta.order() - Q(1, 24)));
    CHECK(qpow(eta, Q(1)) == eta);
    CHECK(qpow(qpow(eta, Q(3, 7)), Q(7, 3)) == eta);
    CHECK(qpow(qpow(u, Q(-5, 2)), Q(-2, 5)) == u);
    CHECK(qpow(eta, Q(3)) == (eta * eta * eta));

    QSeries four({{Q(0), Q(4)}, {Q(1), Q(-1)}}, order);
    CHECK(qpow(four, Q(1, 2)).coeff(Q(0)) == 2);
    QSeries two({{Q(0), Q(2)}, {Q(1), Q(-1)}}, order);
    CHECK_THROWS_AS(qpow(two, Q(1, 2)), InvalidArgument);
}

TEST_CASE("eta-product admissibility") {
    EtaProductSpec g = guinand();
    CHECK(g.k() == 1);
    CHECK(g.b() == 9);
    EtaProductSpec p = poisson();
    CHECK(p.k() == 0);
    CHECK(p.b() == 1);
    CHECK_THROWS_AS(EtaProductSpec(4, {{1, Q(1)}, {2, Q(1)}, {4, Q(1)}}), RcondViolation);
    CHECK_THROWS_AS(EtaProductSpec(4, {{1, Q(1)}, {2, Q(-1)}, {4, Q(2)}}), RcondViolation);
    CHECK_THROWS_AS(EtaProductSpec(4, {{3, Q(1)}}), RcondViolation);
    CHECK_THROWS_AS(EtaProductSpec(1, {{1, Q(-1)}}), RcondViolation);
    CHECK(EtaProductSpec(1, {{1, Q(1)}}).b() == 24);
}

TEST_CASE("Guinand coefficients") {
    EtaProduct e = eta_product(guinand(), Q(7));
    const std::vector<mpq_class> want{Q(1), Q(-2, 3), Q(-4, 9), Q(-40, 81), Q(-160, 243), Q(268, 729), Q(1808, 6561)};
    REQUIRE(e.shifted_count() == 7);
    for (long m = 0; m < 7; ++m) CHECK(e.shifted_coeff(m) == want[static_cast<std::size_t>(m)]);
    for (const auto& [ex, c] : e.series.terms()) {
        mpq_class n = ex * 9;
        CHECK(n.get_den() == 1);
        CHECK(mpz_class(n.get_num() % 9) == 1);
    }
    CHECK(e.alpha(1) == 1);
    CHECK(e.alpha(10) == Q(-2, 3));
}

TEST_CASE("Poisson eta quotient is the theta series") {
    const mpq_class order(400);
    QSeries th = theta(Q(0), Q(200)).scaled(Q(2));
    CHECK(eta_product(poisson(), order).series == th);
    CHECK(th.coeff(Q(0)) == 1);
    CHECK(th.coeff(Q(361)) == 2);
}

TEST_CASE("eta product agrees with the power construction") {
    for (const EtaProductSpec& s : {guinand(), poisson(), EtaProductSpec(4, {{1, Q(5)}, {2, Q(-9)}, {4, Q(5)}}),
                                    EtaProductSpec(9, {{1, Q(1, 2)}, {3, Q(0)}, {9, Q(1, 2)}})}) {
        const mpq_class order(25);
        CHECK(eta_product(s, order).series == eta_product_by_powers(s, order));
    }
    CHECK(eta_product(EtaProductSpec(1, {{1, Q(1)}}), Q(30)).series == eta_expansion(Q(30)));
}

TEST_CASE("lambda invariant") {
    QSeries lam = lambda_invariant(Q(12));
    CHECK(lam.coeff(Q(1, 2)) == 16);
    CHECK(lam.coeff(Q(1)) == -128);
    CHECK(lam.coeff(Q(3, 2)) == 704);
    QSeries one_minus_2lam = QSeries::one(lam.order()) - Q(2) * lam;
    CHECK(one_minus_2lam.leading() == std::make_pair(Q(0), Q(1)));
    // lambda = theta_2^4 / theta_3^4.
    QSeries t2 = theta(Q(1, 2), Q(12));
    QSeries t3 = theta(Q(0), Q(12));
    QSeries t2_4 = t2 * t2 * t2 * t2;
    QSeries t3_4 = t3 * t3 * t3 * t3;
    CHECK((lam * t3_4).truncated(Q(12)) == t2_4.truncated(Q(12)));
    CHECK_THROWS_AS(lambda_invariant(Q(1, 2)), InvalidArgument);
}

TEST_CASE("l-family coefficient laws") {
    for (const mpq_class& l : {Q(-2), Q(2, 3), Q(1), Q(5)}) {
        FamilyMember f = family_l(l, Q(6));
        const mpq_class c = (l + 2) / 24;
        CHECK(f.spec.leading_exponent() == c);
        EtaProduct e = eta_product(f.spec, Q(6));
        CHECK(e.series.coeff(c) == 1);
        CHECK(e.series.coeff(c + 1) == -l);
        CHECK(e.series.coeff(c + 2) == (l - 1) * (l + 2) / 2);
        // beta sits at exponents n / (2b) of G.
        auto beta = [&f](const mpq_class& ex) {
            mpq_class n = ex * f.minus.den;
            for (const auto& [k, v] : f.minus.coeffs)
                if (k == n.get_num().get_si()) return v;
            return Q(0);
        };
        CHECK(beta(c) == 1);
        CHECK(beta(c + 1) == -(32 + l));
        CHECK(beta(c + 2) == (l * l + 65 * l + 510) / 2);
    }
    CHECK(family_l(Q(-2), Q(50)).plus.coeffs.size() == fplus(poisson(), Q(50)).coeffs.size());
    CHECK(eta_product(family_l(Q(-2), Q(400)).spec, Q(400)).series == eta_product(poisson(), Q(400)).series);
    CHECK(family_l(Q(-2), Q(4)).spec.leading_exponent() == 0);
    CHECK_THROWS_AS(family_l(Q(-3), Q(4)), InvalidArgument);
}

TEST_CASE("n! alpha_{n,l} and n! beta_{n,l} are integer polynomials in l") {
    const std::vector<mpq_class> ls{Q(-2), Q(-1), Q(0), Q(1), Q(2), Q(3), Q(4)};
    const mpq_class probe = Q(7, 2);
    std::vector<std::vector<mpq_class>> alpha(7), beta(7);
    auto coeffs_at = [](const mpq_class& l) {
        FamilyMember f = family_l(l, Q(8));
        const mpq_class c = (l + 2) / 24;
        EtaProduct e = eta_product(f.spec, Q(8));
        QSeries lam = lambda_invariant(Q(8)).scaled(Q(2));
        QSeries G = ((QSeries::one(lam.order()) - Q(2) * lam) * e.series).truncated(Q(8));
        std::vector<mpq_class> a, b;
        for (long n = 0; n <= 6; ++n) {
            a.push_back(e.series.coeff(c + n));
            b.push_back(G.coeff(c + n));
        }
        return std::make_pair(a, b);
    };
    for (const mpq_class& l : ls) {
        auto [a, b] = coeffs_at(l);
        for (std::size_t n = 0; n < 7; ++n) {
            alpha[n].push_back(a[n] * factorial(long(n)));
            beta[n].push_back(b[n] * factorial(long(n)));
        }
    }
    auto [pa, pb] = coeffs_at(probe);
    for (std::size_t n = 0; n < 7; ++n) {
        for (auto* table : {&alpha, &beta}) {
            std::vector<mpq_class> poly = interpolate(ls, (*table)[n]);
            for (std::size_t k = 0; k < poly.size(); ++k) {
                CHECK(poly[k].get_den() == 1);
                if (k > n) CHECK(poly[k] == 0);
            }
            mpq_class v = 0, pw = 1;
            for (const mpq_class& ck : poly) {
                v += ck * pw;
                pw *= probe;
            }
            const mpq_class& got = table == &alpha ? pa[n] : pb[n];
            CHECK(v == got * factorial(long(n)));
        }
    }
}

TEST_CASE("self-dual series indexing") {
    SelfDualSeries g = fplus(guinand(), Q(30));
    CHECK(g.den == 9);
    CHECK(g.N == 4);
    CHECK(g.sign == 1);
    CHECK(g.n_limit == 270);
    for (const auto& [n, c] : g.coeffs) CHECK(n % 9 == 1);
    CHECK(g.gamma(1) == doctest::Approx(1.0 / 18.0));
    CHECK(g.hecke_ok);

    SelfDualSeries p = fplus(poisson(), Q(30));
    CHECK(p.gamma(4) == doctest::Approx(2.0));
    for (const auto& [n, c] : p.coeffs) {
        long r = std::lround(std::sqrt(double(n)));
        CHECK(r * r == n);
        CHECK(c == (n == 0 ? 1 : 2));
    }

    SelfDualSeries m = fminus(family_l(Q(1), Q(10)).spec, Q(10));
    CHECK(m.sign == -1);
    CHECK(m.den == 16);
    CHECK_THROWS_AS(fminus(EtaProductSpec(2, {{1, Q(1, 2)}, {2, Q(1, 2)}}), Q(5)), InvalidArgument);
    CHECK(fplus(guinand(), Q(1, 9)).coeffs.empty());
}

TEST_CASE("arithmetic progressions through sqrt(c + n)") {
    CHECK(progression_hits(0.0, 0.0, 1.0, 100) == 11);
    CHECK(progression_hits(1.0 / 9.0, 1.0 / 3.0, 3.0, 10000) == 34);

    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> pick(0, 10000);
    std::uniform_int_distribution<int> div(1, 6);
    const double c = std::sqrt(2.0);
    for (int trial = 0; trial < 200; ++trial) {
        int n1 = pick(rng), n2 = pick(rng);
        if (n1 == n2) continue;
        double x1 = std::sqrt(c + n1), x2 = std::sqrt(c + n2);
        double step = std::abs(x2 - x1) / div(rng);
        CHECK(progression_hits(c, x1, step, 10000) == 2);
    }
    CHECK_THROWS_AS(progression_hits(c, 0.0, 0.0, 10), InvalidArgument);
}

TEST_CASE("long Guinand expansion stays fast") {
    auto t0 = std::chrono::steady_clock::now();
    SelfDualSeries g = fplus(guinand(), Q(1000));
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    MESSAGE("order 1000 Guinand expansion: " << secs << " s, Hecke constant " << g.hecke_constant);
    CHECK(g.coeffs.size() >= 990);
    CHECK(g.hecke_ok);
}
