#include <doctest.h>

#include "fsumm/error.hpp"
#include "fsumm/selfdual.hpp"
#include "support.hpp"

using namespace fsumm;
using namespace fsumm::testing;

namespace {

mpq_class Q(long p, long q = 1) { return mpq_class(p, q); }

EtaProductSpec guinand() { return EtaProductSpec(4, {{1, Q(2, 3)}, {2, Q(-1, 3)}, {4, Q(2, 3)}}); }
EtaProductSpec poisson() { return EtaProductSpec(4, {{1, Q(-2)}, {2, Q(5)}, {4, Q(-2)}}); }

// sum w (g^(x)) and sum w g(x) for g(t) = exp(-pi y t^2), g^(t) = exp(-pi t^2 / y) / sqrt(y).
std::pair<double, double> gaussian_sides(const DiscreteMeasure& m, double y) {
    double lhs = 0.0, rhs = 0.0;
    for (const Atom& a : m.atoms()) {
        lhs += a.w.real() * std::exp(-M_PI * a.x * a.x / y) / std::sqrt(y);
        rhs += a.w.real() * std::exp(-M_PI * y * a.x * a.x);
    }
    return {lhs, rhs};
}

}  // namespace

TEST_CASE("Poisson series gives the doubled integer comb") {
    SelfDualSeries s = fplus(poisson(), Q(200));
    DiscreteMeasure m = selfdual_measure(s, -10.5, 10.5);
    REQUIRE(m.size() == 21);
    for (int i = 0; i < 21; ++i) {
        CHECK(m.atoms()[static_cast<std::size_t>(i)].x == doctest::Approx(i - 10).epsilon(1e-14));
        CHECK(m.atoms()[static_cast<std::size_t>(i)].w.real() == 2.0);
        CHECK(m.atoms()[static_cast<std::size_t>(i)].prov.has_value());
    }
    CHECK(m.sign() == 1);
    auto [lhs, rhs] = gaussian_sides(m, 0.7);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
}

TEST_CASE("Guinand series gives atoms at +-sqrt(m + 1/9)") {
    EtaProduct e = eta_product(guinand(), Q(40));
    SelfDualSeries s = fplus(guinand(), Q(40));
    DiscreteMeasure m = selfdual_measure(s, -100.0, 100.0);
    CHECK(m.window().second == doctest::Approx(std::sqrt(40.0)));
    std::size_t matched = 0;
    for (const Atom& a : m.atoms()) {
        double m2 = a.x * a.x - 1.0 / 9.0;
        long k = std::lround(m2);
        CHECK(std::abs(m2 - k) < 1e-10);
        CHECK(a.w.real() == doctest::Approx(e.shifted_coeff(k).get_d()).epsilon(1e-15));
        ++matched;
    }
    CHECK(matched == 2 * static_cast<std::size_t>(e.shifted_count()));

    SelfDualSeries empty = fplus(guinand(), Q(1, 9));
    CHECK(selfdual_measure(empty, -5.0, 5.0).empty());
}

TEST_CASE("Guinand support contains the progression 3m + 1/3") {
    SelfDualSeries s = fplus(guinand(), Q(2000));
    DiscreteMeasure m = selfdual_measure(s, 0.0, 100.0);
    std::int64_t on_progression = 0;
    for (const Atom& a : m.atoms()) {
        double t = (a.x - 1.0 / 3.0) / 3.0;
        if (std::abs(t - std::round(t)) * 3.0 < 1e-9) ++on_progression;
    }
    // n + 1/9 <= 2000 - 1 + 1/9 covers n = 9m^2 + 2m up to n < 2000.
    CHECK(on_progression == progression_hits(1.0 / 9.0, 1.0 / 3.0, 3.0, 1999));
    CHECK(on_progression == 15);
}

TEST_CASE("functional equation residuals") {
    CHECK(functional_equation_residual(fplus(poisson(), Q(300)), I, 1e-10) <= 1e-10);
    CHECK(functional_equation_residual(fplus(guinand(), Q(300)), cplx(0.0, 0.8)) <= 1e-8);
    for (double y : {1.0, 1.5, 3.0})
        CHECK(functional_equation_residual(fplus(guinand(), Q(300)), cplx(0.0, y)) <= 1e-8);
    SelfDualSeries minus = family_l(Q(1), Q(300)).minus;
    CHECK(minus.sign == -1);
    CHECK(functional_equation_residual(minus, cplx(0.0, std::sqrt(2.0))) <= 1e-8);
    CHECK(functional_equation_residual(minus, cplx(0.3, 1.2)) <= 1e-8);

    SelfDualSeries wrong = minus;
    wrong.sign = 1;
    CHECK(functional_equation_residual(wrong, cplx(0.0, std::sqrt(2.0))) > 1e-2);

    CHECK_THROWS_AS(functional_equation_residual(fplus(poisson(), Q(5)), cplx(0.0, 0.1)), InvalidArgument);
    CHECK_THROWS_AS(functional_equation_residual(fplus(poisson(), Q(5)), cplx(1.0, 0.0)), InvalidArgument);
}

TEST_CASE("residuals shrink as the order grows") {
    const cplx z(0.0, 0.02);
    double prev = std::numeric_limits<double>::infinity();
    for (long order : {100, 200, 400}) {
        SelfDualSeries s = fplus(poisson(), Q(order));
        double r = std::abs(selfdual_eval(s, z) - std::sqrt(I / z) * selfdual_eval(s, -1.0 / z));
        MESSAGE("order " << order << ": residual " << r << ", tail bound " << selfdual_tail(s, z));
        CHECK(r <= 1.1 * prev);
        CHECK(r <= selfdual_tail(s, z) + 1e-12);
        prev = r;
    }
}

TEST_CASE("Gaussian pairing identity on the sign -1 family") {
    SelfDualSeries s = family_l(Q(1), Q(300)).minus;
    DiscreteMeasure m = selfdual_measure(s, -1e3, 1e3);
    CHECK(m.sign() == -1);
    for (double y : {0.5, 1.0, 2.0}) {
        auto [lhs, rhs] = gaussian_sides(m, y);
        CHECK(std::abs(lhs + rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
    }
    FSPair p = selfdual_pair(s, -1e3, 1e3);
    CHECK(p.a.atoms()[0].w == -p.mu.atoms()[0].w);
    CHECK(p.meta["sign"] == -1);
}
