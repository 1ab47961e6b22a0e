#include <doctest.h>

#include <sstream>

#include "fsumm/error.hpp"
#include "fsumm/io.hpp"
#include "fsumm/selfdual.hpp"
#include "support.hpp"

using namespace fsumm;
using namespace fsumm::testing;

namespace {

mpq_class Q(long p, long q = 1) { return mpq_class(p, q); }

}  // namespace

TEST_CASE("exponential sums and Hermite-Biehler records round trip") {
    ExpSum q = rr_irrational_q();
    ExpSum back = expsum_from_json(to_json(q));
    CHECK(to_json(back).dump() == to_json(q).dump());
    for (cplx z : {cplx(0.3, 0.2), cplx(-4.0, 1.0)}) CHECK(std::abs(back(z) - q(z)) == 0.0);

    HermiteBiehler H = ks_from_q(sin_half(1));
    HermiteBiehler H2 = hb_from_json(to_json(H));
    CHECK(to_json(H2).dump() == to_json(H).dump());
    CHECK(to_json(hb_from_json(to_json(H.E))).dump() == to_json(H).dump());

    CHECK_THROWS_AS(expsum_from_json(json{{"basis", {1.0}}}), InvalidArgument);
    CHECK_THROWS_AS(expsum_from_json(json::parse(R"({"basis":[1.0],"terms":[{"k":[1,2],"c":[1,0]}]})")),
                    InvalidArgument);
}

TEST_CASE("measures and pairs round trip") {
    FSPair p = pair_from_hb(ks_from_q(sin_half(1)), 5.0, -5.5, 5.5);
    FSPair back = pair_from_json(to_json(p));
    CHECK(to_json(back).dump() == to_json(p).dump());
    REQUIRE(back.mu.size() == p.mu.size());
    for (std::size_t i = 0; i < p.mu.size(); ++i) {
        CHECK(back.mu.atoms()[i].x == p.mu.atoms()[i].x);
        CHECK(back.mu.atoms()[i].w == p.mu.atoms()[i].w);
    }

    EtaProductSpec poisson(4, {{1, Q(-2)}, {2, Q(5)}, {4, Q(-2)}});
    DiscreteMeasure m = selfdual_measure(fplus(poisson, Q(50)), -3.5, 3.5);
    DiscreteMeasure m2 = measure_from_json(to_json(m));
    CHECK(to_json(m2).dump() == to_json(m).dump());
    for (std::size_t i = 0; i < m.size(); ++i) CHECK(m2.atoms()[i].prov.has_value());
}

TEST_CASE("rationals and q-series") {
    CHECK(parse_rational("-4/6") == Q(-2, 3));
    CHECK(rational_from_json(json(7)) == Q(7));
    CHECK_THROWS_AS(parse_rational("0.5"), InvalidArgument);
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);

    EtaProduct e = eta_product(EtaProductSpec(4, {{1, Q(2, 3)}, {2, Q(-1, 3)}, {4, Q(2, 3)}}), Q(5));
    json j = to_json(e.series);
    CHECK(j.at("order") == "5");
    CHECK(j.at("terms")[1].at("c") == "-2/3");
    CHECK(qseries_from_json(j) == e.series);

    EtaProductSpec s = eta_spec_from_json(json::parse(R"({"N": 4, "r": ["2/3", "-1/3", "2/3"]})"));
    CHECK(to_json(s).dump() == to_json(eta_spec_from_json(to_json(s))).dump());
    CHECK_THROWS_AS(eta_spec_from_json(json::parse(R"({"N": 4, "r": [1, 1, 1]})")), RcondViolation);
}

TEST_CASE("coefficient CSV") {
    EtaProduct e = eta_product(EtaProductSpec(4, {{1, Q(2, 3)}, {2, Q(-1, 3)}, {4, Q(2, 3)}}), Q(3));
    std::ostringstream os;
    write_coefficient_csv(os, e);
    CHECK(os.str() == "m,numerator,denominator\n0,1,1\n1,-2,3\n2,-4,9\n");

    SelfDualSeries s = fplus(EtaProductSpec(4, {{1, Q(-2)}, {2, Q(5)}, {4, Q(-2)}}), Q(5));
    std::ostringstream ss;
    write_series_csv(ss, s);
    CHECK(ss.str().rfind("n,numerator,denominator\n0,1,1\n", 0) == 0);
}
