#include "fsumm/io.hpp"

#include <string>
#include <vector>

#include "fsumm/error.hpp"

namespace fsumm {

namespace {

json cplx_json(cplx c) { return json::array({c.real(), c.imag()}); }

cplx cplx_from(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InvalidArgument("complex number must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace

json to_json(const Freq& f) { return json(f.k); }

json to_json(const FreqBasis& b) { return {{"basis", b.base()}, {"denominator", b.denominator()}}; }

json to_json(const ExpSum& f) {
    json terms = json::array();
    for (const auto& [k, c] : f.terms()) terms.push_back({{"k", k.k}, {"c", cplx_json(c)}});
    return {{"basis", f.basis().base()}, {"denominator", f.basis().denominator()}, {"terms", terms}};
}

json to_json(const GridSpec& g) {
    return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"y_min", g.y_min},
            {"y_max", g.y_max}, {"nx", g.nx},       {"ny", g.ny}};
}

json to_json(const HbCertificate& c) {
    return {{"grid", to_json(c.grid)}, {"margin", c.margin}, {"real_axis_floor", c.real_axis_floor}};
}

json to_json(const HermiteBiehler& H) {
    return {{"E", to_json(H.E)}, {"A", to_json(H.A)}, {"B", to_json(H.B)}, {"certificate", to_json(H.certificate)}};
}

json to_json(const SpectrumAtoms& s) {
    json terms = json::array();
    for (const auto& [k, c] : s.atoms) terms.push_back({{"k", k.k}, {"c", cplx_json(c)}});
    return {{"basis", s.basis.base()}, {"denominator", s.basis.denominator()}, {"terms", terms},
            {"cutoff", s.cutoff},      {"yValid", s.y_valid}};
}

json to_json(const DiscreteMeasure& m) {
    json atoms = json::array();
    for (const Atom& a : m.atoms()) {
        json e = {{"x", a.x}, {"w", cplx_json(a.w)}};
        if (a.prov) {
            e["prov"] = {{"form", "sqrt"}, {"n", a.prov->n}, {"b", a.prov->b}, {"N", a.prov->N}};
            if (a.prov->negative) e["prov"]["sign"] = -1;
        }
        atoms.push_back(e);
    }
    auto [x0, x1] = m.window();
    json j = {{"atoms", atoms}, {"window", {x0, x1}}, {"nonneg", m.nonneg()}};
    if (m.sign()) j["sign"] = *m.sign();
    const TailModel& t = m.tail_model();
    j["tail"] = {{"C", t.C}, {"p", t.p}, {"K", t.K}, {"q", t.q}};
    return j;
}

json to_json(const QSeries& s) {
    json terms = json::array();
    for (const auto& [e, c] : s.terms()) terms.push_back({{"e", e.get_str()}, {"c", c.get_str()}});
    return {{"order", s.order().get_str()}, {"terms", terms}};
}

json to_json(const EtaProductSpec& s) {
    json r = json::object();
    for (const auto& [d, rd] : s.r()) r[std::to_string(d)] = rd.get_str();
    return {{"N", s.N()}, {"r", r}, {"k", s.k()}, {"b", s.b()}};
}

json to_json(const SelfDualSeries& s) {
    json coeffs = json::array();
    for (const auto& [n, c] : s.coeffs) coeffs.push_back({{"n", n}, {"c", c.get_str()}});
    return {{"coeffs", coeffs}, {"den", s.den},   {"N", s.N}, {"sign", s.sign}, {"nLimit", s.n_limit},
            {"hecke", {{"constant", s.hecke_constant}, {"ok", s.hecke_ok}}}};
}

json to_json(const FSPair& p) {
    return {{"mu", to_json(p.mu)}, {"a", to_json(p.a)}, {"real_antipodal", p.real_antipodal}, {"meta", p.meta}};
}

ExpSum expsum_from_json(const json& j) {
    try {
        std::vector<double> base = field(j, "basis").get<std::vector<double>>();
        std::int64_t den = j.contains("denominator") ? j.at("denominator").get<std::int64_t>() : 1;
        FreqBasis b(base, den);
        std::vector<std::pair<Freq, cplx>> terms;
        for (const json& t : field(j, "terms")) {
            Freq k(field(t, "k").get<std::vector<std::int64_t>>());
            if (k.rank() != b.rank()) throw InvalidArgument("term frequency rank does not match basis");
            terms.emplace_back(std::move(k), cplx_from(field(t, "c")));
        }
        return ExpSum(b, terms);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed exponential sum: ") + e.what());
    }
}

GridSpec grid_from_json(const json& j) {
    GridSpec g;
    try {
        g.x_min = j.value("x_min", g.x_min);
        g.x_max = j.value("x_max", g.x_max);
        g.y_min = j.value("y_min", g.y_min);
        g.y_max = j.value("y_max", g.y_max);
        g.nx = j.value("nx", g.nx);
        g.ny = j.value("ny", g.ny);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed grid: ") + e.what());
    }
    return g;
}

HermiteBiehler hb_from_json(const json& j) {
    if (j.is_object() && j.contains("E")) {
        ExpSum E = expsum_from_json(j.at("E"));
        std::optional<GridSpec> g;
        if (j.contains("certificate") && j.at("certificate").contains("grid"))
            g = grid_from_json(j.at("certificate").at("grid"));
        return make_hermite_biehler(E, g);
    }
    return make_hermite_biehler(expsum_from_json(j));
}

DiscreteMeasure measure_from_json(const json& j) {
    try {
        std::vector<Atom> atoms;
        for (const json& a : field(j, "atoms")) {
            Atom at;
            at.x = field(a, "x").get<double>();
            at.w = cplx_from(field(a, "w"));
            if (a.contains("prov") && !a.at("prov").is_null()) {
                const json& p = a.at("prov");
                if (p.value("form", std::string("sqrt")) != "sqrt") throw InvalidArgument("unknown provenance form");
                at.prov = SqrtProvenance{field(p, "n").get<std::int64_t>(), field(p, "b").get<std::int64_t>(),
                                         field(p, "N").get<std::int64_t>(), p.value("sign", 1) < 0};
            }
            atoms.push_back(std::move(at));
        }
        const json& w = field(j, "window");
        if (!w.is_array() || w.size() != 2) throw InvalidArgument("window must be [x0, x1]");
        DiscreteMeasure m(std::move(atoms), w[0].get<double>(), w[1].get<double>(), j.value("nonneg", false));
        if (j.contains("sign")) m.set_sign(j.at("sign").get<int>());
        return m;
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed measure: ") + e.what());
    }
}

FSPair pair_from_json(const json& j) {
    FSPair p;
    p.mu = measure_from_json(field(j, "mu"));
    p.a = measure_from_json(field(j, "a"));
    p.real_antipodal = j.value("real_antipodal", false);
    if (j.contains("meta")) p.meta = j.at("meta");
    return p;
}

mpq_class parse_rational(const std::string& text) {
    if (text.empty() || text.find_first_of(".eE ") != std::string::npos)
        throw InvalidArgument("rational must be written as p/q, got '" + text + "'");
    mpq_class q;
    if (q.set_str(text, 10) != 0 || q.get_den() == 0) throw InvalidArgument("cannot parse rational '" + text + "'");
    q.canonicalize();
    return q;
}

mpq_class rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return mpq_class(mpz_class(std::to_string(j.get<long long>())));
    throw InvalidArgument("rational must be a string p/q or an integer");
}

QSeries qseries_from_json(const json& j) {
    const json& terms = field(j, "terms");
    if (!terms.is_array()) throw InvalidArgument("'terms' must be an array");
    QSeries::Terms t;
    for (const json& e : terms) {
        auto [it, fresh] = t.emplace(rational_from_json(field(e, "e")), rational_from_json(field(e, "c")));
        if (!fresh) throw InvalidArgument("repeated exponent " + it->first.get_str());
    }
    return QSeries(std::move(t), rational_from_json(field(j, "order")));
}

EtaProductSpec eta_spec_from_json(const json& j) {
    const json& Nj = field(j, "N");
    if (!Nj.is_number_integer()) throw InvalidArgument("'N' must be an integer");
    const auto N = Nj.get<std::int64_t>();
    if (N < 1) throw RcondViolation("N must be a positive integer");
    const json& rj = field(j, "r");
    std::map<std::int64_t, mpq_class> r;
    if (rj.is_object()) {
        for (const auto& [key, value] : rj.items()) {
            std::size_t used = 0;
            std::int64_t d = 0;
            try {
                d = std::stoll(key, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != key.size()) throw InvalidArgument("divisor key '" + key + "' is not an integer");
            r[d] = rational_from_json(value);
        }
    } else if (rj.is_array()) {
        std::vector<std::int64_t> divs;
        for (std::int64_t d = 1; d <= N; ++d)
            if (N % d == 0) divs.push_back(d);
        if (rj.size() != divs.size())
            throw RcondViolation("r lists " + std::to_string(rj.size()) + " exponents but N has " +
                                 std::to_string(divs.size()) + " divisors");
        for (std::size_t i = 0; i < divs.size(); ++i) r[divs[i]] = rational_from_json(rj[i]);
    } else {
        throw InvalidArgument("'r' must be an object or an array");
    }
    return EtaProductSpec(N, std::move(r));
}

void write_coefficient_csv(std::ostream& os, const EtaProduct& e) {
    os << "m,numerator,denominator\n";
    for (std::int64_t m = 0; m < e.shifted_count(); ++m) {
        mpq_class c = e.shifted_coeff(m);
        os << m << ',' << c.get_num().get_str() << ',' << c.get_den().get_str() << '\n';
    }
}

void write_series_csv(std::ostream& os, const SelfDualSeries& s) {
    os << "n,numerator,denominator\n";
    for (const auto& [n, c] : s.coeffs) {
        if (n >= s.n_limit) continue;
        os << n << ',' << c.get_num().get_str() << ',' << c.get_den().get_str() << '\n';
    }
}

}  // namespace fsumm
