#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fsumm/dbspace.hpp"
#include "fsumm/error.hpp"
#include "fsumm/hermite.hpp"
#include "fsumm/io.hpp"
#include "fsumm/measures.hpp"
#include "fsumm/qmodular.hpp"
#include "fsumm/selfdual.hpp"
#include "fsumm/spectra.hpp"
#include "fsumm/verifier.hpp"
#include "fsumm/version.hpp"

namespace py = pybind11;
using namespace fsumm;

namespace {

// Rationals cross the boundary as fractions.Fraction; anything whose str()
// parses as p/q is accepted on the way in.
py::object to_fraction(const mpq_class& q) {
    static py::object Fraction = py::module_::import("fractions").attr("Fraction");
    return Fraction(py::str(q.get_str()));
}

mpq_class to_mpq(const py::handle& h) { return parse_rational(py::str(h).cast<std::string>()); }

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_py(const py::handle& obj) {
    return json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

EtaProductSpec make_spec(std::int64_t N, const py::dict& r) {
    std::map<std::int64_t, mpq_class> rd;
    for (auto [d, v] : r) rd[d.cast<std::int64_t>()] = to_mpq(v);
    return EtaProductSpec(N, rd);
}

py::list series_terms(const QSeries& s) {
    py::list out;
    for (const auto& [e, c] : s.terms()) out.append(py::make_tuple(to_fraction(e), to_fraction(c)));
    return out;
}

py::list atom_list(const DiscreteMeasure& m) {
    py::list out;
    for (const Atom& a : m.atoms()) out.append(py::make_tuple(a.x, a.w));
    return out;
}

}  // namespace

PYBIND11_MODULE(_fsumm, m) {
    m.doc() = "Fourier summation pairs from Hermite-Biehler functions and eta products";
    m.attr("__version__") = kVersion;

    auto base = py::register_exception<Error>(m, "FsummError", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<NotHermiteBiehler>(m, "NotHermiteBiehler", base.ptr());
    py::register_exception<DegenerateError>(m, "DegenerateError", base.ptr());

    py::class_<ExpSum>(m, "ExpSum")
        .def_static("from_json", [](const py::object& j) { return expsum_from_json(from_py(j)); }, py::arg("spec"))
        .def("to_json", [](const ExpSum& f) { return to_py(to_json(f)); })
        .def("__call__", [](const ExpSum& f, cplx z) { return f(z); }, py::arg("z"));

    py::class_<HermiteBiehler>(m, "HermiteBiehler")
        .def_readonly("E", &HermiteBiehler::E)
        .def_readonly("A", &HermiteBiehler::A)
        .def_readonly("B", &HermiteBiehler::B)
        .def("to_json", [](const HermiteBiehler& H) { return to_py(to_json(H)); })
        .def("phase_derivative", [](const HermiteBiehler& H, double x) { return phase_derivative(H, x); }, py::arg("x"));

    m.def("make_hermite_biehler", [](const ExpSum& E) { return make_hermite_biehler(E); }, py::arg("E"));
    m.def("ks_from_q", [](const ExpSum& Q) { return ks_from_q(Q); }, py::arg("Q"),
          "E = Q' - iQ for a real-rooted trigonometric polynomial Q.");

    py::class_<DiscreteMeasure>(m, "DiscreteMeasure")
        .def_property_readonly("atoms", &atom_list)
        .def_property_readonly("window", &DiscreteMeasure::window)
        .def_property_readonly("sign", &DiscreteMeasure::sign)
        .def("__len__", &DiscreteMeasure::size)
        .def("to_json", [](const DiscreteMeasure& d) { return to_py(to_json(d)); });

    py::class_<FSPair>(m, "FSPair")
        .def_readonly("mu", &FSPair::mu)
        .def_readonly("a", &FSPair::a)
        .def_property_readonly("meta", [](const FSPair& p) { return to_py(p.meta); })
        .def("to_json", [](const FSPair& p) { return to_py(to_json(p)); });

    m.def("measure_from_phase", &measure_from_phase, py::arg("H"), py::arg("alpha"), py::arg("x0"), py::arg("x1"));
    m.def("pair_from_hb", &pair_from_hb, py::arg("H"), py::arg("cutoff"), py::arg("x0"), py::arg("x1"));
    m.def("exact_spectrum", [](const HermiteBiehler& H, double cutoff) { return exact_spectrum(H, cutoff).sorted(); },
          py::arg("H"), py::arg("cutoff"), "Bohr coefficients of iA/B as (frequency, value) pairs.");
    m.def("mean_value",
          [](const HermiteBiehler& H, double lambda, double y, double T) {
              return mean_value(ratio_evaluator(H), lambda, y, T);
          },
          py::arg("H"), py::arg("lam"), py::arg("y"), py::arg("T"));

    py::class_<KernelContext>(m, "KernelContext")
        .def(py::init<HermiteBiehler, double>(), py::arg("H"), py::arg("R"))
        .def_property_readonly("roots", [](const KernelContext& c) {
            py::list out;
            for (const PhasePoint& p : c.roots()) out.append(p.gamma);
            return out;
        });
    m.def("kernel_closed", &kernel_closed, py::arg("ctx"), py::arg("w"), py::arg("z"));
    m.def("kernel_series",
          [](const KernelContext& c, cplx w, cplx z) {
              SeriesValue s = kernel_series(c, w, z);
              return py::make_tuple(s.value, s.tail);
          },
          py::arg("ctx"), py::arg("w"), py::arg("z"), "(value, tail bound) of the atom expansion.");

    m.def("eta_product",
          [](std::int64_t N, const py::dict& r, const py::handle& order) {
              return series_terms(eta_product(make_spec(N, r), to_mpq(order)).series);
          },
          py::arg("N"), py::arg("r"), py::arg("order"), "Exact (exponent, coefficient) terms as Fractions.");
    m.def("lambda_invariant", [](const py::handle& order) { return series_terms(lambda_invariant(to_mpq(order))); },
          py::arg("order"));
    m.def("progression_hits", &progression_hits, py::arg("c"), py::arg("start"), py::arg("step"), py::arg("nmax"));

    py::class_<SelfDualSeries>(m, "SelfDualSeries")
        .def_readonly("sign", &SelfDualSeries::sign)
        .def_readonly("n_limit", &SelfDualSeries::n_limit)
        .def_property_readonly("coeffs", [](const SelfDualSeries& s) {
            py::list out;
            for (const auto& [n, c] : s.coeffs) out.append(py::make_tuple(n, to_fraction(c)));
            return out;
        })
        .def("gamma", &SelfDualSeries::gamma, py::arg("n"))
        .def("__call__", [](const SelfDualSeries& s, cplx z) { return selfdual_eval(s, z); }, py::arg("z"));

    m.def("fplus", [](std::int64_t N, const py::dict& r, const py::handle& order) {
        return fplus(make_spec(N, r), to_mpq(order));
    }, py::arg("N"), py::arg("r"), py::arg("order"));
    m.def("family_l", [](const py::handle& l, const py::handle& order) {
        FamilyMember f = family_l(to_mpq(l), to_mpq(order));
        return py::make_tuple(f.plus, f.minus);
    }, py::arg("l"), py::arg("order"), "(F+, F-) for N = 4, r = (l, 1 - 2l, l).");
    m.def("selfdual_measure", &selfdual_measure, py::arg("series"), py::arg("x0"), py::arg("x1"));
    m.def("functional_equation_residual", &functional_equation_residual, py::arg("series"), py::arg("z"),
          py::arg("target") = 1e-8);

    py::class_<TestFunction>(m, "TestFunction")
        .def_static("gaussian", &TestFunction::gaussian, py::arg("z"), py::arg("x0") = 0.0, py::arg("xi") = 0.0,
                    py::arg("amp") = cplx(1.0, 0.0))
        .def_static("bump", &TestFunction::bump, py::arg("center"), py::arg("halfwidth"), py::arg("sharpness") = 1.0,
                    py::arg("tol") = 1e-12)
        .def("__call__", &TestFunction::operator(), py::arg("x"))
        .def("ft", &TestFunction::ft, py::arg("xi"))
        .def("describe", [](const TestFunction& t) { return to_py(t.describe()); });

    m.def("gaussian_suite", &gaussian_suite, py::arg("n"), py::arg("seed"), py::arg("ymin") = 0.5,
          py::arg("ymax") = 3.0, py::arg("shift") = 2.0);
    m.def("check_pair", [](const FSPair& p, const TestFunction& tf, double tol) {
        return to_py(to_json(check_pair(p, tf, tol)));
    }, py::arg("pair"), py::arg("tf"), py::arg("tol"));
    m.def("check_pair_suite", [](const FSPair& p, const std::vector<TestFunction>& suite, double tol) {
        return to_py(suite_json(check_pair_suite(p, suite, tol)));
    }, py::arg("pair"), py::arg("suite"), py::arg("tol"));
    m.def("check_selfdual", [](const DiscreteMeasure& mu, const std::vector<TestFunction>& suite, double tol) {
        return to_py(suite_json(check_selfdual(mu, suite, tol)));
    }, py::arg("measure"), py::arg("suite"), py::arg("tol"));
    m.def("fejer_identity_check", [](const FSPair& p, cplx w, cplx z, double T, double tol) {
        return to_py(to_json(fejer_identity_check(p, w, z, T, tol)));
    }, py::arg("pair"), py::arg("w"), py::arg("z"), py::arg("T"), py::arg("tol"));
}
