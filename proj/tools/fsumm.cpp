#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

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

namespace fs = std::filesystem;
using fsumm::cplx;
using fsumm::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInvalid = 2;

struct Globals {
    std::string out = ".";
    std::uint64_t seed = 1;
    std::optional<double> tol;
    std::optional<double> cutoff;
    std::vector<double> window;
    std::optional<std::string> order;
};

struct Artifact {
    std::string name;
    std::string body;
};

struct RunResult {
    std::vector<Artifact> files;
    bool passed = true;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw fsumm::InvalidArgument("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw fsumm::InvalidArgument("malformed JSON in " + path + ": " + e.what());
    }
}

std::pair<double, double> window_or(const Globals& g, double lo, double hi) {
    if (g.window.empty()) return {lo, hi};
    if (g.window.size() != 2 || !(g.window[0] < g.window[1])) throw fsumm::InvalidArgument("--window needs A < B");
    return {g.window[0], g.window[1]};
}

json provenance(const std::string& command, const Globals& g, json config) {
    if (g.tol) config["tol"] = *g.tol;
    if (g.cutoff) config["cutoff"] = *g.cutoff;
    if (!g.window.empty()) config["window"] = g.window;
    if (g.order) config["order"] = *g.order;
    return {{"tool", "fsumm"}, {"version", fsumm::kVersion}, {"command", command}, {"seed", g.seed}, {"config", config}};
}

std::string csv_with_provenance(const json& prov, const std::string& rows) {
    return "# provenance " + prov.dump() + "\n" + rows;
}

std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

cplx parse_point(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw fsumm::InvalidArgument("point '" + text + "' must be written re,im");
    try {
        std::size_t used_re = 0, used_im = 0;
        const std::string re = text.substr(0, comma), im = text.substr(comma + 1);
        cplx z(std::stod(re, &used_re), std::stod(im, &used_im));
        if (used_re != re.size() || used_im != im.size()) throw std::invalid_argument(text);
        return z;
    } catch (const std::logic_error&) {
        throw fsumm::InvalidArgument("point '" + text + "' must be written re,im");
    }
}

struct HbInput {
    std::string h, q, pair;
};

fsumm::HermiteBiehler load_hb(const HbInput& in) {
    const int given = !in.h.empty() + !in.q.empty() + !in.pair.empty();
    if (given != 1) throw fsumm::InvalidArgument("give exactly one of --hb, --q, --pair");
    if (!in.q.empty()) return fsumm::ks_from_q(fsumm::expsum_from_json(read_json(in.q)));
    if (!in.h.empty()) return fsumm::hb_from_json(read_json(in.h));
    json p = read_json(in.pair);
    if (p.contains("pair")) p = p.at("pair");
    if (!p.contains("meta") || !p.at("meta").contains("E"))
        throw fsumm::InvalidArgument("pair file does not record its E");
    return fsumm::make_hermite_biehler(fsumm::expsum_from_json(p.at("meta").at("E")));
}

json with_input(const HbInput& in, json config) {
    if (!in.h.empty()) config["hb"] = in.h;
    if (!in.q.empty()) config["q"] = in.q;
    if (!in.pair.empty()) config["pair"] = in.pair;
    return config;
}

bool all_pass(const std::vector<fsumm::VerificationReport>& rs) {
    return std::all_of(rs.begin(), rs.end(), [](const auto& r) { return r.verdict == fsumm::Verdict::pass; });
}

// ks ---------------------------------------------------------------------

struct KsArgs {
    std::string q;
    int suite = 10;
};

RunResult run_ks(const Globals& g, const KsArgs& a) {
    const double cutoff = g.cutoff.value_or(10.0), tol = g.tol.value_or(1e-8);
    auto [x0, x1] = window_or(g, -40.0, 40.0);
    fsumm::HermiteBiehler H = fsumm::ks_from_q(fsumm::expsum_from_json(read_json(a.q)));
    fsumm::FSPair pair = fsumm::pair_from_hb(H, cutoff, x0, x1);
    auto reports = fsumm::check_pair_suite(pair, fsumm::gaussian_suite(a.suite, g.seed), tol);

    json prov = provenance("ks", g, {{"q", a.q}, {"suite", a.suite}});
    json pj = {{"provenance", prov}, {"pair", fsumm::to_json(pair)}, {"hb", fsumm::to_json(H)}};
    json rj = fsumm::suite_json(reports);
    rj["provenance"] = prov;
    return {{{"pair.json", dump(pj)}, {"report.json", dump(rj)}}, all_pass(reports)};
}

// pair-check -------------------------------------------------------------

struct PairCheckArgs {
    std::string pair;
    int suite = 10;
};

RunResult run_pair_check(const Globals& g, const PairCheckArgs& a) {
    const double tol = g.tol.value_or(1e-8);
    json pj = read_json(a.pair);
    if (pj.contains("pair")) pj = pj.at("pair");
    fsumm::FSPair pair = fsumm::pair_from_json(pj);
    auto reports = fsumm::check_pair_suite(pair, fsumm::gaussian_suite(a.suite, g.seed), tol);
    json rj = fsumm::suite_json(reports);
    rj["provenance"] = provenance("pair-check", g, {{"pair", a.pair}, {"suite", a.suite}});
    return {{{"report.json", dump(rj)}}, all_pass(reports)};
}

// eta / selfdual ---------------------------------------------------------

struct EtaArgs {
    std::string spec;
    std::string family;
    bool minus = false;
    std::vector<double> ys{0.8, 1.0, 2.0};
};

struct EtaRun {
    fsumm::EtaProductSpec spec;
    std::optional<fsumm::EtaProduct> eta;
    fsumm::SelfDualSeries series;
};

EtaRun build_series(const Globals& g, const EtaArgs& a) {
    if (a.spec.empty() == a.family.empty()) throw fsumm::InvalidArgument("give exactly one of --spec, --family");
    const mpq_class order = fsumm::parse_rational(g.order.value_or("1000"));
    if (!a.spec.empty()) {
        if (a.minus) throw fsumm::InvalidArgument("--minus applies to --family only");
        fsumm::EtaProductSpec spec = fsumm::eta_spec_from_json(read_json(a.spec));
        return {spec, fsumm::eta_product(spec, order), fsumm::fplus(spec, order)};
    }
    fsumm::FamilyMember m = fsumm::family_l(fsumm::parse_rational(a.family), order);
    if (a.minus) return {m.spec, std::nullopt, m.minus};
    return {m.spec, fsumm::eta_product(m.spec, order), m.plus};
}

json selfdual_report(const Globals& g, const EtaArgs& a, const EtaRun& run, const fsumm::DiscreteMeasure& m,
                     bool& passed) {
    const double tol = g.tol.value_or(1e-6);
    auto reports = fsumm::check_selfdual(m, fsumm::centered_gaussians({0.5, 1.0, 2.0}), tol);
    json rj = fsumm::suite_json(reports);
    passed = all_pass(reports);
    json fe = json::array();
    for (double y : a.ys) {
        json row = {{"z", {0.0, y}}};
        try {
            const double r = fsumm::functional_equation_residual(run.series, cplx(0.0, y), tol);
            row["residual"] = r;
            row["verdict"] = r <= tol ? "pass" : "fail";
            passed = passed && r <= tol;
        } catch (const fsumm::InvalidArgument& e) {
            // The truncated series cannot certify this point.
            row["verdict"] = "inconclusive";
            row["reason"] = e.what();
            passed = false;
        }
        fe.push_back(row);
    }
    rj["functionalEquation"] = fe;
    rj["sign"] = run.series.sign;
    rj["hecke"] = {{"constant", run.series.hecke_constant}, {"ok", run.series.hecke_ok}};
    return rj;
}

json eta_config(const EtaArgs& a) {
    json c = {{"ys", a.ys}};
    if (!a.spec.empty()) c["spec"] = a.spec;
    if (!a.family.empty()) c["family"] = a.family, c["minus"] = a.minus;
    return c;
}

RunResult run_eta(const Globals& g, const EtaArgs& a) {
    EtaRun run = build_series(g, a);
    auto [x0, x1] = window_or(g, -1e3, 1e3);
    fsumm::DiscreteMeasure m = fsumm::selfdual_measure(run.series, x0, x1);
    RunResult out;
    json rj = selfdual_report(g, a, run, m, out.passed);
    json prov = provenance("eta", g, eta_config(a));
    rj["provenance"] = prov;

    std::ostringstream csv;
    if (run.eta)
        fsumm::write_coefficient_csv(csv, *run.eta);
    else
        fsumm::write_series_csv(csv, run.series);
    json mj = {{"provenance", prov},
               {"spec", fsumm::to_json(run.spec)},
               {"series", fsumm::to_json(run.series)},
               {"measure", fsumm::to_json(m)}};
    out.files = {{"series.csv", csv_with_provenance(prov, csv.str())},
                 {"measure.json", dump(mj)},
                 {"selfdual_report.json", dump(rj)}};
    return out;
}

RunResult run_selfdual(const Globals& g, const EtaArgs& a) {
    EtaRun run = build_series(g, a);
    auto [x0, x1] = window_or(g, -1e3, 1e3);
    fsumm::DiscreteMeasure m = fsumm::selfdual_measure(run.series, x0, x1);
    RunResult out;
    json rj = selfdual_report(g, a, run, m, out.passed);
    rj["provenance"] = provenance("selfdual", g, eta_config(a));
    out.files = {{"selfdual_report.json", dump(rj)}};
    return out;
}

// spectrum ---------------------------------------------------------------

struct SpectrumArgs {
    HbInput in;
    std::vector<double> lambdas;
    double y = 1.0;
    double T = 1e4;
};

RunResult run_spectrum(const Globals& g, const SpectrumArgs& a) {
    const double tol = g.tol.value_or(1e-3);
    if (!(a.T > 0.0)) throw fsumm::InvalidArgument("--T must be positive");
    fsumm::HermiteBiehler H = load_hb(a.in);
    double top = 0.0;
    for (double l : a.lambdas) top = std::max(top, std::abs(l));
    fsumm::SpectrumAtoms s = fsumm::exact_spectrum(H, top + 1.0);
    auto sorted = s.sorted();
    fsumm::Evaluator f = fsumm::ratio_evaluator(H);

    RunResult out;
    std::ostringstream csv;
    csv << "lambda,exact_re,exact_im,numeric_re,numeric_im,abs_diff\n";
    for (double l : a.lambdas) {
        cplx exact(0.0, 0.0);
        for (const auto& [lam, c] : sorted)
            if (std::abs(lam - l) <= 1e-9 * std::max(1.0, std::abs(l))) exact = c;
        cplx numeric = fsumm::mean_value(f, l, a.y, a.T);
        const double diff = std::abs(exact - numeric);
        out.passed = out.passed && diff <= tol;
        csv << num(l) << ',' << num(exact.real()) << ',' << num(exact.imag()) << ',' << num(numeric.real()) << ','
            << num(numeric.imag()) << ',' << num(diff) << '\n';
    }
    json prov = provenance("spectrum", g,
                           with_input(a.in, {{"lambda", a.lambdas}, {"y", a.y}, {"T", a.T}}));
    out.files = {{"spectrum.csv", csv_with_provenance(prov, csv.str())}};
    return out;
}

// kernel -----------------------------------------------------------------

struct KernelArgs {
    HbInput in;
    std::vector<std::string> points{"0,1", "0.5,1", "-1,0.7", "1.3,2", "0.2,0.4"};
    std::string w = "0,1";
    double R = 1e3;
};

RunResult run_kernel(const Globals& g, const KernelArgs& a) {
    const double tol = g.tol.value_or(1e-4);
    const cplx w = parse_point(a.w);
    std::vector<cplx> zs;
    for (const auto& p : a.points) zs.push_back(parse_point(p));
    for (cplx z : zs)
        if (!(z.imag() > 0.0)) throw fsumm::InvalidArgument("kernel points must lie in the upper half-plane");
    if (!(w.imag() > 0.0)) throw fsumm::InvalidArgument("--w must lie in the upper half-plane");

    fsumm::HermiteBiehler H = load_hb(a.in);
    fsumm::KernelContext ctx(H, a.R);
    std::map<double, cplx> samples;
    for (const fsumm::PhasePoint& p : ctx.roots()) samples[p.gamma] = fsumm::kernel_closed(ctx, w, cplx(p.gamma, 0.0));

    std::vector<fsumm::VerificationReport> reports;
    auto add = [&](const char* identity, cplx z, cplx lhs, cplx rhs, double tail) {
        fsumm::VerificationReport r;
        r.lhs = lhs;
        r.rhs = rhs;
        r.residual = std::abs(lhs - rhs);
        r.tail_rhs = tail;
        r.tol = tol;
        r.verdict = fsumm::decide(r.residual, 0.0, tail, tol);
        r.params = {{"identity", identity}, {"w", {w.real(), w.imag()}}, {"z", {z.real(), z.imag()}}, {"R", a.R}};
        reports.push_back(std::move(r));
    };
    for (cplx z : zs) {
        const cplx closed = fsumm::kernel_closed(ctx, w, z);
        add("closed-vs-eform", z, closed, fsumm::kernel_eform(ctx, w, z), 0.0);
        fsumm::SeriesValue s = fsumm::kernel_series(ctx, w, z);
        add("closed-vs-series", z, closed, s.value, s.tail);
        add("sampling", z, closed, fsumm::sampling_eval(ctx, samples, z), s.tail);
    }
    json rj = fsumm::suite_json(reports);
    rj["provenance"] = provenance("kernel", g,
                                  with_input(a.in, {{"points", a.points}, {"w", a.w}, {"R", a.R}}));
    return {{{"kernel_report.json", dump(rj)}}, all_pass(reports)};
}

void write_all(const Globals& g, const std::vector<Artifact>& files) {
    fs::create_directories(g.out);
    for (const auto& f : files) {
        std::ofstream os(fs::path(g.out) / f.name, std::ios::binary);
        os << f.body;
        if (!os) throw std::runtime_error("failed writing " + f.name);
        std::cout << (fs::path(g.out) / f.name).string() << '\n';
    }
}

void add_hb_input(CLI::App* sub, HbInput& in) {
    sub->add_option("--hb", in.h, "Hermite-Biehler JSON (E or full record)");
    sub->add_option("--q", in.q, "Q as exponential-sum JSON; E = Q' - iQ");
    sub->add_option("--pair", in.pair, "pair.json written by ks");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier summation pairs: construction and verification"};
    app.set_version_flag("--version", std::string(fsumm::kVersion));
    app.require_subcommand(1);

    Globals g;
    double tol = 0.0, cutoff = 0.0;
    std::string order;
    app.add_option("--out", g.out, "output directory")->capture_default_str();
    app.add_option("--seed", g.seed, "seed for randomized test suites")->capture_default_str();
    auto* tol_opt = app.add_option("--tol", tol, "verification tolerance");
    auto* cutoff_opt = app.add_option("--cutoff", cutoff, "spectral cutoff for a");
    app.add_option("--window", g.window, "measure window A B")->expected(2);
    auto* order_opt = app.add_option("--order", order, "q-series order p/q");

    KsArgs ks;
    auto* ks_cmd = app.add_subcommand("ks", "Q -> E = Q' - iQ -> pair -> Gaussian suite");
    ks_cmd->add_option("--q", ks.q, "Q as exponential-sum JSON")->required();
    ks_cmd->add_option("--suite", ks.suite, "number of Gaussians")->capture_default_str();

    PairCheckArgs pc;
    auto* pc_cmd = app.add_subcommand("pair-check", "check a stored pair against a Gaussian suite");
    pc_cmd->add_option("--pair", pc.pair, "pair JSON")->required();
    pc_cmd->add_option("--suite", pc.suite, "number of Gaussians")->capture_default_str();

    EtaArgs eta, sd;
    auto* eta_cmd = app.add_subcommand("eta", "eta-product series, measure and self-duality report");
    auto* sd_cmd = app.add_subcommand("selfdual", "self-duality report for an eta-product measure");
    for (auto [cmd, args] : {std::pair{eta_cmd, &eta}, std::pair{sd_cmd, &sd}}) {
        cmd->add_option("--spec", args->spec, "eta spec JSON {N, r}");
        cmd->add_option("--family", args->family, "l-family parameter (rational)");
        cmd->add_flag("--minus", args->minus, "use the sign -1 member of the family");
        cmd->add_option("--y", args->ys, "heights for the functional equation")->capture_default_str();
    }

    SpectrumArgs sp;
    auto* sp_cmd = app.add_subcommand("spectrum", "exact spectrum against Fejer mean values");
    add_hb_input(sp_cmd, sp.in);
    sp_cmd->add_option("--lambda", sp.lambdas, "frequencies");
    sp_cmd->add_option("--y", sp.y, "height of the averaging line")->capture_default_str();
    sp_cmd->add_option("--T", sp.T, "averaging half-length")->capture_default_str();

    KernelArgs kr;
    auto* kr_cmd = app.add_subcommand("kernel", "reproducing-kernel identities");
    add_hb_input(kr_cmd, kr.in);
    kr_cmd->add_option("--points", kr.points, "evaluation points re,im")->capture_default_str();
    kr_cmd->add_option("--w", kr.w, "kernel base point re,im")->capture_default_str();
    kr_cmd->add_option("--R", kr.R, "root scope")->capture_default_str();

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }
    if (*tol_opt) g.tol = tol;
    if (*cutoff_opt) g.cutoff = cutoff;
    if (*order_opt) g.order = order;

    try {
        RunResult r;
        if (*ks_cmd)
            r = run_ks(g, ks);
        else if (*pc_cmd)
            r = run_pair_check(g, pc);
        else if (*eta_cmd)
            r = run_eta(g, eta);
        else if (*sd_cmd)
            r = run_selfdual(g, sd);
        else if (*sp_cmd)
            r = run_spectrum(g, sp);
        else
            r = run_kernel(g, kr);
        write_all(g, r.files);
        std::cout << (r.passed ? "pass" : "fail") << '\n';
        return r.passed ? kPass : kFail;
    } catch (const fsumm::NotHermiteBiehler& e) {
        std::cerr << "error: " << e.what() << " (witness " << e.witness().real() << (e.witness().imag() < 0 ? "" : "+")
                  << e.witness().imag() << "i)\n";
        return kInvalid;
    } catch (const fsumm::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    }
}
