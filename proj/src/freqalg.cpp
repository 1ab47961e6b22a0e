#include "fsumm/freqalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fsumm/error.hpp"

namespace fsumm {

namespace {

// exp() overflows past this argument.
constexpr double kMaxExpArg = 709.0;

void require_same_basis(const ExpSum& f, const ExpSum& g) {
    if (!(f.basis() == g.basis())) throw BasisMismatch();
}

void add_term(ExpSum::TermMap& m, const Freq& f, cplx c) {
    auto [it, inserted] = m.try_emplace(f, c);
    if (!inserted) it->second += c;
}

ExpSum::TermMap drop_zeros(ExpSum::TermMap m) {
    std::erase_if(m, [](const auto& kv) { return kv.second == cplx(0.0, 0.0); });
    return m;
}

}  // namespace

Freq Freq::unit(std::size_t rank, std::size_t j, std::int64_t m) {
    Freq f = zero(rank);
    f.k.at(j) = m;
    return f;
}

bool Freq::is_zero() const {
    return std::all_of(k.begin(), k.end(), [](std::int64_t v) { return v == 0; });
}

Freq Freq::operator-() const {
    Freq r = *this;
    for (auto& v : r.k) v = -v;
    return r;
}

Freq& Freq::operator+=(const Freq& o) {
    if (o.k.size() != k.size()) throw InvalidArgument("frequency rank mismatch");
    for (std::size_t j = 0; j < k.size(); ++j) k[j] += o.k[j];
    return *this;
}

Freq& Freq::operator-=(const Freq& o) { return *this += -o; }

Freq operator*(std::int64_t m, Freq a) {
    for (auto& v : a.k) v *= m;
    return a;
}

FreqBasis::FreqBasis(std::vector<double> base, std::int64_t denominator)
    : base_(std::move(base)), den_(denominator) {
    if (base_.empty()) throw InvalidArgument("frequency basis must be non-empty");
    if (den_ <= 0) throw InvalidArgument("frequency basis denominator must be positive");
    for (std::size_t i = 0; i < base_.size(); ++i) {
        if (!std::isfinite(base_[i]) || base_[i] <= 0.0)
            throw InvalidArgument("frequency basis entries must be positive and finite");
        for (std::size_t j = 0; j < i; ++j)
            if (base_[i] == base_[j]) throw InvalidArgument("frequency basis entries must be distinct");
    }
}

double FreqBasis::value(const Freq& f) const {
    if (f.rank() != rank()) throw InvalidArgument("frequency rank does not match basis");
    double s = 0.0;
    for (std::size_t j = 0; j < base_.size(); ++j) s += static_cast<double>(f.k[j]) * base_[j];
    return s / static_cast<double>(den_);
}

ExpSum::ExpSum(FreqBasis basis) : basis_(std::move(basis)) {}

ExpSum::ExpSum(FreqBasis basis, const std::vector<std::pair<Freq, cplx>>& terms)
    : basis_(std::move(basis)) {
    for (const auto& [f, c] : terms) {
        if (f.rank() != basis_.rank()) throw InvalidArgument("term frequency rank does not match basis");
        add_term(terms_, f, c);
    }
    terms_ = drop_zeros(std::move(terms_));
    rebuild();
}

ExpSum::ExpSum(FreqBasis basis, TermMap terms) : basis_(std::move(basis)), terms_(std::move(terms)) {
    for (const auto& [f, c] : terms_)
        if (f.rank() != basis_.rank()) throw InvalidArgument("term frequency rank does not match basis");
    terms_ = drop_zeros(std::move(terms_));
    rebuild();
}

ExpSum ExpSum::constant(FreqBasis basis, cplx c) {
    Freq z = Freq::zero(basis.rank());
    return ExpSum(std::move(basis), std::vector<std::pair<Freq, cplx>>{{z, c}});
}

ExpSum ExpSum::monomial(FreqBasis basis, Freq f, cplx c) {
    return ExpSum(std::move(basis), std::vector<std::pair<Freq, cplx>>{{std::move(f), c}});
}

void ExpSum::rebuild() {
    order_.clear();
    for (const auto& kv : terms_) order_.push_back(kv.first);
    std::stable_sort(order_.begin(), order_.end(), [this](const Freq& a, const Freq& b) {
        double va = basis_.value(a), vb = basis_.value(b);
        if (va != vb) return va < vb;
        return a < b;
    });
    flat_.clear();
    flat_.reserve(order_.size());
    for (const Freq& f : order_) flat_.emplace_back(basis_.value(f), terms_.at(f));
}

cplx ExpSum::coeff(const Freq& f) const {
    auto it = terms_.find(f);
    return it == terms_.end() ? cplx(0.0, 0.0) : it->second;
}

double ExpSum::min_frequency() const {
    if (flat_.empty()) throw DegenerateError("empty exponential sum has no frequencies");
    return flat_.front().first;
}

double ExpSum::max_frequency() const {
    if (flat_.empty()) throw DegenerateError("empty exponential sum has no frequencies");
    return flat_.back().first;
}

const Freq& ExpSum::min_key() const {
    if (order_.empty()) throw DegenerateError("empty exponential sum has no frequencies");
    return order_.front();
}

const Freq& ExpSum::max_key() const {
    if (order_.empty()) throw DegenerateError("empty exponential sum has no frequencies");
    return order_.back();
}

double ExpSum::coeff_l1() const {
    double s = 0.0;
    for (const auto& kv : flat_) s += std::abs(kv.second);
    return s;
}

cplx ExpSum::operator()(cplx z) const {
    cplx acc(0.0, 0.0);
    for (const auto& [lam, c] : flat_) {
        double growth = -kTwoPi * lam * z.imag();
        if (growth > kMaxExpArg)
            throw EvalRangeError("exp(-2 pi lambda y) overflows at lambda=" + std::to_string(lam) +
                                 ", y=" + std::to_string(z.imag()));
        double phase = kTwoPi * lam * z.real();
        acc += c * std::exp(growth) * cplx(std::cos(phase), std::sin(phase));
    }
    return acc;
}

ExpSum ExpSum::purged(double rel_tol) const {
    double mx = 0.0;
    for (const auto& kv : terms_) mx = std::max(mx, std::abs(kv.second));
    TermMap out;
    for (const auto& [f, c] : terms_)
        if (std::abs(c) > rel_tol * mx) out.emplace(f, c);
    return ExpSum(basis_, std::move(out));
}

cplx es_eval(const ExpSum& f, cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw InvalidArgument("evaluation point must be finite");
    return f(z);
}

ExpSum es_mul(const ExpSum& f, const ExpSum& g) {
    require_same_basis(f, g);
    ExpSum::TermMap out;
    for (const auto& [ff, cf] : f.terms())
        for (const auto& [fg, cg] : g.terms()) add_term(out, ff + fg, cf * cg);
    return ExpSum(f.basis(), std::move(out));
}

ExpSum es_add(const ExpSum& f, const ExpSum& g) {
    require_same_basis(f, g);
    ExpSum::TermMap out = f.terms();
    for (const auto& [fg, cg] : g.terms()) add_term(out, fg, cg);
    return ExpSum(f.basis(), std::move(out));
}

ExpSum es_scale(const ExpSum& f, cplx c) {
    ExpSum::TermMap out;
    for (const auto& [ff, cf] : f.terms()) out.emplace(ff, cf * c);
    return ExpSum(f.basis(), std::move(out));
}

ExpSum es_star(const ExpSum& f) {
    ExpSum::TermMap out;
    for (const auto& [ff, cf] : f.terms()) out.emplace(-ff, std::conj(cf));
    return ExpSum(f.basis(), std::move(out));
}

ExpSum es_derivative(const ExpSum& f) {
    ExpSum::TermMap out;
    for (const auto& [ff, cf] : f.terms()) {
        if (ff.is_zero()) continue;
        out.emplace(ff, cplx(0.0, kTwoPi * f.basis().value(ff)) * cf);
    }
    return ExpSum(f.basis(), std::move(out));
}

ExpSum es_shift(const ExpSum& f, const Freq& s) {
    ExpSum::TermMap out;
    for (const auto& [ff, cf] : f.terms()) out.emplace(ff + s, cf);
    return ExpSum(f.basis(), std::move(out));
}

double term_distance(const ExpSum& f, const ExpSum& g) {
    if (!(f.basis() == g.basis()) || f.size() != g.size()) return std::numeric_limits<double>::infinity();
    double d = 0.0;
    auto it = g.terms().begin();
    for (const auto& [ff, cf] : f.terms()) {
        if (!(ff == it->first)) return std::numeric_limits<double>::infinity();
        d = std::max(d, std::abs(cf - it->second));
        ++it;
    }
    return d;
}

bool is_star_fixed(const ExpSum& f, double rel_tol) {
    double scale = 0.0;
    for (const auto& kv : f.terms()) scale = std::max(scale, std::abs(kv.second));
    return term_distance(f, es_star(f)) <= rel_tol * std::max(scale, 1e-300);
}

}  // namespace fsumm
