#include "fsumm/qmodular.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fsumm {

namespace {

mpz_class ceil_q(const mpq_class& x) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

std::int64_t to_i64(const mpz_class& z, const char* what) {
    if (!z.fits_slong_p()) throw InvalidArgument(std::string(what) + " does not fit in 64 bits");
    return z.get_si();
}

bool is_integer(const mpq_class& x) { return x.get_den() == 1; }

mpq_class ipow(const mpq_class& x, long e) {
    if (e < 0) {
        if (x == 0) throw InvalidArgument("negative power of zero");
        mpq_class inv = 1 / x;
        return ipow(inv, -e);
    }
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(e));
    mpq_class out(num, den);
    out.canonicalize();
    return out;
}

// Exact s-th root of a rational, if there is one.
std::optional<mpq_class> rational_root(const mpq_class& x, unsigned long s) {
    bool neg = x < 0;
    if (neg && s % 2 == 0) return std::nullopt;
    mpz_class n = abs(x.get_num());
    mpz_class d = x.get_den();
    mpz_class rn, rd;
    if (mpz_root(rn.get_mpz_t(), n.get_mpz_t(), s) == 0) return std::nullopt;
    if (mpz_root(rd.get_mpz_t(), d.get_mpz_t(), s) == 0) return std::nullopt;
    mpq_class out(neg ? mpz_class(-rn) : rn, rd);
    out.canonicalize();
    return out;
}

std::int64_t isqrt_exact(std::int64_t N) {
    auto s = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(N))));
    while (s * s > N) --s;
    while ((s + 1) * (s + 1) <= N) ++s;
    return s * s == N ? s : -1;
}

void fit_hecke(SelfDualSeries& s) {
    const std::int64_t top = std::min<std::int64_t>(2000, s.n_limit - 1);
    double full = 0.0, half = 0.0;
    for (const auto& [n, c] : s.coeffs) {
        if (n < 1 || n > top) continue;
        double ratio = std::abs(c.get_d()) / std::pow(static_cast<double>(n), 0.25);
        full = std::max(full, ratio);
        if (2 * n <= top) half = std::max(half, ratio);
    }
    s.hecke_constant = full;
    s.hecke_ok = half == 0.0 || full <= 2.0 * half;
}

}  // namespace

// ---------------------------------------------------------------- QSeries

QSeries::QSeries(mpq_class order) : order_(std::move(order)) {}

QSeries::QSeries(Terms terms, mpq_class order) : order_(std::move(order)) {
    for (auto& [e, c] : terms) {
        if (c == 0 || e >= order_) continue;
        terms_.emplace(e, std::move(c));
    }
}

QSeries QSeries::one(const mpq_class& order) { return monomial(1, 0, order); }

QSeries QSeries::monomial(const mpq_class& c, const mpq_class& e, const mpq_class& order) {
    Terms t;
    t.emplace(e, c);
    return QSeries(std::move(t), order);
}

mpq_class QSeries::coeff(const mpq_class& e) const {
    if (e >= order_) throw InvalidArgument("coefficient requested at or beyond the truncation order");
    auto it = terms_.find(e);
    return it == terms_.end() ? mpq_class(0) : it->second;
}

std::pair<mpq_class, mpq_class> QSeries::leading() const {
    if (terms_.empty()) throw InvalidArgument("the series has no nonzero term below its order");
    return *terms_.begin();
}

mpz_class QSeries::exponent_denominator() const {
    mpz_class d = 1;
    for (const auto& [e, c] : terms_) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), e.get_den_mpz_t());
    return d;
}

QSeries QSeries::truncated(const mpq_class& order) const {
    QSeries out(std::min(order, order_));
    for (const auto& [e, c] : terms_) {
        if (e >= out.order_) break;
        out.terms_.emplace_hint(out.terms_.end(), e, c);
    }
    return out;
}

QSeries QSeries::scaled(const mpq_class& s) const {
    if (s <= 0) throw InvalidArgument("exponent scale must be positive");
    QSeries out(order_ * s);
    for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e * s, c);
    return out;
}

QSeries QSeries::shifted(const mpq_class& e0) const {
    QSeries out(order_ + e0);
    for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e + e0, c);
    return out;
}

QSeries QSeries::operator-() const {
    QSeries out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
    QSeries::Terms t = a.terms_;
    for (const auto& [e, c] : b.terms_) {
        auto [it, fresh] = t.try_emplace(e, c);
        if (!fresh) it->second += c;
    }
    return QSeries(std::move(t), std::min(a.order_, b.order_));
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const mpq_class& c, const QSeries& a) {
    if (c == 0) return QSeries(a.order_);
    QSeries out = a;
    for (auto& [e, v] : out.terms_) v *= c;
    return out;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
    const mpq_class la = a.empty() ? a.order_ : a.terms_.begin()->first;
    const mpq_class lb = b.empty() ? b.order_ : b.terms_.begin()->first;
    const mpq_class order = std::min(a.order_ + lb, b.order_ + la);
    QSeries::Terms t;
    for (const auto& [ea, ca] : a.terms_) {
        if (ea + lb >= order) break;
        for (const auto& [eb, cb] : b.terms_) {
            mpq_class e = ea + eb;
            if (e >= order) break;
            auto [it, fresh] = t.try_emplace(std::move(e), ca * cb);
            if (!fresh) it->second += ca * cb;
        }
    }
    return QSeries(std::move(t), order);
}

// ---------------------------------------------------------------- eta

int chi12(std::int64_t n) {
    switch (((n % 12) + 12) % 12) {
        case 1:
        case 11: return 1;
        case 5:
        case 7: return -1;
        default: return 0;
    }
}

QSeries eta_expansion(const mpq_class& order) {
    QSeries::Terms t;
    for (std::int64_t n = 1; mpq_class(n * n, 24) < order; ++n) {
        int c = chi12(n);
        if (c != 0) t.emplace(mpq_class(n * n, 24), c);
    }
    return QSeries(std::move(t), order);
}

QSeries qpow(const QSeries& u, const mpq_class& r) {
    const auto [e0, c0] = u.leading();
    const mpq_class rel = u.order() - e0;

    mpq_class scale;
    if (is_integer(r)) {
        scale = ipow(c0, to_i64(r.get_num(), "power"));
    } else {
        auto root = rational_root(c0, r.get_den().get_ui());
        if (!root) throw InvalidArgument("leading coefficient has no rational power " + r.get_str());
        scale = ipow(*root, to_i64(r.get_num(), "power"));
    }

    // Dense index over q^{1/D} after factoring c0 q^{e0}.
    mpz_class D = 1;
    for (const auto& [e, c] : u.terms()) {
        mpq_class rel_e = e - e0;
        mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), rel_e.get_den_mpz_t());
    }
    const std::int64_t K = std::max<std::int64_t>(0, to_i64(ceil_q(rel * D), "series length"));

    std::vector<std::pair<std::int64_t, mpq_class>> v;
    for (const auto& [e, c] : u.terms()) {
        if (e == e0) continue;
        mpq_class j = (e - e0) * D;
        v.emplace_back(to_i64(j.get_num(), "exponent index"), c / c0);
    }

    // (1 + v) w' = r v' w  gives  n w_n = sum_j ((r + 1) j - n) v_j w_{n-j}.
    std::vector<mpq_class> w(static_cast<std::size_t>(K));
    if (K > 0) w[0] = 1;
    const mpq_class r1 = r + 1;
    mpq_class acc, tmp;
    for (std::int64_t n = 1; n < K; ++n) {
        acc = 0;
        for (const auto& [j, vj] : v) {
            if (j > n) break;
            tmp = r1 * j;
            tmp -= n;
            tmp *= vj;
            tmp *= w[static_cast<std::size_t>(n - j)];
            acc += tmp;
        }
        w[static_cast<std::size_t>(n)] = acc / n;
    }

    const mpq_class lead = e0 * r;
    QSeries::Terms t;
    for (std::int64_t n = 0; n < K; ++n) {
        const mpq_class& wn = w[static_cast<std::size_t>(n)];
        if (wn == 0) continue;
        t.emplace_hint(t.end(), lead + mpq_class(mpz_class(n), D), scale * wn);
    }
    return QSeries(std::move(t), lead + rel);
}

// ---------------------------------------------------------------- eta products

EtaProductSpec::EtaProductSpec(std::int64_t N, std::map<std::int64_t, mpq_class> r) : N_(N) {
    if (N < 1) throw RcondViolation("N must be a positive integer");
    for (auto& [d, rd] : r) {
        if (d < 1 || N % d != 0) throw RcondViolation("r is indexed by " + std::to_string(d) + ", which does not divide N");
        rd.canonicalize();
        if (rd != 0) r_.emplace(d, rd);
    }
    auto get = [this](std::int64_t d) {
        auto it = r_.find(d);
        return it == r_.end() ? mpq_class(0) : it->second;
    };
    mpq_class total = 0, weighted = 0;
    for (std::int64_t d : divisors()) {
        if (get(d) != get(N / d))
            throw RcondViolation("symmetry r_d = r_{N/d} fails at d = " + std::to_string(d));
        total += get(d);
        weighted += d * get(d);
    }
    if (total != 1) throw RcondViolation("sum of r_d is " + total.get_str() + ", not 1");
    mpq_class kb = weighted / 24;
    if (kb < 0) throw RcondViolation("sum of d r_d is negative, so no k >= 0 exists");
    k_ = to_i64(kb.get_num(), "k");
    b_ = to_i64(kb.get_den(), "b");
}

std::vector<std::int64_t> EtaProductSpec::divisors() const {
    std::vector<std::int64_t> out;
    for (std::int64_t d = 1; d <= N_; ++d)
        if (N_ % d == 0) out.push_back(d);
    return out;
}

mpq_class EtaProduct::alpha(std::int64_t n) const { return series.coeff(mpq_class(n, spec.b())); }

mpq_class EtaProduct::shifted_coeff(std::int64_t m) const { return series.coeff(spec.leading_exponent() + m); }

std::int64_t EtaProduct::shifted_count() const {
    return std::max<std::int64_t>(0, to_i64(ceil_q(series.order() - spec.leading_exponent()), "series length"));
}

EtaProduct eta_product(const EtaProductSpec& spec, const mpq_class& order) {
    const mpq_class lead = spec.leading_exponent();
    const std::int64_t K = std::max<std::int64_t>(0, to_i64(ceil_q(order - lead), "series length"));

    // q d/dq log prod_n (1 - q^n) = -sum_m sigma(m) q^m, so the product
    // f = sum f_n q^n satisfies n f_n = sum_j c_j f_{n-j} with
    // c_j = -sum_{d | j} d r_d sigma(j / d).
    std::vector<std::int64_t> sigma(static_cast<std::size_t>(K), 0);
    for (std::int64_t d = 1; d < K; ++d)
        for (std::int64_t m = d; m < K; m += d) sigma[static_cast<std::size_t>(m)] += d;
    // Every f_n lies in Z[1/S] with denominator dividing S^{2n}, S the common
    // denominator of the r_d, so G_n = S^{2K} f_n is an integer and the
    // recurrence becomes S n G_n = sum_j C_j G_{n-j} with C_j = S c_j.
    mpz_class S = 1;
    for (const auto& [d, rd] : spec.r()) mpz_lcm(S.get_mpz_t(), S.get_mpz_t(), rd.get_den_mpz_t());
    std::vector<mpz_class> C(static_cast<std::size_t>(K));
    for (const auto& [d, rd] : spec.r()) {
        mpq_class scaled_r = rd * S;
        const mpz_class rs = scaled_r.get_num();
        for (std::int64_t j = d; j < K; j += d) C[static_cast<std::size_t>(j)] -= d * rs * sigma[static_cast<std::size_t>(j / d)];
    }
    std::vector<std::size_t> support;
    for (std::int64_t j = 1; j < K; ++j)
        if (C[static_cast<std::size_t>(j)] != 0) support.push_back(static_cast<std::size_t>(j));

    mpz_class denom;
    mpz_pow_ui(denom.get_mpz_t(), S.get_mpz_t(), 2 * static_cast<unsigned long>(K));
    std::vector<mpz_class> G(static_cast<std::size_t>(K));
    if (K > 0) G[0] = denom;
    mpz_class acc, div;
    for (std::int64_t n = 1; n < K; ++n) {
        acc = 0;
        for (std::size_t j : support) {
            if (j > static_cast<std::size_t>(n)) break;
            mpz_addmul(acc.get_mpz_t(), C[j].get_mpz_t(), G[static_cast<std::size_t>(n) - j].get_mpz_t());
        }
        div = S * n;
        if (!mpz_divisible_p(acc.get_mpz_t(), div.get_mpz_t()))
            throw DegenerateError("eta-product recurrence left Z[1/S]; coefficient bound violated");
        mpz_divexact(G[static_cast<std::size_t>(n)].get_mpz_t(), acc.get_mpz_t(), div.get_mpz_t());
    }
    std::vector<mpq_class> f(static_cast<std::size_t>(K));
    for (std::int64_t n = 0; n < K; ++n) {
        mpq_class& fn = f[static_cast<std::size_t>(n)];
        fn = mpq_class(G[static_cast<std::size_t>(n)], denom);
        fn.canonicalize();
    }

    QSeries::Terms t;
    for (std::int64_t n = 0; n < K; ++n) {
        if (f[static_cast<std::size_t>(n)] == 0) continue;
        mpq_class e = lead + n;
        mpq_class scaled = e * spec.b();
        if (!is_integer(scaled) || scaled < spec.k())
            throw DegenerateError("eta-product exponent " + e.get_str() + " lies outside (k + Z>=0)/b");
        t.emplace_hint(t.end(), std::move(e), std::move(f[static_cast<std::size_t>(n)]));
    }
    return EtaProduct{spec, QSeries(std::move(t), order)};
}

QSeries eta_product_by_powers(const EtaProductSpec& spec, const mpq_class& order) {
    const mpq_class rel = order - spec.leading_exponent();
    if (rel <= 0) return QSeries(order);
    QSeries out = QSeries::one(rel);
    for (const auto& [d, rd] : spec.r()) {
        QSeries eta_d = eta_expansion(mpq_class(1, 24) + rel / d).scaled(d);
        out = out * qpow(eta_d, rd);
    }
    return out.truncated(order);
}

QSeries lambda_invariant(const mpq_class& order) {
    if (order <= mpq_class(1, 2)) throw InvalidArgument("lambda_invariant needs order > 1/2");
    const mpq_class rel = order - mpq_class(1, 2);
    const mpq_class base(1, 24);
    QSeries e2 = qpow(eta_expansion(base + rel / 2).scaled(2), 16);
    QSeries eh = qpow(eta_expansion(base + 2 * rel).scaled(mpq_class(1, 2)), 8);
    QSeries e1 = qpow(eta_expansion(base + rel), -24);
    return (mpq_class(16) * (e2 * eh * e1)).truncated(order);
}

// ---------------------------------------------------------------- self-dual series

double SelfDualSeries::gamma(std::int64_t n) const {
    return static_cast<double>(n) / (static_cast<double>(den) * std::sqrt(static_cast<double>(N)));
}

namespace {

SelfDualSeries collect(const QSeries& s, std::int64_t den, std::int64_t N, int sign) {
    SelfDualSeries out;
    out.den = den;
    out.N = N;
    out.sign = sign;
    for (const auto& [e, c] : s.terms()) {
        mpq_class n = e * den;
        if (!is_integer(n)) throw DegenerateError("exponent " + e.get_str() + " is not a multiple of 1/" + std::to_string(den));
        out.coeffs.emplace_back(to_i64(n.get_num(), "index"), c);
    }
    out.n_limit = to_i64(ceil_q(s.order() * den), "index limit");
    fit_hecke(out);
    return out;
}

}  // namespace

SelfDualSeries fplus(const EtaProductSpec& spec, const mpq_class& order) {
    return collect(eta_product(spec, order).series, spec.b(), spec.N(), 1);
}

SelfDualSeries fminus(const EtaProductSpec& spec, const mpq_class& order) {
    const std::int64_t s = isqrt_exact(spec.N());
    if (s < 0) throw InvalidArgument("fminus needs N to be a perfect square");
    // F_-(z) = G(z / sqrt N) with G(w) = (1 - 2 lambda(sqrt(N) w)) eta(r, w).
    const mpq_class rel = order - spec.leading_exponent();
    const mpq_class lam_order = std::max(mpq_class(rel / s), mpq_class(1));
    QSeries lam = lambda_invariant(lam_order).scaled(s);
    QSeries factor = QSeries::one(lam.order()) - mpq_class(2) * lam;
    QSeries G = (factor * eta_product(spec, order).series).truncated(order);
    return collect(G, 2 * spec.b(), spec.N(), -1);
}

FamilyMember family_l(const mpq_class& l, const mpq_class& order) {
    if (l < -2) throw InvalidArgument("family parameter l must be >= -2");
    EtaProductSpec spec(4, {{1, l}, {2, 1 - 2 * l}, {4, l}});
    if (spec.leading_exponent() != (l + 2) / 24) throw DegenerateError("family leading exponent is not (l + 2)/24");
    return FamilyMember{spec, fplus(spec, order), fminus(spec, order)};
}

std::int64_t progression_hits(double c, double start, double step, std::int64_t nmax) {
    if (!(step > 0.0)) throw InvalidArgument("progression step must be positive");
    std::int64_t hits = 0;
    for (std::int64_t n = 0; n <= nmax; ++n) {
        double x = std::sqrt(c + static_cast<double>(n));
        double m = std::round((x - start) / step);
        if (std::abs(x - (start + step * m)) <= 1e-9) ++hits;
    }
    return hits;
}

}  // namespace fsumm
