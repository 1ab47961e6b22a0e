#ifndef FSUMM_QMODULAR_HPP
#define FSUMM_QMODULAR_HPP

// Formal q-series with rational exponents and rational coefficients.  Every
// operation here is exact; no floating point enters until a caller converts
// coefficients for numerical use.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "fsumm/error.hpp"

namespace fsumm {

// Raised when an eta-product exponent vector violates the admissibility
// conditions; what() names the violated condition.
class RcondViolation : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// sum c_e q^e, exact for all e < order.
class QSeries {
public:
    using Terms = std::map<mpq_class, mpq_class>;

    explicit QSeries(mpq_class order = 0);
    // Drops zero coefficients and exponents >= order.
    QSeries(Terms terms, mpq_class order);

    static QSeries one(const mpq_class& order);
    static QSeries monomial(const mpq_class& c, const mpq_class& e, const mpq_class& order);

    const Terms& terms() const { return terms_; }
    const mpq_class& order() const { return order_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    mpq_class coeff(const mpq_class& e) const;
    // Lowest exponent and its coefficient; throws on the zero series.
    std::pair<mpq_class, mpq_class> leading() const;
    // Least common denominator of the stored exponents.
    mpz_class exponent_denominator() const;

    QSeries truncated(const mpq_class& order) const;
    // Substitution q -> q^s for s > 0.
    QSeries scaled(const mpq_class& s) const;
    // Multiplication by q^e.
    QSeries shifted(const mpq_class& e) const;

    QSeries operator-() const;
    friend QSeries operator+(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const mpq_class& c, const QSeries& a);

    bool operator==(const QSeries& o) const { return order_ == o.order_ && terms_ == o.terms_; }

private:
    Terms terms_;
    mpq_class order_;
};

// chi_12(n): +1 for n = 1, 11 mod 12, -1 for n = 5, 7 mod 12, else 0.
int chi12(std::int64_t n);

// eta(z) = sum_{n >= 1} chi_12(n) q^{n^2/24}.
QSeries eta_expansion(const mpq_class& order);

// u^r by the logarithmic-derivative recurrence.  A non-integer r requires the
// leading coefficient to have an exact rational r-th power.
QSeries qpow(const QSeries& u, const mpq_class& r);

// prod_{d | N} eta(d z)^{r_d} with r_d = r_{N/d}, sum r_d = 1 and
// sum d r_d = 24 k / b in lowest terms.
class EtaProductSpec {
public:
    // Divisors absent from r are taken as zero.  Throws RcondViolation.
    EtaProductSpec(std::int64_t N, std::map<std::int64_t, mpq_class> r);

    std::int64_t N() const { return N_; }
    const std::map<std::int64_t, mpq_class>& r() const { return r_; }
    std::int64_t b() const { return b_; }
    std::int64_t k() const { return k_; }
    // Leading exponent k / b.
    mpq_class leading_exponent() const { return mpq_class(k_, b_); }
    std::vector<std::int64_t> divisors() const;

private:
    std::int64_t N_;
    std::map<std::int64_t, mpq_class> r_;
    std::int64_t b_ = 1;
    std::int64_t k_ = 0;
};

struct EtaProduct {
    EtaProductSpec spec;
    QSeries series;

    // alpha_n, the coefficient of q^{n/b}.
    mpq_class alpha(std::int64_t n) const;
    // c_m, the coefficient of q^{k/b + m}.
    mpq_class shifted_coeff(std::int64_t m) const;
    // Number of integer steps m with k/b + m < order.
    std::int64_t shifted_count() const;
};

// Exact eta-product through exponents < order.
EtaProduct eta_product(const EtaProductSpec& spec, const mpq_class& order);

// The same product assembled from eta_expansion, qpow and series
// multiplication; slower, kept as an independent construction.
QSeries eta_product_by_powers(const EtaProductSpec& spec, const mpq_class& order);

// 16 eta(2z)^16 eta(z/2)^8 / eta(z)^24.
QSeries lambda_invariant(const mpq_class& order);

// F(z) = sum_n c_n exp(2 pi i z gamma_n), gamma_n = n / (den sqrt(N)), with
// the claimed law sqrt(i/z) F(-1/z) = sign F(z).
struct SelfDualSeries {
    std::vector<std::pair<std::int64_t, mpq_class>> coeffs;
    std::int64_t den = 1;
    std::int64_t N = 1;
    int sign = 1;
    // Every n < n_limit is represented (absent means zero).
    std::int64_t n_limit = 0;
    // max |c_n| / n^{1/4} over the first 2000 indices, and whether the ratio
    // stayed flat between the two halves of that range.
    double hecke_constant = 0.0;
    bool hecke_ok = true;

    double gamma(std::int64_t n) const;
};

SelfDualSeries fplus(const EtaProductSpec& spec, const mpq_class& order);
// N must be a perfect square.
SelfDualSeries fminus(const EtaProductSpec& spec, const mpq_class& order);

struct FamilyMember {
    EtaProductSpec spec;
    SelfDualSeries plus;
    SelfDualSeries minus;
};

// N = 4, r = (l, 1 - 2l, l), l >= -2.
FamilyMember family_l(const mpq_class& l, const mpq_class& order);

// Number of n in [0, nmax] with sqrt(c + n) within 1e-9 of start + step * m
// for some integer m.
std::int64_t progression_hits(double c, double start, double step, std::int64_t nmax);

}  // namespace fsumm

#endif  // FSUMM_QMODULAR_HPP
