#ifndef FSUMM_FREQALG_HPP
#define FSUMM_FREQALG_HPP

// Exponential sums  f(z) = sum_k c_k exp(2 pi i lambda_k z)  whose frequencies
// are exact integer vectors over a declared basis.  Frequencies never merge
// by floating comparison; only the coefficients are floating point.

#include <complex>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

namespace fsumm {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Frequency as an integer coefficient vector over a FreqBasis.  Ordering is
// lexicographic on the integers, which is exact; numeric order is a property
// of the basis (see FreqBasis::value).
struct Freq {
    std::vector<std::int64_t> k;

    Freq() = default;
    explicit Freq(std::vector<std::int64_t> coeffs) : k(std::move(coeffs)) {}
    static Freq zero(std::size_t rank) { return Freq(std::vector<std::int64_t>(rank, 0)); }
    static Freq unit(std::size_t rank, std::size_t j, std::int64_t m = 1);

    std::size_t rank() const { return k.size(); }
    bool is_zero() const;

    Freq operator-() const;
    Freq& operator+=(const Freq& o);
    Freq& operator-=(const Freq& o);
    friend Freq operator+(Freq a, const Freq& b) { return a += b; }
    friend Freq operator-(Freq a, const Freq& b) { return a -= b; }
    friend Freq operator*(std::int64_t m, Freq a);

    auto operator<=>(const Freq&) const = default;
    bool operator==(const Freq&) const = default;
};

// Frequencies are integer combinations  sum_j k_j * base[j] / denominator.
// Rational independence of the base entries is the caller's assertion.
class FreqBasis {
public:
    explicit FreqBasis(std::vector<double> base = {1.0}, std::int64_t denominator = 1);

    const std::vector<double>& base() const { return base_; }
    std::int64_t denominator() const { return den_; }
    std::size_t rank() const { return base_.size(); }

    double value(const Freq& f) const;

    bool operator==(const FreqBasis&) const = default;

private:
    std::vector<double> base_;
    std::int64_t den_;
};

class ExpSum {
public:
    using TermMap = std::map<Freq, cplx>;

    explicit ExpSum(FreqBasis basis = FreqBasis{});
    ExpSum(FreqBasis basis, const std::vector<std::pair<Freq, cplx>>& terms);
    ExpSum(FreqBasis basis, TermMap terms);
    ExpSum(FreqBasis basis, std::initializer_list<std::pair<Freq, cplx>> terms)
        : ExpSum(std::move(basis), std::vector<std::pair<Freq, cplx>>(terms)) {}

    static ExpSum constant(FreqBasis basis, cplx c);
    static ExpSum monomial(FreqBasis basis, Freq f, cplx c);

    const FreqBasis& basis() const { return basis_; }
    const TermMap& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    cplx coeff(const Freq& f) const;

    // (numeric frequency, coefficient) in ascending frequency order; this is
    // also the summation order used by evaluation.
    const std::vector<std::pair<double, cplx>>& sorted_terms() const { return flat_; }
    double min_frequency() const;
    double max_frequency() const;
    // Key of the numerically smallest / largest frequency.
    const Freq& min_key() const;
    const Freq& max_key() const;
    double coeff_l1() const;

    cplx operator()(cplx z) const;

    // Drops coefficients with |c| <= rel_tol * max|c|.
    ExpSum purged(double rel_tol) const;

    bool operator==(const ExpSum& o) const { return basis_ == o.basis_ && terms_ == o.terms_; }

private:
    void rebuild();

    FreqBasis basis_;
    TermMap terms_;
    std::vector<std::pair<double, cplx>> flat_;
    std::vector<Freq> order_;
};

cplx es_eval(const ExpSum& f, cplx z);
ExpSum es_mul(const ExpSum& f, const ExpSum& g);
ExpSum es_add(const ExpSum& f, const ExpSum& g);
ExpSum es_scale(const ExpSum& f, cplx c);
ExpSum es_star(const ExpSum& f);
ExpSum es_derivative(const ExpSum& f);
// Multiplies by exp(2 pi i s z).
ExpSum es_shift(const ExpSum& f, const Freq& s);

inline ExpSum operator+(const ExpSum& f, const ExpSum& g) { return es_add(f, g); }
inline ExpSum operator-(const ExpSum& f, const ExpSum& g) { return es_add(f, es_scale(g, -1.0)); }
inline ExpSum operator*(const ExpSum& f, const ExpSum& g) { return es_mul(f, g); }
inline ExpSum operator*(cplx c, const ExpSum& f) { return es_scale(f, c); }

// True when f == es_star(f) up to rel_tol on the coefficients (frequency sets
// must agree exactly).
bool is_star_fixed(const ExpSum& f, double rel_tol = 1e-13);

// Max coefficient distance between two sums with identical frequency sets;
// +inf when the frequency sets differ.
double term_distance(const ExpSum& f, const ExpSum& g);

}  // namespace fsumm

#endif  // FSUMM_FREQALG_HPP
