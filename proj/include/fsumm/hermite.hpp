#ifndef FSUMM_HERMITE_HPP
#define FSUMM_HERMITE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fsumm/freqalg.hpp"

namespace fsumm {

// Rectangle [x_min, x_max] x [y_min, y_max] in the upper half-plane sampled on
// an nx-by-ny lattice (endpoints included).
struct GridSpec {
    double x_min = -4.0;
    double x_max = 4.0;
    double y_min = 0.05;
    double y_max = 5.0;
    int nx = 400;
    int ny = 50;
};

// 400x50 over [-X, X] x [0.05, 5] with X four periods of the slowest nonzero
// frequency of E.
GridSpec default_grid(const ExpSum& E);

struct HbCertificate {
    GridSpec grid;
    // min over the grid of 1 - |E*(z)| / |E(z)|
    double margin = 0.0;
    // min |E(x)| / sum|c_k| over the real-axis preflight samples
    double real_axis_floor = 0.0;
};

struct HbVerdict {
    bool accepted = false;
    cplx witness{0.0, 0.0};
    std::string reason;
    HbCertificate certificate;
};

// E = A - iB with A, B real on the real axis.
struct HermiteBiehler {
    ExpSum E;
    ExpSum A;
    ExpSum B;
    HbCertificate certificate;
};

// A = (E* + E)/2,  B = (E* - E)/(2i).
std::pair<ExpSum, ExpSum> split_ab(const ExpSum& E);

// Sampled Hermite-Biehler test: |E*| < |E| and Re(iA/B) > 0 on the grid, and
// no common real zero of A and B on the real-axis preflight scan.
HbVerdict is_hermite_biehler(const ExpSum& E, const GridSpec& grid);

// Validates E (default grid when none given); throws NotHermiteBiehler.
HermiteBiehler make_hermite_biehler(const ExpSum& E, const std::optional<GridSpec>& grid = std::nullopt);

// E_alpha = e^{i alpha} E, split into A_alpha - i B_alpha.  Rotation preserves
// the Hermite-Biehler property, so the certificate is carried over.
HermiteBiehler rotate_phase(const HermiteBiehler& H, double alpha);

// Kurasov-Sarnak lift E = Q' - iQ of a real, real-rooted Q.
HermiteBiehler ks_from_q(const ExpSum& Q, const std::optional<GridSpec>& grid = std::nullopt);

using ComplexMatrix = std::vector<std::vector<cplx>>;

// det(U + diag(e^{2 pi i l_1 z}, ..., e^{2 pi i l_n z})) expanded over subsets
// S of {1..n}:  sum_S det(U restricted to the complement of S) e^{2 pi i l_S z}.
ExpSum leeyang_trigpoly(const ComplexMatrix& U, const FreqBasis& basis, const std::vector<Freq>& lengths);

// Multiplies P by a unimodular constant and an exponential e^{2 pi i s z}
// so the result is real on the real axis (frequencies symmetric about 0).
// The basis denominator is doubled when the centring shift is a half-integer
// vector.  Throws DegenerateError if no such normalisation exists.
ExpSum real_normalize(const ExpSum& P, double rel_tol = 1e-10);

// Re-expresses f over the same basis with denominator multiplied by factor.
ExpSum refine_denominator(const ExpSum& f, std::int64_t factor);

struct RootScan {
    std::vector<double> roots;         // simple roots (sign changes), ascending
    std::vector<double> double_roots;  // local minima of |B| that touch zero
};

// Real roots of a real-on-the-axis exponential sum on [x0, x1]: sign-change
// scan at step 1/(8 * frequency span), bisection to width 1e-12.
RootScan real_roots(const ExpSum& B, double x0, double x1);

// phi'(x) = Re(i E'(x) / E(x)).
double phase_derivative(const HermiteBiehler& H, double x);

}  // namespace fsumm

#endif  // FSUMM_HERMITE_HPP
