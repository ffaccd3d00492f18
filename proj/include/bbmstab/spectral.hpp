#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "bbmstab/nonlinearity.hpp"
#include "bbmstab/wave.hpp"

namespace bbmstab {

// ---- exact reference spectra ------------------------------------------------

// Point spectrum of -d^2/dy^2 - alpha sech^2(y) on the line, alpha > 0.
// With s = (-1 + sqrt(1 + 4 alpha))/2 the eigenvalues are -eps_n^2 for
// eps_n = s - ceil(s) + n, n = 1..ceil(s), keeping eps_n > 0.  Ascending.
struct PoschlTellerSpectrum {
    double alpha;
    double s;
    std::vector<double> eigenvalues;
};
PoschlTellerSpectrum poschl_teller_spectrum(double alpha);

// Bound state at eigenvalue -eps^2 expressed through xi = tanh(y): the
// associated Legendre function P_s^eps(xi) with the Condon-Shortley sign,
// tabulated for integer s in {1,2,3}, 1 <= eps <= s.  The ground state
// eps = s is available for any s > 0 as sech^s(y).  Anything else throws
// UnsupportedError.
std::function<double(double)> legendre_eigenfunction(double s, double eps);
std::vector<double> sample_eigenfunction(double s, double eps,
                                         const std::vector<double>& y);

// ---- discretized spectra ----------------------------------------------------

enum class Scheme {
    FiniteDifference,            // raw second-order tridiagonal, no refinement
    FiniteDifferenceRichardson,  // extrapolated tridiagonal with coarseness check
    Fourier,                     // dense periodic collocation
};

struct DiscretizationParams {
    double half_width = 0.0;  // 0 = automatic (20 for free y-operators, see below)
    std::size_t n_points = 2048;
    Scheme scheme = Scheme::FiniteDifferenceRichardson;
    int n_eigs = 8;
};

// least n_eigs eigenvalues of -d^2/dy^2 - alpha sech^2(y) on [-L, L],
// Dirichlet ends (automatic L = 20)
std::vector<double> schrodinger_spectrum(double alpha, const DiscretizationParams& params);

// least n_eigs eigenvalues of -omega d^2/dx^2 + (omega-1) - scale*phi0(x),
// phi0 the sech^2 potential of the exponent-p wave at speed omega.  scale 1
// is the on-axis linearized operator, scale det M the transverse one.
// Automatic L = max(20, 12/B); requires n_points a power of two >= 1024 and
// L >= 10/B.  The Richardson scheme throws GridTooCoarseError when successive
// extrapolants of the least eigenvalue still move more than 1e-6 (1 + |l|).
std::vector<double> scalar_operator_spectrum(double scale, int p, double omega,
                                             const DiscretizationParams& params);

// exact least eigenvalue at scale 1: -p(p+4)(omega-1)/4
double first_operator_ground_energy(int p, double omega);

// Bisection over the potential scale for the sign change of the least
// eigenvalue of the transverse operator; lands within tol of 1/(p+1).
double positivity_crossing(int p, double omega, const DiscretizationParams& params,
                           double lo, double hi, double tol = 1e-4);

// relative residual of the translation mode:  |L1 phi'| / |phi'|,
// pseudo-spectral periodic application at the given resolution, box 20p/B
double zero_mode_residual(int p, double omega, std::size_t n_points = 2048);

// Spectra of the coupled two-component operator
//   (-omega d^2/dx^2 + (omega-1)) I  -  phi0(x) M
// and of the pair of scalar operators (scales 1 and det M) it rotates into.
// Both use the same raw finite-difference grid so agreement is exact up to
// dense-solver roundoff.  Only the first n_eigs entries of each list are
// comparable (they are lowest-k truncations of the full unions).
struct BlockSpectra {
    std::vector<double> coupled;
    std::vector<double> decoupled;
};
BlockSpectra block_spectra(const HomogeneousNonlinearity& h, const ProportionalRatio& ratio,
                           double omega, const DiscretizationParams& params);

// ---- assembled report --------------------------------------------------------

struct SpectrumReport {
    double det;
    double bound;                           // 1/(p+1)
    double continuum_edge;                  // omega - 1
    double analytic_ground_energy;          // -p(p+4)(omega-1)/4
    std::vector<double> on_axis_eigs;       // scale 1
    std::vector<double> transverse_eigs;    // scale det M
    std::size_t on_axis_below_edge;         // counted, not assumed
    std::size_t on_axis_negative;
    double ground_energy_error;             // relative, numeric vs analytic
    double zero_mode;                       // residual of phi'
    bool transverse_positive;
    bool unique_negative_direction;         // exactly one negative on-axis eig
};
SpectrumReport linearization_report(const HomogeneousNonlinearity& h,
                                    const ProportionalRatio& ratio, double omega,
                                    const DiscretizationParams& params);

}  // namespace bbmstab
