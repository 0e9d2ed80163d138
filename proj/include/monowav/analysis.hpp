#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "monowav/families.hpp"
#include "monowav/term_algebra.hpp"

namespace monowav {

/// Numerical failure distinct from precondition violations (maps to CLI exit 2).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Divergence of the admissibility integral at rho -> 0; not a quadrature
/// failure but a structural one (insufficient vanishing moments).
struct NotAdmissibleError : NumericError {
  using NumericError::NumericError;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long evaluations = 0;
};

struct AdmissibilityResult {
  double constant = 0.0;
  bool converged = false;
  double tail_bound = 0.0;
};

/// Sampled radial function; `hankel` holds H(rho_i), `psi_hat_mag` the full
/// transform magnitude |psi_hat|(rho_i).
struct RadialProfile {
  std::vector<double> rho;
  std::vector<double> hankel;
  std::vector<double> psi_hat_mag;
  FamilySpec meta;
};

double gamma_fn(double x);
/// Area of the unit sphere S^{d-1}: 2 pi^{d/2} / Gamma(d/2).
double sphere_area(int d);

/// Bessel function of the first kind, nu >= 0, x >= 0. Power series below the
/// crossover, Hankel asymptotics above (with a stable forward recurrence from
/// small order when nu^2 is large relative to x).
double bessel_j(double nu, double x);
/// k-th positive zero of J_nu (k >= 1), McMahon estimate polished by Newton.
double bessel_j_zero(double nu, int k);

/// Adaptive Gauss-Kronrod 15(7) on a finite interval; endpoints are never
/// evaluated, so integrable endpoint singularities are tolerated.
QuadratureResult integrate(const std::function<double(double)>& f, double lo,
                           double hi, double tol);
/// [0, inf) via the split at 1 and the substitution r = 1/u on the tail.
QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         double tol);

/// Integral of the term sum over R^m: vector-part terms vanish by antisymmetry,
/// scalar terms reduce to sphere_area(m) * int_0^inf g(r) r^{m-1} dr. Divergent
/// terms are rejected up front with the offending term and endpoint named.
QuadratureResult radial_integral(const TermSum& t, double tol = 1e-10);

/// Same reduction applied to |scalar part| (normalization for moment tests).
QuadratureResult radial_abs_integral(const TermSum& t, double tol = 1e-8);

/// int_{R^m} x^k t(x) dV as a scalar; odd total parity returns exact zero with
/// zero evaluations.
QuadratureResult moment(int k, const TermSum& t, double tol = 1e-10);

/// The 1-D Hankel-type integral int_0^inf w(r) J_nu(r rho) dr, integrating
/// between consecutive Bessel zeros with Euler acceleration of the alternating
/// tail.
double hankel_transform(const std::function<double(double)>& w, double nu,
                        double rho, double tol, long* evaluations = nullptr);

/// H(rho_i) and |psi_hat|(rho_i) for the spec's wavelet. Family S requires the
/// decay condition 2(mu+ell) + m/2 + 2(alpha+ell) < -1/2; family K always
/// converges. Grid points are independent work items.
RadialProfile fourier_profile(const FamilySpec& spec, std::vector<double> rho_grid,
                              double tol = 1e-10, int threads = 1);

/// Independent m=2 oracle: direct discretization of the Clifford-Fourier
/// integral on a uniform grid, radially averaged magnitude at the given rho.
RadialProfile ft_grid_oracle(const FamilySpec& spec, int grid_size,
                             double box_half_width, std::vector<double> rho_grid,
                             int threads = 1);

/// A = (2 pi)^m int_0^inf rho^{2 ell + 1 - m} H(rho)^2 d rho.
AdmissibilityResult admissibility(const FamilySpec& spec, double tol = 1e-6);

/// CSV "rho,H,psi_hat_mag", 17 significant digits.
void write_profile_csv(const RadialProfile& profile, std::ostream& os);

}  // namespace monowav
