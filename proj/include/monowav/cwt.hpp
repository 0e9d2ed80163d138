#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "monowav/analysis.hpp"
#include "monowav/families.hpp"

namespace monowav {

/// Uniformly gridded field on [-L,L]^2 with Clifford-valued samples
/// (scalar, vector_x, vector_y). Spacing is 2L/(n-1).
struct CwtField {
  int grid_n = 0;
  double half_width = 0.0;
  std::vector<std::array<double, 3>> samples;  // row-major, index iy*n + ix

  double spacing() const { return 2.0 * half_width / (grid_n - 1); }
  double coord(int i) const { return -half_width + i * spacing(); }
  std::array<double, 3>& at(int ix, int iy) { return samples[iy * grid_n + ix]; }
  const std::array<double, 3>& at(int ix, int iy) const {
    return samples[iy * grid_n + ix];
  }

  /// Throws unless n >= 16 and all samples are finite.
  void validate() const;
  bool same_geometry(const CwtField& other) const {
    return grid_n == other.grid_n && half_width == other.half_width;
  }

  double l2_norm() const;
};

/// Wavelet coefficients over a scale list and the field's translation lattice.
struct CwtCoefficients {
  std::vector<double> scales;  // ascending, > 0
  int grid_n = 0;
  double half_width = 0.0;
  /// Per scale j a full n*n block: coeffs[j * n*n + iy*n + ix].
  std::vector<std::array<double, 3>> coeffs;
  AdmissibilityResult admissibility;

  const std::array<double, 3>& at(int scale_idx, int ix, int iy) const {
    return coeffs[(static_cast<std::size_t>(scale_idx) * grid_n + iy) * grid_n + ix];
  }
  /// Log-measure weight delta(ln a) * a^{-m} for scale j (m = 2).
  double scale_weight(int j) const;
};

CwtField make_gaussian_bump(int grid_n, double half_width, double sigma,
                            double amplitude = 1.0);

/// Samples a^{-m/2} psi((x-b)/a) on the field geometry (m = 2). A wavelet with a
/// negative radial exponent is singular at x = b; the on-lattice singular sample
/// is rejected unless exclude_origin is set (which zeroes it).
CwtField sample_wavelet(const FamilySpec& spec, double a,
                        std::array<double, 2> b, int grid_n, double half_width,
                        bool exclude_origin = false);

/// C_{a,b} = sum_x conj(psi_{a,b}(x)) f(x) dx^2 over the translation lattice,
/// for every scale in `scales` (ascending, positive).
CwtCoefficients cwt_transform(const CwtField& f, const FamilySpec& spec,
                              const std::vector<double>& scales, int threads = 1,
                              bool exclude_origin = false);

/// Discrete two-sided Plancherel sums: lhs = double integral of the conjugated
/// coefficient product with measure da dV(b)/a^{m+1}, rhs = A * <f, g>_{L2}.
std::pair<double, double> plancherel_check(const CwtField& f, const CwtField& g,
                                           const CwtCoefficients& cf,
                                           const CwtCoefficients& cg);

/// Discrete synthesis f = (1/A) sum C_{a,b} psi_{a,b}(x) with the same measure.
CwtField reconstruct(const CwtCoefficients& coeffs, const FamilySpec& spec,
                     int threads = 1, bool exclude_origin = false);

/// Relative L2 error of `got` against `want` over all three components.
double relative_l2_error(const CwtField& got, const CwtField& want);

/// CSV "x,y,scalar,vx,vy".
void write_field_csv(const CwtField& field, std::ostream& os);
/// Reads the same format back; validates grid uniformity.
CwtField read_field_csv(std::istream& is);
/// One CSV per scale: "a,x,y,scalar,vx,vy".
void write_coeff_csv(const CwtCoefficients& coeffs, int scale_idx,
                     std::ostream& os);

}  // namespace monowav
