#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace monowav {

/// Dense element of the real Clifford algebra R_m (e_j^2 = -1, anticommuting
/// generators). Blades are indexed by bitmask: bit j-1 set means e_j is a factor,
/// indices in increasing order. All 2^m coefficients are stored.
class Multivector {
 public:
  static constexpr int kMaxDim = 12;

  explicit Multivector(int dim);

  static Multivector scalar(int dim, double value);
  /// e_j, 1-based index.
  static Multivector basis_vector(int dim, int j);
  /// Grade-1 embedding of a Euclidean vector.
  static Multivector embed(std::span<const double> x);

  int dim() const { return dim_; }
  std::size_t size() const { return coeffs_.size(); }

  double operator[](std::uint32_t blade) const { return coeffs_[blade]; }
  double& operator[](std::uint32_t blade) { return coeffs_[blade]; }

  Multivector& operator+=(const Multivector& rhs);
  Multivector& operator-=(const Multivector& rhs);
  Multivector& operator*=(double s);
  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }

  /// Geometric product. Throws std::invalid_argument on dimension mismatch.
  Multivector operator*(const Multivector& rhs) const;

  /// Clifford conjugation: grade g picks up (-1)^{g(g+1)/2}.
  Multivector conjugate() const;

  double scalar_part() const { return coeffs_[0]; }
  std::vector<double> grade1() const;

  double max_abs_diff(const Multivector& rhs) const;
  double norm_inf() const;

 private:
  int dim_;
  std::vector<double> coeffs_;
};

/// x^n in the algebra, evaluated in closed form: even n gives the scalar
/// (-1)^{n/2}|x|^n, odd n the vector (-1)^{(n-1)/2}|x|^{n-1} x.
Multivector vector_power(std::span<const double> x, int n);

/// Central-difference Dirac operator sum_j e_j d/dx_j acting from the left, O(h^2).
Multivector dirac_numeric(
    const std::function<Multivector(std::span<const double>)>& f,
    std::span<const double> x, double h = 1e-4);

}  // namespace monowav
