#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "monowav/rational.hpp"

namespace monowav {

/// Parameter tuple (m, mu, alpha, beta) selecting dimension and weight family.
struct WeightParams {
  int m = 2;
  Rational mu = 0;
  Rational alpha = 0;
  Rational beta = 0;

  /// Throws if m < 2 or beta < 0.
  void validate() const;
  friend bool operator==(const WeightParams&, const WeightParams&) = default;
};

/// gamma_{n,m} from the Dirac power rule d(x^n) = gamma_{n,m} x^{n-1}:
/// -n for even n, -(m+n-1) for odd n.
Rational dirac_gamma(int n, int m);

/// Canonical key of a term c*|x|^{2a}(1+|x|^2)^b e^{-k beta |x|^2} x^n with
/// n already reduced to {0,1}. Ordering is lexicographic on (n, a, b, k).
struct TermKey {
  int n = 0;
  Rational a = 0;
  Rational b = 0;
  int k = 0;

  friend bool operator==(const TermKey&, const TermKey&) = default;
  friend bool operator<(const TermKey& x, const TermKey& y) {
    if (x.n != y.n) return x.n < y.n;
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.k < y.k;
  }
};

/// Exact finite sum of radial terms, closed under addition, multiplication and
/// Dirac differentiation. Always stored in canonical form: x powers reduced via
/// x^2 = -|x|^2, like keys merged, zero coefficients dropped.
class TermSum {
 public:
  explicit TermSum(WeightParams params);

  static TermSum zero(const WeightParams& params) { return TermSum(params); }
  static TermSum one(const WeightParams& params);
  /// coeff * |x|^{2a} (1+|x|^2)^b e^{-k beta |x|^2} x^{n_raw}; n_raw >= 0 is
  /// reduced on construction.
  static TermSum monomial(const WeightParams& params, const Rational& coeff,
                          const Rational& a, const Rational& b, int k, int n_raw);

  const WeightParams& params() const { return params_; }
  const std::map<TermKey, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Rational& coeff, Rational a, Rational b, int k, int n_raw);

  TermSum& operator+=(const TermSum& rhs);
  friend TermSum operator+(TermSum a, const TermSum& b) { return a += b; }
  TermSum scaled(const Rational& c) const;
  friend TermSum operator-(const TermSum& a, const TermSum& b) {
    return a + b.scaled(-1);
  }
  TermSum operator*(const TermSum& rhs) const;

  friend bool operator==(const TermSum&, const TermSum&) = default;

  /// Exact termwise Dirac derivative.
  TermSum dirac() const;

  /// True iff every term has integer a >= 0, integer b >= 0 and k = 0.
  bool is_polynomial() const;
  /// Coefficients c_j of x^j after full expansion; requires is_polynomial().
  std::vector<Rational> expand_coeffs() const;
  /// Degree of the expanded polynomial (-1 for the zero sum).
  int degree() const;

  /// Value on the sphere |x| = r as (scalar_part, vector_coeff), where the term
  /// sum equals scalar_part + vector_coeff * x. Throws on r = 0 with a negative
  /// radial exponent present.
  std::pair<double, double> eval_radial(double r) const;

  nlohmann::json to_json() const;
  static TermSum from_json(const nlohmann::json& doc);

 private:
  WeightParams params_;
  std::map<TermKey, Rational> terms_;
};

/// Identity map; sums are kept canonical at all times.
inline TermSum normalize(TermSum t) { return t; }
inline TermSum add(const TermSum& a, const TermSum& b) { return a + b; }
inline TermSum scale(const TermSum& a, const Rational& c) { return a.scaled(c); }
inline TermSum mul(const TermSum& a, const TermSum& b) { return a * b; }

/// omega_{mu,alpha} = |x|^{2mu}(1+|x|^2)^alpha.
TermSum weight_gegenbauer_jacobi(const WeightParams& params);
/// omega_{alpha,-beta} = (1+|x|^2)^alpha e^{-beta|x|^2}.
TermSum weight_gauss(const WeightParams& params);

}  // namespace monowav
