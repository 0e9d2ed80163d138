#include "monowav/clifford.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace monowav {

namespace {

int blade_product_sign(std::uint32_t a, std::uint32_t b) {
  // Transpositions needed to merge e_a e_b into canonical order, plus one flip
  // per shared generator (e_j^2 = -1).
  int count = 0;
  std::uint32_t t = a >> 1;
  while (t) {
    count += std::popcount(t & b);
    t >>= 1;
  }
  count += std::popcount(a & b);
  return (count & 1) ? -1 : 1;
}

// Per-dimension sign table, built once on first use.
const std::vector<std::int8_t>& sign_table(int dim) {
  static std::mutex mu;
  static std::map<int, std::vector<std::int8_t>> tables;
  std::lock_guard<std::mutex> lock(mu);
  auto it = tables.find(dim);
  if (it == tables.end()) {
    const std::size_t n = std::size_t{1} << dim;
    std::vector<std::int8_t> table(n * n);
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b)
        table[(std::size_t{a} << dim) | b] =
            static_cast<std::int8_t>(blade_product_sign(a, b));
    it = tables.emplace(dim, std::move(table)).first;
  }
  return it->second;
}

void check_dim(int dim) {
  if (dim < 1 || dim > Multivector::kMaxDim)
    throw std::invalid_argument("multivector dimension must be in [1, 12]");
}

}  // namespace

Multivector::Multivector(int dim) : dim_(dim) {
  check_dim(dim);
  coeffs_.assign(std::size_t{1} << dim, 0.0);
}

Multivector Multivector::scalar(int dim, double value) {
  Multivector mv(dim);
  mv.coeffs_[0] = value;
  return mv;
}

Multivector Multivector::basis_vector(int dim, int j) {
  check_dim(dim);
  if (j < 1 || j > dim) throw std::invalid_argument("basis index out of range");
  Multivector mv(dim);
  mv.coeffs_[std::uint32_t{1} << (j - 1)] = 1.0;
  return mv;
}

Multivector Multivector::embed(std::span<const double> x) {
  Multivector mv(static_cast<int>(x.size()));
  for (std::size_t j = 0; j < x.size(); ++j)
    mv.coeffs_[std::uint32_t{1} << j] = x[j];
  return mv;
}

Multivector& Multivector::operator+=(const Multivector& rhs) {
  if (dim_ != rhs.dim_) throw std::invalid_argument("dimension mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& rhs) {
  if (dim_ != rhs.dim_) throw std::invalid_argument("dimension mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Multivector Multivector::operator*(const Multivector& rhs) const {
  if (dim_ != rhs.dim_) throw std::invalid_argument("dimension mismatch");
  const auto& signs = sign_table(dim_);
  Multivector out(dim_);
  const std::size_t n = coeffs_.size();
  for (std::uint32_t a = 0; a < n; ++a) {
    const double ca = coeffs_[a];
    if (ca == 0.0) continue;
    for (std::uint32_t b = 0; b < n; ++b) {
      const double cb = rhs.coeffs_[b];
      if (cb == 0.0) continue;
      out.coeffs_[a ^ b] += signs[(std::size_t{a} << dim_) | b] * ca * cb;
    }
  }
  return out;
}

Multivector Multivector::conjugate() const {
  Multivector out(dim_);
  for (std::uint32_t blade = 0; blade < coeffs_.size(); ++blade) {
    const int g = std::popcount(blade);
    const int sign = ((g * (g + 1) / 2) & 1) ? -1 : 1;
    out.coeffs_[blade] = sign * coeffs_[blade];
  }
  return out;
}

std::vector<double> Multivector::grade1() const {
  std::vector<double> v(dim_);
  for (int j = 0; j < dim_; ++j) v[j] = coeffs_[std::uint32_t{1} << j];
  return v;
}

double Multivector::max_abs_diff(const Multivector& rhs) const {
  if (dim_ != rhs.dim_) throw std::invalid_argument("dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    worst = std::max(worst, std::fabs(coeffs_[i] - rhs.coeffs_[i]));
  return worst;
}

double Multivector::norm_inf() const {
  double worst = 0.0;
  for (double c : coeffs_) worst = std::max(worst, std::fabs(c));
  return worst;
}

Multivector vector_power(std::span<const double> x, int n) {
  if (n < 0) throw std::invalid_argument("vector_power requires n >= 0");
  const int dim = static_cast<int>(x.size());
  double r2 = 0.0;
  for (double c : x) r2 += c * c;
  if (n % 2 == 0) {
    const double sign = (n / 2) % 2 ? -1.0 : 1.0;
    return Multivector::scalar(dim, sign * std::pow(r2, n / 2));
  }
  const double sign = ((n - 1) / 2) % 2 ? -1.0 : 1.0;
  return sign * std::pow(r2, (n - 1) / 2) * Multivector::embed(x);
}

Multivector dirac_numeric(
    const std::function<Multivector(std::span<const double>)>& f,
    std::span<const double> x, double h) {
  if (h <= 0) throw std::invalid_argument("dirac_numeric requires h > 0");
  const int dim = static_cast<int>(x.size());
  Multivector out(dim);
  std::vector<double> p(x.begin(), x.end());
  for (int j = 0; j < dim; ++j) {
    p[j] = x[j] + h;
    Multivector plus = f(p);
    p[j] = x[j] - h;
    Multivector minus = f(p);
    p[j] = x[j];
    out += Multivector::basis_vector(dim, j + 1) * ((plus - minus) * (0.5 / h));
  }
  return out;
}

}  // namespace monowav
