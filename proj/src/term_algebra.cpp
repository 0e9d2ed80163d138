#include "monowav/term_algebra.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace monowav {

void WeightParams::validate() const {
  if (m < 2) throw std::invalid_argument("weight params require m >= 2");
  if (beta < 0) throw std::invalid_argument("weight params require beta >= 0");
}

Rational dirac_gamma(int n, int m) {
  if (n < 0) throw std::invalid_argument("dirac_gamma requires n >= 0");
  if (n % 2 == 0) return Rational(-n);
  return Rational(-(m + n - 1));
}

TermSum::TermSum(WeightParams params) : params_(std::move(params)) {
  params_.validate();
}

TermSum TermSum::one(const WeightParams& params) {
  return monomial(params, 1, 0, 0, 0, 0);
}

TermSum TermSum::monomial(const WeightParams& params, const Rational& coeff,
                          const Rational& a, const Rational& b, int k, int n_raw) {
  TermSum t(params);
  t.add_term(coeff, a, b, k, n_raw);
  return t;
}

void TermSum::add_term(const Rational& coeff, Rational a, Rational b, int k,
                       int n_raw) {
  if (n_raw < 0) throw std::invalid_argument("negative power of x");
  if (coeff == 0) return;
  // x^{2q+s} = (-1)^q |x|^{2q} x^s
  const int q = n_raw / 2;
  const int n = n_raw % 2;
  Rational c = (q % 2) ? -coeff : coeff;
  a += q;
  TermKey key{n, std::move(a), std::move(b), k};
  auto [it, inserted] = terms_.emplace(std::move(key), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TermSum& TermSum::operator+=(const TermSum& rhs) {
  if (params_ != rhs.params_)
    throw std::invalid_argument("term sum parameter mismatch");
  for (const auto& [key, coeff] : rhs.terms_) add_term(coeff, key.a, key.b, key.k, key.n);
  return *this;
}

TermSum TermSum::scaled(const Rational& c) const {
  TermSum out(params_);
  if (c == 0) return out;
  for (const auto& [key, coeff] : terms_) out.terms_.emplace(key, coeff * c);
  return out;
}

TermSum TermSum::operator*(const TermSum& rhs) const {
  if (params_ != rhs.params_)
    throw std::invalid_argument("term sum parameter mismatch");
  TermSum out(params_);
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : rhs.terms_)
      out.add_term(ca * cb, ka.a + kb.a, ka.b + kb.b, ka.k + kb.k, ka.n + kb.n);
  return out;
}

TermSum TermSum::dirac() const {
  TermSum out(params_);
  for (const auto& [key, c] : terms_) {
    if (key.a != 0) out.add_term(2 * key.a * c, key.a - 1, key.b, key.k, key.n + 1);
    if (key.b != 0) out.add_term(2 * key.b * c, key.a, key.b - 1, key.k, key.n + 1);
    if (key.k != 0)
      out.add_term(Rational(-2 * key.k) * params_.beta * c, key.a, key.b, key.k,
                   key.n + 1);
    if (key.n == 1)
      out.add_term(dirac_gamma(1, params_.m) * c, key.a, key.b, key.k, 0);
    // n = 0 contributes no gamma term (gamma_{0,m} = 0).
  }
  return out;
}

namespace {

bool nonneg_integer(const Rational& q) {
  return q >= 0 && denominator(q) == 1;
}

std::string term_desc(const TermKey& key) {
  std::ostringstream os;
  os << "term (a=" << rational_str(key.a) << ", b=" << rational_str(key.b)
     << ", k=" << key.k << ", n=" << key.n << ")";
  return os.str();
}

}  // namespace

bool TermSum::is_polynomial() const {
  for (const auto& [key, c] : terms_)
    if (key.k != 0 || !nonneg_integer(key.a) || !nonneg_integer(key.b)) return false;
  return true;
}

std::vector<Rational> TermSum::expand_coeffs() const {
  std::vector<Rational> coeffs;
  auto bump = [&coeffs](std::size_t j, const Rational& c) {
    if (coeffs.size() <= j) coeffs.resize(j + 1, Rational(0));
    coeffs[j] += c;
  };
  for (const auto& [key, c] : terms_) {
    if (key.k != 0 || !nonneg_integer(key.a) || !nonneg_integer(key.b))
      throw std::invalid_argument("expand_coeffs on non-polynomial " + term_desc(key));
    const unsigned a = static_cast<unsigned>(numerator(key.a));
    const unsigned b = static_cast<unsigned>(numerator(key.b));
    // (1+|x|^2)^b expands binomially; |x|^{2p} = (-1)^p x^{2p}.
    for (unsigned j = 0; j <= b; ++j) {
      const unsigned p = a + j;
      Rational term = c * Rational(binomial(b, j));
      if (p % 2) term = -term;
      bump(2 * p + key.n, term);
    }
  }
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  return coeffs;
}

int TermSum::degree() const {
  return static_cast<int>(expand_coeffs().size()) - 1;
}

std::pair<double, double> TermSum::eval_radial(double r) const {
  if (r < 0) throw std::invalid_argument("eval_radial requires r >= 0");
  const double r2 = r * r;
  const double beta = to_double(params_.beta);
  double scalar = 0.0, vec = 0.0;
  for (const auto& [key, c] : terms_) {
    if (r == 0.0 && key.a < 0)
      throw std::domain_error("eval_radial at r=0 is singular for " + term_desc(key));
    double v = to_double(c);
    if (key.a != 0) v *= std::pow(r2, to_double(key.a));
    if (key.b != 0) v *= std::pow(1.0 + r2, to_double(key.b));
    if (key.k != 0) v *= std::exp(-key.k * beta * r2);
    (key.n == 0 ? scalar : vec) += v;
  }
  return {scalar, vec};
}

nlohmann::json TermSum::to_json() const {
  nlohmann::json doc;
  doc["params"] = {{"m", params_.m},
                   {"mu", rational_str(params_.mu)},
                   {"alpha", rational_str(params_.alpha)},
                   {"beta", rational_str(params_.beta)}};
  auto& arr = doc["terms"] = nlohmann::json::array();
  for (const auto& [key, c] : terms_)
    arr.push_back({{"coeff", rational_str(c)},
                   {"a", rational_str(key.a)},
                   {"b", rational_str(key.b)},
                   {"k", key.k},
                   {"n", key.n}});
  return doc;
}

TermSum TermSum::from_json(const nlohmann::json& doc) {
  const auto& p = doc.at("params");
  WeightParams params{p.at("m").get<int>(),
                      parse_rational(p.at("mu").get<std::string>()),
                      parse_rational(p.at("alpha").get<std::string>()),
                      parse_rational(p.at("beta").get<std::string>())};
  TermSum out(params);
  for (const auto& t : doc.at("terms")) {
    TermKey key{t.at("n").get<int>(), parse_rational(t.at("a").get<std::string>()),
                parse_rational(t.at("b").get<std::string>()), t.at("k").get<int>()};
    if (key.n != 0 && key.n != 1)
      throw std::invalid_argument("serialized term has unreduced x power");
    out.add_term(parse_rational(t.at("coeff").get<std::string>()), key.a, key.b,
                 key.k, key.n);
  }
  return out;
}

TermSum weight_gegenbauer_jacobi(const WeightParams& params) {
  return TermSum::monomial(params, 1, params.mu, params.alpha, 0, 0);
}

TermSum weight_gauss(const WeightParams& params) {
  if (params.beta <= 0)
    throw std::invalid_argument("the Gauss weight requires beta > 0");
  return TermSum::monomial(params, 1, 0, params.alpha, 1, 0);
}

}  // namespace monowav
