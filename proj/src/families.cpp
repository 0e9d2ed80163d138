#include "monowav/families.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <nlohmann/json.hpp>

namespace monowav {

void FamilySpec::validate() const {
  params.validate();
  if (ell < 0) throw std::invalid_argument("ell must be >= 0");
  if (family == Family::K && params.beta <= 0)
    throw std::invalid_argument("family K requires beta > 0");
}

namespace {

void require_family(const FamilySpec& spec, Family expected) {
  spec.validate();
  if (spec.family != expected)
    throw std::invalid_argument("operation called with the wrong family");
}

}  // namespace

TermSum gen_S_recurrence(const FamilySpec& spec) {
  require_family(spec, Family::S);
  const WeightParams& p = spec.params;
  TermSum s = TermSum::one(p);
  for (int l = 0; l < spec.ell; ++l) {
    // -2x[(mu-l)(1+|x|^2) + (alpha-l)|x|^2]
    TermSum front = TermSum::monomial(p, -2 * (p.mu - l), 0, 1, 0, 1);
    front += TermSum::monomial(p, -2 * (p.alpha - l), 1, 0, 0, 1);
    // -|x|^2(1+|x|^2)
    TermSum grad = TermSum::monomial(p, -1, 1, 1, 0, 0);
    s = front * s + grad * s.dirac();
  }
  return s;
}

TermSum rodrigues_S(const FamilySpec& spec) {
  require_family(spec, Family::S);
  const WeightParams& p = spec.params;
  TermSum d = weight_gegenbauer_jacobi(p);
  for (int l = 0; l < spec.ell; ++l) d = d.dirac();
  const Rational sign = (spec.ell % 2) ? -1 : 1;
  TermSum prefactor =
      TermSum::monomial(p, sign, Rational(spec.ell) - p.mu,
                        Rational(spec.ell) - p.alpha, 0, 0);
  return prefactor * d;
}

TermSum gen_K_recurrence(const FamilySpec& spec) {
  require_family(spec, Family::K);
  const WeightParams& p = spec.params;
  TermSum k = TermSum::one(p);
  for (int l = 0; l < spec.ell; ++l) {
    // -[2(alpha-l)x - 2 beta x (1+|x|^2)]
    TermSum front = TermSum::monomial(p, -2 * (p.alpha - l), 0, 0, 0, 1);
    front += TermSum::monomial(p, 2 * p.beta, 0, 1, 0, 1);
    // -(1+|x|^2)
    TermSum grad = TermSum::monomial(p, -1, 0, 1, 0, 0);
    k = front * k + grad * k.dirac();
  }
  return k;
}

TermSum rodrigues_K(const FamilySpec& spec) {
  require_family(spec, Family::K);
  const WeightParams& p = spec.params;
  TermSum d = weight_gauss(p);
  for (int l = 0; l < spec.ell; ++l) d = d.dirac();
  const Rational sign = (spec.ell % 2) ? -1 : 1;
  // Prefactor carries e^{+beta|x|^2}, i.e. k = -1; all Gauss factors cancel in
  // the product and the result has k = 0.
  TermSum prefactor = TermSum::monomial(
      p, sign, 0, Rational(spec.ell) - p.alpha, -1, 0);
  return prefactor * d;
}

TermSum polynomial(const FamilySpec& spec) {
  spec.validate();

  using Key = std::tuple<int, int, int, Rational, Rational, Rational>;
  static std::mutex mu;
  static std::map<Key, TermSum> memo;
  Key key{static_cast<int>(spec.family), spec.ell, spec.params.m, spec.params.mu,
          spec.params.alpha, spec.params.beta};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  TermSum result = spec.family == Family::S ? gen_S_recurrence(spec)
                                            : gen_K_recurrence(spec);
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(std::move(key), result);
  return result;
}

TermSum family_weight(const FamilySpec& spec) {
  spec.validate();
  return spec.family == Family::S ? weight_gegenbauer_jacobi(spec.params)
                                  : weight_gauss(spec.params);
}

namespace {

// The (mu, alpha) shift leaves m and beta alone, so a term sum built at the
// shifted parameters is re-keyed onto the base parameters verbatim.
TermSum rebind(const TermSum& t, const WeightParams& params) {
  TermSum out(params);
  for (const auto& [key, c] : t.terms()) out.add_term(c, key.a, key.b, key.k, key.n);
  return out;
}

}  // namespace

TermSum wavelet(const FamilySpec& spec) {
  spec.validate();
  if (spec.ell < 1)
    throw std::invalid_argument(
        "wavelet requires ell >= 1: the ell=0 candidate has no vanishing moment "
        "and fails admissibility");

  FamilySpec shifted = spec;
  if (spec.family == Family::S) {
    shifted.params.mu += spec.ell;
    shifted.params.alpha += spec.ell;
  } else {
    shifted.params.alpha += spec.ell;
  }
  TermSum product_form = rebind(polynomial(shifted), spec.params) * family_weight(spec);

  TermSum d = rebind(family_weight(shifted), spec.params);
  for (int l = 0; l < spec.ell; ++l) d = d.dirac();
  TermSum derivative_form = (spec.ell % 2) ? d.scaled(-1) : d;

  if (!(product_form == derivative_form))
    throw std::logic_error("wavelet defining forms disagree");
  return product_form;
}

nlohmann::json poly_json(const FamilySpec& spec) {
  TermSum poly = polynomial(spec);
  auto coeffs = poly.expand_coeffs();
  nlohmann::json doc;
  doc["family"] = spec.family == Family::S ? "S" : "K";
  doc["ell"] = spec.ell;
  doc["params"] = poly.to_json().at("params");
  auto& arr = doc["coeffs"] = nlohmann::json::array();
  for (const auto& c : coeffs) arr.push_back(rational_str(c));
  doc["degree"] = static_cast<int>(coeffs.size()) - 1;
  doc["terms"] = poly.to_json().at("terms");
  return doc;
}

std::string to_latex(const TermSum& sum) {
  auto coeffs = sum.expand_coeffs();
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const Rational& c = coeffs[j];
    if (c == 0) continue;
    Rational abs_c = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    const bool unit = abs_c == 1 && j > 0;
    if (!unit) {
      if (denominator(abs_c) == 1)
        os << numerator(abs_c).str();
      else
        os << "\\frac{" << numerator(abs_c).str() << "}{"
           << denominator(abs_c).str() << "}";
    }
    if (j == 1)
      os << "\\underline{x}";
    else if (j > 1)
      os << "\\underline{x}^{" << j << "}";
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace monowav
