#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "monowav/term_algebra.hpp"

namespace monowav {

enum class Family { S, K };

/// Selects one member of the S (Gegenbauer-Jacobi) or K (Gauss-Gegenbauer-Jacobi)
/// family. Family K requires params.beta > 0; family S ignores beta.
struct FamilySpec {
  Family family = Family::S;
  int ell = 0;
  WeightParams params;

  void validate() const;
};

/// S_ell by the recurrence
/// S_{l+1} = -2x[(mu-l)(1+|x|^2)+(alpha-l)|x|^2] S_l - |x|^2(1+|x|^2) d S_l,
/// seeded with S_0 = 1.
TermSum gen_S_recurrence(const FamilySpec& spec);

/// S_ell = (-1)^ell |x|^{2(ell-mu)} (1+|x|^2)^{ell-alpha} d^ell omega_{mu,alpha}.
TermSum rodrigues_S(const FamilySpec& spec);

/// K_ell by the recurrence
/// K_{l+1} = -[2(alpha-l)x - 2 beta x (1+|x|^2)] K_l - (1+|x|^2) d K_l, K_0 = 1.
TermSum gen_K_recurrence(const FamilySpec& spec);

/// K_ell = (-1)^ell (1+|x|^2)^{ell-alpha} e^{+beta|x|^2} d^ell omega_{alpha,-beta}.
TermSum rodrigues_K(const FamilySpec& spec);

/// Recurrence-generated polynomial for either family (memoized per spec).
TermSum polynomial(const FamilySpec& spec);

/// The generating weight of the spec's family at its own (mu, alpha, beta).
TermSum family_weight(const FamilySpec& spec);

/// Analyzing wavelet: polynomial at shifted parameters times the weight, equal to
/// (-1)^ell d^ell of the shifted weight. Both forms are computed and must agree
/// exactly; ell = 0 is rejected (no vanishing moment, not admissible).
TermSum wavelet(const FamilySpec& spec);

/// {"family","ell","params","coeffs","degree"} plus the raw term-sum document.
nlohmann::json poly_json(const FamilySpec& spec);

/// Expanded polynomial as LaTeX (presentation only).
std::string to_latex(const TermSum& sum);

}  // namespace monowav
