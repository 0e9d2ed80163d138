#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "monowav/analysis.hpp"

using namespace monowav;

namespace {

constexpr double kPi = 3.14159265358979323846;
std::mt19937 rng(20240820);

FamilySpec s_reference() {
  return FamilySpec{Family::S, 1, WeightParams{2, 0, Rational(-6), 0}};
}
FamilySpec k_reference() {
  return FamilySpec{Family::K, 1, WeightParams{2, 0, 0, 1}};
}

}  // namespace

TEST_CASE("gamma and sphere area") {
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-12));
  CHECK(sphere_area(2) == doctest::Approx(2 * kPi).epsilon(1e-12));
  CHECK(sphere_area(3) == doctest::Approx(4 * kPi).epsilon(1e-12));
  CHECK_THROWS_AS(gamma_fn(0.0), std::invalid_argument);
  CHECK_THROWS_AS(sphere_area(0), std::invalid_argument);
}

TEST_CASE("bessel_j basics") {
  CHECK(bessel_j(0, 0) == 1.0);
  CHECK(bessel_j(0.5, kPi / 2) == doctest::Approx(2.0 / kPi).epsilon(1e-10));
  // half-integer closed forms
  std::uniform_real_distribution<double> xs(0.2, 30.0);
  for (int trial = 0; trial < 30; ++trial) {
    double x = xs(rng);
    double j12 = std::sqrt(2.0 / (kPi * x)) * std::sin(x);
    double j32 = std::sqrt(2.0 / (kPi * x)) * (std::sin(x) / x - std::cos(x));
    CHECK(bessel_j(0.5, x) == doctest::Approx(j12).epsilon(1e-9));
    CHECK(bessel_j(1.5, x) == doctest::Approx(j32).epsilon(1e-9));
  }
}

TEST_CASE("bessel_j against the standard library") {
  std::uniform_real_distribution<double> xs(0.05, 50.0);
  std::uniform_real_distribution<double> nus(0.0, 7.0);
  for (int trial = 0; trial < 200; ++trial) {
    double x = xs(rng), nu = nus(rng);
    double want = std::cyl_bessel_j(nu, x);
    CHECK(bessel_j(nu, x) ==
          doctest::Approx(want).epsilon(1e-9).scale(std::max(1e-4, std::fabs(want))));
  }
}

TEST_CASE("bessel recurrence") {
  std::uniform_real_distribution<double> xs(0.1, 40.0);
  for (int nu = 1; nu <= 6; ++nu)
    for (int trial = 0; trial < 20; ++trial) {
      double x = xs(rng);
      double lhs = bessel_j(nu - 1, x) + bessel_j(nu + 1, x);
      double rhs = 2.0 * nu / x * bessel_j(nu, x);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9).scale(
                       std::max(1e-6, std::fabs(rhs))));
    }
}

TEST_CASE("bessel zeros") {
  CHECK(bessel_j_zero(0, 1) == doctest::Approx(2.404825557).epsilon(1e-9));
  CHECK(bessel_j_zero(0, 2) == doctest::Approx(5.520078110).epsilon(1e-9));
  CHECK(bessel_j_zero(1, 1) == doctest::Approx(3.831705970).epsilon(1e-9));
  for (int k = 1; k <= 20; ++k) {
    double z = bessel_j_zero(0.5, k);
    CHECK(z == doctest::Approx(k * kPi).epsilon(1e-10));  // J_{1/2} zeros
  }
}

TEST_CASE("quadrature") {
  auto q = integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
  CHECK(q.value == doctest::Approx(1.0 / 3).epsilon(1e-12));
  // integrable endpoint singularity (endpoints never evaluated)
  auto s = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10);
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-8));
  auto e = integrate_semi_infinite([](double x) { return std::exp(-x); }, 1e-12);
  CHECK(e.value == doctest::Approx(1.0).epsilon(1e-10));
  auto p = integrate_semi_infinite(
      [](double x) { return 1.0 / ((1 + x * x) * (1 + x * x)); }, 1e-12);
  CHECK(p.value == doctest::Approx(kPi / 4).epsilon(1e-10));
}

TEST_CASE("radial_integral") {
  WeightParams p2{2, 0, 0, 1};
  TermSum gauss = weight_gauss(p2);
  auto g = radial_integral(gauss, 1e-12);
  CHECK(g.value == doctest::Approx(kPi).epsilon(1e-10));

  // vector terms integrate to zero by antisymmetry, no quadrature performed
  TermSum vec(p2);
  vec.add_term(3, 1, -4, 0, 1);
  auto v = radial_integral(vec);
  CHECK(v.value == 0.0);
  CHECK(v.evaluations == 0);

  WeightParams p3{3, 0, 0, 0};
  TermSum t(p3);
  t.add_term(1, 0, -4, 0, 0);  // (1+|x|^2)^{-4}
  auto q = radial_integral(t, 1e-12);
  CHECK(q.value == doctest::Approx(kPi * kPi / 8).epsilon(1e-10));
}

TEST_CASE("radial_integral divergence preconditions") {
  WeightParams p{3, 0, 0, 0};
  TermSum one = TermSum::one(p);
  CHECK_THROWS_AS(radial_integral(one), std::invalid_argument);  // infinity
  TermSum origin(p);
  origin.add_term(1, -2, -4, 0, 0);  // r^{-4} at 0 in m=3
  CHECK_THROWS_AS(radial_integral(origin), std::invalid_argument);
  try {
    radial_integral(origin);
  } catch (const std::invalid_argument& err) {
    CHECK(std::string(err.what()).find("origin") != std::string::npos);
  }
}

TEST_CASE("moment parity and orthogonality") {
  WeightParams p{3, 1, Rational(-3), 0};
  // scalar-only sum, odd k: exact zero without quadrature
  TermSum scal(p);
  scal.add_term(2, 1, -5, 0, 0);
  auto odd = moment(1, scal);
  CHECK(odd.value == 0.0);
  CHECK(odd.evaluations == 0);

  // the proof's descent: int x S_1^{mu+1,alpha+1} w_{mu,alpha} dV equals
  // gamma_{1,m} int w_{mu+1,alpha+1} dV; at (mu,alpha)=(0,-4), m=3 that is
  // -3 * 3 pi^2/4
  FamilySpec s1{Family::S, 1, WeightParams{3, 1, Rational(-3), 0}};
  TermSum poly = polynomial(s1);
  WeightParams pw{3, 0, Rational(-4), 0};
  TermSum w(pw);
  w.add_term(1, 0, -4, 0, 0);
  TermSum rebased(pw);
  for (const auto& [key, c] : poly.terms())
    rebased.add_term(c, key.a, key.b, key.k, key.n);
  auto i11 = moment(1, rebased * w, 1e-10);
  CHECK(i11.value == doctest::Approx(-9 * kPi * kPi / 4).epsilon(1e-9));

  // true orthogonality needs k < t: int x S_3^{3,-5} w_{0,-8} dV = 0
  FamilySpec s3{Family::S, 3, WeightParams{3, 3, Rational(-5), 0}};
  WeightParams pw8{3, 0, Rational(-8), 0};
  TermSum w8(pw8);
  w8.add_term(1, 0, -8, 0, 0);
  TermSum poly3 = polynomial(s3);
  TermSum reb3(pw8);
  for (const auto& [key, c] : poly3.terms())
    reb3.add_term(c, key.a, key.b, key.k, key.n);
  TermSum orth = reb3 * w8;
  auto mom = moment(1, orth, 1e-10);
  TermSum x1 = TermSum::monomial(pw8, 1, 0, 0, 0, 1);
  auto norm = radial_abs_integral(x1 * orth);
  CHECK(norm.value > 0);
  CHECK(std::fabs(mom.value) <= 1e-8 * norm.value);
}

TEST_CASE("vanishing wavelet moments") {
  // psi_2^{-1,-4}, family S, m=2: even ell makes the k=1 integrand a pure
  // vector, so the moment vanishes exactly by parity
  FamilySpec even{Family::S, 2, WeightParams{2, Rational(-1), Rational(-4), 0}};
  auto trivially = moment(1, wavelet(even), 1e-10);
  CHECK(trivially.value == 0.0);
  CHECK(trivially.evaluations == 0);

  // psi_3^{-1,-7}, family S, m=2: odd ell, k=1 inside the Eq. (17) window
  // (k < ell and k < -m - ell - 2(mu+alpha) = 11): genuine quadrature zero
  FamilySpec spec{Family::S, 3, WeightParams{2, Rational(-1), Rational(-7), 0}};
  TermSum psi = wavelet(spec);
  auto mom = moment(1, psi, 1e-10);
  TermSum xk = TermSum::monomial(spec.params, 1, 0, 0, 0, 1);
  auto norm = radial_abs_integral(xk * psi);
  CHECK(norm.value > 0);
  CHECK(std::fabs(mom.value) <= 1e-8 * norm.value);

  // family K, psi_3^{-4,-2}, m=2, k in {1, 2}
  FamilySpec kspec{Family::K, 3, WeightParams{2, 0, Rational(-4), 2}};
  TermSum kpsi = wavelet(kspec);
  for (int k = 1; k <= 2; ++k) {
    auto km = moment(k, kpsi, 1e-10);
    TermSum xkk = TermSum::monomial(kspec.params, 1, 0, 0, 0, k);
    auto kn = radial_abs_integral(xkk * kpsi);
    if (kn.value == 0.0) {
      CHECK(km.value == 0.0);  // parity-exact case
    } else {
      CHECK(std::fabs(km.value) <= 1e-8 * kn.value);
    }
  }
}

TEST_CASE("sphere integral lemma") {
  // direct angular quadrature of int_{S^{m-1}} e^{-i<r w, rho xi>} dsigma
  // against (2 pi)^{m/2} J_{m/2-1}(r rho) / (r rho)^{m/2-1}
  std::uniform_real_distribution<double> d(0.1, 4.0);
  for (int trial = 0; trial < 20; ++trial) {
    double r = d(rng), rho = d(rng), x = r * rho;

    auto q2 = integrate(
        [x](double theta) { return std::cos(x * std::cos(theta)); }, 0.0,
        2 * kPi, 1e-12);
    CHECK(std::fabs(q2.value - 2 * kPi * bessel_j(0, x)) < 1e-8);

    auto q3 = integrate(
        [x](double theta) {
          return std::cos(x * std::cos(theta)) * std::sin(theta) * 2 * kPi;
        },
        0.0, kPi, 1e-12);
    double want3 = std::pow(2 * kPi, 1.5) * bessel_j(0.5, x) / std::sqrt(x);
    CHECK(std::fabs(q3.value - want3) < 1e-8);
  }
}

TEST_CASE("hankel transform base cases") {
  // K ell=0 internal base case: int r e^{-r^2} J_0(r rho) dr = e^{-rho^2/4}/2
  for (double rho : {0.0, 0.5, 1.0, 2.0, 4.0}) {
    double h = hankel_transform([](double r) { return r * std::exp(-r * r); },
                                0.0, rho, 1e-11);
    CHECK(h == doctest::Approx(0.5 * std::exp(-rho * rho / 4)).epsilon(1e-9));
  }
}

TEST_CASE("fourier profile of the S reference wavelet") {
  // closed form H(rho) = rho^3 K_3(rho)/48 - rho^4 K_4(rho)/384; H(0) = 1/24
  auto profile = fourier_profile(s_reference(), {1e-7, 1.0, 2.0, 3.0}, 1e-10);
  CHECK(profile.hankel[0] == doctest::Approx(1.0 / 24).epsilon(1e-7));
  CHECK(profile.hankel[1] == doctest::Approx(0.03275439258031).epsilon(1e-7));
  CHECK(profile.hankel[2] == doctest::Approx(0.01640106818249).epsilon(1e-7));
  CHECK(profile.hankel[3] == doctest::Approx(0.00420534675757).epsilon(1e-6));
  // |psi_hat| = 2 pi rho |H| for m=2, ell=1
  CHECK(profile.psi_hat_mag[1] ==
        doctest::Approx(2 * kPi * profile.hankel[1]).epsilon(1e-12));
}

TEST_CASE("fourier profile of the K reference wavelet") {
  // analytic: H(rho) = e^{-q}(2-q)/2 with q = rho^2/4
  std::vector<double> grid{0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0};
  auto profile = fourier_profile(k_reference(), grid, 1e-10, 1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double q = grid[i] * grid[i] / 4;
    CHECK(profile.hankel[i] ==
          doctest::Approx(0.5 * std::exp(-q) * (2 - q)).epsilon(1e-8));
  }
}

TEST_CASE("fourier profile rejects non-decaying family S parameters") {
  FamilySpec bad{Family::S, 1, WeightParams{2, 0, 0, 0}};
  CHECK_THROWS_AS(fourier_profile(bad, {1.0}, 1e-8), std::invalid_argument);
}

TEST_CASE("profiles are threading-invariant") {
  std::vector<double> grid;
  for (int i = 1; i <= 12; ++i) grid.push_back(0.25 * i);
  auto p1 = fourier_profile(k_reference(), grid, 1e-9, 1);
  auto p4 = fourier_profile(k_reference(), grid, 1e-9, 4);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(p1.hankel[i] == p4.hankel[i]);
    CHECK(p1.psi_hat_mag[i] == p4.psi_hat_mag[i]);
  }
}

TEST_CASE("grid Fourier oracle agrees on a small configuration") {
  std::vector<double> grid{0.5, 1.0, 1.5, 2.0};
  auto exact = fourier_profile(k_reference(), grid, 1e-10);
  auto oracle = ft_grid_oracle(k_reference(), 128, 8.0, grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(oracle.psi_hat_mag[i] ==
          doctest::Approx(exact.psi_hat_mag[i]).epsilon(5e-3));
}

TEST_CASE("admissibility constants") {
  auto k = admissibility(k_reference(), 1e-8);
  CHECK(k.converged);
  CHECK(k.constant == doctest::Approx(2.5 * kPi * kPi).epsilon(1e-8));

  auto s = admissibility(s_reference(), 1e-7);
  CHECK(s.converged);
  CHECK(s.constant == doctest::Approx(0.078330193660).epsilon(1e-6));

  // K ell=2, alpha=0, beta=1: closed form A = 11 pi^2
  FamilySpec k2{Family::K, 2, WeightParams{2, 0, 0, 1}};
  auto a2 = admissibility(k2, 1e-8);
  CHECK(a2.constant == doctest::Approx(11 * kPi * kPi).epsilon(1e-8));
}

TEST_CASE("admissibility stability under tolerance halving") {
  for (auto spec : {k_reference(), s_reference()}) {
    auto coarse = admissibility(spec, 1e-6);
    auto fine = admissibility(spec, 5e-7);
    CHECK(std::fabs(coarse.constant - fine.constant) <
          1e-4 * std::fabs(fine.constant));
  }
}

TEST_CASE("ell=0 is not admissible") {
  FamilySpec flat{Family::K, 0, WeightParams{2, 0, 0, 1}};
  CHECK_THROWS_AS(admissibility(flat), NotAdmissibleError);
}

TEST_CASE("profile csv emission") {
  RadialProfile p;
  p.rho = {0.5, 1.0};
  p.hankel = {0.25, 0.125};
  p.psi_hat_mag = {1.0, 0.5};
  std::ostringstream os;
  write_profile_csv(p, os);
  CHECK(os.str() == "rho,H,psi_hat_mag\n0.5,0.25,1\n1,0.125,0.5\n");
}
