#include "monowav/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <queue>
#include <sstream>

#include "monowav/parallel.hpp"

namespace monowav {

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Kronrod 15(7) abscissae/weights on [-1,1] (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo, hi, value, error;
};

// Single GK15 rule application; never touches the endpoints.
Segment gk15(const std::function<double(double)>& f, double lo, double hi,
             long* evals) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  double result_g = 0.0, result_k = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double dx = h * kXgk[i];
    const double f1 = f(c - dx);
    const double f2 = (i == 7) ? 0.0 : f(c + dx);
    const double fsum = (i == 7) ? f1 : f1 + f2;
    result_k += kWgk[i] * fsum;
    if (i % 2 == 1) result_g += kWg[i / 2] * fsum;
  }
  *evals += 15;
  const double value = result_k * h;
  const double err = std::fabs((result_k - result_g) * h);
  return {lo, hi, value, err};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double lo,
                           double hi, double tol) {
  QuadratureResult out;
  if (!(hi > lo)) return out;
  auto worse = [](const Segment& a, const Segment& b) {
    if (a.error != b.error) return a.error < b.error;
    return a.lo < b.lo;  // deterministic tiebreak
  };
  std::priority_queue<Segment, std::vector<Segment>, decltype(worse)> heap(worse);
  heap.push(gk15(f, lo, hi, &out.evaluations));
  double value = heap.top().value;
  double error = heap.top().error;
  const int max_segments = 4000;
  int segments = 1;
  while (error > tol * std::max(1.0, std::fabs(value)) && segments < max_segments) {
    Segment s = heap.top();
    heap.pop();
    const double mid = 0.5 * (s.lo + s.hi);
    if (mid <= s.lo || mid >= s.hi) {  // interval exhausted at double precision
      heap.push({s.lo, s.hi, s.value, 0.0});
      error -= s.error;
      continue;
    }
    Segment left = gk15(f, s.lo, mid, &out.evaluations);
    Segment right = gk15(f, mid, s.hi, &out.evaluations);
    value += left.value + right.value - s.value;
    error += left.error + right.error - s.error;
    heap.push(left);
    heap.push(right);
    ++segments;
  }
  // Deterministic final reduction: sum segments in position order.
  std::vector<Segment> all;
  all.reserve(segments);
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  out.value = 0.0;
  out.abs_error_estimate = 0.0;
  for (const Segment& s : all) {
    out.value += s.value;
    out.abs_error_estimate += s.error;
  }
  return out;
}

QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         double tol) {
  QuadratureResult head = integrate(f, 0.0, 1.0, 0.5 * tol);
  QuadratureResult tail = integrate(
      [&f](double u) { return f(1.0 / u) / (u * u); }, 0.0, 1.0, 0.5 * tol);
  return {head.value + tail.value,
          head.abs_error_estimate + tail.abs_error_estimate,
          head.evaluations + tail.evaluations};
}

double gamma_fn(double x) {
  if (!(x > 0)) throw std::invalid_argument("gamma_fn requires x > 0");
  return std::tgamma(x);
}

double sphere_area(int d) {
  if (d < 1) throw std::invalid_argument("sphere_area requires d >= 1");
  return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

namespace {

double bessel_j_series(double nu, double x) {
  const double half = 0.5 * x;
  double term = std::pow(half, nu) / std::tgamma(nu + 1.0);
  double sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= -(half * half) / (k * (nu + k));
    sum += term;
    if (std::fabs(term) <= 1e-18 * (std::fabs(sum) + 1e-300)) break;
  }
  return sum;
}

// Hankel large-argument expansion; reliable once x dominates 4 nu^2.
double bessel_j_asymptotic(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double c = 1.0;
  double p = 1.0, q = 0.0;
  double best = std::numeric_limits<double>::max();
  for (int k = 1; k < 40; ++k) {
    const double odd = 2.0 * k - 1.0;
    c *= (mu - odd * odd) / (k * 8.0 * x);
    const double mag = std::fabs(c);
    if (mag >= best) break;  // smallest term reached
    best = mag;
    const int phase = (k / 2) % 2 ? -1 : 1;
    if (k % 2 == 1)
      q += ((k / 2) % 2 ? -c : c);
    else
      p += (phase == 1 ? c : -c);
    if (mag < 1e-18) break;
  }
  const double chi = x - 0.5 * nu * kPi - 0.25 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j(double nu, double x) {
  if (nu < 0 || x < 0) throw std::invalid_argument("bessel_j requires nu, x >= 0");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (x <= 16.0) return bessel_j_series(nu, x);
  if (nu <= 2.5) return bessel_j_asymptotic(nu, x);
  // Large order: climb from the fractional part, stable because x > nu here.
  const double nu0 = nu - std::floor(nu);
  double jm = bessel_j_asymptotic(nu0, x);
  double jc = bessel_j_asymptotic(nu0 + 1.0, x);
  double s = nu0 + 1.0;
  while (s < nu - 0.5) {
    const double jn = (2.0 * s / x) * jc - jm;
    jm = jc;
    jc = jn;
    s += 1.0;
  }
  return jc;
}

double bessel_j_zero(double nu, int k) {
  if (k < 1) throw std::invalid_argument("bessel_j_zero requires k >= 1");
  const double mu = 4.0 * nu * nu;
  const double b = (k + 0.5 * nu - 0.25) * kPi;
  double z = b - (mu - 1.0) / (8.0 * b) -
             4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * std::pow(8.0 * b, 3));
  for (int it = 0; it < 12; ++it) {
    const double j = bessel_j(nu, z);
    const double jp = (nu / z) * j - bessel_j(nu + 1.0, z);
    if (jp == 0.0) break;
    const double step = j / jp;
    z -= step;
    if (std::fabs(step) < 1e-14 * z) break;
  }
  return z;
}

namespace {

std::string term_location(const TermKey& key) {
  std::ostringstream os;
  os << "term (a=" << rational_str(key.a) << ", b=" << rational_str(key.b)
     << ", k=" << key.k << ", n=" << key.n << ")";
  return os.str();
}

// Checks the integrability of every scalar (n=0) term of t over R^m; returns
// false when no scalar term exists at all.
bool check_radial_preconditions(const TermSum& t) {
  const int m = t.params().m;
  bool any_scalar = false;
  for (const auto& [key, c] : t.terms()) {
    if (key.n != 0) continue;
    any_scalar = true;
    if (key.k < 0)
      throw std::invalid_argument("negative Gauss multiplicity in " +
                                  term_location(key) + ": not integrable");
    if (!(2 * key.a + m > 0))
      throw std::invalid_argument("integral diverges at the origin for " +
                                  term_location(key));
    if (key.k == 0 && !(2 * key.a + 2 * key.b + m < 0))
      throw std::invalid_argument("integral diverges at infinity for " +
                                  term_location(key));
    if (key.k > 0 && !(t.params().beta > 0))
      throw std::invalid_argument("Gauss factor requires beta > 0 in " +
                                  term_location(key));
  }
  return any_scalar;
}

}  // namespace

QuadratureResult radial_integral(const TermSum& t, double tol) {
  if (!check_radial_preconditions(t)) return {};
  const int m = t.params().m;
  auto g = [&t, m](double r) {
    return t.eval_radial(r).first * std::pow(r, m - 1);
  };
  QuadratureResult res = integrate_semi_infinite(g, tol);
  const double area = sphere_area(m);
  return {res.value * area, res.abs_error_estimate * area, res.evaluations};
}

QuadratureResult radial_abs_integral(const TermSum& t, double tol) {
  if (!check_radial_preconditions(t)) return {};
  const int m = t.params().m;
  auto g = [&t, m](double r) {
    return std::fabs(t.eval_radial(r).first) * std::pow(r, m - 1);
  };
  QuadratureResult res = integrate_semi_infinite(g, tol);
  const double area = sphere_area(m);
  return {res.value * area, res.abs_error_estimate * area, res.evaluations};
}

QuadratureResult moment(int k, const TermSum& t, double tol) {
  if (k < 0) throw std::invalid_argument("moment requires k >= 0");
  TermSum integrand = TermSum::monomial(t.params(), 1, 0, 0, 0, k) * t;
  bool any_scalar = false;
  for (const auto& [key, c] : integrand.terms())
    if (key.n == 0) any_scalar = true;
  if (!any_scalar) return {};  // odd parity, exact zero
  return radial_integral(integrand, tol);
}

namespace {

// Euler transformation of a tail of (nearly) alternating segment sums.
double euler_sum(std::vector<double> partials, double* err) {
  *err = 0.0;
  if (partials.empty()) return 0.0;
  double prev = partials.back();
  while (partials.size() > 1) {
    for (std::size_t i = 0; i + 1 < partials.size(); ++i)
      partials[i] = 0.5 * (partials[i] + partials[i + 1]);
    partials.pop_back();
    *err = std::fabs(partials[0] - prev);
    prev = partials[0];
  }
  return partials[0];
}

}  // namespace

double hankel_transform(const std::function<double(double)>& w, double nu,
                        double rho, double tol, long* evaluations) {
  long evals = 0;
  double result;
  if (rho <= 0.0) {
    if (nu == 0.0) {
      QuadratureResult q = integrate_semi_infinite(w, tol);
      evals = q.evaluations;
      result = q.value;
    } else {
      result = 0.0;
    }
    if (evaluations) *evaluations = evals;
    return result;
  }

  auto f = [&w, nu, rho](double r) { return w(r) * bessel_j(nu, r * rho); };
  const int max_zones = 400;
  std::vector<double> terms;
  terms.reserve(64);
  double lo = 0.0;
  double abs_scale = 0.0;
  bool settled = false;
  for (int j = 1; j <= max_zones; ++j) {
    const double hi = bessel_j_zero(nu, j) / rho;
    QuadratureResult q{};
    if (hi - lo > 16.0) {
      // At small rho a single zone spans many decades; a flat adaptive pass
      // can miss the integrand's mass, so walk it in doubling pieces.
      double a = lo, step = 1.0;
      while (a < hi) {
        const double b = std::min(hi, a + step);
        QuadratureResult piece = integrate(f, a, b, 0.1 * tol);
        q.value += piece.value;
        q.abs_error_estimate += piece.abs_error_estimate;
        q.evaluations += piece.evaluations;
        a = b;
        step *= 2.0;
      }
    } else {
      q = integrate(f, lo, hi, 0.1 * tol);
    }
    evals += q.evaluations;
    terms.push_back(q.value);
    abs_scale = std::max(abs_scale, std::fabs(q.value));
    lo = hi;
    if (terms.size() >= 3 &&
        std::fabs(terms.back()) < tol * std::max(abs_scale, 1e-300) &&
        std::fabs(terms[terms.size() - 2]) < tol * std::max(abs_scale, 1e-300)) {
      settled = true;
      break;
    }
  }
  if (settled) {
    result = 0.0;
    for (double t : terms) result += t;
  } else {
    // Alternating algebraic tail: plain sum of the head, Euler-accelerate the
    // last stretch of sign-alternating zone sums.
    std::size_t tail_start = terms.size() > 40 ? terms.size() - 40 : terms.size() / 2;
    while (tail_start + 1 < terms.size() &&
           terms[tail_start] * terms[tail_start + 1] >= 0)
      ++tail_start;
    double head = 0.0;
    for (std::size_t i = 0; i < tail_start; ++i) head += terms[i];
    std::vector<double> partials;
    double run = 0.0;
    for (std::size_t i = tail_start; i < terms.size(); ++i) {
      run += terms[i];
      partials.push_back(run);
    }
    double accel_err = 0.0;
    result = head + euler_sum(std::move(partials), &accel_err);
    if (accel_err > 100 * tol * std::max(1.0, std::fabs(result)))
      throw NumericError("hankel_transform: tail acceleration did not converge");
  }
  if (evaluations) *evaluations = evals;
  return result;
}

namespace {

struct HankelSetup {
  std::function<double(double)> w;
  double nu;
  int ell;
  int m;
};

HankelSetup hankel_setup(const FamilySpec& spec) {
  spec.validate();
  const WeightParams& p = spec.params;
  const double m = p.m;
  const int ell = spec.ell;
  if (spec.family == Family::S) {
    const double e1 = 2.0 * (to_double(p.mu) + ell) + 0.5 * m;
    const double e2 = to_double(p.alpha) + ell;
    if (!(e1 + 2.0 * e2 < -0.5))
      throw std::invalid_argument(
          "family S Fourier profile requires 2(mu+ell)+m/2+2(alpha+ell) < -1/2");
    if (!(e1 > -1.0))
      throw std::invalid_argument(
          "family S Fourier profile integrand is non-integrable at r=0");
    return {[e1, e2](double r) {
              return std::pow(r, e1) * std::pow(1.0 + r * r, e2);
            },
            0.5 * m - 1.0, ell, p.m};
  }
  const double e2 = to_double(p.alpha) + ell;
  const double beta = to_double(p.beta);
  const double e1 = 0.5 * m;
  return {[e1, e2, beta](double r) {
            return std::pow(r, e1) * std::pow(1.0 + r * r, e2) *
                   std::exp(-beta * r * r);
          },
          0.5 * m - 1.0, ell, p.m};
}

double magnitude_from_hankel(const HankelSetup& setup, double rho, double h) {
  const double expo = 1.0 - 0.5 * setup.m + setup.ell;
  const double factor = std::pow(2.0 * kPi, 0.5 * setup.m);
  if (rho == 0.0) {
    if (expo > 0.0) return 0.0;
    if (expo == 0.0) return factor * std::fabs(h);
    return std::numeric_limits<double>::infinity();
  }
  return factor * std::pow(rho, expo) * std::fabs(h);
}

}  // namespace

RadialProfile fourier_profile(const FamilySpec& spec, std::vector<double> rho_grid,
                              double tol, int threads) {
  HankelSetup setup = hankel_setup(spec);
  RadialProfile profile;
  profile.meta = spec;
  profile.rho = std::move(rho_grid);
  for (std::size_t i = 1; i < profile.rho.size(); ++i)
    if (!(profile.rho[i] > profile.rho[i - 1]))
      throw std::invalid_argument("rho grid must be strictly increasing");
  profile.hankel.assign(profile.rho.size(), 0.0);
  profile.psi_hat_mag.assign(profile.rho.size(), 0.0);
  parallel_for(profile.rho.size(), threads, [&](std::size_t i) {
    const double h = hankel_transform(setup.w, setup.nu, profile.rho[i], tol);
    profile.hankel[i] = h;
    profile.psi_hat_mag[i] = magnitude_from_hankel(setup, profile.rho[i], h);
  });
  return profile;
}

RadialProfile ft_grid_oracle(const FamilySpec& spec, int grid_size,
                             double box_half_width, std::vector<double> rho_grid,
                             int threads) {
  if (spec.params.m != 2)
    throw std::invalid_argument("ft_grid_oracle supports m=2 only");
  if (grid_size < 16) throw std::invalid_argument("grid too small");
  TermSum psi = wavelet(spec);
  bool singular_origin = false;
  for (const auto& [key, c] : psi.terms())
    if (key.a < 0) singular_origin = true;

  const int n = grid_size;
  const double L = box_half_width;
  const double dx = 2.0 * L / (n - 1);
  std::vector<double> coord(n);
  for (int i = 0; i < n; ++i) coord[i] = -L + i * dx;

  // Component samples: scalar, vector_x, vector_y.
  std::vector<double> s(n * n), vx(n * n), vy(n * n);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const double x = coord[ix], y = coord[iy];
      const double r = std::hypot(x, y);
      if (r < 1e-14 && singular_origin) {
        s[iy * n + ix] = vx[iy * n + ix] = vy[iy * n + ix] = 0.0;
        continue;
      }
      auto [sc, vc] = psi.eval_radial(r);
      s[iy * n + ix] = sc;
      vx[iy * n + ix] = vc * x;
      vy[iy * n + ix] = vc * y;
    }

  const int n_angles = 8;
  RadialProfile profile;
  profile.meta = spec;
  profile.rho = std::move(rho_grid);
  profile.hankel.assign(profile.rho.size(), 0.0);
  profile.psi_hat_mag.assign(profile.rho.size(), 0.0);

  parallel_for(profile.rho.size(), threads, [&](std::size_t i) {
    const double rho = profile.rho[i];
    double mag_sum = 0.0;
    std::vector<double> cx(n), sx(n), cy(n), sy(n);
    for (int q = 0; q < n_angles; ++q) {
      const double theta = kPi * (q + 0.5) / n_angles;
      const double u1 = rho * std::cos(theta), u2 = rho * std::sin(theta);
      for (int j = 0; j < n; ++j) {
        cx[j] = std::cos(coord[j] * u1);
        sx[j] = std::sin(coord[j] * u1);
        cy[j] = std::cos(coord[j] * u2);
        sy[j] = std::sin(coord[j] * u2);
      }
      // e^{-i<x,u>} = (cx - i sx)(cy - i sy) componentwise
      double re[3] = {0, 0, 0}, im[3] = {0, 0, 0};
      for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
          const double pr = cx[ix] * cy[iy] - sx[ix] * sy[iy];
          const double pi = -(sx[ix] * cy[iy] + cx[ix] * sy[iy]);
          const double comps[3] = {s[iy * n + ix], vx[iy * n + ix],
                                   vy[iy * n + ix]};
          for (int c = 0; c < 3; ++c) {
            re[c] += pr * comps[c];
            im[c] += pi * comps[c];
          }
        }
      double mag2 = 0.0;
      for (int c = 0; c < 3; ++c) mag2 += re[c] * re[c] + im[c] * im[c];
      mag_sum += std::sqrt(mag2) * dx * dx;
    }
    profile.psi_hat_mag[i] = mag_sum / n_angles;
  });
  return profile;
}

AdmissibilityResult admissibility(const FamilySpec& spec, double tol) {
  HankelSetup setup = hankel_setup(spec);
  const double e0 = 2.0 * setup.ell + 1.0 - setup.m;
  if (e0 <= -1.0) {
    const double h0 = hankel_transform(setup.w, setup.nu, 0.0, tol);
    if (std::fabs(h0) > 1e-12)
      throw NotAdmissibleError(
          "not admissible: |psi_hat|^2/|u|^m diverges at the origin "
          "(insufficient vanishing moments)");
  }
  auto g = [&setup, e0, tol](double rho) {
    const double h = hankel_transform(setup.w, setup.nu, rho, 0.1 * tol);
    return std::pow(rho, e0) * h * h;
  };

  double total = 0.0, err = 0.0;
  double lo = 0.0, width = 1.0;
  std::vector<double> segs;
  bool converged = false;
  double tail_bound = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 24; ++i) {
    QuadratureResult q = integrate(g, lo, lo + width, tol);
    total += q.value;
    err += q.abs_error_estimate;
    segs.push_back(std::fabs(q.value));
    lo += width;
    if (i > 0) width *= 2.0;
    if (segs.size() >= 2) {
      const double last = segs[segs.size() - 1];
      const double prev = segs[segs.size() - 2];
      if (prev > 0 && last < prev) {
        const double ratio = last / prev;
        tail_bound = ratio < 1.0 ? last * ratio / (1.0 - ratio)
                                 : std::numeric_limits<double>::infinity();
      }
      if (last <= tol * std::max(std::fabs(total), 1e-300) &&
          prev <= tol * std::max(std::fabs(total), 1e-300)) {
        converged = tail_bound <= 10 * tol * std::max(std::fabs(total), 1e-300);
        break;
      }
    }
  }
  const double factor = std::pow(2.0 * kPi, setup.m);
  AdmissibilityResult result{factor * total, converged, factor * tail_bound};
  if (result.converged && !(result.constant > 0))
    throw NumericError("admissibility: non-positive constant");
  return result;
}

void write_profile_csv(const RadialProfile& profile, std::ostream& os) {
  os << "rho,H,psi_hat_mag\n";
  char buf[128];
  for (std::size_t i = 0; i < profile.rho.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", profile.rho[i],
                  profile.hankel[i], profile.psi_hat_mag[i]);
    os << buf;
  }
}

}  // namespace monowav
