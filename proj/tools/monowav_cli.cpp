#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "monowav/analysis.hpp"
#include "monowav/cwt.hpp"
#include "monowav/families.hpp"

namespace {

using namespace monowav;

struct CommonOpts {
  std::string family = "S";
  int ell = 0;
  int m = 2;
  std::string mu = "0";
  std::string alpha = "0";
  std::string beta = "0";
  double tol = 1e-8;
  int threads = 0;
  std::string out;
};

void add_family_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--family", o.family, "family, S or K")
      ->check(CLI::IsMember({"S", "K"}));
  cmd->add_option("--ell", o.ell, "polynomial index ell");
  cmd->add_option("--m", o.m, "dimension m");
  cmd->add_option("--mu", o.mu, "mu as p/q");
  cmd->add_option("--alpha", o.alpha, "alpha as p/q");
  cmd->add_option("--beta", o.beta, "beta as p/q");
  cmd->add_option("--tol", o.tol, "quadrature tolerance");
  cmd->add_option("--threads", o.threads, "worker cap, 0 = all cores");
  cmd->add_option("--out", o.out, "output path (default stdout)");
}

FamilySpec make_spec(const CommonOpts& o) {
  FamilySpec spec;
  spec.family = o.family == "K" ? Family::K : Family::S;
  if (o.ell < 0) throw std::invalid_argument("ell must be >= 0");
  spec.ell = o.ell;
  spec.params.m = o.m;
  spec.params.mu = parse_rational(o.mu);
  spec.params.alpha = parse_rational(o.alpha);
  spec.params.beta = parse_rational(o.beta);
  spec.validate();
  return spec;
}

std::vector<double> parse_grid(const std::string& text, const char* what) {
  double lo, hi;
  int count;
  char colon1, colon2, tail;
  std::istringstream is(text);
  if (!(is >> lo >> colon1 >> hi >> colon2 >> count) || colon1 != ':' ||
      colon2 != ':' || (is >> tail))
    throw std::invalid_argument(std::string(what) + " must be MIN:MAX:COUNT");
  if (!(lo < hi) || count < 2)
    throw std::invalid_argument(std::string(what) +
                                " needs MIN < MAX and COUNT >= 2");
  std::vector<double> grid(count);
  for (int j = 0; j < count; ++j)
    grid[j] = lo + (hi - lo) * j / (count - 1);
  return grid;
}

std::vector<double> parse_log_grid(const std::string& text, const char* what) {
  double lo, hi;
  int count;
  char colon1, colon2, tail;
  std::istringstream is(text);
  if (!(is >> lo >> colon1 >> hi >> colon2 >> count) || colon1 != ':' ||
      colon2 != ':' || (is >> tail))
    throw std::invalid_argument(std::string(what) + " must be MIN:MAX:COUNT");
  if (!(0 < lo && lo < hi) || count < 2)
    throw std::invalid_argument(std::string(what) +
                                " needs 0 < MIN < MAX and COUNT >= 2");
  std::vector<double> grid(count);
  for (int j = 0; j < count; ++j)
    grid[j] = lo * std::pow(hi / lo, double(j) / (count - 1));
  return grid;
}

/// Writer that targets --out or stdout.
struct Sink {
  std::ofstream file;
  std::ostream* os;

  explicit Sink(const std::string& path) {
    if (path.empty()) {
      os = &std::cout;
    } else {
      file.open(path, std::ios::binary);
      if (!file) throw std::invalid_argument("cannot open output file: " + path);
      os = &file;
    }
  }
};

int cmd_poly(const CommonOpts& o, const std::string& format) {
  FamilySpec spec = make_spec(o);
  Sink sink(o.out);
  if (format == "latex") {
    *sink.os << to_latex(polynomial(spec)) << "\n";
  } else if (format == "csv") {
    auto coeffs = polynomial(spec).expand_coeffs();
    *sink.os << "power,coeff\n";
    for (std::size_t j = 0; j < coeffs.size(); ++j)
      *sink.os << j << "," << rational_str(coeffs[j]) << "\n";
  } else {
    *sink.os << poly_json(spec).dump(2) << "\n";
  }
  return 0;
}

int cmd_check(const CommonOpts& o) {
  FamilySpec spec = make_spec(o);
  TermSum rec = spec.family == Family::S ? gen_S_recurrence(spec)
                                         : gen_K_recurrence(spec);
  TermSum rod = spec.family == Family::S ? rodrigues_S(spec) : rodrigues_K(spec);
  Sink sink(o.out);
  if (!(rec == rod)) {
    *sink.os << "recurrence == rodrigues: MISMATCH\n";
    return 2;
  }
  *sink.os << "recurrence == rodrigues: EXACT\n";
  *sink.os << "degree: " << rec.degree() << "\n";
  if (spec.ell >= 1) {
    TermSum w = wavelet(spec);
    *sink.os << "wavelet forms: EXACT (" << w.terms().size() << " terms)\n";
  }
  return 0;
}

int cmd_moments(const CommonOpts& o, int kmax) {
  FamilySpec spec = make_spec(o);
  TermSum psi = wavelet(spec);
  if (kmax < 0) kmax = spec.ell - 1;
  Sink sink(o.out);
  *sink.os << "k,moment,abs_integral,evaluations\n";
  char buf[160];
  for (int k = 0; k <= kmax; ++k) {
    TermSum integrand = TermSum::monomial(spec.params, 1, 0, 0, 0, k) * psi;
    QuadratureResult mom = moment(k, psi, o.tol);
    QuadratureResult norm = radial_abs_integral(integrand);
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%ld\n", k, mom.value,
                  norm.value, mom.evaluations + norm.evaluations);
    *sink.os << buf;
  }
  return 0;
}

int cmd_fourier(const CommonOpts& o, const std::string& rho_spec) {
  FamilySpec spec = make_spec(o);
  auto rho = parse_grid(rho_spec, "--rho");
  RadialProfile profile = fourier_profile(spec, rho, o.tol, o.threads);
  Sink sink(o.out);
  write_profile_csv(profile, *sink.os);
  return 0;
}

int cmd_admissibility(const CommonOpts& o) {
  FamilySpec spec = make_spec(o);
  AdmissibilityResult adm = admissibility(spec, o.tol);
  nlohmann::json doc;
  doc["constant"] = adm.constant;
  doc["converged"] = adm.converged;
  doc["tail_bound"] = adm.tail_bound;
  Sink sink(o.out);
  *sink.os << doc.dump(2) << "\n";
  return 0;
}

struct CwtOpts {
  int grid = 64;
  double half_width = 6.0;
  std::string scales = "0.125:8:24";
  double bump_sigma = 0.6;
  std::string in;
};

CwtField load_field(const CommonOpts& o, const CwtOpts& c) {
  if (!c.in.empty()) {
    std::ifstream is(c.in, std::ios::binary);
    if (!is) throw std::invalid_argument("cannot open input field: " + c.in);
    return read_field_csv(is);
  }
  return make_gaussian_bump(c.grid, c.half_width, c.bump_sigma, 1.0);
}

int cmd_cwt(const CommonOpts& o, const CwtOpts& c) {
  FamilySpec spec = make_spec(o);
  CwtField f = load_field(o, c);
  auto scales = parse_log_grid(c.scales, "--scales");
  CwtCoefficients coeffs = cwt_transform(f, spec, scales, o.threads);
  auto [lhs, rhs] = plancherel_check(f, f, coeffs, coeffs);

  std::string prefix = o.out;
  if (!prefix.empty()) {
    {
      std::ofstream os(prefix + ".field.csv", std::ios::binary);
      write_field_csv(f, os);
    }
    for (std::size_t j = 0; j < scales.size(); ++j) {
      char name[32];
      std::snprintf(name, sizeof name, ".scale%02zu.csv", j);
      std::ofstream os(prefix + name, std::ios::binary);
      write_coeff_csv(coeffs, static_cast<int>(j), os);
    }
  }
  nlohmann::json doc;
  doc["scales"] = scales;
  doc["admissibility"] = coeffs.admissibility.constant;
  doc["plancherel_lhs"] = lhs;
  doc["plancherel_rhs"] = rhs;
  doc["plancherel_ratio"] = lhs / rhs;
  Sink summary(prefix.empty() ? std::string() : prefix + ".summary.json");
  *summary.os << doc.dump(2) << "\n";
  return 0;
}

int cmd_reconstruct(const CommonOpts& o, const CwtOpts& c) {
  FamilySpec spec = make_spec(o);
  CwtField f = load_field(o, c);
  auto scales = parse_log_grid(c.scales, "--scales");
  CwtCoefficients coeffs = cwt_transform(f, spec, scales, o.threads);
  CwtField rec = reconstruct(coeffs, spec, o.threads);
  Sink sink(o.out);
  write_field_csv(rec, *sink.os);
  char buf[64];
  std::snprintf(buf, sizeof buf, "relative_l2_error=%.17g\n",
                relative_l2_error(rec, f));
  std::cerr << buf;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monogenic Clifford polynomial families and spheroidal wavelets"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string poly_format = "json";
  int kmax = -1;
  std::string rho_spec = "0.05:4:80";
  CwtOpts cwt_opts;

  auto* poly = app.add_subcommand("poly", "generate a family polynomial");
  add_family_flags(poly, o);
  poly->add_option("--format", poly_format, "json, csv or latex")
      ->check(CLI::IsMember({"json", "csv", "latex"}));

  auto* check = app.add_subcommand("check", "recurrence vs Rodrigues cross-check");
  add_family_flags(check, o);

  auto* moments = app.add_subcommand("moments", "wavelet moment integrals");
  add_family_flags(moments, o);
  moments->add_option("--kmax", kmax, "highest moment order (default ell-1)");

  auto* fourier = app.add_subcommand("fourier", "Hankel/Fourier wavelet profile");
  add_family_flags(fourier, o);
  fourier->add_option("--rho", rho_spec, "rho grid MIN:MAX:COUNT");

  auto* adm = app.add_subcommand("admissibility", "admissibility constant");
  add_family_flags(adm, o);

  auto* cwt = app.add_subcommand("cwt", "wavelet transform of a 2-D field");
  add_family_flags(cwt, o);
  cwt->add_option("--grid", cwt_opts.grid, "grid points per axis");
  cwt->add_option("--half-width", cwt_opts.half_width, "box half width L");
  cwt->add_option("--scales", cwt_opts.scales, "log scale grid MIN:MAX:COUNT");
  cwt->add_option("--bump-sigma", cwt_opts.bump_sigma, "test bump width");
  cwt->add_option("--in", cwt_opts.in, "analyze this field CSV instead");

  auto* rec = app.add_subcommand("reconstruct", "analyze then resynthesize");
  add_family_flags(rec, o);
  rec->add_option("--grid", cwt_opts.grid, "grid points per axis");
  rec->add_option("--half-width", cwt_opts.half_width, "box half width L");
  rec->add_option("--scales", cwt_opts.scales, "log scale grid MIN:MAX:COUNT");
  rec->add_option("--bump-sigma", cwt_opts.bump_sigma, "test bump width");
  rec->add_option("--in", cwt_opts.in, "analyze this field CSV instead");

  CLI11_PARSE(app, argc, argv);

  try {
    if (poly->parsed()) return cmd_poly(o, poly_format);
    if (check->parsed()) return cmd_check(o);
    if (moments->parsed()) return cmd_moments(o, kmax);
    if (fourier->parsed()) return cmd_fourier(o, rho_spec);
    if (adm->parsed()) return cmd_admissibility(o);
    if (cwt->parsed()) return cmd_cwt(o, cwt_opts);
    if (rec->parsed()) return cmd_reconstruct(o, cwt_opts);
  } catch (const monowav::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
