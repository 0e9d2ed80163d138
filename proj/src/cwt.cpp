#include "monowav/cwt.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "monowav/parallel.hpp"

namespace monowav {

void CwtField::validate() const {
  if (grid_n < 16) throw std::invalid_argument("field grid must be at least 16x16");
  if (!(half_width > 0)) throw std::invalid_argument("field half width must be > 0");
  if (samples.size() != static_cast<std::size_t>(grid_n) * grid_n)
    throw std::invalid_argument("field sample count does not match grid");
  for (const auto& s : samples)
    for (double v : s)
      if (!std::isfinite(v))
        throw std::invalid_argument("field contains a non-finite sample");
}

double CwtField::l2_norm() const {
  double acc = 0.0;
  for (const auto& s : samples) acc += s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
  const double dx = spacing();
  return std::sqrt(acc * dx * dx);
}

double CwtCoefficients::scale_weight(int j) const {
  const std::size_t count = scales.size();
  if (count == 1) return 1.0 / (scales[0] * scales[0]);
  double dln;
  if (j == 0)
    dln = std::log(scales[1] / scales[0]);
  else if (j + 1 == static_cast<int>(count))
    dln = std::log(scales[j] / scales[j - 1]);
  else
    dln = 0.5 * std::log(scales[j + 1] / scales[j - 1]);
  return dln / (scales[j] * scales[j]);
}

CwtField make_gaussian_bump(int grid_n, double half_width, double sigma,
                            double amplitude) {
  CwtField field{grid_n, half_width, {}};
  field.samples.assign(static_cast<std::size_t>(grid_n) * grid_n, {0.0, 0.0, 0.0});
  for (int iy = 0; iy < grid_n; ++iy)
    for (int ix = 0; ix < grid_n; ++ix) {
      const double x = field.coord(ix), y = field.coord(iy);
      field.at(ix, iy)[0] =
          amplitude * std::exp(-(x * x + y * y) / (2.0 * sigma * sigma));
    }
  field.validate();
  return field;
}

namespace {

struct RadialKernel {
  // (scalar, vector_coeff) of psi at radius r; vector part is vector_coeff * x.
  TermSum sum;
  bool singular_origin;

  explicit RadialKernel(const FamilySpec& spec)
      : sum(wavelet(spec)), singular_origin(false) {
    for (const auto& [key, c] : sum.terms())
      if (key.a < 0) singular_origin = true;
  }
};

// Radius beyond which the wavelet magnitude is negligible relative to its peak.
double effective_radius(const RadialKernel& kernel) {
  double peak = 0.0;
  std::vector<double> mags;
  const double r_max = 64.0, step = 1.0 / 64.0;
  for (double r = step; r <= r_max; r += step) {
    auto [s, vc] = kernel.sum.eval_radial(r);
    const double mag = std::fabs(s) + std::fabs(vc) * r;
    mags.push_back(mag);
    peak = std::max(peak, mag);
  }
  double cut = r_max;
  for (std::size_t i = mags.size(); i-- > 0;) {
    if (mags[i] > 1e-14 * peak) {
      cut = step * (i + 2);
      break;
    }
  }
  return cut;
}

}  // namespace

CwtField sample_wavelet(const FamilySpec& spec, double a,
                        std::array<double, 2> b, int grid_n, double half_width,
                        bool exclude_origin) {
  if (spec.params.m != 2)
    throw std::invalid_argument("the CWT pipeline supports m=2 only");
  if (!(a > 0)) throw std::invalid_argument("scale must be > 0");
  RadialKernel kernel(spec);
  CwtField field{grid_n, half_width, {}};
  field.samples.assign(static_cast<std::size_t>(grid_n) * grid_n, {0.0, 0.0, 0.0});
  const double inv_a = 1.0 / a;
  for (int iy = 0; iy < grid_n; ++iy)
    for (int ix = 0; ix < grid_n; ++ix) {
      const double dx = field.coord(ix) - b[0];
      const double dy = field.coord(iy) - b[1];
      const double r = std::hypot(dx, dy) * inv_a;
      if (r < 1e-14 && kernel.singular_origin) {
        if (!exclude_origin)
          throw std::invalid_argument(
              "wavelet is singular at a lattice point; pass the origin "
              "exclusion flag to zero it");
        continue;
      }
      auto [s, vc] = kernel.sum.eval_radial(r);
      auto& out = field.at(ix, iy);
      out[0] = inv_a * s;
      out[1] = inv_a * vc * dx * inv_a;
      out[2] = inv_a * vc * dy * inv_a;
    }
  field.validate();
  return field;
}

CwtCoefficients cwt_transform(const CwtField& f, const FamilySpec& spec,
                              const std::vector<double>& scales, int threads,
                              bool exclude_origin) {
  f.validate();
  if (spec.params.m != 2)
    throw std::invalid_argument("the CWT pipeline supports m=2 only");
  if (scales.empty()) throw std::invalid_argument("scale list is empty");
  for (std::size_t j = 0; j < scales.size(); ++j) {
    if (!(scales[j] > 0)) throw std::invalid_argument("scales must be positive");
    if (j > 0 && !(scales[j] > scales[j - 1]))
      throw std::invalid_argument("scales must be strictly ascending");
  }

  RadialKernel kernel(spec);
  const double r_eff = effective_radius(kernel);
  const int n = f.grid_n;
  const double dx = f.spacing();
  const double cell = dx * dx;

  CwtCoefficients out;
  out.scales = scales;
  out.grid_n = n;
  out.half_width = f.half_width;
  out.coeffs.assign(scales.size() * static_cast<std::size_t>(n) * n,
                    {0.0, 0.0, 0.0});
  out.admissibility = admissibility(spec);

  std::vector<std::array<double, 3>> table;
  for (std::size_t j = 0; j < scales.size(); ++j) {
    const double a = scales[j];
    const double inv_a = 1.0 / a;
    int radius = static_cast<int>(std::ceil(a * r_eff / dx)) + 1;
    radius = std::min(radius, n - 1);
    const int w = 2 * radius + 1;
    table.assign(static_cast<std::size_t>(w) * w, {0.0, 0.0, 0.0});
    for (int dj = -radius; dj <= radius; ++dj)
      for (int di = -radius; di <= radius; ++di) {
        const double ox = di * dx, oy = dj * dx;
        const double r = std::hypot(ox, oy) * inv_a;
        if (r < 1e-14 && kernel.singular_origin) {
          if (!exclude_origin)
            throw std::invalid_argument(
                "wavelet is singular at a lattice point; pass the origin "
                "exclusion flag to zero it");
          continue;
        }
        auto [s, vc] = kernel.sum.eval_radial(r);
        table[(dj + radius) * w + (di + radius)] = {
            inv_a * s, inv_a * vc * ox * inv_a, inv_a * vc * oy * inv_a};
      }

    auto* block = &out.coeffs[j * static_cast<std::size_t>(n) * n];
    parallel_for(static_cast<std::size_t>(n), threads, [&, block](std::size_t by) {
      const int iby = static_cast<int>(by);
      const int y0 = std::max(0, iby - radius), y1 = std::min(n - 1, iby + radius);
      for (int bx = 0; bx < n; ++bx) {
        const int x0 = std::max(0, bx - radius), x1 = std::min(n - 1, bx + radius);
        double c0 = 0.0, c1 = 0.0, c2 = 0.0;
        for (int iy = y0; iy <= y1; ++iy) {
          const auto* frow = &f.samples[static_cast<std::size_t>(iy) * n];
          const auto* krow = &table[static_cast<std::size_t>(iy - iby + radius) * w +
                                    (x0 - bx + radius)];
          for (int ix = x0; ix <= x1; ++ix, ++krow) {
            const auto& fs = frow[ix];
            const auto& ks = *krow;
            c0 += ks[0] * fs[0] + ks[1] * fs[1] + ks[2] * fs[2];
            c1 += ks[0] * fs[1] - ks[1] * fs[0];
            c2 += ks[0] * fs[2] - ks[2] * fs[0];
          }
        }
        block[static_cast<std::size_t>(iby) * n + bx] = {c0 * cell, c1 * cell,
                                                         c2 * cell};
      }
    });
  }
  return out;
}

std::pair<double, double> plancherel_check(const CwtField& f, const CwtField& g,
                                           const CwtCoefficients& cf,
                                           const CwtCoefficients& cg) {
  if (!f.same_geometry(g) || cf.grid_n != f.grid_n || cg.grid_n != g.grid_n ||
      cf.scales != cg.scales)
    throw std::invalid_argument("plancherel_check: geometry or scale mismatch");
  const double cell = f.spacing() * f.spacing();
  double lhs = 0.0;
  const std::size_t block = static_cast<std::size_t>(f.grid_n) * f.grid_n;
  for (std::size_t j = 0; j < cf.scales.size(); ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < block; ++i) {
      const auto& a = cf.coeffs[j * block + i];
      const auto& b = cg.coeffs[j * block + i];
      acc += a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    }
    lhs += acc * cf.scale_weight(static_cast<int>(j)) * cell;
  }
  double inner = 0.0;
  for (std::size_t i = 0; i < block; ++i) {
    const auto& a = f.samples[i];
    const auto& b = g.samples[i];
    inner += a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  }
  const double rhs = cf.admissibility.constant * inner * cell;
  return {lhs, rhs};
}

CwtField reconstruct(const CwtCoefficients& coeffs, const FamilySpec& spec,
                     int threads, bool exclude_origin) {
  if (coeffs.scales.empty() || coeffs.coeffs.empty())
    throw std::invalid_argument("reconstruct: empty coefficient set");
  if (!(coeffs.admissibility.constant > 0))
    throw std::invalid_argument("reconstruct: missing admissibility constant");

  RadialKernel kernel(spec);
  const double r_eff = effective_radius(kernel);
  const int n = coeffs.grid_n;
  const double dx = 2.0 * coeffs.half_width / (n - 1);
  const double cell = dx * dx;
  const double inv_A = 1.0 / coeffs.admissibility.constant;
  const std::size_t block = static_cast<std::size_t>(n) * n;

  CwtField out{n, coeffs.half_width, {}};
  out.samples.assign(block, {0.0, 0.0, 0.0});

  std::vector<std::array<double, 3>> table;
  for (std::size_t j = 0; j < coeffs.scales.size(); ++j) {
    const double a = coeffs.scales[j];
    const double inv_a = 1.0 / a;
    int radius = static_cast<int>(std::ceil(a * r_eff / dx)) + 1;
    radius = std::min(radius, n - 1);
    const int w = 2 * radius + 1;
    table.assign(static_cast<std::size_t>(w) * w, {0.0, 0.0, 0.0});
    for (int dj = -radius; dj <= radius; ++dj)
      for (int di = -radius; di <= radius; ++di) {
        const double ox = di * dx, oy = dj * dx;
        const double r = std::hypot(ox, oy) * inv_a;
        if (r < 1e-14 && kernel.singular_origin) {
          if (!exclude_origin)
            throw std::invalid_argument(
                "wavelet is singular at a lattice point; pass the origin "
                "exclusion flag to zero it");
          continue;
        }
        auto [s, vc] = kernel.sum.eval_radial(r);
        table[(dj + radius) * w + (di + radius)] = {
            inv_a * s, inv_a * vc * ox * inv_a, inv_a * vc * oy * inv_a};
      }

    const double weight = coeffs.scale_weight(static_cast<int>(j)) * cell * inv_A;
    const auto* cblock = &coeffs.coeffs[j * block];
    parallel_for(static_cast<std::size_t>(n), threads, [&, cblock](std::size_t xy) {
      const int iy = static_cast<int>(xy);
      const int y0 = std::max(0, iy - radius), y1 = std::min(n - 1, iy + radius);
      for (int ix = 0; ix < n; ++ix) {
        const int x0 = std::max(0, ix - radius), x1 = std::min(n - 1, ix + radius);
        double r0 = 0.0, r1 = 0.0, r2 = 0.0;
        for (int by = y0; by <= y1; ++by) {
          const auto* crow = cblock + static_cast<std::size_t>(by) * n;
          const auto* krow = &table[static_cast<std::size_t>(iy - by + radius) * w +
                                    (ix - x0 + radius)];
          for (int bx = x0; bx <= x1; ++bx, --krow) {
            const auto& c = crow[bx];
            const auto& p = *krow;
            r0 += c[0] * p[0] - c[1] * p[1] - c[2] * p[2];
            r1 += c[0] * p[1] + c[1] * p[0];
            r2 += c[0] * p[2] + c[2] * p[0];
          }
        }
        auto& s = out.samples[static_cast<std::size_t>(iy) * n + ix];
        s[0] += r0 * weight;
        s[1] += r1 * weight;
        s[2] += r2 * weight;
      }
    });
  }
  return out;
}

double relative_l2_error(const CwtField& got, const CwtField& want) {
  if (!got.same_geometry(want))
    throw std::invalid_argument("relative_l2_error: geometry mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < want.samples.size(); ++i) {
    for (int c = 0; c < 3; ++c) {
      const double d = got.samples[i][c] - want.samples[i][c];
      num += d * d;
      den += want.samples[i][c] * want.samples[i][c];
    }
  }
  if (den == 0.0) return std::sqrt(num);
  return std::sqrt(num / den);
}

void write_field_csv(const CwtField& field, std::ostream& os) {
  os << "x,y,scalar,vx,vy\n";
  char buf[192];
  for (int iy = 0; iy < field.grid_n; ++iy)
    for (int ix = 0; ix < field.grid_n; ++ix) {
      const auto& s = field.at(ix, iy);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                    field.coord(ix), field.coord(iy), s[0], s[1], s[2]);
      os << buf;
    }
}

CwtField read_field_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("x,y,", 0) != 0)
    throw std::invalid_argument("field CSV: missing x,y header");
  std::vector<std::array<double, 5>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::array<double, 5> row{};
    std::istringstream ls(line);
    std::string cell;
    for (int c = 0; c < 5; ++c) {
      if (!std::getline(ls, cell, ','))
        throw std::invalid_argument("field CSV: short row");
      row[c] = std::stod(cell);
    }
    rows.push_back(row);
  }
  const auto count = rows.size();
  const int n = static_cast<int>(std::llround(std::sqrt(double(count))));
  if (static_cast<std::size_t>(n) * n != count)
    throw std::invalid_argument("field CSV: sample count is not a square");
  CwtField field{n, -rows.front()[0], {}};
  if (!(field.half_width > 0))
    throw std::invalid_argument("field CSV: grid must start at -L");
  field.samples.assign(count, {0.0, 0.0, 0.0});
  const double dx = field.spacing();
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const auto& row = rows[static_cast<std::size_t>(iy) * n + ix];
      if (std::fabs(row[0] - field.coord(ix)) > 1e-9 * std::max(1.0, dx) ||
          std::fabs(row[1] - field.coord(iy)) > 1e-9 * std::max(1.0, dx))
        throw std::invalid_argument("field CSV: grid is not uniform");
      field.at(ix, iy) = {row[2], row[3], row[4]};
    }
  field.validate();
  return field;
}

void write_coeff_csv(const CwtCoefficients& coeffs, int scale_idx,
                     std::ostream& os) {
  os << "a,x,y,scalar,vx,vy\n";
  const int n = coeffs.grid_n;
  const double dx = 2.0 * coeffs.half_width / (n - 1);
  char buf[224];
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const auto& c = coeffs.at(scale_idx, ix, iy);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                    coeffs.scales[scale_idx], -coeffs.half_width + ix * dx,
                    -coeffs.half_width + iy * dx, c[0], c[1], c[2]);
      os << buf;
    }
}

}  // namespace monowav
