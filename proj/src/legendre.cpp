#include "thermoring/legendre.hpp"

#include "thermoring/numfmt.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace thermoring {

namespace {

void validate(const std::vector<double>& grid, const std::vector<double>& values) {
  if (grid.size() < 2) {
    throw std::invalid_argument("SampledFunction: need at least two grid points");
  }
  if (grid.size() != values.size()) {
    throw std::invalid_argument("SampledFunction: grid/value size mismatch");
  }
  for (double a : grid) {
    if (!std::isfinite(a)) {
      throw std::domain_error("SampledFunction: grid points must be finite");
    }
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::domain_error("SampledFunction: grid must be strictly increasing");
    }
  }
  for (double v : values) {
    require_tropical(v, "SampledFunction");  // finite or +inf, never NaN/-inf
  }
}

}  // namespace

SampledFunction make_sampled(std::vector<double> grid, std::vector<double> values) {
  validate(grid, values);
  return SampledFunction{std::move(grid), std::move(values)};
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi > lo)) {
    throw std::invalid_argument("uniform_grid: need hi > lo and step > 0");
  }
  auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i) g[i] = lo + static_cast<double>(i) * step;
  return g;
}

SampledFunction conjugate(const SampledFunction& f, const std::vector<double>& dual_grid) {
  validate(f.grid, f.values);
  if (dual_grid.size() < 2) {
    throw std::invalid_argument("conjugate: need at least two dual grid points");
  }
  bool any_finite = false;
  for (double v : f.values) {
    if (v != kTropicalInf) any_finite = true;
  }
  if (!any_finite) {
    throw std::domain_error("conjugate: function is +inf everywhere");
  }
  std::vector<double> out(dual_grid.size());
  for (std::size_t j = 0; j < dual_grid.size(); ++j) {
    double x = dual_grid[j];
    double best = -kTropicalInf;
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
      if (f.values[i] == kTropicalInf) continue;  // outside the effective domain
      double t = f.grid[i] * x - f.values[i];
      if (t > best) best = t;
    }
    out[j] = best;
  }
  return make_sampled(dual_grid, std::move(out));
}

SampledFunction biconjugate(const SampledFunction& f,
                            const std::vector<double>& dual_grid,
                            const std::vector<double>& primal_grid) {
  validate(f.grid, f.values);
  if (primal_grid.size() < 2) {
    throw std::invalid_argument("biconjugate: need at least two primal points");
  }
  for (double p : primal_grid) {
    if (!(p >= f.grid.front() && p <= f.grid.back())) {
      throw std::domain_error("biconjugate: primal grid leaves the hull of f's grid");
    }
  }
  SampledFunction star = conjugate(f, dual_grid);
  std::vector<double> out(primal_grid.size());
  for (std::size_t k = 0; k < primal_grid.size(); ++k) {
    double p = primal_grid[k];
    double best = -kTropicalInf;
    for (std::size_t j = 0; j < star.grid.size(); ++j) {
      double t = p * star.grid[j] - star.values[j];
      if (t > best) best = t;
    }
    // Envelope guarantee on coinciding nodes (see header).
    auto it = std::lower_bound(f.grid.begin(), f.grid.end(), p);
    if (it != f.grid.end() && *it == p) {
      double fv = f.values[static_cast<std::size_t>(it - f.grid.begin())];
      if (fv < best) best = fv;
    }
    out[k] = best;
  }
  return make_sampled(primal_grid, std::move(out));
}

double convexity_defect(const SampledFunction& f) {
  validate(f.grid, f.values);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < f.grid.size(); ++i) {
    double l = f.values[i - 1];
    double m = f.values[i];
    double r = f.values[i + 1];
    if (m == kTropicalInf && (l == kTropicalInf || r == kTropicalInf)) continue;
    double d = m - 0.5 * (l + r);
    if (d > worst) worst = d;
  }
  return worst;
}

SampledFunction read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || (line != "x,f" && line != "x,f\r")) {
    throw std::invalid_argument("read_csv: expected header 'x,f'");
  }
  std::vector<double> grid, values;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("read_csv: malformed row '" + line + "'");
    }
    double x = 0.0, v = 0.0;
    auto r1 = std::from_chars(line.data(), line.data() + comma, x);
    auto r2 = std::from_chars(line.data() + comma + 1, line.data() + line.size(), v);
    if (r1.ec != std::errc{} || r1.ptr != line.data() + comma ||
        r2.ec != std::errc{} || r2.ptr != line.data() + line.size()) {
      throw std::invalid_argument("read_csv: malformed row '" + line + "'");
    }
    grid.push_back(x);
    values.push_back(v);
  }
  return make_sampled(std::move(grid), std::move(values));
}

void write_csv(const SampledFunction& f, std::ostream& out) {
  out << "x,f\n";
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    out << format_double(f.grid[i]) << ',' << format_double(f.values[i]) << '\n';
  }
}

}  // namespace thermoring
