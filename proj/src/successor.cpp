#include "thermoring/successor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "thermoring/entropy.hpp"
#include "thermoring/numfmt.hpp"

namespace thermoring {

namespace {

// Stable -t*log(1 + exp(-x/t)).
double softmin_zero(double x, double t) {
  if (x >= 0.0) return -t * std::log1p(std::exp(-x / t));
  return x - t * std::log1p(std::exp(x / t));
}

// Derivative of the binary tsallis entropy; strictly decreasing in p.
double tsallis_deriv(double a, double p) {
  return a / (1.0 - a) * (std::pow(p, a - 1.0) - std::pow(1.0 - p, a - 1.0));
}

// Solves tsallis'(p) = target on (0,1) by bisection; the derivative is
// strictly decreasing, so the root is unique when it exists.
double tsallis_deriv_inverse(double a, double target) {
  double lo = 1e-300;
  double hi = 1.0 - 1e-16;
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    double mid = 0.5 * (lo + hi);
    if (tsallis_deriv(a, mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

OplusResult successor(const WittContext& ctx, TropicalValue x) {
  return oplus(ctx, x, 0.0);
}

TropicalValue successor_closed(const WittContext& ctx, TropicalValue x) {
  require_tropical(x, "successor_closed");
  const Measure& m = ctx.measure;
  if (m.kind == MeasureKind::renyi) {
    throw std::invalid_argument("successor_closed: no closed form for the renyi family");
  }
  if (ctx.T == 0.0) return std::min(x, 0.0);  // zero-temperature limit of every branch
  switch (m.kind) {
    case MeasureKind::shannon:
      if (x == kTropicalInf) return 0.0;
      return softmin_zero(x, ctx.T * m.C);
    case MeasureKind::kl: {
      if (x == kTropicalInf) return -ctx.T * std::log(1.0 - m.q);
      // -T*log(q*exp(-x/T) + 1 - q), factored for stability on both signs.
      if (x >= 0.0) return -ctx.T * std::log(m.q * std::exp(-x / ctx.T) + 1.0 - m.q);
      return x - ctx.T * std::log(m.q + (1.0 - m.q) * std::exp(x / ctx.T));
    }
    case MeasureKind::tsallis: {
      double a = m.alpha;
      if (std::fabs(a - 1.0) <= 1e-8) {
        // The entropy itself degenerates to shannon with C = 1 here.
        return x == kTropicalInf ? 0.0 : softmin_zero(x, ctx.T);
      }
      if (a > 1.0) {
        // Bounded derivative range (-L, L): constant/linear tails outside.
        double L = std::fabs(a / (1.0 - a));
        if (x >= L * ctx.T) return 0.0;
        if (x <= -L * ctx.T) return x;
      } else if (x == kTropicalInf) {
        return 0.0;  // weight collapses onto p = 0
      }
      double p = tsallis_deriv_inverse(a, x / ctx.T);
      return p * x - ctx.T * entropy2(m, p);
    }
    default:
      throw std::invalid_argument("successor_closed: unsupported measure");
  }
}

double recover_entropy(const WittContext& ctx, double p, const std::vector<double>& x_grid) {
  if (!(ctx.T > 0.0)) throw std::domain_error("recover_entropy: requires T > 0");
  if (std::isnan(p) || p < 0.0 || p > 1.0) {
    throw std::domain_error("recover_entropy: p must lie in [0, 1]");
  }
  if (x_grid.size() < 2) {
    throw std::invalid_argument("recover_entropy: need at least two grid points");
  }
  auto [lo_it, hi_it] = std::minmax_element(x_grid.begin(), x_grid.end());
  if (*lo_it > -40.0 * ctx.T || *hi_it < 40.0 * ctx.T) {
    throw std::invalid_argument("recover_entropy: x_grid must span [-40T, 40T]");
  }
  double best = kTropicalInf;
  for (double x : x_grid) {
    double v = p * x - successor(ctx, x).value;
    best = std::min(best, v);
  }
  return best;
}

CumulantResiduals cumulant_residuals(const WittContext& ctx, double x, double h) {
  if (!(ctx.T > 0.0)) throw std::domain_error("cumulant_residuals: requires T > 0");
  if (!(h >= 1e-6 && h <= 1e-2)) {
    throw std::invalid_argument("cumulant_residuals: h must lie in [1e-6, 1e-2]");
  }
  if (!std::isfinite(x)) {
    throw std::invalid_argument("cumulant_residuals: finite x required");
  }
  double step = h * std::max({1.0, std::fabs(x), ctx.T});
  OplusResult center = successor(ctx, x);
  double lam = center.value;

  double dx = (successor(ctx, x + step).value - successor(ctx, x - step).value) /
              (2.0 * step);

  double step_T = std::min(step, ctx.T / 2.0);
  WittContext up(ctx.measure, ctx.T + step_T, ctx.solver, ctx.deform_alpha);
  WittContext down(ctx.measure, ctx.T - step_T, ctx.solver, ctx.deform_alpha);
  double dT = (successor(up, x).value - successor(down, x).value) / (2.0 * step_T);

  CumulantResiduals r;
  r.euler = std::fabs(lam - x * dx - ctx.T * dT);
  r.first_cumulant = std::fabs(lam - ctx.T * dT - center.argmin_p * x);
  return r;
}

SuccessorCurve sample_curve(const WittContext& ctx, double x_min, double x_max,
                            double step) {
  if (!(x_min < x_max)) throw std::invalid_argument("sample_curve: x_min must be < x_max");
  if (!(step > 0.0)) throw std::invalid_argument("sample_curve: step must be > 0");
  auto count = static_cast<std::size_t>(std::floor((x_max - x_min) / step + 1e-9)) + 1;
  SuccessorCurve curve{ctx, {}, {}, {}};
  curve.xs.reserve(count);
  curve.values.reserve(count);
  curve.argmins.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    double x = x_min + static_cast<double>(i) * step;
    OplusResult r = successor(ctx, x);
    curve.xs.push_back(x);
    curve.values.push_back(r.value);
    curve.argmins.push_back(r.argmin_p);
  }
  return curve;
}

void write_curve_csv(const SuccessorCurve& curve, std::ostream& out) {
  out << "x,lambda,argmin_p\n";
  for (std::size_t i = 0; i < curve.xs.size(); ++i) {
    out << format_double(curve.xs[i]) << ',' << format_double(curve.values[i]) << ','
        << format_double(curve.argmins[i]) << '\n';
  }
}

}  // namespace thermoring
