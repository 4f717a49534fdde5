#include "thermoring/witt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thermoring {

namespace {

constexpr double kArgminSeparation = 1e-6;  // distinct-minimizer threshold for the hint

// Golden-section minimization on [a, b]; returns the best probed (t, f(t)).
template <typename F>
std::pair<double, double> golden_min(F&& f, double a, double b, int iters, double tol) {
  static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  static const double invphi2 = (3.0 - std::sqrt(5.0)) / 2.0;
  double h = b - a;
  double c = a + invphi2 * h;
  double d = a + invphi * h;
  double fc = f(c);
  double fd = f(d);
  for (int k = 0; k < iters && h > tol; ++k) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      h = b - a;
      c = a + invphi2 * h;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      h = b - a;
      d = a + invphi * h;
      fd = f(d);
    }
  }
  return fc < fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

// Coarse grid over [0,1] plus golden-section polish of the best brackets.
// Returns candidate (p, value) pairs; the grid's own best points are kept
// so exact endpoint minima survive the refinement.
template <typename F>
std::vector<std::pair<double, double>> grid_refine_1d(F&& f, int grid_n, int brackets,
                                                      int iters, double tol) {
  std::vector<double> fv(static_cast<std::size_t>(grid_n));
  auto at = [grid_n](int i) {
    return static_cast<double>(i) / static_cast<double>(grid_n - 1);
  };
  for (int i = 0; i < grid_n; ++i) fv[static_cast<std::size_t>(i)] = f(at(i));

  std::vector<int> order(static_cast<std::size_t>(grid_n));
  for (int i = 0; i < grid_n; ++i) order[static_cast<std::size_t>(i)] = i;
  int keep = std::min(brackets, grid_n);
  std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                    [&fv](int a, int b) { return fv[static_cast<std::size_t>(a)] <
                                                 fv[static_cast<std::size_t>(b)]; });

  std::vector<std::pair<double, double>> cands;
  cands.reserve(static_cast<std::size_t>(2 * keep));
  for (int k = 0; k < keep; ++k) {
    int i = order[static_cast<std::size_t>(k)];
    cands.emplace_back(at(i), fv[static_cast<std::size_t>(i)]);
    double lo = at(std::max(0, i - 1));
    double hi = at(std::min(grid_n - 1, i + 1));
    cands.push_back(golden_min(f, lo, hi, iters, tol));
  }
  return cands;
}

OplusResult pick_result(const std::vector<std::pair<double, double>>& cands, double tol) {
  double best = kTropicalInf;
  for (const auto& c : cands) best = std::min(best, c.second);
  double argmin = 2.0;
  for (const auto& c : cands) {
    if (c.second <= best + tol && c.first < argmin) argmin = c.first;
  }
  bool hint = false;
  for (const auto& c : cands) {
    if (c.second <= best + tol && std::fabs(c.first - argmin) > kArgminSeparation) {
      hint = true;
    }
  }
  // Report the value actually attained at the reported minimizer.
  double value = kTropicalInf;
  for (const auto& c : cands) {
    if (c.first == argmin) value = std::min(value, c.second);
  }
  return OplusResult{value, argmin, hint};
}

int default_simplex_divisions(int k) {
  switch (k) {
    case 3: return 200;
    case 4: return 80;
    case 5: return 50;
    default: return 32;  // k = 6
  }
}

void require_finite_or_inf(const std::vector<TropicalValue>& xs, const char* where) {
  for (double x : xs) require_tropical(x, where);
}

}  // namespace

WittContext::WittContext(Measure m, double temperature, SolverOptions opts,
                         std::optional<double> deform)
    : measure(std::move(m)), T(temperature), deform_alpha(deform), solver(opts) {
  if (std::isnan(T) || T < 0.0) {
    throw std::domain_error("WittContext: temperature must be >= 0");
  }
  if (deform_alpha && !(*deform_alpha > 0.0)) {
    throw std::domain_error("WittContext: deformation exponent must be > 0");
  }
  if (solver.grid_n < 64) {
    throw std::invalid_argument("WittContext: solver.grid_n must be >= 64");
  }
  if (solver.refine_iters < 1) {
    throw std::invalid_argument("WittContext: solver.refine_iters must be >= 1");
  }
  if (!(solver.tol > 0.0)) {
    throw std::invalid_argument("WittContext: solver.tol must be > 0");
  }
  if (solver.grid_simplex < 0) {
    throw std::invalid_argument("WittContext: solver.grid_simplex must be >= 0");
  }
}

double NaryFamily::eval(const std::vector<double>& probs) const {
  auto it = overrides.find(static_cast<int>(probs.size()));
  if (it != overrides.end()) return it->second(probs);
  return entropy_chain(base, probs);
}

namespace detail {

std::vector<std::pair<double, double>> oplus_candidates(const WittContext& ctx,
                                                        TropicalValue x, TropicalValue y) {
  require_tropical(x, "oplus");
  require_tropical(y, "oplus");
  if (ctx.T == 0.0) {
    // Zero-temperature residue: plain tropical minimum.
    if (x == y) return {{0.0, x}, {1.0, x}};
    return x < y ? std::vector<std::pair<double, double>>{{1.0, x}}
                 : std::vector<std::pair<double, double>>{{0.0, y}};
  }
  if (x == kTropicalInf && y == kTropicalInf) return {{0.0, kTropicalInf}};
  // An infinite argument forces its weight to 0 (analytic limit).
  if (x == kTropicalInf) {
    return {{0.0, y - ctx.T * entropy2(ctx.measure, 0.0)}};
  }
  if (y == kTropicalInf) {
    return {{1.0, x - ctx.T * entropy2(ctx.measure, 1.0)}};
  }
  auto f = [&](double p) {
    return p * x + (1.0 - p) * y - ctx.T * entropy2(ctx.measure, p);
  };
  return grid_refine_1d(f, ctx.solver.grid_n, 3, ctx.solver.refine_iters, ctx.solver.tol);
}

}  // namespace detail

OplusResult oplus(const WittContext& ctx, TropicalValue x, TropicalValue y) {
  auto cands = detail::oplus_candidates(ctx, x, y);
  return pick_result(cands, ctx.solver.tol);
}

TropicalValue oplus_closed(const WittContext& ctx, TropicalValue x, TropicalValue y) {
  require_tropical(x, "oplus_closed");
  require_tropical(y, "oplus_closed");
  if (!(ctx.T > 0.0)) throw std::domain_error("oplus_closed: requires T > 0");
  if (x == kTropicalInf && y == kTropicalInf) return kTropicalInf;
  switch (ctx.measure.kind) {
    case MeasureKind::shannon: {
      double Te = ctx.T * ctx.measure.C;
      if (x == kTropicalInf) return y;
      if (y == kTropicalInf) return x;
      double m = std::min(x, y);
      double d = std::fabs(x - y);
      return m - Te * std::log1p(std::exp(-d / Te));
    }
    case MeasureKind::kl: {
      double q = ctx.measure.q;
      if (x == kTropicalInf) return y - ctx.T * std::log(1.0 - q);
      if (y == kTropicalInf) return x - ctx.T * std::log(q);
      double m = std::min(x, y);
      double s = q * std::exp(-(x - m) / ctx.T) + (1.0 - q) * std::exp(-(y - m) / ctx.T);
      return m - ctx.T * std::log(s);
    }
    default:
      throw std::invalid_argument("oplus_closed: no closed form for this measure");
  }
}

TropicalValue kl_scaled_closed(const WittContext& ctx, TropicalValue x, TropicalValue y) {
  require_tropical(x, "kl_scaled_closed");
  require_tropical(y, "kl_scaled_closed");
  if (ctx.measure.kind != MeasureKind::kl) {
    throw std::invalid_argument("kl_scaled_closed: kl measure required");
  }
  if (!(ctx.T > 0.0)) throw std::domain_error("kl_scaled_closed: requires T > 0");
  double u = x == kTropicalInf ? kTropicalInf : x / ctx.measure.q;
  double v = y == kTropicalInf ? kTropicalInf : y / (1.0 - ctx.measure.q);
  if (u == kTropicalInf && v == kTropicalInf) return kTropicalInf;
  if (u == kTropicalInf) return v;
  if (v == kTropicalInf) return u;
  double m = std::min(u, v);
  double d = std::fabs(u - v);
  return m - ctx.T * std::log1p(std::exp(-d / ctx.T));
}

KlFormReport kl_form_report(const WittContext& ctx, TropicalValue x, TropicalValue y) {
  if (ctx.measure.kind != MeasureKind::kl) {
    throw std::invalid_argument("kl_form_report: kl measure required");
  }
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw std::invalid_argument("kl_form_report: finite arguments required");
  }
  KlFormReport rep;
  rep.solver_value = oplus(ctx, x, y).value;
  rep.variational_value = oplus_closed(ctx, x, y);
  rep.scaled_value = kl_scaled_closed(ctx, x, y);
  rep.variational_defect = std::fabs(rep.variational_value - rep.solver_value);
  rep.scaled_defect = std::fabs(rep.scaled_value - rep.solver_value);
  rep.oracle_match = rep.variational_defect <= rep.scaled_defect ? "variational" : "scaled";
  return rep;
}

namespace {

// Enumerate compositions of `total` into k parts, calling visit(parts).
void for_each_composition(int total, int k, std::vector<int>& parts,
                          const std::function<void(const std::vector<int>&)>& visit,
                          int index = 0, int remaining = -1) {
  if (remaining < 0) remaining = total;
  if (index == k - 1) {
    parts[static_cast<std::size_t>(index)] = remaining;
    visit(parts);
    return;
  }
  for (int c = 0; c <= remaining; ++c) {
    parts[static_cast<std::size_t>(index)] = c;
    for_each_composition(total, k, parts, visit, index + 1, remaining - c);
  }
}

}  // namespace

TropicalValue oplus_nary(const WittContext& ctx, const std::vector<TropicalValue>& xs) {
  return oplus_nary(ctx, xs, NaryFamily::chain(ctx.measure));
}

TropicalValue oplus_nary(const WittContext& ctx, const std::vector<TropicalValue>& xs,
                         const NaryFamily& family) {
  const int n = static_cast<int>(xs.size());
  if (n < 2) throw std::invalid_argument("oplus_nary: need at least two arguments");
  if (n > 6) throw std::invalid_argument("oplus_nary: arity above 6 not supported");
  require_finite_or_inf(xs, "oplus_nary");

  if (ctx.T == 0.0) return *std::min_element(xs.begin(), xs.end());

  std::vector<int> free;
  for (int i = 0; i < n; ++i) {
    if (xs[static_cast<std::size_t>(i)] != kTropicalInf) free.push_back(i);
  }
  if (free.empty()) return kTropicalInf;

  // Weights on +inf coordinates are pinned to 0; the measure still sees the
  // full-length vector so families without the identity axiom keep their
  // boundary contributions.
  std::vector<double> probs(static_cast<std::size_t>(n), 0.0);
  auto objective = [&](const std::vector<double>& p) {
    double lin = 0.0;
    for (int i : free) lin += p[static_cast<std::size_t>(i)] * xs[static_cast<std::size_t>(i)];
    return lin - ctx.T * family.eval(p);
  };

  if (free.size() == 1) {
    probs[static_cast<std::size_t>(free[0])] = 1.0;
    return objective(probs);
  }

  if (free.size() == 2) {
    int i = free[0], j = free[1];
    auto f = [&](double t) {
      probs[static_cast<std::size_t>(i)] = t;
      probs[static_cast<std::size_t>(j)] = 1.0 - t;
      return objective(probs);
    };
    auto cands = grid_refine_1d(f, ctx.solver.grid_n, 3, ctx.solver.refine_iters,
                                ctx.solver.tol);
    double best = kTropicalInf;
    for (const auto& c : cands) best = std::min(best, c.second);
    return best;
  }

  const int k = static_cast<int>(free.size());
  const int G = ctx.solver.grid_simplex > 0 ? ctx.solver.grid_simplex
                                            : default_simplex_divisions(k);
  double best = kTropicalInf;
  std::vector<double> best_p(static_cast<std::size_t>(n), 0.0);
  std::vector<int> parts(static_cast<std::size_t>(k));
  for_each_composition(G, k, parts, [&](const std::vector<int>& c) {
    for (int a = 0; a < k; ++a) {
      probs[static_cast<std::size_t>(free[static_cast<std::size_t>(a)])] =
          static_cast<double>(c[static_cast<std::size_t>(a)]) / static_cast<double>(G);
    }
    double v = objective(probs);
    if (v < best) {
      best = v;
      best_p = probs;
    }
  });

  // One pairwise coordinate-descent pass: redistribute mass between each
  // pair of free coordinates with a golden-section line search.
  std::vector<double> p = best_p;
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      int ia = free[static_cast<std::size_t>(a)];
      int ib = free[static_cast<std::size_t>(b)];
      double s = p[static_cast<std::size_t>(ia)] + p[static_cast<std::size_t>(ib)];
      if (s <= 0.0) continue;
      auto f = [&](double t) {
        std::vector<double> trial = p;
        trial[static_cast<std::size_t>(ia)] = t;
        trial[static_cast<std::size_t>(ib)] = s - t;
        return objective(trial);
      };
      auto [t, ft] = golden_min(f, 0.0, s, ctx.solver.refine_iters, ctx.solver.tol);
      if (ft < best) {
        best = ft;
        p[static_cast<std::size_t>(ia)] = t;
        p[static_cast<std::size_t>(ib)] = s - t;
      }
    }
  }
  return best;
}

TropicalValue oplus_deformed(const WittContext& ctx, TropicalValue x, TropicalValue y) {
  if (!ctx.deform_alpha) {
    throw std::invalid_argument("oplus_deformed: context has no deformation exponent");
  }
  const double a = *ctx.deform_alpha;
  require_tropical(x, "oplus_deformed");
  require_tropical(y, "oplus_deformed");
  if (a == 1.0) return oplus(ctx, x, y).value;  // exact reduction

  if (x == kTropicalInf && y == kTropicalInf) return kTropicalInf;
  if (x == kTropicalInf) return y - ctx.T * entropy2(ctx.measure, 0.0);
  if (y == kTropicalInf) return x - ctx.T * entropy2(ctx.measure, 1.0);

  auto f = [&](double s) {
    double lin = std::pow(s, a) * x + std::pow(1.0 - s, a) * y;
    return ctx.T == 0.0 ? lin : lin - ctx.T * entropy2(ctx.measure, s);
  };
  // The deformed objective need not be convex: densify and keep 4 brackets.
  int grid_n = std::max(ctx.solver.grid_n, 2048);
  auto cands = grid_refine_1d(f, grid_n, 4, ctx.solver.refine_iters, ctx.solver.tol);
  double best = kTropicalInf;
  for (const auto& c : cands) best = std::min(best, c.second);
  return best;
}

namespace {

TropicalValue binary_value(const WittContext& ctx, TropicalValue x, TropicalValue y) {
  return ctx.deform_alpha ? oplus_deformed(ctx, x, y) : oplus(ctx, x, y).value;
}

double value_gap(TropicalValue a, TropicalValue b) {
  if (a == b) return 0.0;  // covers the inf == inf case
  return std::fabs(a - b);
}

}  // namespace

double commutator(const WittContext& ctx, TropicalValue x, TropicalValue y) {
  return value_gap(binary_value(ctx, x, y), binary_value(ctx, y, x));
}

double associator(const WittContext& ctx, TropicalValue x, TropicalValue y,
                  TropicalValue z) {
  TropicalValue lhs = binary_value(ctx, x, binary_value(ctx, y, z));
  TropicalValue rhs = binary_value(ctx, binary_value(ctx, x, y), z);
  return value_gap(lhs, rhs);
}

}  // namespace thermoring
