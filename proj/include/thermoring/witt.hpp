#pragma once

// Entropy-deformed additions on the min-plus carrier:
//
//   binary    x (+) y      = min_{p in [0,1]} (p x + (1-p) y - T S(p))
//   n-ary     (+)(x_1..x_n) = min over the simplex of sum p_i x_i - T S_n(p)
//   deformed  x (+)_a y    = min_s (s^a x + (1-s)^a y - T S(s))
//
// plus closed forms where they exist and the commutator/associator defect
// functionals.  The binary minimizer is found on a uniform grid and the
// best brackets are polished by golden-section search; +inf arguments are
// resolved analytically (the corresponding weight is pinned to 0), and
// T = 0 short-circuits to min for the undeformed operation.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thermoring/entropy.hpp"
#include "thermoring/tropical.hpp"

namespace thermoring {

struct SolverOptions {
  int grid_n = 512;        // coarse grid points for 1-d minimization (>= 64)
  int refine_iters = 80;   // golden-section iterations per bracket
  double tol = 1e-10;      // bracket width / value-tie tolerance
  int grid_simplex = 0;    // simplex grid divisions; 0 = per-arity default
};

struct WittContext {
  Measure measure;
  double T = 1.0;
  std::optional<double> deform_alpha;  // exponent of the deformed operation
  SolverOptions solver;

  WittContext(Measure m, double temperature, SolverOptions opts = {},
              std::optional<double> deform = std::nullopt);
};

struct OplusResult {
  TropicalValue value = kTropicalInf;
  double argmin_p = 0.0;          // equilibrium weight on the first argument
  bool multiplicity_hint = false; // a second minimizer tied within tol
};

// n-ary measure family: chain extension of a base measure, with optional
// per-arity overrides (an override receives the full probability vector).
struct NaryFamily {
  Measure base;
  std::map<int, std::function<double(const std::vector<double>&)>> overrides;

  static NaryFamily chain(const Measure& m) { return NaryFamily{m, {}}; }
  double eval(const std::vector<double>& probs) const;
};

OplusResult oplus(const WittContext& ctx, TropicalValue x, TropicalValue y);

// Closed forms: shannon -T' log(e^{-x/T'} + e^{-y/T'}) with T' = C*T, and
// kl -T log(q e^{-x/T} + (1-q) e^{-y/T}) (the variational solution of the
// kl objective).  Other kinds have none and are rejected; requires T > 0.
TropicalValue oplus_closed(const WittContext& ctx, TropicalValue x, TropicalValue y);

// The alternative kl closed form -T log(e^{-x/(qT)} + e^{-y/((1-q)T)})
// that scales the exponents instead of mixing the weights.  Shipped for
// comparison; see kl_form_report.
TropicalValue kl_scaled_closed(const WittContext& ctx, TropicalValue x, TropicalValue y);

// Compares both kl closed forms against the brute-force solver and
// records which one matches ("variational" or "scaled").
struct KlFormReport {
  double solver_value = 0.0;
  double variational_value = 0.0;
  double scaled_value = 0.0;
  double variational_defect = 0.0;
  double scaled_defect = 0.0;
  std::string oracle_match;
};
KlFormReport kl_form_report(const WittContext& ctx, TropicalValue x, TropicalValue y);

// n in [2, 6]; family defaults to the chain extension of ctx.measure.
// Simplex grid defaults: 200 divisions for n=3, 80 for n=4, 50 for n=5,
// 32 for n=6 (n=2 uses the dense 1-d path), each followed by one pairwise
// coordinate-descent refinement pass.
TropicalValue oplus_nary(const WittContext& ctx, const std::vector<TropicalValue>& xs);
TropicalValue oplus_nary(const WittContext& ctx, const std::vector<TropicalValue>& xs,
                         const NaryFamily& family);

// Requires ctx.deform_alpha; a = 1 reduces exactly to oplus.  The deformed
// objective need not be convex, so the grid is densified to >= 2048 points
// and the four best brackets are refined.  No T = 0 short-circuit: the
// deformed minimum is genuinely not min(x,y).
TropicalValue oplus_deformed(const WittContext& ctx, TropicalValue x, TropicalValue y);

// |x(+)y - y(+)x| and |x(+)(y(+)z) - (x(+)y)(+)z|; both evaluate through
// the deformed operation when ctx.deform_alpha is set.
double commutator(const WittContext& ctx, TropicalValue x, TropicalValue y);
double associator(const WittContext& ctx, TropicalValue x, TropicalValue y, TropicalValue z);

namespace detail {
// All local minimizer candidates (p, value) the binary solver found;
// exposed for multivalued-output construction in the product semirings.
std::vector<std::pair<double, double>> oplus_candidates(const WittContext& ctx,
                                                        TropicalValue x, TropicalValue y);
}  // namespace detail

}  // namespace thermoring
