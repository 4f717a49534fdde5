#pragma once

// One-variable slice of the deformed addition: lambda(x) = x (+) 0.
//
// lambda carries the whole binary operation (x (+) y = lambda(x - y) + y for
// finite arguments), so curve sampling, closed/piecewise forms, entropy
// recovery by conjugation, and the Euler/first-cumulant identities all live
// here.

#include <ostream>
#include <vector>

#include "thermoring/tropical.hpp"
#include "thermoring/witt.hpp"

namespace thermoring {

// Sampled successor curve on an inclusive uniform grid.
struct SuccessorCurve {
  WittContext ctx;
  std::vector<double> xs;
  std::vector<double> values;   // lambda(x) per grid point
  std::vector<double> argmins;  // minimizing weight p(x) per grid point
};

// lambda(x) = min_p (p*x - T*S(p)), i.e. oplus(ctx, x, 0).
OplusResult successor(const WittContext& ctx, TropicalValue x);

// Closed or piecewise form of lambda:
//   shannon      -T*C*log(1 + exp(-x/(T*C)))
//   kl(q)        -T*log(q*exp(-x/T) + 1 - q)
//   tsallis(a)   interior stationary point found by solving S'(p) = x/T by
//                bisection (to 1e-12 in p); for a > 1 the derivative range is
//                bounded by L = |a/(1-a)| and the curve continues as the
//                constant 0 branch (x >= L*T) or the linear x branch
//                (x <= -L*T).
// renyi has unbounded non-elementary inverse derivative and is rejected.
TropicalValue successor_closed(const WittContext& ctx, TropicalValue x);

// Reconstructs T*S(p) as the grid minimum of p*x - lambda(x).
// Requires T > 0 and an x_grid spanning at least [-40T, 40T].
double recover_entropy(const WittContext& ctx, double p, const std::vector<double>& x_grid);

// Residuals of two analytic identities, via central differences with step
// h*max(1, |x|, T) (the T step is capped at T/2 so T - step stays positive):
//   euler          |lambda - x*d_x(lambda) - T*d_T(lambda)|
//   first_cumulant |lambda - T*d_T(lambda) - p(x)*x|
struct CumulantResiduals {
  double euler = 0.0;
  double first_cumulant = 0.0;
};
CumulantResiduals cumulant_residuals(const WittContext& ctx, double x, double h);

// Samples lambda and its argmin on the inclusive grid [x_min, x_max] / step.
SuccessorCurve sample_curve(const WittContext& ctx, double x_min, double x_max,
                            double step);

// Writes "x,lambda,argmin_p" CSV rows with round-trip float precision.
void write_curve_csv(const SuccessorCurve& curve, std::ostream& out);

}  // namespace thermoring
