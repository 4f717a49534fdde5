#pragma once

// Discrete Legendre/Fenchel conjugation on sampled functions.
//
// A SampledFunction is a strictly increasing grid with one value per node;
// values may be +inf (outside the effective domain) but never NaN or -inf.
// conjugate computes f*(x) = max_i (a_i x - f(a_i)) over the sample nodes,
// biconjugate maps back onto a primal grid, giving the discrete convex
// envelope f** <= f.

#include <iosfwd>
#include <vector>

#include "thermoring/tropical.hpp"

namespace thermoring {

struct SampledFunction {
  std::vector<double> grid;    // strictly increasing, size >= 2, finite
  std::vector<double> values;  // same size; finite or +inf, never NaN
};

// Validating constructor; throws std::invalid_argument / std::domain_error.
SampledFunction make_sampled(std::vector<double> grid, std::vector<double> values);

// Inclusive uniform grid from lo to hi with the given step.
std::vector<double> uniform_grid(double lo, double hi, double step);

// f*(x_j) = max_i (a_i x_j - f(a_i)), skipping +inf samples.  At least one
// value must be finite.  The result is convex on any dual grid.
SampledFunction conjugate(const SampledFunction& f, const std::vector<double>& dual_grid);

// (f*)* evaluated on primal_grid (which must lie within the hull of f's
// grid).  Where a primal point coincides with one of f's grid nodes the
// result is clamped at f's value there: the inequality f** <= f holds in
// exact arithmetic on coinciding nodes, so the clamp only removes double
// rounding noise and makes the guarantee exact.
SampledFunction biconjugate(const SampledFunction& f,
                            const std::vector<double>& dual_grid,
                            const std::vector<double>& primal_grid);

// Max over consecutive triples of f(mid) - (f(left) + f(right))/2, clamped
// below at 0.  Zero for convex samples on uniform grids.
double convexity_defect(const SampledFunction& f);

// CSV with header "x,f"; shortest round-trip float formatting.
SampledFunction read_csv(std::istream& in);
void write_csv(const SampledFunction& f, std::ostream& out);

}  // namespace thermoring
