#pragma once

// Divergence-parameterized additions driven by binary-digit statistics:
// per-coordinate operations with kl weights read off bit-string prefixes,
// contraction statistics, and the multivalued tuple addition obtained as
// the zero-temperature limit.

#include <string>
#include <vector>

#include "thermoring/tropical.hpp"
#include "thermoring/witt.hpp"

namespace thermoring {

// Nonempty finite 0/1 sequence.
struct BitString {
  std::vector<int> bits;
};

// Parses a string of '0'/'1' characters; anything else (or empty) is rejected.
BitString parse_bits(const std::string& text);

std::string bits_to_string(const BitString& s);

// Fraction of 1s in the prefix.
double digit_frequency(const BitString& s);

// Exchanges 0 <-> 1; an involution that maps frequency q to 1 - q.
BitString bitflip(const BitString& s);

using TupleValue = std::vector<TropicalValue>;

// Coordinate i combined with the kl(qs[i]) measure at temperature T.
// Boundary frequencies 0/1 are rejected (kl needs q in (0,1)).
TupleValue pointwise_oplus(const std::vector<double>& qs, const TupleValue& xs,
                           const TupleValue& ys, double T);

struct MultifractalStats {
  double local_dim = 0.0;
  double local_entropy = 0.0;
  double lyapunov = 0.0;
};

// local_entropy = q log p + (1-q) log(1-p); local_dim divides by log(l1);
// lyapunov = q log(l1) + (1-q) log(l2). All arguments must be interior.
MultifractalStats multifractal_stats(double q, double p, double l1, double l2);

// All distinct tuples with coordinates chosen from {x_i, y_i} minimizing
// the coordinate sum (infinite entries ordered after every finite one).
// The sum separates over coordinates and coordinate ties collapse to equal
// tuples, so valid inputs always produce exactly one tuple; the set-valued
// return mirrors oplus_marginal, which is genuinely multivalued.
std::vector<TupleValue> hyper_add(const TupleValue& xs, const TupleValue& ys);

// Per-coordinate minimizer tuples of the kl(qs[i]) operations: coordinate
// candidate values within tie_tol of the coordinate minimum are expanded
// into a cartesian product of distinct value tuples.
std::vector<TupleValue> oplus_marginal(const std::vector<double>& qs,
                                       const TupleValue& xs, const TupleValue& ys,
                                       double T, double tie_tol = 1e-9);

// |KL(product(ps); product(qs)) - sum_i KL(ps[i]; qs[i])| with the left side
// enumerated over all 2^n outcomes; n <= 4.
double kl_product_defect(const std::vector<double>& ps, const std::vector<double>& qs);

}  // namespace thermoring
