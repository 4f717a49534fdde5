#pragma once

// Binary information measures on [0,1], their n-ary chain extensions, and
// numeric axiom-defect reports.
//
// Four families are supported:
//   shannon  S(p) = -C (p log p + (1-p) log(1-p)),          C > 0
//   renyi    S(p) = log(p^a + (1-p)^a) / (1-a),             a > 0, a != 1
//   tsallis  S(p) = (p^a + (1-p)^a - 1) / (1-a),            a > 0, a != 1
//   kl       S(p) = -(p log(p/q) + (1-p) log((1-p)/(1-q))), 0 < q < 1
//
// Natural logarithms throughout; 0 log 0 := 0 analytically (no epsilon
// fudge), so every measure is finite on the closed interval.  Renyi and
// tsallis orders within 1e-8 of 1 evaluate through the Shannon limit
// (removable singularity).

#include <string>
#include <vector>

namespace thermoring {

enum class MeasureKind { shannon, renyi, tsallis, kl };

struct Measure {
  MeasureKind kind = MeasureKind::shannon;
  double C = 1.0;      // shannon scale
  double alpha = 0.0;  // renyi / tsallis order
  double q = 0.0;      // kl reference probability

  static Measure shannon(double C = 1.0);
  static Measure renyi(double alpha);
  static Measure tsallis(double alpha);
  static Measure kl(double q);
};

// CLI spec strings: "shannon", "shannon:C", "renyi:a", "tsallis:a", "kl:q".
Measure parse_measure(const std::string& spec);
std::string measure_to_string(const Measure& m);

// S(p) for p in [0,1]; always finite.  Throws std::domain_error outside.
double entropy2(const Measure& m, double p);

// Chain extension S_n(p_1..p_n) = sum_{j=1}^{n-1} w_j S(p_j / w_j) with
// w_j = 1 - sum_{i<j} p_i; terms with w_j = 0 contribute 0.  probs must be
// nonnegative and sum to 1 within 1e-12.  For shannon this equals
// -C sum p_i log p_i.
double entropy_chain(const Measure& m, const std::vector<double>& probs);

struct AxiomCheck {
  double defect = 0.0;
  bool pass = false;
};

// Max defects of the algebraic axioms over a probability grid of the given
// step.  alpha_used is the deformation order applied in the deformed
// associativity check: the measure's own order for renyi/tsallis, 1
// (plain associativity) otherwise.  The grouping check measures how far
// the chain extension is from splitting a three-outcome distribution into
// a grouped two-stage one.
struct AxiomReport {
  AxiomCheck commutativity;
  AxiomCheck identity_left;    // |S(0)|
  AxiomCheck identity_right;   // |S(1)|
  AxiomCheck associativity;
  AxiomCheck alpha_associativity;
  AxiomCheck khinchin_grouping;
  double grid_step = 0.0;
  double tol = 0.0;
  double alpha_used = 1.0;
};

AxiomReport axiom_report(const Measure& m, double grid_step, double tol);

// max_p S(p); closed form per family (log 2 for shannon C=1 and all renyi
// orders, at p = 1/2; (2^{1-a} - 1)/(1-a) for tsallis; 0 for kl at p = q).
double max_entropy(const Measure& m);

}  // namespace thermoring
