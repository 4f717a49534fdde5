#include "thermoring/entropy.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace thermoring {

namespace {

constexpr double kAlphaLimitWindow = 1e-8;  // orders this close to 1 use the Shannon limit

// t log t with the analytic continuation 0 log 0 = 0.
double xlogx(double t) { return t > 0.0 ? t * std::log(t) : 0.0; }

// t log(t/r) with 0 log(0/r) = 0.
double xlogx_over(double t, double r) {
  return t > 0.0 ? t * std::log(t / r) : 0.0;
}

double shannon_value(double p, double C) {
  return -C * (xlogx(p) + xlogx(1.0 - p));
}

void check_prob(double p, const char* where) {
  if (std::isnan(p) || p < 0.0 || p > 1.0) {
    throw std::domain_error(std::string(where) + ": p must lie in [0,1]");
  }
}

}  // namespace

Measure Measure::shannon(double C) {
  if (!(C > 0.0)) throw std::domain_error("Measure::shannon: C must be > 0");
  Measure m;
  m.kind = MeasureKind::shannon;
  m.C = C;
  return m;
}

Measure Measure::renyi(double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("Measure::renyi: order must be > 0");
  Measure m;
  m.kind = MeasureKind::renyi;
  m.alpha = alpha;
  return m;
}

Measure Measure::tsallis(double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("Measure::tsallis: order must be > 0");
  Measure m;
  m.kind = MeasureKind::tsallis;
  m.alpha = alpha;
  return m;
}

Measure Measure::kl(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::domain_error("Measure::kl: reference q must lie in (0,1)");
  }
  Measure m;
  m.kind = MeasureKind::kl;
  m.q = q;
  return m;
}

Measure parse_measure(const std::string& spec) {
  auto bad = [&spec]() {
    return std::invalid_argument("bad measure spec '" + spec +
                                 "' (want shannon[:C], renyi:a, tsallis:a, kl:q)");
  };
  std::string name = spec;
  std::string param;
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    name = spec.substr(0, colon);
    param = spec.substr(colon + 1);
  }
  double value = 0.0;
  bool have_value = false;
  if (!param.empty()) {
    char* end = nullptr;
    value = std::strtod(param.c_str(), &end);
    if (end == nullptr || *end != '\0') throw bad();
    have_value = true;
  }
  try {
    if (name == "shannon") return Measure::shannon(have_value ? value : 1.0);
    if (name == "renyi" && have_value) return Measure::renyi(value);
    if (name == "tsallis" && have_value) return Measure::tsallis(value);
    if (name == "kl" && have_value) return Measure::kl(value);
  } catch (const std::domain_error& e) {
    throw std::invalid_argument("bad measure spec '" + spec + "': " + e.what());
  }
  throw bad();
}

std::string measure_to_string(const Measure& m) {
  switch (m.kind) {
    case MeasureKind::shannon:
      return m.C == 1.0 ? "shannon" : "shannon:" + std::to_string(m.C);
    case MeasureKind::renyi:
      return "renyi:" + std::to_string(m.alpha);
    case MeasureKind::tsallis:
      return "tsallis:" + std::to_string(m.alpha);
    case MeasureKind::kl:
      return "kl:" + std::to_string(m.q);
  }
  return "?";
}

double entropy2(const Measure& m, double p) {
  check_prob(p, "entropy2");
  switch (m.kind) {
    case MeasureKind::shannon:
      return shannon_value(p, m.C);
    case MeasureKind::renyi: {
      double a = m.alpha;
      if (std::fabs(a - 1.0) <= kAlphaLimitWindow) return shannon_value(p, 1.0);
      double s = std::pow(p, a) + std::pow(1.0 - p, a);
      return std::log(s) / (1.0 - a);
    }
    case MeasureKind::tsallis: {
      double a = m.alpha;
      if (std::fabs(a - 1.0) <= kAlphaLimitWindow) return shannon_value(p, 1.0);
      double s = std::pow(p, a) + std::pow(1.0 - p, a);
      return (s - 1.0) / (1.0 - a);
    }
    case MeasureKind::kl:
      return -(xlogx_over(p, m.q) + xlogx_over(1.0 - p, 1.0 - m.q));
  }
  throw std::logic_error("entropy2: unknown kind");
}

double entropy_chain(const Measure& m, const std::vector<double>& probs) {
  if (probs.empty()) {
    throw std::invalid_argument("entropy_chain: need at least one probability");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (std::isnan(p) || p < 0.0) {
      throw std::domain_error("entropy_chain: probabilities must be >= 0");
    }
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-12) {
    throw std::domain_error("entropy_chain: probabilities must sum to 1");
  }
  double total = 0.0;
  double prefix = 0.0;  // sum of p_1..p_{j-1}
  for (std::size_t j = 0; j + 1 < probs.size(); ++j) {
    double w = 1.0 - prefix;
    if (w > 0.0) {
      double cond = probs[j] / w;
      // w is a difference of nearby doubles, so the quotient can poke a
      // few ulps outside [0,1]; clamp before evaluating.
      if (cond < 0.0) cond = 0.0;
      if (cond > 1.0) cond = 1.0;
      total += w * entropy2(m, cond);
    }
    prefix += probs[j];
  }
  return total;
}

namespace {

// Associativity defect with exponent a on the group weights; a = 1 is the
// plain axiom.  Arguments are an interior grid pair with p1 + p2 <= 1.
double assoc_defect(const Measure& m, double p1, double p2, double a) {
  double w = 1.0 - p1;
  double s = p1 + p2;
  double lhs = entropy2(m, p1) +
               std::pow(w, a) * entropy2(m, w > 0.0 ? std::min(1.0, p2 / w) : 0.0);
  double rhs = entropy2(m, s) +
               std::pow(s, a) * entropy2(m, s > 0.0 ? std::min(1.0, p1 / s) : 0.0);
  return std::fabs(lhs - rhs);
}

}  // namespace

AxiomReport axiom_report(const Measure& m, double grid_step, double tol) {
  if (!(grid_step > 0.0 && grid_step <= 0.1)) {
    throw std::invalid_argument("axiom_report: grid_step must lie in (0, 0.1]");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("axiom_report: tol must be > 0");

  AxiomReport rep;
  rep.grid_step = grid_step;
  rep.tol = tol;
  rep.alpha_used =
      (m.kind == MeasureKind::renyi || m.kind == MeasureKind::tsallis) ? m.alpha : 1.0;

  std::vector<double> grid;
  for (double p = grid_step; p < 1.0 - grid_step / 2; p += grid_step) grid.push_back(p);

  for (double p : grid) {
    double d = std::fabs(entropy2(m, p) - entropy2(m, 1.0 - p));
    if (d > rep.commutativity.defect) rep.commutativity.defect = d;
  }
  rep.identity_left.defect = std::fabs(entropy2(m, 0.0));
  rep.identity_right.defect = std::fabs(entropy2(m, 1.0));

  for (double p1 : grid) {
    for (double p2 : grid) {
      if (p1 + p2 >= 1.0 - 1e-12) continue;
      double d1 = assoc_defect(m, p1, p2, 1.0);
      if (d1 > rep.associativity.defect) rep.associativity.defect = d1;
      double da = assoc_defect(m, p1, p2, rep.alpha_used);
      if (da > rep.alpha_associativity.defect) rep.alpha_associativity.defect = da;

      // Group a three-outcome distribution (p1, p2, p3) into ((p1,p2), p3)
      // and compare the chain value against the two-stage decomposition.
      double p3 = 1.0 - p1 - p2;
      double w = p1 + p2;
      double joint = entropy_chain(m, {p1, p2, p3});
      double grouped = entropy_chain(m, {w, p3}) +
                       w * entropy_chain(m, {p1 / w, p2 / w});
      double dk = std::fabs(joint - grouped);
      if (dk > rep.khinchin_grouping.defect) rep.khinchin_grouping.defect = dk;
    }
  }

  for (AxiomCheck* c : {&rep.commutativity, &rep.identity_left, &rep.identity_right,
                        &rep.associativity, &rep.alpha_associativity,
                        &rep.khinchin_grouping}) {
    c->pass = c->defect <= tol;
  }
  return rep;
}

double max_entropy(const Measure& m) {
  switch (m.kind) {
    case MeasureKind::shannon:
      return m.C * std::log(2.0);
    case MeasureKind::renyi:
      return std::log(2.0);
    case MeasureKind::tsallis: {
      double a = m.alpha;
      if (std::fabs(a - 1.0) <= kAlphaLimitWindow) return std::log(2.0);
      return (std::pow(2.0, 1.0 - a) - 1.0) / (1.0 - a);
    }
    case MeasureKind::kl:
      return 0.0;
  }
  throw std::logic_error("max_entropy: unknown kind");
}

}  // namespace thermoring
