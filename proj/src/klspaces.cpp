#include "thermoring/klspaces.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "thermoring/entropy.hpp"

namespace thermoring {

namespace {

void check_interior(double v, const char* name, const char* where) {
  if (std::isnan(v) || v <= 0.0 || v >= 1.0) {
    throw std::domain_error(std::string(where) + ": " + name +
                            " must lie strictly inside (0, 1)");
  }
}

// (number of infinite coordinates, sum of finite coordinates): the natural
// trace order once infinities are allowed — fewer infinite coordinates is
// strictly smaller, finite mass breaks ties.
std::pair<int, double> trace_key(const TupleValue& t) {
  int infs = 0;
  double sum = 0.0;
  for (double v : t) {
    if (v == kTropicalInf) {
      ++infs;
    } else {
      sum += v;
    }
  }
  return {infs, sum};
}

}  // namespace

BitString parse_bits(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("parse_bits: empty digit string");
  BitString out;
  out.bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("parse_bits: digits must be 0 or 1");
    }
    out.bits.push_back(c - '0');
  }
  return out;
}

std::string bits_to_string(const BitString& s) {
  std::string out;
  out.reserve(s.bits.size());
  for (int b : s.bits) out += static_cast<char>('0' + b);
  return out;
}

double digit_frequency(const BitString& s) {
  if (s.bits.empty()) throw std::invalid_argument("digit_frequency: empty bit string");
  long ones = std::count(s.bits.begin(), s.bits.end(), 1);
  return static_cast<double>(ones) / static_cast<double>(s.bits.size());
}

BitString bitflip(const BitString& s) {
  BitString out;
  out.bits.reserve(s.bits.size());
  for (int b : s.bits) out.bits.push_back(1 - b);
  return out;
}

TupleValue pointwise_oplus(const std::vector<double>& qs, const TupleValue& xs,
                           const TupleValue& ys, double T) {
  if (qs.size() != xs.size() || xs.size() != ys.size()) {
    throw std::invalid_argument("pointwise_oplus: length mismatch");
  }
  TupleValue out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    check_interior(qs[i], "q", "pointwise_oplus");
    WittContext ctx(Measure::kl(qs[i]), T);
    out[i] = oplus(ctx, xs[i], ys[i]).value;
  }
  return out;
}

MultifractalStats multifractal_stats(double q, double p, double l1, double l2) {
  check_interior(q, "q", "multifractal_stats");
  check_interior(p, "p", "multifractal_stats");
  check_interior(l1, "l1", "multifractal_stats");
  check_interior(l2, "l2", "multifractal_stats");
  MultifractalStats s;
  s.local_entropy = q * std::log(p) + (1.0 - q) * std::log(1.0 - p);
  s.local_dim = s.local_entropy / std::log(l1);
  s.lyapunov = q * std::log(l1) + (1.0 - q) * std::log(l2);
  return s;
}

std::vector<TupleValue> hyper_add(const TupleValue& xs, const TupleValue& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("hyper_add: length mismatch");
  if (xs.empty()) throw std::invalid_argument("hyper_add: empty tuples");
  for (double x : xs) require_tropical(x, "hyper_add");
  for (double y : ys) require_tropical(y, "hyper_add");
  const std::size_t n = xs.size();

  if (n <= 20) {
    // Enumerate the 2^n candidate tuples, keep the trace minimizers, and
    // return distinct value tuples only.
    std::vector<TupleValue> winners;
    std::pair<int, double> best{static_cast<int>(n) + 1, 0.0};
    TupleValue current(n);
    std::function<void(std::size_t)> recurse = [&](std::size_t i) {
      if (i == n) {
        auto key = trace_key(current);
        if (key < best) {
          best = key;
          winners.clear();
        }
        if (key == best &&
            std::find(winners.begin(), winners.end(), current) == winners.end()) {
          winners.push_back(current);
        }
        return;
      }
      current[i] = xs[i];
      recurse(i + 1);
      if (ys[i] != xs[i]) {
        current[i] = ys[i];
        recurse(i + 1);
      }
    };
    recurse(0);
    std::sort(winners.begin(), winners.end());
    return winners;
  }

  // Coordinate-wise minimum; equivalent because the trace is separable.
  TupleValue mins(n);
  for (std::size_t i = 0; i < n; ++i) mins[i] = tropical_add(xs[i], ys[i]);
  return {mins};
}

std::vector<TupleValue> oplus_marginal(const std::vector<double>& qs,
                                       const TupleValue& xs, const TupleValue& ys,
                                       double T, double tie_tol) {
  if (qs.size() != xs.size() || xs.size() != ys.size()) {
    throw std::invalid_argument("oplus_marginal: length mismatch");
  }
  if (qs.empty()) throw std::invalid_argument("oplus_marginal: empty tuples");
  if (!(T > 0.0)) throw std::domain_error("oplus_marginal: requires T > 0");
  if (!(tie_tol > 0.0)) throw std::invalid_argument("oplus_marginal: tie_tol must be > 0");

  // Per coordinate: collect minimizing values, clustering anything within
  // tie_tol of the coordinate minimum into distinct representatives.
  std::vector<std::vector<double>> choices(qs.size());
  for (std::size_t i = 0; i < qs.size(); ++i) {
    check_interior(qs[i], "q", "oplus_marginal");
    WittContext ctx(Measure::kl(qs[i]), T);
    auto cands = detail::oplus_candidates(ctx, xs[i], ys[i]);
    double best = kTropicalInf;
    for (const auto& c : cands) best = std::min(best, c.second);
    std::vector<double> vals;
    for (const auto& c : cands) {
      if (c.second <= best + tie_tol) vals.push_back(c.second);
    }
    std::sort(vals.begin(), vals.end());
    std::vector<double> reps;
    for (double v : vals) {
      if (reps.empty() || v - reps.back() > tie_tol) reps.push_back(v);
    }
    choices[i] = std::move(reps);
  }

  std::vector<TupleValue> out;
  TupleValue current(qs.size());
  std::function<void(std::size_t)> expand = [&](std::size_t i) {
    if (i == qs.size()) {
      out.push_back(current);
      return;
    }
    for (double v : choices[i]) {
      current[i] = v;
      expand(i + 1);
    }
  };
  expand(0);
  std::sort(out.begin(), out.end());
  return out;
}

double kl_product_defect(const std::vector<double>& ps, const std::vector<double>& qs) {
  if (ps.size() != qs.size()) {
    throw std::invalid_argument("kl_product_defect: length mismatch");
  }
  if (ps.empty() || ps.size() > 4) {
    throw std::invalid_argument("kl_product_defect: supports 1 <= n <= 4");
  }
  const int n = static_cast<int>(ps.size());
  for (int i = 0; i < n; ++i) {
    check_interior(ps[static_cast<std::size_t>(i)], "p", "kl_product_defect");
    check_interior(qs[static_cast<std::size_t>(i)], "q", "kl_product_defect");
  }
  double joint = 0.0;
  for (int mask = 0; mask < (1 << n); ++mask) {
    double P = 1.0, Q = 1.0;
    for (int i = 0; i < n; ++i) {
      bool one = (mask >> i) & 1;
      P *= one ? ps[static_cast<std::size_t>(i)] : 1.0 - ps[static_cast<std::size_t>(i)];
      Q *= one ? qs[static_cast<std::size_t>(i)] : 1.0 - qs[static_cast<std::size_t>(i)];
    }
    joint += P * std::log(P / Q);
  }
  double marginal = 0.0;
  for (int i = 0; i < n; ++i) {
    double p = ps[static_cast<std::size_t>(i)];
    double q = qs[static_cast<std::size_t>(i)];
    marginal += p * std::log(p / q) + (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  }
  return std::fabs(joint - marginal);
}

}  // namespace thermoring
